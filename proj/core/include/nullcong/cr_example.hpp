#pragma once

// The graph z = w g(u) over T = {t = 0} in the quadric rho = 0, with
//   g(u) = (1/3) exp(-(1-u)^(-1/4)),  -pi <= arg(1-u) < pi,
//   t(u,w) = 1 + |w g(u)|^2 - |u|^2 - |w|^2,
//   E = {2|u|^2 + |w|^2 <= 2}.

#include <cstdint>
#include <vector>

#include "nullcong/twistor.hpp"

namespace nullcong {

struct SlitPlanePoint {
  cplx u;
  double r = 0.0;      // |1 - u|
  double theta = 0.0;  // arg(1 - u) in [-pi, pi)
  bool near_slit = false;

  // Throws DomainError("slit crossed") for u on the open slit (1, inf).
  static SlitPlanePoint make(cplx u);
  // u = 1 - r e^{i theta}
  static SlitPlanePoint polar(double r, double theta);
};

// Throws on the open slit.
void check_slit(cplx u);

namespace crx {

// Generic g on the principal branch; zero value and derivatives at u = 1 and
// wherever exp(-s) underflows. The caller checks the slit.
template <typename S>
S g(const S& u) {
  using std::exp;
  using std::pow;
  const S one_minus = S(1.0) - u;
  if (primal(one_minus) == cplx(0.0)) return S(0.0);
  const S s = pow(one_minus, -0.25);
  if (primal(s).real() > 700.0) return S(0.0);
  return exp(-s) / 3.0;
}

template <typename S>
S t(const S& u, const S& w) {
  using std::conj;
  const S wg = w * g(u);
  return re(S(1.0) + wg * S(conj(wg)) - u * S(conj(u)) - w * S(conj(w)));
}

}  // namespace crx

cplx g_eval(const SlitPlanePoint& p);
cplx g_eval(cplx u);
// g and its complex derivative.
std::pair<cplx, cplx> g_with_derivative(cplx u);
// (1/3) exp(-r^{-1/4} cos(theta/4))
double g_modulus_closed_form(const SlitPlanePoint& p);

struct GraphPoint {
  cplx u, w;
  bool in_E(double slack = 0.0) const { return 2.0 * std::norm(u) + std::norm(w) <= 2.0 + slack; }
};

double t_eval(const GraphPoint& p);

struct LeviResult {
  Mat2<cplx> m{};  // [[t_uu*, t_uw*], [t_wu*, t_ww*]]
  std::array<double, 2> eigenvalues{};
  double t_value = 0.0;
  bool on_T = false;  // |t| <= 1e-8
  bool near_slit = false;
  bool negative_definite() const { return eigenvalues[0] < 0.0 && eigenvalues[1] < 0.0; }
};

LeviResult levi_matrix(const GraphPoint& p);

// The printed entries t_uu* = |g'|^2|w|^2 - 1, t_ww* = |g|^2 - 1 and the
// cross term w g'(u) conj(g(u)).
Mat2<cplx> levi_matrix_printed(const GraphPoint& p);

struct CrVector {
  cplx a, b;  // L = a d/du + b d/dw
};

// L = t_w d/du - t_u d/dw. Throws DomainError on a degenerate gradient.
CrVector cr_vector_L(const GraphPoint& p);
// The printed field, reading g(u-bar - 1) as conj(g(u)).
CrVector cr_vector_L_printed(const GraphPoint& p);
// |a b' - b a'| / (|L| |L'|); zero when proportional.
double proportionality_defect(const CrVector& l, const CrVector& m);

// L t computed from the AD gradient of t.
cplx apply_L_to_t(const CrVector& l, const GraphPoint& p);
// j_* L applied to rho, via the explicit derivative of g.
cplx apply_jL_to_rho(const CrVector& l, const GraphPoint& p);

ChartPoint embed_j(const GraphPoint& p);

// AD gradient (dt/dRe u, dt/dIm u, dt/dRe w, dt/dIm w).
std::array<double, 4> t_gradient(const GraphPoint& p);

struct ProbeResult {
  int k = 0;
  double theta = 0.0;
  std::vector<int> j;
  std::vector<double> log10_ratio;  // log10 |g(u)/(u-1)^k|
  double tail_sup = 0.0;
  bool tail_monotone = false;
  bool modulus_bound_holds = false;
  bool pass = false;
};

inline constexpr int kProbeFirst = 4;
inline constexpr int kProbeLast = 40;
inline constexpr int kProbeTail = 5;

// Samples u = 1 - 2^{-j} e^{i theta}, j = 4..40, in the log domain. Passes when
// the last five samples decrease, stay below 1e-8, and |g|^2 respects
// (1/9) exp(-(r/4)^{-1/4}) everywhere. Requires 1 <= k <= 12.
ProbeResult vanishing_order_probe(int k, double theta);

// Points of T with |u - 1| < radius and |w| < radius.
std::vector<GraphPoint> sample_T(std::size_t count, std::uint64_t seed, double radius = 0.05);

}  // namespace nullcong

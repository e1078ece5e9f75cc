#pragma once

// Two-component spinor algebra on flat Minkowski space.
//
// Conventions (see docs/CONVENTIONS.md, version 1):
//   signature (+,-,-,-), coordinates x^a = (t, x, y, z);
//   eps_{01} = eps^{01} = +1 (primed and unprimed alike);
//   xi^A = eps^{AB} xi_B,  xi_B = xi^A eps_{AB};
//   x^{AA'} = (1/sqrt2) [[t+z, x+iy], [x-iy, t-z]]  (row A, column A').
// Priming denotes complex conjugation: conj(o_{A'}) is o_A.

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "nullcong/dual.hpp"
#include "nullcong/error.hpp"

namespace nullcong {

template <typename S>
using Pair = std::array<S, 2>;
template <typename S>
using Mat2 = std::array<std::array<S, 2>, 2>;
using Vec4 = std::array<double, 4>;
using CVec4 = std::array<cplx, 4>;

inline constexpr int kConventionsVersion = 1;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr std::array<double, 4> kMinkowski = {1.0, -1.0, -1.0, -1.0};
// Levi-Civita orientation eps_{0123} in the coordinate basis (t,x,y,z).
inline constexpr double kEps0123 = 1.0;

// eps_{AB} and eps^{AB} share the same numeric array.
constexpr double eps(int a, int b) { return a == b ? 0.0 : (a == 0 ? 1.0 : -1.0); }

namespace solder {
// sigma_a^{AA'}: maps vector components to x^{AA'} and spinor covectors
// K_{AA'} to coordinate covectors via w_a = sigma_a^{AA'} K_{AA'}.
inline const std::array<Mat2<cplx>, 4>& forward() {
  static const std::array<Mat2<cplx>, 4> s = {{
      {{{kInvSqrt2, 0.0}, {0.0, kInvSqrt2}}},
      {{{0.0, kInvSqrt2}, {kInvSqrt2, 0.0}}},
      {{{0.0, cplx(0.0, kInvSqrt2)}, {cplx(0.0, -kInvSqrt2), 0.0}}},
      {{{kInvSqrt2, 0.0}, {0.0, -kInvSqrt2}}},
  }};
  return s;
}
// sigma^a_{AA'} = dx^a / dx^{AA'}; inverse of forward() under full contraction.
inline const std::array<Mat2<cplx>, 4>& inverse() {
  static const std::array<Mat2<cplx>, 4> s = {{
      {{{kInvSqrt2, 0.0}, {0.0, kInvSqrt2}}},
      {{{0.0, kInvSqrt2}, {kInvSqrt2, 0.0}}},
      {{{0.0, cplx(0.0, -kInvSqrt2)}, {cplx(0.0, kInvSqrt2), 0.0}}},
      {{{kInvSqrt2, 0.0}, {0.0, -kInvSqrt2}}},
  }};
  return s;
}
}  // namespace solder

// Generic kernels, usable with cplx and with Dual scalars.
namespace spin {

template <typename S>
Pair<S> raise(const Pair<S>& low) {
  return {low[1], -low[0]};
}
template <typename S>
Pair<S> lower(const Pair<S>& up) {
  return {-up[1], up[0]};
}
// xi^A eta_A
template <typename S>
S contract(const Pair<S>& up, const Pair<S>& low) {
  return up[0] * low[0] + up[1] * low[1];
}
template <typename S>
Pair<S> conj(const Pair<S>& p) {
  using std::conj;
  return {S(conj(p[0])), S(conj(p[1]))};
}
template <typename S>
Pair<S> scale(const Pair<S>& p, const S& c) {
  return {p[0] * c, p[1] * c};
}
// Squared Euclidean component norm.
template <typename S>
S norm2(const Pair<S>& p) {
  using std::conj;
  return re(p[0] * S(conj(p[0])) + p[1] * S(conj(p[1])));
}

template <typename S>
Mat2<S> to_matrix(const std::array<S, 4>& x) {
  const double k = kInvSqrt2;
  const cplx i(0.0, 1.0);
  return {{{(x[0] + x[3]) * k, (x[1] + x[2] * i) * k},
           {(x[1] - x[2] * i) * k, (x[0] - x[3]) * k}}};
}

template <typename S>
std::array<S, 4> from_matrix(const Mat2<S>& m) {
  const double k = kInvSqrt2;
  const cplx i(0.0, 1.0);
  return {(m[0][0] + m[1][1]) * k, (m[0][1] + m[1][0]) * k,
          (m[0][1] - m[1][0]) * (-i) * k, (m[0][0] - m[1][1]) * k};
}

// Coordinate covector from a spinor covector K_{AA'}.
template <typename S>
std::array<S, 4> covector(const Mat2<S>& k) {
  const auto& f = solder::forward();
  std::array<S, 4> w{};
  for (int a = 0; a < 4; ++a) {
    S acc(0.0);
    for (int A = 0; A < 2; ++A)
      for (int Ap = 0; Ap < 2; ++Ap) acc += k[A][Ap] * f[a][A][Ap];
    w[a] = acc;
  }
  return w;
}

// M^{AA'} v_{A'}
template <typename S>
Pair<S> apply(const Mat2<S>& m, const Pair<S>& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

template <typename S>
Mat2<S> outer(const Pair<S>& a, const Pair<S>& b) {
  return {{{a[0] * b[0], a[0] * b[1]}, {a[1] * b[0], a[1] * b[1]}}};
}

// Spinor partial d_{AA'} from coordinate partials d_a.
template <typename S>
Mat2<S> spinor_derivative(const std::array<S, 4>& partial) {
  const auto& s = solder::inverse();
  Mat2<S> r{};
  for (int A = 0; A < 2; ++A)
    for (int Ap = 0; Ap < 2; ++Ap) {
      S acc(0.0);
      for (int a = 0; a < 4; ++a) acc += partial[a] * s[a][A][Ap];
      r[A][Ap] = acc;
    }
  return r;
}

}  // namespace spin

enum class IndexKind { UnprimedUpper, UnprimedLower, PrimedUpper, PrimedLower };
enum class IndexPosition { Upper, Lower };

std::string to_string(IndexKind kind);
bool is_primed(IndexKind kind);
bool is_upper(IndexKind kind);

// A two-component spinor tagged with its index type.
class Spinor2 {
 public:
  Spinor2() = default;
  Spinor2(cplx c0, cplx c1, IndexKind kind) : c_{c0, c1}, kind_(kind) {}
  Spinor2(const Pair<cplx>& c, IndexKind kind) : c_(c), kind_(kind) {}

  const Pair<cplx>& components() const { return c_; }
  cplx operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  IndexKind kind() const { return kind_; }

  // Swaps primed/unprimed and conjugates components; an involution.
  Spinor2 conjugate() const;
  double norm() const { return std::sqrt(std::norm(c_[0]) + std::norm(c_[1])); }
  bool is_zero() const { return c_[0] == cplx(0.0) && c_[1] == cplx(0.0); }
  Spinor2 scaled(cplx s) const { return {c_[0] * s, c_[1] * s, kind_}; }

  friend bool operator==(const Spinor2&, const Spinor2&) = default;

 private:
  Pair<cplx> c_{};
  IndexKind kind_ = IndexKind::UnprimedUpper;
};

// Contracts against eps per the fixed convention. Throws std::invalid_argument
// if s is already in the target position.
Spinor2 raise_lower(const Spinor2& s, IndexPosition target);

// xi^A eta_A for matching index families; one argument upper, one lower.
cplx contract(const Spinor2& upper, const Spinor2& lower);

// The 2x2 identity check eps^{AB} eps_{CB}.
Mat2<double> epsilon_identity();

// A real Minkowski event or vector.
struct Event {
  Vec4 x{};

  Event() = default;
  explicit Event(const Vec4& coords) : x(coords) {}
  Event(double t, double xx, double y, double z) : x{t, xx, y, z} {}

  double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
  Mat2<cplx> matrix() const;
  Event operator+(const Event& o) const;
  Event operator-(const Event& o) const;
  Event operator*(double s) const;
  double euclidean_norm() const;
};

struct ComplexEvent {
  CVec4 x{};
  Mat2<cplx> matrix() const { return spin::to_matrix(x); }
  bool is_real(double tol = 0.0) const;
  Event real_part() const;
};

// Inverse dyad map. A non-Hermitian matrix yields a complexified vector,
// flagged through `hermitian`.
struct VectorFromSpinor {
  ComplexEvent vector;
  bool hermitian = true;
};

Mat2<cplx> vector_spinor(const Event& v);
VectorFromSpinor spinor_vector(const Mat2<cplx>& m);

// Direct (+,-,-,-) product and the eps-contraction route.
double inner(const Event& v, const Event& w);
cplx inner_spinor(const Mat2<cplx>& v, const Mat2<cplx>& w);
cplx inner_complex(const ComplexEvent& v, const ComplexEvent& w);

// Factors a real null future-pointing vector as o^A conj(o^A).
// Returns an unprimed-upper spinor with its larger component real positive.
Spinor2 factor_null(const Event& k, double tol = 1e-12);

// Real vector o^A o^{A'} built from a primed-lower spinor o_{A'}.
Event null_vector_from(const Pair<cplx>& o_primed_lower);

// Symmetric spinor phi_{XY}, stored as (phi_00, phi_01, phi_11).
template <typename S>
struct BasicSymmetric {
  std::array<S, 3> c{};
  S operator()(int a, int b) const { return c[static_cast<std::size_t>(a + b)]; }
  // phi^{XY} phi_{XY}
  S self_contraction() const { return S(2.0) * (c[0] * c[2] - c[1] * c[1]); }
};

struct SymmetricSpinor2 {
  std::array<cplx, 3> c{};
  bool primed = true;

  cplx operator()(int a, int b) const { return c[static_cast<std::size_t>(a + b)]; }
  double norm() const;
  cplx self_contraction() const { return 2.0 * (c[0] * c[2] - c[1] * c[1]); }
  static SymmetricSpinor2 symmetrized(const Pair<cplx>& a, const Pair<cplx>& b, bool primed = true);
};

struct SymmetricFactors {
  Spinor2 o;
  Spinor2 iota;
  cplx scale;  // phi = scale * o_(X iota_Y)
  bool repeated = false;
};

// Splits phi into linear factors by solving pi^X pi^Y phi_XY = 0 in the ratio
// pi_0/pi_1. Each factor has unit norm with its larger component real positive.
SymmetricFactors factor_symmetric(const SymmetricSpinor2& phi, double repeat_tol = 1e-12);

// Complex 2-form G_ab, components (01,02,03,12,13,23) in (t,x,y,z).
template <typename S>
struct BasicTwoForm {
  std::array<S, 6> c{};

  static constexpr int slot(int a, int b) {
    constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[a][b];
  }
  S operator()(int a, int b) const {
    if (a == b) return S(0.0);
    const S v = c[static_cast<std::size_t>(slot(a, b))];
    return a < b ? v : S(-v);
  }
  void set(int a, int b, const S& v) {
    if (a < b)
      c[static_cast<std::size_t>(slot(a, b))] = v;
    else
      c[static_cast<std::size_t>(slot(a, b))] = -v;
  }
};

using TwoForm = BasicTwoForm<cplx>;
using RealTwoForm = BasicTwoForm<double>;

double max_abs(const TwoForm& g);
TwoForm operator+(const TwoForm& a, const TwoForm& b);
TwoForm operator-(const TwoForm& a, const TwoForm& b);
TwoForm operator*(cplx s, const TwoForm& a);

struct TwoFormSpinors {
  SymmetricSpinor2 alpha;  // unprimed
  SymmetricSpinor2 beta;   // primed
};

TwoFormSpinors decompose_two_form(const TwoForm& g);
TwoForm assemble_two_form(const SymmetricSpinor2& alpha, const SymmetricSpinor2& beta);

// *G via the spinor decomposition: (alpha, beta) -> (-i alpha, i beta).
TwoForm hodge_star(const TwoForm& g);
// *G via the coordinate Levi-Civita tensor, (*G)_ab = 1/2 eps_abcd G^cd.
TwoForm hodge_star_tensor(const TwoForm& g);
RealTwoForm hodge_star_tensor(const RealTwoForm& f);

// G_ab H^ab
cplx contract_two_forms(const TwoForm& g, const TwoForm& h);

namespace spin {

// G_{ab} for G = alpha_AB eps_A'B' + eps_AB beta_A'B'.
template <typename S>
BasicTwoForm<S> two_form_from_spinors(const BasicSymmetric<S>& alpha, const BasicSymmetric<S>& beta) {
  const auto& f = solder::forward();
  BasicTwoForm<S> g;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      S acc(0.0);
      for (int A = 0; A < 2; ++A)
        for (int Ap = 0; Ap < 2; ++Ap) {
          const cplx fa = f[a][A][Ap];
          if (fa == cplx(0.0)) continue;
          for (int B = 0; B < 2; ++B)
            for (int Bp = 0; Bp < 2; ++Bp) {
              const cplx fb = f[b][B][Bp];
              if (fb == cplx(0.0)) continue;
              const S g_spin = alpha(A, B) * eps(Ap, Bp) + beta(Ap, Bp) * eps(A, B);
              acc += g_spin * (fa * fb);
            }
        }
      g.set(a, b, acc);
    }
  return g;
}

// Self-dual 2-form lambda o_A' o_B' eps_AB.
template <typename S>
BasicTwoForm<S> null_two_form(const S& amplitude, const Pair<S>& o) {
  BasicSymmetric<S> zero;
  zero.c = {S(0.0), S(0.0), S(0.0)};
  BasicSymmetric<S> beta;
  beta.c = {amplitude * o[0] * o[0], amplitude * o[0] * o[1], amplitude * o[1] * o[1]};
  return two_form_from_spinors(zero, beta);
}

}  // namespace spin

}  // namespace nullcong

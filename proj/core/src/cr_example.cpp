#include "nullcong/cr_example.hpp"

#include <algorithm>
#include <numbers>
#include <random>

namespace nullcong {

namespace {

constexpr double kNearSlit = 1e-12;
constexpr double kOnT = 1e-8;

}  // namespace

void check_slit(cplx u) {
  if (u.imag() == 0.0 && u.real() > 1.0) throw DomainError("slit crossed");
}

SlitPlanePoint SlitPlanePoint::make(cplx u) {
  check_slit(u);
  SlitPlanePoint p;
  p.u = u;
  const cplx d = 1.0 - u;
  p.r = std::abs(d);
  p.theta = std::arg(d);
  if (p.theta >= std::numbers::pi) p.theta -= 2.0 * std::numbers::pi;
  p.near_slit = u.real() > 1.0 && std::abs(u.imag()) < kNearSlit;
  return p;
}

SlitPlanePoint SlitPlanePoint::polar(double r, double theta) {
  return make(1.0 - std::polar(r, theta));
}

cplx g_eval(const SlitPlanePoint& p) { return crx::g(p.u); }

cplx g_eval(cplx u) {
  check_slit(u);
  return crx::g(u);
}

std::pair<cplx, cplx> g_with_derivative(cplx u) {
  check_slit(u);
  const Dual<cplx, 1> r = crx::g(Dual<cplx, 1>::variable(u, 0));
  return {r.v, r.d[0]};
}

double g_modulus_closed_form(const SlitPlanePoint& p) {
  if (p.r == 0.0) return 0.0;
  return std::exp(-std::pow(p.r, -0.25) * std::cos(p.theta / 4.0)) / 3.0;
}

double t_eval(const GraphPoint& p) {
  check_slit(p.u);
  return crx::t(p.u, p.w).real();
}

std::array<double, 4> t_gradient(const GraphPoint& p) {
  check_slit(p.u);
  const cplx i(0.0, 1.0);
  const Dual4 u = Dual4::variable(p.u.real(), 0) + Dual4::variable(p.u.imag(), 1) * i;
  const Dual4 w = Dual4::variable(p.w.real(), 2) + Dual4::variable(p.w.imag(), 3) * i;
  const Dual4 t = crx::t(u, w);
  return {t.d[0].real(), t.d[1].real(), t.d[2].real(), t.d[3].real()};
}

LeviResult levi_matrix(const GraphPoint& p) {
  check_slit(p.u);
  const cplx i(0.0, 1.0);
  const double vars[4] = {p.u.real(), p.u.imag(), p.w.real(), p.w.imag()};
  std::array<Dual4x4, 4> x;
  for (std::size_t k = 0; k < 4; ++k) {
    x[k].v = Dual4::variable(vars[k], k);
    x[k].d[k] = Dual4(1.0);
  }
  const Dual4x4 u = x[0] + x[1] * i;
  const Dual4x4 w = x[2] + x[3] * i;
  const Dual4x4 t = crx::t(u, w);
  double h[4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) h[a][b] = t.d[a].d[b].real();

  LeviResult r;
  r.m[0][0] = 0.25 * (h[0][0] + h[1][1]);
  r.m[1][1] = 0.25 * (h[2][2] + h[3][3]);
  r.m[0][1] = 0.25 * cplx(h[0][2] + h[1][3], h[0][3] - h[1][2]);
  r.m[1][0] = std::conj(r.m[0][1]);
  const double a = r.m[0][0].real(), d = r.m[1][1].real();
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(r.m[0][1]));
  r.eigenvalues = {0.5 * (a + d) - disc, 0.5 * (a + d) + disc};
  r.t_value = t.v.v.real();
  r.on_T = std::abs(r.t_value) <= kOnT;
  r.near_slit = SlitPlanePoint::make(p.u).near_slit;
  return r;
}

Mat2<cplx> levi_matrix_printed(const GraphPoint& p) {
  const auto [g, gp] = g_with_derivative(p.u);
  Mat2<cplx> m;
  m[0][0] = std::norm(gp) * std::norm(p.w) - 1.0;
  m[1][1] = std::norm(g) - 1.0;
  m[0][1] = p.w * gp * std::conj(g);
  m[1][0] = std::conj(m[0][1]);
  return m;
}

namespace {

// (1,0) derivatives t_u = (t_a - i t_b)/2, t_w = (t_c - i t_d)/2.
std::pair<cplx, cplx> holomorphic_gradient(const GraphPoint& p) {
  const auto g = t_gradient(p);
  return {0.5 * cplx(g[0], -g[1]), 0.5 * cplx(g[2], -g[3])};
}

}  // namespace

CrVector cr_vector_L(const GraphPoint& p) {
  const auto [tu, tw] = holomorphic_gradient(p);
  if (std::abs(tu) + std::abs(tw) < 1e-14) throw DomainError("degenerate gradient");
  return {tw, -tu};
}

CrVector cr_vector_L_printed(const GraphPoint& p) {
  const auto [g, gp] = g_with_derivative(p.u);
  return {-std::conj(p.w) * (std::norm(g) - 1.0), std::norm(p.w) * std::conj(g) * gp - std::conj(p.u)};
}

double proportionality_defect(const CrVector& l, const CrVector& m) {
  const double nl = std::hypot(std::abs(l.a), std::abs(l.b));
  const double nm = std::hypot(std::abs(m.a), std::abs(m.b));
  if (nl == 0.0 || nm == 0.0) return nl == nm ? 0.0 : 1.0;
  return std::abs(l.a * m.b - l.b * m.a) / (nl * nm);
}

cplx apply_L_to_t(const CrVector& l, const GraphPoint& p) {
  const auto [tu, tw] = holomorphic_gradient(p);
  return l.a * tu + l.b * tw;
}

cplx apply_jL_to_rho(const CrVector& l, const GraphPoint& p) {
  const auto [g, gp] = g_with_derivative(p.u);
  // j_*L = a d/du + b d/dw + (a w g' + b g) d/dz; rho = 1 + |z|^2 - |u|^2 - |w|^2.
  const cplx z = p.w * g;
  return -l.a * std::conj(p.u) - l.b * std::conj(p.w) + (l.a * p.w * gp + l.b * g) * std::conj(z);
}

ChartPoint embed_j(const GraphPoint& p) { return {p.u, p.w, p.w * g_eval(p.u)}; }

ProbeResult vanishing_order_probe(int k, double theta) {
  if (k < 1 || k > 12) throw std::invalid_argument("vanishing_order_probe: k must be in [1, 12]");
  ProbeResult out;
  out.k = k;
  out.theta = theta;
  out.modulus_bound_holds = true;
  const double ln10 = std::log(10.0);
  for (int j = kProbeFirst; j <= kProbeLast; ++j) {
    const double r = std::ldexp(1.0, -j);
    const SlitPlanePoint p = SlitPlanePoint::polar(r, theta);
    // log|g| = -log 3 - Re (1-u)^{-1/4}, evaluated without forming g.
    const double log_g = -std::log(3.0) - std::pow(p.r, -0.25) * std::cos(p.theta / 4.0);
    const double log_ratio = log_g - k * std::log(p.r);
    out.j.push_back(j);
    out.log10_ratio.push_back(log_ratio / ln10);
    const double log_bound = -std::log(9.0) - std::pow(p.r / 4.0, -0.25);
    if (2.0 * log_g > log_bound + 1e-12 * std::abs(log_bound)) out.modulus_bound_holds = false;
  }
  const std::size_t n = out.log10_ratio.size();
  out.tail_monotone = true;
  out.tail_sup = -std::numeric_limits<double>::infinity();
  for (std::size_t i = n - kProbeTail; i < n; ++i) {
    out.tail_sup = std::max(out.tail_sup, out.log10_ratio[i]);
    if (i > n - kProbeTail && !(out.log10_ratio[i] < out.log10_ratio[i - 1])) out.tail_monotone = false;
  }
  out.tail_sup = std::pow(10.0, out.tail_sup);
  out.pass = out.tail_monotone && out.tail_sup < 1e-8 && out.modulus_bound_holds;
  return out;
}

std::vector<GraphPoint> sample_T(std::size_t count, std::uint64_t seed, double radius) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<GraphPoint> out;
  out.reserve(count);
  while (out.size() < count) {
    const cplx w = std::polar(radius * std::sqrt(unit(gen)), 2.0 * std::numbers::pi * unit(gen));
    const double psi = radius * (2.0 * unit(gen) - 1.0);
    // |u|^2 = 1 + |w|^2 (|g(u)|^2 - 1) on T; iterate on |u| for fixed arg u.
    double rho = 1.0;
    for (int it = 0; it < 60; ++it) {
      const cplx g = crx::g(std::polar(rho, psi));
      const double next = std::sqrt(1.0 + std::norm(w) * (std::norm(g) - 1.0));
      if (next == rho) break;
      rho = next;
    }
    const GraphPoint p{std::polar(rho, psi), w};
    if (std::abs(p.u - 1.0) >= radius) continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace nullcong

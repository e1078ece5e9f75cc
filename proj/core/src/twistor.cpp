#include "nullcong/twistor.hpp"

#include <algorithm>

namespace nullcong {

namespace {

constexpr double kChartTol = 1e-12;
constexpr double kNullTol = 1e-10;
constexpr double kInfinityTol = 1e-12;

}  // namespace

double Twistor::norm() const {
  double s = 0.0;
  for (const cplx& c : components()) s += std::norm(c);
  return std::sqrt(s);
}

Twistor Twistor::scaled(cplx s) const {
  return {{omega[0] * s, omega[1] * s}, {pi[0] * s, pi[1] * s}};
}

Twistor Twistor::normalized() const {
  const auto c = components();
  const auto it = std::max_element(c.begin(), c.end(),
                                   [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  if (std::abs(*it) == 0.0) return *this;
  return scaled(1.0 / *it);
}

double projective_distance(const Twistor& a, const Twistor& b) {
  const auto ca = a.components(), cb = b.components();
  cplx num = 0.0;
  double den = 0.0, nb = 0.0;
  for (int i = 0; i < 4; ++i) {
    num += std::conj(ca[i]) * cb[i];
    den += std::norm(ca[i]);
    nb += std::norm(cb[i]);
  }
  if (den == 0.0 || nb == 0.0) return den == nb ? 0.0 : 1.0;
  const cplx s = num / den;
  double r = 0.0;
  for (int i = 0; i < 4; ++i) r += std::norm(cb[i] - s * ca[i]);
  return std::sqrt(r / nb);
}

double ChartPoint::rho() const { return 1.0 + std::norm(z) - std::norm(u) - std::norm(w); }

double FrameCoords::sigma() const { return std::norm(z) + std::norm(v) - std::norm(u) - std::norm(w); }

double NullGeodesic::distance_to(const Event& p) const {
  const Event d = p - base;
  double dd = 0.0, kk = 0.0;
  for (int a = 0; a < 4; ++a) {
    dd += d.x[a] * direction.x[a];
    kk += direction.x[a] * direction.x[a];
  }
  return (d - direction * (dd / kk)).euclidean_norm();
}

Twistor incident_twistor(const Event& x, const Pair<cplx>& pi) {
  if (pi[0] == cplx(0.0) && pi[1] == cplx(0.0)) throw DomainError("incident_twistor: pi is zero");
  return {tw::incidence(x.matrix(), pi), pi};
}

Twistor incident_twistor(const ComplexEvent& x, const Pair<cplx>& pi) {
  if (pi[0] == cplx(0.0) && pi[1] == cplx(0.0)) throw DomainError("incident_twistor: pi is zero");
  return {tw::incidence(x.matrix(), pi), pi};
}

cplx omega_dot_pibar(const Twistor& z) {
  return z.omega[0] * std::conj(z.pi[0]) + z.omega[1] * std::conj(z.pi[1]);
}

double quadric_sigma(const Twistor& z) { return 2.0 * omega_dot_pibar(z).real(); }

FrameCoords chart_frame(const Twistor& z) {
  const auto f = tw::frame(z.omega, z.pi);
  return {f[0], f[1], f[2], f[3]};
}

Twistor twistor_from_frame(const FrameCoords& f) {
  const double k = kInvSqrt2;
  const cplx i(0.0, 1.0);
  return {{(f.z + f.w) * k, (f.v - i * f.u) * k}, {(f.z - f.w) * k, (f.v + i * f.u) * k}};
}

ChartPoint chart_coords(const Twistor& z) {
  const FrameCoords f = chart_frame(z);
  if (std::abs(f.v) < kChartTol * z.norm() || z.norm() == 0.0) throw DomainError("chart undefined here");
  return {f.u / f.v, f.w / f.v, f.z / f.v};
}

Twistor twistor_from_chart(const ChartPoint& p) { return twistor_from_frame({p.u, p.w, p.z, 1.0}); }

NullGeodesic geodesic_from_twistor(const Twistor& z) {
  const double n2 = z.norm() * z.norm();
  const cplx ia = omega_dot_pibar(z);
  if (std::abs(2.0 * ia.real()) > kNullTol * n2) throw DomainError("twistor not null");
  const double a = ia.imag();
  if (std::abs(a) <= kInfinityTol * n2) throw DomainError("geodesic through infinity");

  const Mat2<cplx> x0 = spin::outer(z.omega, spin::conj(z.omega));
  Mat2<cplx> m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m[r][c] = x0[r][c] / a;
  NullGeodesic g;
  g.base = spinor_vector(m).vector.real_part();

  const Pair<cplx> pi_up = spin::raise(z.pi);
  const Event dir = spinor_vector(spin::outer(spin::conj(pi_up), pi_up)).vector.real_part();
  g.direction = dir * (1.0 / dir.x[0]);
  g.direction.x[0] = 1.0;
  return g;
}

ComplexEvent alpha_plane_base(const Twistor& z) {
  const cplx ia = omega_dot_pibar(z);
  const double n2 = z.norm() * z.norm();
  if (std::abs(2.0 * ia.real()) <= kNullTol * n2 && std::abs(ia.imag()) > kInfinityTol * n2) {
    const Event b = geodesic_from_twistor(z).base;
    return {CVec4{b.x[0], b.x[1], b.x[2], b.x[3]}};
  }
  // x0^{AA'} = -i omega^A xi^{A'} with xi^{A'} pi_A' = 1.
  const double p2 = std::norm(z.pi[0]) + std::norm(z.pi[1]);
  if (p2 == 0.0) throw DomainError("alpha_plane: pi is zero");
  const Pair<cplx> xi{std::conj(z.pi[0]) / p2, std::conj(z.pi[1]) / p2};
  const cplx mi(0.0, -1.0);
  const Pair<cplx> om{z.omega[0] * mi, z.omega[1] * mi};
  return {spin::from_matrix(spin::outer(om, xi))};
}

ComplexEvent alpha_plane(const Twistor& z, const Pair<cplx>& lambda_upper) {
  Mat2<cplx> m = alpha_plane_base(z).matrix();
  const Mat2<cplx> t = spin::outer(lambda_upper, spin::raise(z.pi));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m[r][c] += t[r][c];
  return {spin::from_matrix(m)};
}

TwoForm wedge(const ComplexEvent& u, const ComplexEvent& v) {
  TwoForm g;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      g.set(a, b, kMinkowski[a] * kMinkowski[b] * (u.x[a] * v.x[b] - u.x[b] * v.x[a]));
  return g;
}

ChartPoint reference_chart_point() { return {1.0, 0.0, 0.0}; }

Twistor reference_twistor() { return twistor_from_chart(reference_chart_point()); }

Event reference_event() { return geodesic_from_twistor(reference_twistor()).base; }

}  // namespace nullcong

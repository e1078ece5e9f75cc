#pragma once

// Twistors Z = (omega^A, pi_A'), the incidence relation, the null quadric and
// the (u, w, z, v) frame in which the quadric is diagonal.
//
// Frame:  z = (omega^0 + pi_0)/sqrt2,   w = (omega^0 - pi_0)/sqrt2,
//         v = (omega^1 + pi_1)/sqrt2,   u = i(omega^1 - pi_1)/sqrt2,
// so that Sigma(Z) = |z|^2 + |v|^2 - |u|^2 - |w|^2.

#include "nullcong/spinor.hpp"

namespace nullcong {

struct Twistor {
  Pair<cplx> omega{};  // omega^A
  Pair<cplx> pi{};     // pi_A'

  std::array<cplx, 4> components() const { return {omega[0], omega[1], pi[0], pi[1]}; }
  double norm() const;
  Twistor scaled(cplx s) const;
  // Divides by the largest-magnitude component.
  Twistor normalized() const;
};

// Projective distance: residual of the best complex fit b = s a, relative to |b|.
double projective_distance(const Twistor& a, const Twistor& b);

struct ChartPoint {
  cplx u, w, z;
  // 1 + |z|^2 - |u|^2 - |w|^2
  double rho() const;
};

// Frame coordinates before division by v.
struct FrameCoords {
  cplx u, w, z, v;
  double sigma() const;
};

struct NullGeodesic {
  Event base;
  Event direction;  // null, t-component 1

  Event at(double r) const { return base + direction * r; }
  // Euclidean distance from p to the line.
  double distance_to(const Event& p) const;
};

namespace tw {

// omega^A = i x^{AA'} pi_A'
template <typename S>
Pair<S> incidence(const Mat2<S>& x, const Pair<S>& pi) {
  const cplx i(0.0, 1.0);
  const Pair<S> r = spin::apply(x, pi);
  return {r[0] * i, r[1] * i};
}

// (u, w, z, v)
template <typename S>
std::array<S, 4> frame(const Pair<S>& omega, const Pair<S>& pi) {
  const double k = kInvSqrt2;
  const cplx i(0.0, 1.0);
  return {(omega[1] - pi[1]) * (i * k), (omega[0] - pi[0]) * k, (omega[0] + pi[0]) * k,
          (omega[1] + pi[1]) * k};
}

}  // namespace tw

// Throws DomainError on pi = 0.
Twistor incident_twistor(const Event& x, const Pair<cplx>& pi);
Twistor incident_twistor(const ComplexEvent& x, const Pair<cplx>& pi);

// 2 Re(omega^A conj(pi)_A)
double quadric_sigma(const Twistor& z);
// omega^A conj(pi)_A
cplx omega_dot_pibar(const Twistor& z);

FrameCoords chart_frame(const Twistor& z);
Twistor twistor_from_frame(const FrameCoords& f);
// Throws DomainError("chart undefined here") when |v| < 1e-12 |Z|.
ChartPoint chart_coords(const Twistor& z);
// The twistor with v = 1 at the given chart point.
Twistor twistor_from_chart(const ChartPoint& p);

// Throws DomainError("twistor not null") when |Sigma| > 1e-10 |Z|^2 and
// DomainError("geodesic through infinity") when omega.conj(pi) ~ 0.
NullGeodesic geodesic_from_twistor(const Twistor& z);

// A solution x0 of the incidence relation, real when Z is null with a finite
// geodesic, complex otherwise.
ComplexEvent alpha_plane_base(const Twistor& z);
// x0^{AA'} + lambda^A pi^{A'}
ComplexEvent alpha_plane(const Twistor& z, const Pair<cplx>& lambda_upper);

// u_a v_b - u_b v_a with indices lowered by the metric.
TwoForm wedge(const ComplexEvent& u, const ComplexEvent& v);

// Chart point (u, w, z) = (1, 0, 0) and the event on its geodesic used as x*.
ChartPoint reference_chart_point();
Twistor reference_twistor();
Event reference_event();

}  // namespace nullcong

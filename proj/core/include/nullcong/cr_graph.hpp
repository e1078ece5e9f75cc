#pragma once

// The congruence whose leaf space is the graph N' = {z = w g(u)} near the
// chart point (1,0,0). At an event x the spinor is pi = (zeta, 1), where zeta
// solves h(zeta) = z - w g(u) = 0 for (u,w,z) = chart(incident_twistor(x, pi)).

#include <string>

#include "nullcong/congruence.hpp"
#include "nullcong/cr_example.hpp"

namespace nullcong {

struct CrGraphParams {
  int max_iter = 50;
  double tol = 1e-12;
  int polish_steps = 2;
};

struct CrGraphSolution {
  cplx zeta;
  Pair<cplx> pi;  // (zeta, 1), primed lower
  ChartPoint chart;
  double residual = 0.0;  // |h| after polishing
  int iterations = 0;
};

// h and dh/dzeta at (x, zeta).
std::pair<cplx, cplx> cr_graph_equation(const Event& x, cplx zeta);

class CrGraphSolver {
 public:
  explicit CrGraphSolver(CrGraphParams p = {}) : p_(p) {}
  const CrGraphParams& params() const { return p_; }

  // Throws ConvergenceError, or DomainError when an iterate leaves the slit
  // plane or the chart.
  CrGraphSolution solve(const Event& x, cplx seed) const;

 private:
  CrGraphParams p_;
};

// x* and zeta* = 0 for the chart point (1,0,0).
Event cr_graph_reference_event();
inline constexpr double kCrGraphReferenceZeta = 0.0;

// The cr_graph field. Central differences only; the source carries a
// continuation seed, so fork() the field for each thread.
CongruenceField cr_graph_congruence(double step = CongruenceField::kDefaultStep, CrGraphParams p = {});

struct DomainRadius {
  Event center;
  double radius = 0.0;
  int solves = 0;
  bool reached_limit = false;  // no failure before r_max
  std::string first_failure;
};

// Marches outward from `center` along the eight coordinate half-axes with
// continuation, growing the step geometrically, until Newton fails or r_max is
// reached. Reports the smallest failure-free radius.
DomainRadius probe_domain_radius(const CrGraphSolver& solver, const Event& center, double r0 = 1e-3,
                                 double r_max = 1.0);

}  // namespace nullcong

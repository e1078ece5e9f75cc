#include "nullcong/cr_graph.hpp"

#include <algorithm>

namespace nullcong {

namespace {

using D1 = Dual<cplx, 1>;

constexpr double kChartTol = 1e-12;

// h(zeta) on the chart, with the complex derivative carried in D1.
D1 h_of(const Mat2<cplx>& xm, const D1& zeta) {
  const Pair<D1> pi{zeta, D1(1.0)};
  const Mat2<D1> x{{{D1(xm[0][0]), D1(xm[0][1])}, {D1(xm[1][0]), D1(xm[1][1])}}};
  const Pair<D1> omega = tw::incidence(x, pi);
  const std::array<D1, 4> f = tw::frame(omega, pi);  // (u, w, z, v)
  double norm = std::norm(zeta.v) + 1.0;
  for (const D1& c : omega) norm += std::norm(c.v);
  if (std::abs(f[3].v) < kChartTol * std::sqrt(norm)) throw DomainError("chart undefined here");
  const D1 u = f[0] / f[3], w = f[1] / f[3], z = f[2] / f[3];
  check_slit(u.v);
  return z - w * crx::g(u);
}

}  // namespace

std::pair<cplx, cplx> cr_graph_equation(const Event& x, cplx zeta) {
  const D1 h = h_of(x.matrix(), D1::variable(zeta, 0));
  return {h.v, h.d[0]};
}

CrGraphSolution CrGraphSolver::solve(const Event& x, cplx seed) const {
  const Mat2<cplx> xm = x.matrix();
  cplx zeta = seed;
  D1 h = h_of(xm, D1::variable(zeta, 0));
  int it = 0;
  while (std::abs(h.v) >= p_.tol) {
    if (it == p_.max_iter) throw ConvergenceError("Newton did not converge");
    if (h.d[0] == cplx(0.0)) throw ConvergenceError("Newton derivative vanished");
    zeta -= h.v / h.d[0];
    h = h_of(xm, D1::variable(zeta, 0));
    ++it;
    if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag())) throw ConvergenceError("Newton diverged");
  }
  for (int k = 0; k < p_.polish_steps && h.v != cplx(0.0) && h.d[0] != cplx(0.0); ++k) {
    const cplx next = zeta - h.v / h.d[0];
    const D1 hn = h_of(xm, D1::variable(next, 0));
    if (!(std::abs(hn.v) < std::abs(h.v))) break;
    zeta = next;
    h = hn;
  }
  CrGraphSolution s;
  s.zeta = zeta;
  s.pi = {zeta, 1.0};
  s.chart = chart_coords(incident_twistor(x, s.pi));
  s.residual = std::abs(h.v);
  s.iterations = it;
  return s;
}

Event cr_graph_reference_event() { return reference_event(); }

namespace {

class CrGraphSource final : public CongruenceSource {
 public:
  explicit CrGraphSource(CrGraphParams p) : solver_(p) {}
  std::string family() const override { return "cr_graph"; }
  Pair<cplx> eval(const Event& x) const override {
    const CrGraphSolution s = solver_.solve(x, seed_);
    seed_ = s.zeta;
    return s.pi;
  }
  std::unique_ptr<CongruenceSource> clone() const override {
    return std::make_unique<CrGraphSource>(*this);
  }

 private:
  CrGraphSolver solver_;
  mutable cplx seed_ = kCrGraphReferenceZeta;
};

}  // namespace

CongruenceField cr_graph_congruence(double step, CrGraphParams p) {
  return CongruenceField(std::make_shared<CrGraphSource>(p), Differentiation::CentralFD, step);
}

DomainRadius probe_domain_radius(const CrGraphSolver& solver, const Event& center, double r0, double r_max) {
  DomainRadius out;
  out.center = center;
  out.radius = r_max;
  const CrGraphSolution base = solver.solve(center, kCrGraphReferenceZeta);
  ++out.solves;
  for (int axis = 0; axis < 4; ++axis)
    for (double sign : {1.0, -1.0}) {
      cplx seed = base.zeta;
      double good = 0.0;
      std::string failure;
      for (double r = r0; r <= r_max; r *= 1.25) {
        Event x = center;
        x.x[axis] += sign * r;
        try {
          seed = solver.solve(x, seed).zeta;
          ++out.solves;
          good = r;
        } catch (const Error& e) {
          failure = e.what();
          break;
        }
      }
      if (good < out.radius) {
        out.radius = good;
        out.first_failure = failure;
      }
    }
  out.reached_limit = out.first_failure.empty();
  return out;
}

}  // namespace nullcong

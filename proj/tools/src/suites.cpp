#include "nullcong_cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nullcong/cr_example.hpp"
#include "nullcong/cr_graph.hpp"
#include "nullcong/grid.hpp"
#include "nullcong/maxwell.hpp"
#include "nullcong/twistor.hpp"

namespace nullcong::cli {

Check at_most(std::string name, double value, double bound, std::size_t samples) {
  return {std::move(name), value, bound, true, samples, value <= bound};
}

Check at_least(std::string name, double value, double bound, std::size_t samples) {
  return {std::move(name), value, bound, false, samples, value >= bound};
}

bool Suite::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check& Suite::find(const std::string& n) const {
  for (const Check& c : checks)
    if (c.name == n) return c;
  throw std::out_of_range("no check named " + n);
}

nlohmann::ordered_json to_json(const Check& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["status"] = c.pass ? "pass" : "fail";
  j["worst"] = c.value;
  j[c.upper ? "max_allowed" : "min_required"] = c.bound;
  j["samples"] = c.samples;
  return j;
}

nlohmann::ordered_json to_json(const Suite& s) {
  nlohmann::ordered_json j;
  j["suite"] = s.name;
  j["status"] = s.pass() ? "pass" : "fail";
  j["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : s.checks) j["checks"].push_back(to_json(c));
  return j;
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Draw {
  std::mt19937_64 gen;
  explicit Draw(std::uint64_t seed, std::uint64_t salt) : gen(seed * 0x9E3779B97F4A7C15ULL + salt) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  cplx complex(double r = 1.0) { return {uniform(-r, r), uniform(-r, r)}; }
  Pair<cplx> pair(double r = 1.0) { return {complex(r), complex(r)}; }
  Event event(double r = 1.0) { return {uniform(-r, r), uniform(-r, r), uniform(-r, r), uniform(-r, r)}; }
};

double pair_norm(const Pair<cplx>& p) { return std::hypot(std::abs(p[0]), std::abs(p[1])); }

}  // namespace

Suite spinor_identities(std::uint64_t seed, std::size_t draws) {
  Draw d(seed, 1);
  double worst = 0.0;
  for (std::size_t n = 0; n < draws; ++n) {
    const Event v = d.event(3.0), w = d.event(3.0);
    const cplx route = inner_spinor(v.matrix(), w.matrix());
    worst = std::max(worst, std::abs(route - inner(v, w)) / (v.euclidean_norm() * w.euclidean_norm()));
  }
  const auto m = epsilon_identity();
  double eps_err = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) eps_err = std::max(eps_err, std::abs(m[a][b] - (a == b ? 1.0 : 0.0)));
  return {"spinor identities",
          {at_most("epsilon route vs direct Minkowski product (relative)", worst, 1e-13, draws),
           at_most("eps^AB eps_CB - delta", eps_err, 0.0, 1)}};
}

Suite hodge_identities(std::uint64_t seed, std::size_t draws) {
  Draw d(seed, 2);
  double star2 = 0.0, routes = 0.0, sd = 0.0, asd = 0.0, alpha_sd = 0.0, rebuild = 0.0;
  const cplx i(0.0, 1.0);
  for (std::size_t n = 0; n < draws; ++n) {
    TwoForm g;
    for (auto& c : g.c) c = d.complex();
    const double s = max_abs(g);
    star2 = std::max(star2, max_abs(hodge_star(hodge_star(g)) + g) / s);
    routes = std::max(routes, max_abs(hodge_star(g) - hodge_star_tensor(g)) / s);
    const TwoFormSpinors ab = decompose_two_form(g);
    rebuild = std::max(rebuild, max_abs(assemble_two_form(ab.alpha, ab.beta) - g) / s);
    SymmetricSpinor2 zero_u, zero_p;
    zero_u.primed = false;
    const TwoForm plus = assemble_two_form(zero_u, ab.beta), minus = assemble_two_form(ab.alpha, zero_p);
    sd = std::max(sd, max_abs(hodge_star_tensor(plus) - i * plus) / s);
    asd = std::max(asd, max_abs(hodge_star_tensor(minus) + i * minus) / s);
    // the self-dual part has alpha = 0
    const TwoForm half = 0.5 * (g - i * hodge_star_tensor(g));
    alpha_sd = std::max(alpha_sd, decompose_two_form(half).alpha.norm() / s);
  }
  return {"hodge star",
          {at_most("**G + G", star2, 1e-13, draws),
           at_most("spinor vs tensor route for *G", routes, 1e-13, draws),
           at_most("G rebuilt from (alpha, beta)", rebuild, 1e-13, draws),
           at_most("*(eps beta) - i (eps beta)", sd, 1e-13, draws),
           at_most("*(alpha eps) + i (alpha eps)", asd, 1e-13, draws),
           at_most("alpha of the self-dual part", alpha_sd, 1e-13, draws)}};
}

Suite twistor_round_trip(std::uint64_t seed, std::size_t draws) {
  Draw d(seed, 3);
  double sigma = 0.0, dist = 0.0;
  std::size_t used = 0, skipped = 0;
  while (used < draws) {
    const Event x = d.event(3.0);
    const Pair<cplx> pi = d.pair();
    const Twistor z = incident_twistor(x, pi);
    sigma = std::max(sigma, std::abs(quadric_sigma(z)) / std::max(1.0, z.norm() * z.norm()));
    // nearly asymptotic geodesics are ill-conditioned; skip them
    if (std::abs(omega_dot_pibar(z).imag()) < 0.1 * pair_norm(pi) * pair_norm(pi)) {
      ++skipped;
      continue;
    }
    ++used;
    dist = std::max(dist, geodesic_from_twistor(z).distance_to(x));
  }
  return {"twistor round trip",
          {at_most("Sigma of incident twistors (relative)", sigma, 1e-13, used + skipped),
           at_most("distance from source event to reconstructed geodesic", dist, 1e-10, used)}};
}

Suite frame_diagonalization(std::uint64_t seed, std::size_t draws) {
  Draw d(seed, 4);
  double worst = 0.0;
  for (std::size_t n = 0; n < draws; ++n) {
    const Twistor z{d.pair(), d.pair()};
    const double s = z.norm() * z.norm();
    worst = std::max(worst, std::abs(quadric_sigma(z) - chart_frame(z).sigma()) / s);
  }
  return {"frame diagonalization", {at_most("Sigma vs |z|^2+|v|^2-|u|^2-|w|^2 (relative)", worst, 1e-12, draws)}};
}

Suite shear_suite(std::uint64_t seed, std::size_t draws) {
  Draw d(seed, 5);
  double constant = 0.0, kerr = 0.0, min_twist = 1e300;
  for (std::size_t n = 0; n < draws; ++n) {
    const Event x = d.event(2.0);
    constant = std::max(constant, shear(constant_congruence(d.pair()), x).sigma_norm_scaled);
    kerr = std::max(kerr, shear(linear_kerr(d.pair(), d.pair()), x).sigma_norm_scaled);
  }
  const CongruenceField generic = linear_kerr({cplx(0.5, 0.2), cplx(-0.3, 1.0)}, {cplx(1.0, 0.0), cplx(0.2, -0.4)});
  const std::size_t twist_draws = std::min<std::size_t>(draws, 100);
  for (std::size_t n = 0; n < twist_draws; ++n) min_twist = std::min(min_twist, twist(generic, d.event(0.5)));

  const Pair<cplx> o0{cplx(1, 0.5), cplx(-0.2, 1)};
  std::array<Pair<cplx>, 4> m{{{cplx(0.3, 0), cplx(0, 1)},
                               {cplx(-1, 0.2), cplx(0.5, 0.5)},
                               {cplx(0, 0.7), cplx(0.1, 0)},
                               {cplx(0.4, -0.4), cplx(1, 0)}}};
  std::array<Pair<cplx>, 4> m2 = m;
  for (auto& p : m2)
    for (auto& c : p) c *= 2.0;
  const CongruenceField a = affine_congruence(o0, m), b = affine_congruence({2.0 * o0[0], 2.0 * o0[1]}, m2);
  double law = 0.0;
  for (int n = 0; n < 10; ++n) {
    const Event x = d.event(0.5);
    const ShearReport ra = shear(a, x), rb = shear(b, x);
    for (int k = 0; k < 2; ++k) law = std::max(law, std::abs(rb.sigma[k] - 8.0 * ra.sigma[k]) / std::abs(8.0 * ra.sigma[k]));
  }
  return {"shear analyzer",
          {at_most("constant family |sigma|/|o|^3", constant, 0.0, draws),
           at_most("linear_kerr |sigma|/|o|^3 (AD)", kerr, 1e-10, draws),
           at_least("linear_kerr twist", min_twist, 1e-3, twist_draws),
           at_most("sigma(2o) - 8 sigma(o) (relative)", law, 1e-12, 10)}};
}

Suite cr_graph_suite(int workers) {
  const GridSpec grid = GridSpec::spatial(cr_graph_reference_event() + Event(0, 0.1, 0.1, 0.1), 0.05, 9);
  const std::vector<Event> pts = grid.events();
  const CrGraphSolver solver;
  // continuation seeds from a serial pass
  std::vector<double> residual(pts.size());
  cplx seed = kCrGraphReferenceZeta;
  for (std::size_t n = 0; n < pts.size(); ++n) {
    const CrGraphSolution s = solver.solve(pts[n], seed);
    seed = s.zeta;
    residual[n] = s.residual;
  }
  const CongruenceField coarse = cr_graph_congruence(1e-3), fine = cr_graph_congruence(5e-4);
  std::vector<double> sa(pts.size()), sb(pts.size()), tw(pts.size());
  for_each_partition(pts.size(), workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    const CongruenceField a = coarse.fork(), b = fine.fork();
    for (std::size_t n = begin; n < end; ++n) {
      sa[n] = shear(a, pts[n]).sigma_norm_scaled;
      const ShearReport rb = shear(b, pts[n]);
      sb[n] = rb.sigma_norm_scaled;
      tw[n] = rb.twist_norm;
    }
  });
  const double ha = *std::max_element(sa.begin(), sa.end()), hb = *std::max_element(sb.begin(), sb.end());
  const double ratio = ha / hb;
  return {"cr_graph congruence",
          {at_most("|h| after Newton", *std::max_element(residual.begin(), residual.end()), 1e-12, pts.size()),
           at_least("shear ratio h=1e-3 over h=5e-4", ratio, 3.5, pts.size()),
           at_most("shear ratio h=1e-3 over h=5e-4 (upper)", ratio, 4.5, pts.size()),
           at_least("twist", *std::min_element(tw.begin(), tw.end()), 1e-3, pts.size())}};
}

Suite slit_plane_suite(std::uint64_t seed, std::size_t samples) {
  Draw d(seed, 7);
  Suite s{"slit-plane example", {}};

  // N1: slit plane with the half-open branch
  bool slit_rejected = false;
  try {
    g_eval(cplx(2.0));
  } catch (const DomainError&) {
    slit_rejected = true;
  }
  const SlitPlanePoint below = SlitPlanePoint::make(cplx(2.0, -1e-9)), above = SlitPlanePoint::make(cplx(2.0, 1e-9));
  const bool branch = below.theta < kPi && above.theta >= -kPi && std::abs(below.theta - above.theta) > 6.0;
  s.checks.push_back(at_least("N1 slit rejected and branch in [-pi, pi)", slit_rejected && branch ? 1.0 : 0.0, 1.0, 3));

  // N2: continuity at u = 1
  double near = 0.0;
  for (double theta : {0.0, kPi / 2, -kPi / 2, 0.9 * kPi})
    near = std::max(near, std::abs(g_eval(SlitPlanePoint::polar(1e-12, theta))));
  s.checks.push_back(at_most("N2 |g(1)| and |g| at |u-1| = 1e-12", std::max(near, std::abs(g_eval(cplx(1.0)))), 1e-300, 5));

  // N3: infinite-order vanishing on four rays
  double tail = 0.0;
  bool probes = true;
  for (double theta : {-1e-9, kPi / 2, -kPi / 2, 0.75 * kPi})
    for (int k = 1; k <= 12; ++k) {
      const ProbeResult p = vanishing_order_probe(k, theta);
      probes = probes && p.pass;
      tail = std::max(tail, p.tail_sup);
    }
  s.checks.push_back(at_most("N3 tail sup of |g/(u-1)^k|, k <= 12, 4 rays", probes ? tail : 1.0, 1e-8, 48));

  // N4 and N5 on random slit-plane samples, radii log-uniform in [1e-6, 1e3]
  double min_g = 1e300, max_g = 0.0;
  for (std::size_t n = 0; n < samples; ++n) {
    const double r = std::pow(10.0, d.uniform(-6.0, 3.0));
    const double theta = d.uniform(-kPi, kPi);
    const double g = std::abs(g_eval(SlitPlanePoint::polar(r, theta)));
    min_g = std::min(min_g, g);
    max_g = std::max(max_g, g);
  }
  s.checks.push_back(at_least("N4 min |g| away from u = 1", min_g, 1e-300, samples));
  s.checks.push_back(at_most("N5 max |g|", max_g, 1.0 / 3.0, samples));

  const LeviResult l0 = levi_matrix({1.0, 0.0});
  double diag = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) diag = std::max(diag, std::abs(l0.m[a][b] - (a == b ? -1.0 : 0.0)));
  s.checks.push_back(at_most("Levi matrix at (1,0) minus diag(-1,-1)", diag, 1e-8, 1));

  const auto t_points = sample_T(100, seed + 17);
  double max_eig = -1e300;
  for (const GraphPoint& p : t_points) max_eig = std::max(max_eig, levi_matrix(p).eigenvalues[1]);
  s.checks.push_back(at_most("largest Levi eigenvalue on T near (1,0)", max_eig, -1e-6, t_points.size()));

  double lt = 0.0, jl = 0.0;
  const auto l_points = sample_T(1000, seed + 23);
  for (const GraphPoint& p : l_points) {
    const CrVector l = cr_vector_L(p);
    lt = std::max(lt, std::abs(apply_L_to_t(l, p)));
    jl = std::max(jl, std::abs(apply_jL_to_rho(l, p)));
  }
  s.checks.push_back(at_most("L t on T", lt, 1e-12, l_points.size()));
  s.checks.push_back(at_most("j_*L rho on T", jl, 1e-12, l_points.size()));
  return s;
}

Suite maxwell_suite(int workers) {
  const Pair<cplx> lam{cplx(0.5, 0.2), cplx(-0.3, 1.0)}, mu{cplx(1.0, 0.0), cplx(0.2, -0.4)};
  const Event kerr_center(0, 0.1, 0.2, -0.1);
  const std::vector<Event> plane_grid = GridSpec::cube(Event(), 0.5, 9).events();
  const std::vector<Event> kerr_grid = GridSpec::cube(kerr_center, 0.2, 9).events();
  auto run = [&](const CongruenceField& c, const std::string& prof, const Event& anchor,
                 const std::vector<Event>& pts) {
    return maxwell_residual(NullFieldSpec(c, profile(prof), anchor), pts, workers);
  };
  const CongruenceField plane = constant_congruence({1.0, 0.0}), kerr = linear_kerr(lam, mu);
  const FieldReport pw = run(plane, "one", Event(), plane_grid);
  const FieldReport pa = run(plane, "a2", Event(), plane_grid);
  const FieldReport ka = run(kerr, "a2", kerr_center, kerr_grid);
  const FieldReport ke = run(kerr, "expb", kerr_center, kerr_grid);
  const FieldReport bad = run(kerr, "conja", kerr_center, kerr_grid);

  double rank1 = 0.0, trace = 0.0, agree = 0.0;
  std::size_t failures = 0;
  for (const FieldReport* r : {&pw, &pa, &ka, &ke, &bad}) {
    agree = std::max(agree, r->route_agreement);
    failures += r->failures;
  }
  for (const FieldReport* r : {&pw, &pa, &ka, &ke}) {
    rank1 = std::max(rank1, r->energy_rank1_defect);
    trace = std::max(trace, r->energy_trace);
  }
  const std::size_t n = kerr_grid.size();
  return {"maxwell",
          {at_most("plane wave, lambda = 1", pw.maxwell_residual, 1e-10, n),
           at_most("plane wave, F = a^2", pa.maxwell_residual, 1e-10, n),
           at_most("linear_kerr, F = a^2", ka.maxwell_residual, 1e-10, n),
           at_most("linear_kerr, F = exp(b)", ke.maxwell_residual, 1e-10, n),
           at_least("linear_kerr, F = conj(a) (negative control)", bad.maxwell_residual, 1e-3, n),
           at_most("tensor and spinor routes agree", agree, 1e-10, 5 * n),
           at_most("energy tensor rank-1 defect", rank1, 1e-10, 4 * n),
           at_most("energy tensor trace", trace, 1e-12, 4 * n),
           at_most("failed points", static_cast<double>(failures), 0.0, 5 * n)}};
}

Suite conformal_suite(std::uint64_t seed, std::size_t draws) {
  Draw d(seed, 9);
  const CongruenceField c = conformal_invert(constant_congruence({cplx(1, 0.2), cplx(0.3, -0.5)}));
  const CongruenceField k = conformal_invert(linear_kerr(d.pair(), d.pair()));
  double wc = 0.0, wk = 0.0;
  std::size_t used = 0;
  while (used < draws) {
    const Event p = d.event(2.0);
    if (std::abs(inner(p, p)) < 0.05) continue;
    ++used;
    wc = std::max(wc, shear(c, p).sigma_norm_scaled);
    wk = std::max(wk, shear(k, p).sigma_norm_scaled);
  }
  return {"conformal inversion",
          {at_most("inverted constant |sigma|/|o|^3", wc, 1e-8, draws),
           at_most("inverted linear_kerr |sigma|/|o|^3", wk, 1e-8, draws)}};
}

}  // namespace nullcong::cli

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nullcong/cr_example.hpp"
#include "test_support.hpp"

using namespace nullcong;

namespace {

const double kPi = std::numbers::pi;

cplx random_slit_plane(nctest::Rng& rng) {
  for (;;) {
    const cplx u(rng.uniform(-4, 6), rng.uniform(-4, 4));
    if (!(u.imag() == 0.0 && u.real() > 1.0)) return u;
  }
}

}  // namespace

TEST_CASE("g at hand-evaluated points") {
  CHECK(g_eval(cplx(1.0)) == cplx(0.0));
  CHECK(std::abs(g_eval(cplx(0.5)) - std::exp(-std::pow(2.0, 0.25)) / 3.0) < 1e-16);
  CHECK(std::abs(g_eval(cplx(0.5)) - 0.10149) < 1e-5);
  CHECK(std::abs(g_eval(cplx(0.0)) - 0.12263) < 1e-5);
}

TEST_CASE("slit handling") {
  CHECK_THROWS_WITH_AS(g_eval(cplx(2.0)), "slit crossed", DomainError);
  CHECK_THROWS_AS(SlitPlanePoint::make(cplx(1.5, 0.0)), DomainError);
  CHECK(SlitPlanePoint::make(cplx(2.0, 1e-13)).near_slit);
  CHECK_FALSE(SlitPlanePoint::make(cplx(0.5, 1e-13)).near_slit);
  const SlitPlanePoint one = SlitPlanePoint::make(cplx(1.0));
  CHECK(one.r == 0.0);
  // the jump across the slit is real
  CHECK(std::abs(g_eval(cplx(3.0, 1e-9)) - g_eval(cplx(3.0, -1e-9))) > 1e-2);
  // branch: theta in [-pi, pi)
  const SlitPlanePoint p = SlitPlanePoint::polar(0.5, -kPi / 2);
  CHECK(p.theta == doctest::Approx(-kPi / 2));
}

TEST_CASE("|g| matches the closed-form modulus") {
  nctest::Rng rng(201);
  for (int n = 0; n < 1000; ++n) {
    const SlitPlanePoint p = SlitPlanePoint::make(random_slit_plane(rng));
    const double got = std::abs(g_eval(p));
    CHECK(std::abs(got - g_modulus_closed_form(p)) <= 1e-14 * got + 1e-300);
  }
}

TEST_CASE("g is holomorphic: AD derivative matches differences in both directions") {
  nctest::Rng rng(203);
  for (int n = 0; n < 200; ++n) {
    const cplx u = random_slit_plane(rng);
    if (std::abs(1.0 - u) < 0.05 || (u.real() > 1.0 && std::abs(u.imag()) < 0.01)) continue;
    const auto [g, gp] = g_with_derivative(u);
    const double h = 1e-6;
    const cplx dx = (g_eval(u + h) - g_eval(u - h)) / (2 * h);
    const cplx dy = (g_eval(u + cplx(0, h)) - g_eval(u - cplx(0, h))) / cplx(0, 2 * h);
    CHECK(std::abs(dx - gp) < 1e-7 * (1 + std::abs(gp)));
    CHECK(std::abs(dy - gp) < 1e-7 * (1 + std::abs(gp)));
    CHECK(std::abs(g) > 0.0);
  }
}

TEST_CASE("global bound and nonvanishing") {
  nctest::Rng rng(207);
  double worst = 0.0, smallest = 1.0;
  for (int n = 0; n < 100000; ++n) {
    const cplx u = random_slit_plane(rng);
    const double m = std::abs(g_eval(u));
    worst = std::max(worst, m);
    if (std::abs(u - 1.0) > 1e-6) smallest = std::min(smallest, m);
  }
  CHECK(worst <= 1.0 / 3.0);
  CHECK(smallest > 0.0);
}

TEST_CASE("t on hand cases and on the boundary of E") {
  CHECK(t_eval({1.0, 0.0}) == 0.0);
  CHECK(t_eval({0.0, 0.0}) == 1.0);
  nctest::Rng rng(211);
  for (int n = 0; n < 500; ++n) {
    const double ru = std::sqrt(rng.uniform(0.0, 0.999));
    const cplx u = std::polar(ru, rng.uniform(-kPi, kPi));
    const cplx w = std::polar(std::sqrt(2.0 - 2.0 * ru * ru), rng.uniform(-kPi, kPi));
    const GraphPoint p{u, w};
    CHECK(p.in_E(1e-12));
    const double t = t_eval(p);
    const double g2 = std::norm(g_eval(u));
    CHECK(t == doctest::Approx(std::norm(w) * (g2 - 0.5)).epsilon(1e-12));
    CHECK(t < 0.0);
  }
  // equality on the boundary only at |u| = 1, w = 0
  CHECK(t_eval({std::polar(1.0, 0.3), 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("gradient of t at (1,0) is -du - du-bar, pointing into E") {
  const auto g = t_gradient({1.0, 0.0});
  CHECK(g[0] == doctest::Approx(-2.0));
  CHECK(std::abs(g[1]) + std::abs(g[2]) + std::abs(g[3]) < 1e-15);
  // inward direction at (1,0) decreases Re u
  const double iv_dt = -g[0];
  CHECK(iv_dt > 0.0);
}

TEST_CASE("Levi matrix") {
  const LeviResult q = levi_matrix({1.0, 0.0});
  CHECK(std::abs(q.m[0][0] + 1.0) < 1e-8);
  CHECK(std::abs(q.m[1][1] + 1.0) < 1e-8);
  CHECK(std::abs(q.m[0][1]) < 1e-8);
  CHECK(q.on_T);
  CHECK(q.negative_definite());

  for (const GraphPoint& p : sample_T(100, 5)) {
    CHECK(std::abs(p.u - 1.0) < 0.05);
    CHECK(std::abs(p.w) < 0.05);
    const LeviResult r = levi_matrix(p);
    CHECK(r.on_T);
    CHECK(r.negative_definite());
    CHECK(std::abs(r.m[0][1] - std::conj(r.m[1][0])) < 1e-13);
    const Mat2<cplx> printed = levi_matrix_printed(p);
    CHECK(std::abs(r.m[0][0] - printed[0][0]) < 1e-10);
    CHECK(std::abs(r.m[1][1] - printed[1][1]) < 1e-10);
  }

  // away from (1,0) the AD matrix still tracks the printed entries
  nctest::Rng rng(213);
  for (int n = 0; n < 50; ++n) {
    const GraphPoint p{cplx(rng.uniform(-0.5, 0.8), rng.uniform(-0.5, 0.5)), rng.complex(0.7)};
    const LeviResult r = levi_matrix(p);
    const Mat2<cplx> printed = levi_matrix_printed(p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(r.m[i][j] - printed[i][j]) < 1e-10);
  }
}

TEST_CASE("CR vector field L") {
  const CrVector l0 = cr_vector_L({1.0, 0.0});
  CHECK(std::abs(l0.a) < 1e-15);
  CHECK(std::abs(l0.b - 1.0) < 1e-15);

  for (const GraphPoint& p : sample_T(1000, 7)) {
    const CrVector l = cr_vector_L(p);
    CHECK(std::abs(apply_L_to_t(l, p)) < 1e-12);
    CHECK(std::abs(apply_jL_to_rho(l, p)) < 1e-12);
    CHECK(proportionality_defect(l, cr_vector_L_printed(p)) < 1e-12);
  }
}

TEST_CASE("L t = 0 by differences along the complex direction") {
  // For real t: d/ds t(p + s L) = 2 Re(L t), d/ds t(p + i s L) = -2 Im(L t).
  for (const GraphPoint& p : sample_T(50, 9)) {
    const CrVector l = cr_vector_L(p);
    const double h = 1e-6;
    for (cplx dir : {cplx(1, 0), cplx(0, 1)}) {
      const GraphPoint pp{p.u + h * dir * l.a, p.w + h * dir * l.b};
      const GraphPoint pm{p.u - h * dir * l.a, p.w - h * dir * l.b};
      CHECK(std::abs(t_eval(pp) - t_eval(pm)) / (2 * h) < 1e-8);
    }
  }
}

TEST_CASE("embedding j") {
  const ChartPoint a = embed_j({1.0, 0.0});
  CHECK(a.u == cplx(1.0));
  CHECK(a.w == cplx(0.0));
  CHECK(a.z == cplx(0.0));
  const ChartPoint b = embed_j({0.0, 1.0});
  CHECK(std::abs(b.z - std::exp(-1.0) / 3.0) < 1e-16);
  for (const GraphPoint& p : sample_T(500, 11)) CHECK(std::abs(embed_j(p).rho()) < 1e-12);
}

TEST_CASE("infinite-order vanishing probe") {
  const ProbeResult a = vanishing_order_probe(1, 0.0);
  CHECK(a.pass);
  CHECK(a.j.front() == 4);
  CHECK(a.j.back() == 40);
  const ProbeResult b = vanishing_order_probe(8, -kPi / 2);
  CHECK(b.pass);
  CHECK(b.tail_sup < 1e-8);
  for (int k = 1; k <= 12; ++k)
    for (double th : {0.0, -kPi / 2, kPi / 2, 3 * kPi / 4}) CHECK(vanishing_order_probe(k, th).pass);
  CHECK_THROWS_AS(vanishing_order_probe(0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(vanishing_order_probe(13, 0.0), std::invalid_argument);
}

TEST_CASE("probe against direct evaluation where g is representable") {
  // at j = 4..12 the ratio is representable; compare with the log-domain value
  const ProbeResult p = vanishing_order_probe(3, 0.4);
  for (std::size_t i = 0; i < 9; ++i) {
    const double r = std::ldexp(1.0, -p.j[i]);
    const cplx u = 1.0 - std::polar(r, 0.4);
    const double direct = std::log10(std::abs(g_eval(u) / std::pow(u - 1.0, 3)));
    CHECK(direct == doctest::Approx(p.log10_ratio[i]).epsilon(1e-12));
  }
}

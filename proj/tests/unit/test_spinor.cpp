#include <cmath>

#include "doctest.h"
#include "nullcong/spinor.hpp"
#include "test_support.hpp"

using namespace nullcong;

namespace {

const cplx I(0.0, 1.0);
const double r2 = std::sqrt(2.0);

}  // namespace

TEST_CASE("raise and lower follow eps_01 = +1") {
  const Spinor2 up(1.0, 0.0, IndexKind::UnprimedUpper);
  const Spinor2 low = raise_lower(up, IndexPosition::Lower);
  CHECK(low.kind() == IndexKind::UnprimedLower);
  CHECK(low[0] == cplx(0.0));
  CHECK(low[1] == cplx(1.0));
  CHECK(raise_lower(low, IndexPosition::Upper) == up);

  CHECK_THROWS_AS(raise_lower(up, IndexPosition::Upper), std::invalid_argument);
}

TEST_CASE("round trip and xi^A xi_A = 0 on random spinors") {
  nctest::Rng rng(11);
  for (int n = 0; n < 1000; ++n) {
    const Spinor2 s(rng.pair(3.0), IndexKind::PrimedUpper);
    const Spinor2 l = raise_lower(s, IndexPosition::Lower);
    REQUIRE(raise_lower(l, IndexPosition::Upper) == s);
    REQUIRE(contract(s, l) == cplx(0.0));
  }
}

TEST_CASE("conjugation swaps families and is an involution") {
  const Spinor2 s(cplx(1, 2), cplx(-3, 0.5), IndexKind::PrimedLower);
  const Spinor2 c = s.conjugate();
  CHECK(c.kind() == IndexKind::UnprimedLower);
  CHECK(c[0] == cplx(1, -2));
  CHECK(c.conjugate() == s);
}

TEST_CASE("contract rejects mismatched families") {
  const Spinor2 a(1.0, 0.0, IndexKind::UnprimedUpper);
  const Spinor2 b(1.0, 0.0, IndexKind::PrimedLower);
  CHECK_THROWS_AS(contract(a, b), std::invalid_argument);
  CHECK_THROWS_AS(contract(a, a), std::invalid_argument);
}

TEST_CASE("eps^{AB} eps_{CB} is the identity") {
  const auto m = epsilon_identity();
  CHECK(m[0][0] == 1.0);
  CHECK(m[0][1] == 0.0);
  CHECK(m[1][0] == 0.0);
  CHECK(m[1][1] == 1.0);
}

TEST_CASE("dyad map on hand-computed vectors") {
  const auto t = vector_spinor(Event(1, 0, 0, 0));
  CHECK(std::abs(t[0][0] - 1.0 / r2) < 2e-16);
  CHECK(std::abs(t[1][1] - 1.0 / r2) < 2e-16);
  CHECK(t[0][1] == cplx(0.0));
  CHECK(inner_spinor(t, t).real() == doctest::Approx(1.0).epsilon(1e-15));

  const auto k = vector_spinor(Event(1, 0, 0, 1));
  CHECK(std::abs(k[0][0] - r2) < 1e-15);
  CHECK(std::abs(k[0][1]) + std::abs(k[1][0]) + std::abs(k[1][1]) == 0.0);

  const Spinor2 o = factor_null(Event(1, 0, 0, 1));
  CHECK(std::abs(o[0] - std::pow(2.0, 0.25)) < 1e-15);
  CHECK(o[1] == cplx(0.0));

  const auto z = vector_spinor(Event(0, 0, 0, 0));
  for (const auto& row : z)
    for (const auto& c : row) CHECK(c == cplx(0.0));

  // x + iy sits in the (0,1') slot.
  const auto y = vector_spinor(Event(0, 0, 1, 0));
  CHECK(std::abs(y[0][1] - I / r2) < 2e-16);
  CHECK(std::abs(y[1][0] + I / r2) < 2e-16);
}

TEST_CASE("inverse dyad map recovers coordinates and flags non-Hermitian input") {
  nctest::Rng rng(3);
  for (int n = 0; n < 100; ++n) {
    const Event v = rng.event(5.0);
    const VectorFromSpinor back = spinor_vector(vector_spinor(v));
    CHECK(back.hermitian);
    for (int a = 0; a < 4; ++a) CHECK(std::abs(back.vector.x[a] - v[a]) < 1e-14);
  }
  Mat2<cplx> m{{{1.0, I}, {I, 0.0}}};
  const VectorFromSpinor c = spinor_vector(m);
  CHECK_FALSE(c.hermitian);
  CHECK_FALSE(c.vector.is_real());
}

TEST_CASE("metric factorization: eps route equals Minkowski product") {
  nctest::Rng rng(17);
  CHECK(inner(Event(1, 0, 0, 0), Event(1, 0, 0, 0)) == 1.0);
  CHECK(inner(Event(1, 1, 0, 0), Event(1, 1, 0, 0)) == 0.0);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const Event v = rng.event(), w = rng.event();
    const double direct = inner(v, w);
    const cplx route = inner_spinor(v.matrix(), w.matrix());
    const double scale = v.euclidean_norm() * w.euclidean_norm();
    worst = std::max(worst, std::abs(route - direct) / scale);
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("factor_null reproduces random future null vectors") {
  nctest::Rng rng(5);
  for (int n = 0; n < 200; ++n) {
    const Event s = rng.event();
    const double r = std::sqrt(s[1] * s[1] + s[2] * s[2] + s[3] * s[3]);
    const Event k(r, s[1], s[2], s[3]);
    const Spinor2 o = factor_null(k);
    const auto m = spin::outer(o.components(), spin::conj(o.components()));
    const Event back = spinor_vector(m).vector.real_part();
    CHECK((back - k).euclidean_norm() < 1e-14 * k.euclidean_norm() + 1e-15);
  }
  CHECK_THROWS_AS(factor_null(Event(1, 0.5, 0, 0)), DomainError);
  CHECK_THROWS_AS(factor_null(Event(-1, 1, 0, 0)), DomainError);
}

TEST_CASE("null_vector_from gives o^A o^A' for a primed-lower spinor") {
  // o_A' = (1,0) raises to o^A' = (0,-1), so k^{AA'} has only the (1,1') slot.
  const Event k = null_vector_from({1.0, 0.0});
  CHECK(k[0] == doctest::Approx(1.0 / r2));
  CHECK(k[3] == doctest::Approx(-1.0 / r2));
  CHECK(std::abs(inner(k, k)) < 1e-16);
}

TEST_CASE("factor_symmetric: hand cases") {
  SymmetricSpinor2 phi;
  phi.c = {0.0, 0.5, 0.0};
  const SymmetricFactors f = factor_symmetric(phi);
  CHECK_FALSE(f.repeated);
  // factors proportional to (1,0) and (0,1), in some order
  const bool order1 = std::abs(f.o[1]) < 1e-15 && std::abs(f.iota[0]) < 1e-15;
  const bool order2 = std::abs(f.o[0]) < 1e-15 && std::abs(f.iota[1]) < 1e-15;
  CHECK((order1 || order2));

  SymmetricSpinor2 oo;
  oo.c = {1.0, 0.0, 0.0};
  const SymmetricFactors g = factor_symmetric(oo);
  CHECK(g.repeated);
  CHECK(g.o[0] == cplx(1.0));
  CHECK(g.o[1] == cplx(0.0));
  CHECK(g.iota == g.o);

  SymmetricSpinor2 top;
  top.c = {0.0, 0.0, 2.0};
  const SymmetricFactors h = factor_symmetric(top);
  CHECK(h.o[1] == cplx(1.0));
  CHECK(std::abs(h.scale - 2.0) < 1e-15);

  SymmetricSpinor2 zero;
  CHECK_THROWS_WITH_AS(factor_symmetric(zero), "zero spinor has no principal directions", DomainError);
}

TEST_CASE("factor_symmetric: degenerate leading coefficient gives the root at infinity") {
  SymmetricSpinor2 phi;  // o = (1,0), iota = (1,1): phi = (1, 1/2, 0)
  phi.c = {1.0, 0.5, 0.0};
  const SymmetricFactors f = factor_symmetric(phi);
  const bool inf_o = std::abs(f.o[1]) < 1e-15, inf_i = std::abs(f.iota[1]) < 1e-15;
  CHECK((inf_o || inf_i));
}

TEST_CASE("factor_symmetric reconstructs random spinors") {
  nctest::Rng rng(23);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    SymmetricSpinor2 phi;
    for (auto& c : phi.c) c = rng.complex();
    const SymmetricFactors f = factor_symmetric(phi);
    SymmetricSpinor2 back = SymmetricSpinor2::symmetrized(f.o.components(), f.iota.components());
    double err = 0.0;
    for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(f.scale * back.c[i] - phi.c[i]));
    worst = std::max(worst, err / phi.norm());
    // normalization: unit norm, larger component real positive
    for (const Spinor2* s : {&f.o, &f.iota}) {
      REQUIRE(std::abs(s->norm() - 1.0) < 1e-14);
      const cplx big = std::abs((*s)[0]) >= std::abs((*s)[1]) ? (*s)[0] : (*s)[1];
      REQUIRE(big.real() > 0.0);
      REQUIRE(std::abs(big.imag()) < 1e-15);
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("null symmetric spinor has proportional factors") {
  nctest::Rng rng(29);
  for (int n = 0; n < 500; ++n) {
    const auto o = rng.pair();
    const cplx lam = rng.complex();
    SymmetricSpinor2 phi = SymmetricSpinor2::symmetrized(o, o);
    for (auto& c : phi.c) c *= lam;
    REQUIRE(std::abs(phi.self_contraction()) < 1e-14);
    const SymmetricFactors f = factor_symmetric(phi);
    const cplx det = f.o[0] * f.iota[1] - f.o[1] * f.iota[0];
    CHECK(std::abs(det) < 1e-6);
    const cplx od = f.o[0] * o[1] - f.o[1] * o[0];
    CHECK(std::abs(od) < 1e-6 * std::sqrt(spin::norm2(o).real()));
  }
}

TEST_CASE("two-form decomposition: constructed case and round trip") {
  TwoForm zero;
  const TwoFormSpinors z = decompose_two_form(zero);
  for (int i = 0; i < 3; ++i) CHECK((z.alpha.c[i] == cplx(0.0) && z.beta.c[i] == cplx(0.0)));

  // G = eps_AB o_A' o_B' with o = (1,0), expanded by hand in coordinates.
  TwoForm g;
  g.c = {0.5, -0.5 * I, 0.0, 0.0, -0.5, 0.5 * I};
  const TwoFormSpinors d = decompose_two_form(g);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(d.alpha.c[i]) < 1e-15);
  CHECK(std::abs(d.beta.c[0] - 1.0) < 1e-15);
  CHECK(std::abs(d.beta.c[1]) < 1e-15);
  CHECK(std::abs(d.beta.c[2]) < 1e-15);
  CHECK(max_abs(assemble_two_form(d.alpha, d.beta) - g) < 1e-15);

  nctest::Rng rng(31);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const TwoForm h = rng.two_form();
    const TwoFormSpinors s = decompose_two_form(h);
    worst = std::max(worst, max_abs(assemble_two_form(s.alpha, s.beta) - h));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("real two-forms have beta = conj(alpha)") {
  nctest::Rng rng(37);
  for (int n = 0; n < 200; ++n) {
    TwoForm real;
    for (auto& c : real.c) c = rng.uniform();
    const TwoFormSpinors s = decompose_two_form(real);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(s.beta.c[i] - std::conj(s.alpha.c[i])) < 1e-15);

    const TwoForm cx = rng.two_form();
    const TwoFormSpinors t = decompose_two_form(cx);
    double dev = 0.0;
    for (int i = 0; i < 3; ++i) dev = std::max(dev, std::abs(t.beta.c[i] - std::conj(t.alpha.c[i])));
    CHECK(dev > 1e-6);
  }
}

TEST_CASE("Hodge star: eigenspaces, anti-involution, tensor route") {
  nctest::Rng rng(41);
  const cplx i(0.0, 1.0);
  double worst_ss = 0.0, worst_route = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const TwoForm g = rng.two_form();
    const TwoForm s = hodge_star(g);
    worst_ss = std::max(worst_ss, max_abs(hodge_star(s) + g));
    worst_route = std::max(worst_route, max_abs(hodge_star_tensor(g) - s));

    TwoFormSpinors d = decompose_two_form(g);
    SymmetricSpinor2 zero;
    const TwoForm sd = assemble_two_form(zero, d.beta);
    const TwoForm asd = assemble_two_form(d.alpha, zero);
    REQUIRE(max_abs(hodge_star(sd) - i * sd) < 1e-13);
    REQUIRE(max_abs(hodge_star(asd) + i * asd) < 1e-13);
  }
  CHECK(worst_ss < 1e-13);
  CHECK(worst_route < 1e-13);
}

TEST_CASE("tensor star on the hand-built self-dual form") {
  TwoForm g;
  g.c = {0.5, -0.5 * I, 0.0, 0.0, -0.5, 0.5 * I};
  const TwoForm s = hodge_star_tensor(g);
  CHECK(max_abs(s - I * g) < 1e-16);
}

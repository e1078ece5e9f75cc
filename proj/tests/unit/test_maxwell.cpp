#include <cmath>

#include "doctest.h"
#include "nullcong/cr_graph.hpp"
#include "nullcong/maxwell.hpp"
#include "test_support.hpp"

using namespace nullcong;

namespace {

const Pair<cplx> kLam{cplx(0.5, 0.2), cplx(-0.3, 1.0)};
const Pair<cplx> kMu{cplx(1.0, 0.0), cplx(0.2, -0.4)};

std::vector<Event> box(const Event& c, double half, int n) {
  std::vector<Event> pts;
  const double s = n > 1 ? 2.0 * half / (n - 1) : 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) pts.push_back(c + Event(-half + s * i, -half + s * j, -half + s * k, -half + s * l));
  return pts;
}

NullFieldSpec plane_wave(const std::string& prof = "one") {
  return NullFieldSpec(constant_congruence({1.0, 0.0}), profile(prof));
}

NullFieldSpec kerr_field(const std::string& prof) {
  return NullFieldSpec(linear_kerr(kLam, kMu), profile(prof), Event(0, 0.1, 0.2, -0.1));
}

// Central differences of the pointwise assembly, independent of the jet path.
std::array<cplx, 4> dg_by_differences(const NullFieldSpec& spec, const Event& x, double h) {
  std::array<TwoForm, 4> d;
  for (int a = 0; a < 4; ++a) {
    Event xp = x, xm = x;
    xp.x[a] += h;
    xm.x[a] -= h;
    d[a] = (1.0 / (2.0 * h)) * (assemble_field(spec, xp) - assemble_field(spec, xm));
  }
  const int tri[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  std::array<cplx, 4> out{};
  for (int n = 0; n < 4; ++n) {
    const int a = tri[n][0], b = tri[n][1], c = tri[n][2];
    out[n] = d[a](b, c) + d[b](c, a) + d[c](a, b);
  }
  return out;
}

}  // namespace

TEST_CASE("plane wave field matches the hand-built 2-form") {
  const TwoForm g = assemble_field(plane_wave(), Event(0.3, -1, 2, 0.5));
  const std::array<cplx, 6> want = {0.5, cplx(0, -0.5), 0.0, 0.0, -0.5, cplx(0, 0.5)};
  for (int k = 0; k < 6; ++k) CHECK(std::abs(g.c[k] - want[k]) < 1e-15);
  CHECK(self_duality_defect(g) == 0.0);
  CHECK(nullity_defect(g) == 0.0);
}

TEST_CASE("assembled fields are self-dual and null") {
  nctest::Rng rng(11);
  for (const std::string& p : profile_names()) {
    const NullFieldSpec spec = kerr_field(p);
    for (int n = 0; n < 200; ++n) {
      const TwoForm g = assemble_field(spec, rng.event(0.5));
      CHECK(self_duality_defect(g) < 1e-13);
      CHECK(nullity_defect(g) < 1e-13);
      const TwoFormSpinors s = decompose_two_form(g);
      CHECK(s.alpha.norm() < 1e-13 * s.beta.norm());
    }
  }
}

TEST_CASE("constant field has exactly zero residual") {
  const FieldReport r = maxwell_residual(plane_wave(), box(Event(), 1.0, 3));
  CHECK(r.maxwell_residual == 0.0);
  CHECK(r.spinor_residual == 0.0);
  CHECK(r.samples == 81);
  CHECK(r.failures == 0);
  CHECK(r.mode == Differentiation::ForwardAD);
  CHECK_FALSE(r.experimental);
}

TEST_CASE("jet derivatives agree with differences of the assembly") {
  nctest::Rng rng(12);
  for (const std::string& p : {"a2", "expb", "conja"}) {
    const NullFieldSpec spec = kerr_field(p);
    for (int n = 0; n < 20; ++n) {
      const Event x = rng.event(0.4);
      const auto ad = exterior_derivative(field_jet(spec, x));
      const auto fd = dg_by_differences(spec, x, 1e-5);
      for (int k = 0; k < 4; ++k) CHECK(std::abs(ad[k] - fd[k]) < 1e-7);
    }
  }
}

TEST_CASE("holomorphic profiles on a plane wave solve the field equations") {
  for (const std::string& p : {"a2", "expb", "ab"}) {
    const FieldReport r = maxwell_residual(plane_wave(p), box(Event(), 0.5, 5));
    CAPTURE(p);
    CHECK(r.maxwell_residual < 1e-10);
    CHECK(r.spinor_residual < 1e-10);
  }
}

TEST_CASE("linear_kerr fields solve the field equations for every holomorphic profile") {
  for (const std::string& p : {"one", "a2", "expb", "ab"}) {
    const NullFieldSpec spec = kerr_field(p);
    const FieldReport r = maxwell_residual(spec, box(spec.anchor, 0.2, 5));
    CAPTURE(p);
    CHECK(r.maxwell_residual < 1e-10);
    CHECK(r.route_agreement < 1e-10);
    CHECK(r.energy_rank1_defect < 1e-10);
    CHECK(r.energy_trace < 1e-12);
  }
}

TEST_CASE("negative controls fail the field equations") {
  SUBCASE("anti-holomorphic profile") {
    const NullFieldSpec spec = kerr_field("conja");
    const FieldReport r = maxwell_residual(spec, box(spec.anchor, 0.2, 5));
    CHECK(r.maxwell_residual > 1e-3);
    CHECK(r.route_agreement < 1e-10);
  }
  SUBCASE("shearing congruence") {
    const std::array<Pair<cplx>, 4> m = {{{0.3, 0.0}, {0.0, 0.5}, {cplx(0, 0.2), 0.1}, {0.0, -0.4}}};
    const NullFieldSpec spec(affine_congruence({1.0, 0.5}, m));
    const FieldReport r = maxwell_residual(spec, box(Event(), 0.2, 5));
    CHECK(r.maxwell_residual > 1e-3);
    CHECK(r.route_agreement < 1e-10);
  }
  SUBCASE("wrong homogeneity weight") {
    const CongruenceField c = linear_kerr(kLam, kMu);
    const Pair<cplx> xi = spin::conj(c.eval(Event()));
    NullFieldSpec spec(c);
    spec.amplitude = [c, xi](const Event& x) {
      const cplx p = spin::contract(xi, c.eval(x));
      return 1.0 / (p * p);
    };
    const FieldReport r = maxwell_residual(spec, box(Event(), 0.2, 3));
    CHECK(r.mode == Differentiation::CentralFD);
    CHECK(r.maxwell_residual > 1e-3);
  }
}

TEST_CASE("spinor divergence and the 3-form route agree") {
  nctest::Rng rng(13);
  for (const std::string& p : profile_names()) {
    const NullFieldSpec spec = kerr_field(p);
    for (int n = 0; n < 50; ++n) {
      const FieldJet j = field_jet(spec, rng.event(0.3));
      const auto dg = exterior_derivative(j);
      const auto pred = divergence_three_form(spinor_divergence(j));
      double scale = 0.0;
      for (const auto& d : j.dg) scale = std::max(scale, max_abs(d));
      for (int k = 0; k < 4; ++k) CHECK(std::abs(dg[k] - pred[k]) <= 1e-12 * std::max(scale, 1.0));
    }
  }
}

TEST_CASE("residuals are invariant under rescaling the amplitude") {
  const NullFieldSpec a = kerr_field("conja");
  NullFieldSpec b = a;
  Profile twice = a.profile;
  twice.value = [f = a.profile.value](cplx x, cplx y) { return 7.0 * f(x, y); };
  twice.value_ad = [f = a.profile.value_ad](const Dual4& x, const Dual4& y) { return f(x, y) * 7.0; };
  b.profile = twice;
  const auto pts = box(a.anchor, 0.2, 3);
  CHECK(nctest::rel(maxwell_residual(b, pts).maxwell_residual, maxwell_residual(a, pts).maxwell_residual) < 1e-12);
}

TEST_CASE("user amplitude runs through differences") {
  const NullFieldSpec ref = kerr_field("a2");
  NullFieldSpec spec(ref.congruence);
  spec.amplitude = [ref](const Event& x) { return amplitude_at(ref, x); };
  const FieldReport r = maxwell_residual(spec, box(ref.anchor, 0.2, 3));
  CHECK(r.mode == Differentiation::CentralFD);
  CHECK(r.maxwell_residual < 1e-8);
}

TEST_CASE("sweeps are identical across worker counts") {
  const NullFieldSpec spec = kerr_field("expb");
  const auto pts = box(spec.anchor, 0.2, 4);
  const FieldReport a = maxwell_residual(spec, pts, 1);
  const FieldReport b = maxwell_residual(spec, pts, 3);
  CHECK(a.maxwell_residual == b.maxwell_residual);
  CHECK(a.route_agreement == b.route_agreement);
  CHECK(a.energy_rank1_defect == b.energy_rank1_defect);
}

TEST_CASE("cr_graph synthesis is flagged experimental") {
  NullFieldSpec spec(cr_graph_congruence(1e-4), profile("one"), cr_graph_reference_event());
  CHECK(spec.experimental());
  CHECK_FALSE(kerr_field("a2").experimental());
  const FieldReport r = maxwell_residual(spec, {spec.anchor + Event(0, 0.1, 0.1, 0.1)});
  CHECK(r.experimental);
  CHECK(r.failures == 0);
}

TEST_CASE("F and *F") {
  nctest::Rng rng(14);
  const NullFieldSpec spec = kerr_field("ab");
  for (int n = 0; n < 100; ++n) {
    const TwoForm g = assemble_field(spec, rng.event(0.4));
    const FieldPair p = f_and_star_f(g);
    const RealTwoForm sf = hodge_star_tensor(p.f);
    double scale = max_abs(g), ff = 0.0, fsf = 0.0;
    for (int k = 0; k < 6; ++k) {
      CHECK(cplx(p.star_f.c[k], p.f.c[k]) == g.c[k]);
      CHECK(std::abs(sf.c[k] - p.star_f.c[k]) < 1e-12 * scale);
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double w = kMinkowski[a] * kMinkowski[b];
        ff += w * p.f(a, b) * p.f(a, b);
        fsf += w * p.f(a, b) * p.star_f(a, b);
      }
    CHECK(std::abs(ff) < 1e-12 * scale * scale);
    CHECK(std::abs(fsf) < 1e-12 * scale * scale);
  }
}

TEST_CASE("dF and d*F vanish on a plane wave") {
  const NullFieldSpec spec = plane_wave("a2");
  const auto dg = exterior_derivative(field_jet(spec, Event(0.2, 0.1, -0.3, 0.4)));
  for (const cplx& c : dg) {
    CHECK(std::abs(c.imag()) < 1e-14);
    CHECK(std::abs(c.real()) < 1e-14);
  }
}

TEST_CASE("energy tensor of the plane wave is k k with k along t + z") {
  const FieldPair p = f_and_star_f(assemble_field(plane_wave(), Event()));
  const EnergyTensor e = energy_tensor(p.f);
  const Vec4 k = {0.5, 0.0, 0.0, 0.5};
  for (int a = 0; a < 4; ++a) {
    CHECK(std::abs(e.k[a] - k[a]) < 1e-14);
    for (int c = 0; c < 4; ++c) CHECK(std::abs(e.t[a][c] - k[a] * k[c]) < 1e-15);
  }
  CHECK(e.rank1_defect < 1e-15);
  CHECK(e.trace == 0.0);
  CHECK(e.k_null_defect < 1e-15);
}

TEST_CASE("energy tensor: null fields split, generic fields do not") {
  nctest::Rng rng(15);
  const NullFieldSpec spec = kerr_field("expb");
  for (int n = 0; n < 100; ++n) {
    const FieldPair p = f_and_star_f(assemble_field(spec, rng.event(0.4)));
    const EnergyTensor e = energy_tensor(p.f);
    CHECK(e.rank1_defect < 1e-10);
    CHECK(std::abs(e.trace) < 1e-12);
    CHECK(e.k_null_defect < 1e-10);
    CHECK(e.k[0] > 0.0);
  }
  int large = 0;
  for (int n = 0; n < 100; ++n) {
    RealTwoForm f;
    for (auto& c : f.c) c = rng.uniform();
    const EnergyTensor e = energy_tensor(f);
    CHECK(std::abs(e.trace) < 1e-12);
    if (e.rank1_defect > 1e-2) ++large;
  }
  CHECK(large == 100);
}

TEST_CASE("energy direction is the congruence's null vector") {
  nctest::Rng rng(16);
  const NullFieldSpec spec = kerr_field("a2");
  for (int n = 0; n < 50; ++n) {
    const Event x = rng.event(0.4);
    const EnergyTensor e = energy_tensor(f_and_star_f(assemble_field(spec, x)).f);
    const Event v = null_vector_from(spec.congruence.eval(x));
    // lower the index, then compare directions
    const Vec4 kl = {v[0], -v[1], -v[2], -v[3]};
    const double s = e.k[0] / kl[0];
    for (int a = 0; a < 4; ++a) CHECK(std::abs(e.k[a] - s * kl[a]) < 1e-10 * std::abs(e.k[0]));
  }
}

TEST_CASE("shear recovered from the field") {
  // lambda = a^2 vanishes on t + z = 0, where o cannot be recovered
  CHECK(shear_from_field(plane_wave("a2"), box(Event(1, 0, 0, 0), 0.3, 3)) == 0.0);
  const NullFieldSpec kerr = kerr_field("expb");
  CHECK(shear_from_field(kerr, box(kerr.anchor, 0.2, 3)) < 1e-9);

  NullFieldSpec bad = kerr_field("one");
  bad.perturbation.c = {1e-3, 0.0, cplx(0, 2e-3), 0.0, 1e-3, 0.0};
  CHECK(nullity_defect(assemble_field(bad, bad.anchor)) > 1e-6);
  CHECK_THROWS_AS(shear_from_field(bad, {bad.anchor}), DomainError);
}

TEST_CASE("profile lookup") {
  CHECK(profile_names().size() == 5);
  CHECK_FALSE(profile("conja").holomorphic);
  CHECK(profile("a2").holomorphic);
  CHECK(profile("a2").value(cplx(0, 2), 5.0) == cplx(-4, 0));
  CHECK_THROWS_AS(profile("nope"), std::invalid_argument);
}

#include "nullcong/maxwell.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <stdexcept>

#include "nullcong/grid.hpp"
#include "nullcong/twistor.hpp"

namespace nullcong {

namespace {

template <typename F>
Profile make_profile(std::string name, F f, bool holomorphic) {
  Profile p;
  p.name = std::move(name);
  p.value = [f](cplx a, cplx b) { return f(a, b); };
  p.value_ad = [f](const Dual4& a, const Dual4& b) { return f(a, b); };
  p.holomorphic = holomorphic;
  return p;
}

// p^-3 F(omega^0/p, omega^1/p)
template <typename S, typename Fn>
S synth_amplitude(const std::array<S, 4>& x, const Pair<S>& o, const Pair<cplx>& xi, const Fn& f) {
  const Pair<S> omega = tw::incidence(spin::to_matrix(x), o);
  const S p = o[0] * xi[0] + o[1] * xi[1];
  if (std::abs(primal(p)) < 1e-300) throw DomainError("reference spinor annihilates o");
  const S ip = S(1.0) / p;
  return f(omega[0] * ip, omega[1] * ip) * (ip * ip * ip);
}

std::array<cplx, 3> perturbation_phi(const TwoForm& g) {
  if (max_abs(g) == 0.0) return {};
  return decompose_two_form(g).beta.c;
}

struct PointValue {
  cplx lambda;
  Pair<cplx> o;
  TwoForm g;
  std::array<cplx, 3> phi;
};

PointValue point_value(const NullFieldSpec& spec, const Event& x, const Pair<cplx>& xi) {
  PointValue v;
  v.o = spec.congruence.eval(x);
  if (spec.amplitude) {
    v.lambda = spec.amplitude(x);
  } else {
    const Coords xc{x.x[0], x.x[1], x.x[2], x.x[3]};
    v.lambda = synth_amplitude(xc, v.o, xi, spec.profile.value);
  }
  v.g = spin::null_two_form(v.lambda, v.o) + spec.perturbation;
  const auto dp = perturbation_phi(spec.perturbation);
  v.phi = {v.lambda * v.o[0] * v.o[0] + dp[0], v.lambda * v.o[0] * v.o[1] + dp[1],
           v.lambda * v.o[1] * v.o[1] + dp[2]};
  if (!std::isfinite(std::abs(v.lambda))) throw Error("non-finite amplitude");
  return v;
}

constexpr int kTriples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

int perm_sign(int a, int b, int c, int d) {
  const int p[4] = {a, b, c, d};
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) ++inv;
    }
  return inv % 2 == 0 ? 1 : -1;
}

// o_B' = phi_A'B' eta^A' for a fixed eta; smooth wherever eta.o != 0.
class PhiSource final : public CongruenceSource {
 public:
  PhiSource(NullFieldSpec spec, Pair<cplx> xi, Pair<cplx> eta)
      : spec_(std::move(spec)), xi_(xi), eta_(eta), dphi_(perturbation_phi(spec_.perturbation)) {}

  std::string family() const override { return "phi:" + spec_.congruence.family(); }
  Pair<cplx> eval(const Event& x) const override {
    const PointValue v = point_value(spec_, x, xi_);
    return contract(v.phi);
  }
  bool has_ad() const override { return spec_.uses_ad(); }
  Pair<Dual4> eval_ad(const DualCoords& x) const override {
    const Pair<Dual4> o = spec_.congruence.eval_ad(x);
    const Dual4 lam = synth_amplitude(x, o, xi_, spec_.profile.value_ad);
    const std::array<Dual4, 3> phi = {lam * o[0] * o[0] + dphi_[0], lam * o[0] * o[1] + dphi_[1],
                                      lam * o[1] * o[1] + dphi_[2]};
    return contract(phi);
  }
  std::unique_ptr<CongruenceSource> clone() const override {
    return std::make_unique<PhiSource>(spec_.fork(), xi_, eta_);
  }

 private:
  template <typename S>
  Pair<S> contract(const std::array<S, 3>& phi) const {
    return {phi[0] * eta_[0] + phi[1] * eta_[1], phi[1] * eta_[0] + phi[2] * eta_[1]};
  }

  NullFieldSpec spec_;
  Pair<cplx> xi_, eta_;
  std::array<cplx, 3> dphi_;
};

}  // namespace

Profile profile(const std::string& name) {
  if (name == "one") return make_profile(name, [](const auto& a, const auto&) { return 0.0 * a + 1.0; }, true);
  if (name == "a2") return make_profile(name, [](const auto& a, const auto&) { return a * a; }, true);
  if (name == "expb") {
    return make_profile(name, [](const auto&, const auto& b) {
      using std::exp;
      return exp(b);
    }, true);
  }
  if (name == "ab") return make_profile(name, [](const auto& a, const auto& b) { return a * b; }, true);
  if (name == "conja") {
    return make_profile(name, [](const auto& a, const auto&) {
      using std::conj;
      return conj(a);
    }, false);
  }
  throw std::invalid_argument("unknown profile '" + name + "'");
}

std::vector<std::string> profile_names() { return {"one", "a2", "expb", "ab", "conja"}; }

NullFieldSpec::NullFieldSpec(CongruenceField c, Profile p, Event anchor_event)
    : congruence(std::move(c)), profile(std::move(p)), anchor(anchor_event) {}

Pair<cplx> NullFieldSpec::reference_spinor() const {
  if (xi) return *xi;
  const Pair<cplx> o = congruence.eval(anchor);
  const double n = spin::norm2(o).real();
  if (n == 0.0) throw DomainError("zero spinor has no principal directions");
  return {std::conj(o[0]) / n, std::conj(o[1]) / n};
}

bool NullFieldSpec::uses_ad() const {
  return !amplitude && congruence.mode() == Differentiation::ForwardAD && congruence.source().has_ad() &&
         static_cast<bool>(profile.value_ad);
}

bool NullFieldSpec::experimental() const { return !amplitude && !congruence.source().has_ad(); }

NullFieldSpec NullFieldSpec::fork() const {
  NullFieldSpec s = *this;
  s.congruence = congruence.fork();
  return s;
}

cplx amplitude_at(const NullFieldSpec& spec, const Event& x) {
  return point_value(spec, x, spec.reference_spinor()).lambda;
}

TwoForm assemble_field(const NullFieldSpec& spec, const Event& x) {
  return point_value(spec, x, spec.reference_spinor()).g;
}

namespace {

FieldJet jet_with(const NullFieldSpec& spec, const Event& x, const Pair<cplx>& xi) {
  FieldJet j;
  if (spec.uses_ad()) {
    DualCoords xd;
    for (int a = 0; a < 4; ++a) xd[a] = Dual4::variable(x.x[a], static_cast<std::size_t>(a));
    const Pair<Dual4> o = spec.congruence.eval_ad(xd);
    const Dual4 lam = synth_amplitude(xd, o, xi, spec.profile.value_ad);
    const BasicTwoForm<Dual4> g = spin::null_two_form(lam, o);
    const std::array<Dual4, 3> phi = {lam * o[0] * o[0], lam * o[0] * o[1], lam * o[1] * o[1]};
    const auto dp = perturbation_phi(spec.perturbation);
    j.lambda = lam.v;
    j.o = {o[0].v, o[1].v};
    for (int k = 0; k < 6; ++k) {
      j.g.c[k] = g.c[k].v + spec.perturbation.c[k];
      for (int a = 0; a < 4; ++a) j.dg[a].c[k] = g.c[k].d[a];
    }
    for (int k = 0; k < 3; ++k) {
      j.phi[k] = phi[k].v + dp[k];
      for (int a = 0; a < 4; ++a) j.dphi[a][k] = phi[k].d[a];
    }
  } else {
    const PointValue v = point_value(spec, x, xi);
    j.lambda = v.lambda;
    j.o = v.o;
    j.g = v.g;
    j.phi = v.phi;
    const double h = spec.congruence.step();
    for (int a = 0; a < 4; ++a) {
      Event xp = x, xm = x;
      xp.x[a] += h;
      xm.x[a] -= h;
      if (xp.x[a] == x.x[a] || xm.x[a] == x.x[a]) throw Error("finite-difference step underflow");
      const double h2 = xp.x[a] - xm.x[a];
      const PointValue p = point_value(spec, xp, xi), m = point_value(spec, xm, xi);
      for (int k = 0; k < 6; ++k) j.dg[a].c[k] = (p.g.c[k] - m.g.c[k]) / h2;
      for (int k = 0; k < 3; ++k) j.dphi[a][k] = (p.phi[k] - m.phi[k]) / h2;
    }
  }
  for (const auto& d : j.dg)
    for (const cplx& c : d.c)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw Error("non-finite derivatives");
  return j;
}

}  // namespace

FieldJet field_jet(const NullFieldSpec& spec, const Event& x) { return jet_with(spec, x, spec.reference_spinor()); }

std::array<cplx, 4> exterior_derivative(const FieldJet& j) {
  std::array<cplx, 4> out{};
  for (int n = 0; n < 4; ++n) {
    const int a = kTriples[n][0], b = kTriples[n][1], c = kTriples[n][2];
    out[n] = j.dg[a](b, c) + j.dg[b](c, a) + j.dg[c](a, b);
  }
  return out;
}

CVec4 spinor_divergence(const FieldJet& j) {
  // d_{BC'} phi_{A'B'} for each (A', B')
  std::array<Mat2<cplx>, 3> d{};
  for (int k = 0; k < 3; ++k) {
    std::array<cplx, 4> partial{};
    for (int a = 0; a < 4; ++a) partial[a] = j.dphi[a][k];
    d[k] = spin::spinor_derivative(partial);
  }
  auto phi_d = [&](int b, int cp, int ap, int bp) { return d[static_cast<std::size_t>(ap + bp)][b][cp]; };
  Mat2<cplx> jj{};
  for (int B = 0; B < 2; ++B)
    for (int Bp = 0; Bp < 2; ++Bp) {
      cplx acc = 0.0;
      for (int Ap = 0; Ap < 2; ++Ap)
        for (int Cp = 0; Cp < 2; ++Cp)
          if (eps(Ap, Cp) != 0.0) acc += eps(Ap, Cp) * phi_d(B, Cp, Ap, Bp);
      jj[B][Bp] = acc;
    }
  return spin::covector(jj);
}

std::array<cplx, 4> divergence_three_form(const CVec4& j_lower) {
  const cplx i(0.0, 1.0);
  std::array<cplx, 4> out{};
  for (int n = 0; n < 4; ++n) {
    const int a = kTriples[n][0], b = kTriples[n][1], c = kTriples[n][2];
    cplx acc = 0.0;
    for (int d = 0; d < 4; ++d) {
      const int s = perm_sign(a, b, c, d);
      if (s != 0) acc += kEps0123 * s * kMinkowski[d] * j_lower[d];
    }
    out[n] = -i * acc;
  }
  return out;
}

double self_duality_defect(const TwoForm& g) {
  const double n = max_abs(g);
  if (n == 0.0) return 0.0;
  return max_abs(hodge_star_tensor(g) - cplx(0.0, 1.0) * g) / n;
}

double nullity_defect(const TwoForm& g) {
  const double n = max_abs(g);
  if (n == 0.0) return 0.0;
  return std::abs(contract_two_forms(g, g)) / (n * n);
}

EnergyTensor energy_tensor(const RealTwoForm& f) {
  double inv = 0.0;  // F^de F_de
  for (int d = 0; d < 4; ++d)
    for (int e = 0; e < 4; ++e) inv += kMinkowski[d] * kMinkowski[e] * f(d, e) * f(d, e);
  EnergyTensor out;
  Eigen::Matrix4d t;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) {
      double s = 0.0;
      for (int b = 0; b < 4; ++b) s -= kMinkowski[b] * f(a, b) * f(c, b);
      if (a == c) s += 0.25 * kMinkowski[a] * inv;
      out.t[a][c] = s;
      t(a, c) = s;
    }
  const Eigen::JacobiSVD<Eigen::Matrix4d> svd(t, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  double tr = 0.0;
  for (int a = 0; a < 4; ++a) tr += kMinkowski[a] * out.t[a][a];
  if (sv(0) == 0.0) return out;
  out.trace = tr / sv(0);
  out.rank1_defect = sv(1) / sv(0);
  Eigen::Vector4d k = std::sqrt(sv(0)) * svd.matrixU().col(0);
  int lead = 0;
  for (int a = 1; a < 4; ++a)
    if (std::abs(k(a)) > std::abs(k(lead)) * (1.0 + 1e-12)) lead = a;
  if (k(0) < 0.0 || (k(0) == 0.0 && k(lead) < 0.0)) k = -k;
  double kk = 0.0, ke = 0.0;
  for (int a = 0; a < 4; ++a) {
    out.k[a] = k(a);
    kk += kMinkowski[a] * k(a) * k(a);
    ke += k(a) * k(a);
  }
  out.k_null_defect = std::abs(kk) / ke;
  return out;
}

FieldPair f_and_star_f(const TwoForm& g) {
  FieldPair p;
  for (int k = 0; k < 6; ++k) {
    p.f.c[k] = g.c[k].imag();
    p.star_f.c[k] = g.c[k].real();
  }
  return p;
}

FieldReport maxwell_residual(const NullFieldSpec& spec, const std::vector<Event>& points, int workers) {
  struct Partial {
    double dg = 0.0, div = 0.0, agree = 0.0, scale = 0.0;
    double dual = 0.0, null = 0.0, rank1 = 0.0, trace = 0.0;
    std::size_t failures = 0;
    std::size_t first_index = std::numeric_limits<std::size_t>::max();
    std::string first_failure;
  };
  const Pair<cplx> xi = spec.reference_spinor();
  const auto parts = partition(points.size(), workers);
  std::vector<Partial> partial(parts.size());
  for_each_partition(points.size(), workers, [&](std::size_t p, std::size_t begin, std::size_t end) {
    const NullFieldSpec local = spec.fork();
    Partial& acc = partial[p];
    for (std::size_t n = begin; n < end; ++n) {
      try {
        const FieldJet j = jet_with(local, points[n], xi);
        const auto dg = exterior_derivative(j);
        const CVec4 div = spinor_divergence(j);
        const auto pred = divergence_three_form(div);
        for (int k = 0; k < 4; ++k) {
          acc.dg = std::max(acc.dg, std::abs(dg[k]));
          acc.div = std::max(acc.div, std::abs(div[k]));
          acc.agree = std::max(acc.agree, std::abs(dg[k] - pred[k]));
        }
        acc.scale = std::max(acc.scale, std::abs(j.lambda) * spin::norm2(j.o).real());
        acc.dual = std::max(acc.dual, self_duality_defect(j.g));
        acc.null = std::max(acc.null, nullity_defect(j.g));
        const EnergyTensor e = energy_tensor(f_and_star_f(j.g).f);
        acc.rank1 = std::max(acc.rank1, e.rank1_defect);
        acc.trace = std::max(acc.trace, std::abs(e.trace));
      } catch (const std::exception& ex) {
        if (acc.failures++ == 0) {
          acc.first_index = n;
          acc.first_failure = ex.what();
        }
      }
    }
  });

  FieldReport r;
  r.samples = points.size();
  r.experimental = spec.experimental();
  r.mode = spec.uses_ad() ? Differentiation::ForwardAD : Differentiation::CentralFD;
  Partial total;
  for (const Partial& p : partial) {
    total.dg = std::max(total.dg, p.dg);
    total.div = std::max(total.div, p.div);
    total.agree = std::max(total.agree, p.agree);
    total.scale = std::max(total.scale, p.scale);
    total.dual = std::max(total.dual, p.dual);
    total.null = std::max(total.null, p.null);
    total.rank1 = std::max(total.rank1, p.rank1);
    total.trace = std::max(total.trace, p.trace);
    total.failures += p.failures;
    if (p.first_index < total.first_index) {
      total.first_index = p.first_index;
      total.first_failure = p.first_failure;
    }
  }
  const double unit = spec.length_scale / (total.scale > 0.0 ? total.scale : 1.0);
  r.maxwell_residual = total.dg * unit;
  r.spinor_residual = total.div * unit;
  r.route_agreement = total.agree * unit;
  r.self_duality_defect = total.dual;
  r.nullity_defect = total.null;
  r.energy_rank1_defect = total.rank1;
  r.energy_trace = total.trace;
  r.failures = total.failures;
  r.first_failure = total.first_failure;
  return r;
}

double shear_from_field(const NullFieldSpec& spec, const std::vector<Event>& points) {
  if (points.empty()) return 0.0;
  const Pair<cplx> xi = spec.reference_spinor();
  for (const Event& x : points) {
    const PointValue v = point_value(spec, x, xi);
    if (nullity_defect(v.g) > 1e-8 || self_duality_defect(v.g) > 1e-8) throw DomainError("field is not null");
  }
  SymmetricSpinor2 phi0;
  phi0.c = point_value(spec, points.front(), xi).phi;
  const SymmetricFactors f = factor_symmetric(phi0, 1e-8);
  if (!f.repeated) throw DomainError("field is not null");
  const Pair<cplx> eta = spin::conj(f.o.components());

  const auto source = std::make_shared<PhiSource>(spec.fork(), xi, eta);
  const Differentiation mode = spec.uses_ad() ? Differentiation::ForwardAD : Differentiation::CentralFD;
  const CongruenceField field(source, mode, spec.congruence.step());
  double worst = 0.0;
  for (const Event& x : points) worst = std::max(worst, shear(field, x).sigma_norm_scaled);
  return worst;
}

}  // namespace nullcong

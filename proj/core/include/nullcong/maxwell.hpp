#pragma once

// Null Maxwell fields G_ab = lambda o_A' o_B' eps_AB attached to a congruence,
// the field equations dG = 0 by two routes, and the energy tensor.
//
// Synthesis: lambda = p^-3 F(omega^0/p, omega^1/p) with omega^A = i x^{AA'} o_A'
// and p = xi^A' o_A' for a fixed reference spinor xi. For the constant and
// linear_kerr families the twistor (omega, o) is constant up to scale along
// each alpha-surface, so any holomorphic F gives a solution.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nullcong/congruence.hpp"

namespace nullcong {

// A two-variable profile F(a, b), with a Dual4 path for forward AD.
struct Profile {
  std::string name;
  std::function<cplx(cplx, cplx)> value;
  std::function<Dual4(const Dual4&, const Dual4&)> value_ad;
  bool holomorphic = true;
};

// Built-ins: one, a2, expb, ab, conja (the last is not holomorphic).
Profile profile(const std::string& name);
std::vector<std::string> profile_names();

struct NullFieldSpec {
  CongruenceField congruence;
  Profile profile = nullcong::profile("one");
  // Reference spinor xi^A'; defaults to conj(o)/|o|^2 at `anchor`.
  std::optional<Pair<cplx>> xi;
  Event anchor;
  // Replaces the profile when set; forces central differences.
  std::function<cplx(const Event&)> amplitude;
  // Constant 2-form added to G. Used for negative controls.
  TwoForm perturbation;
  // Characteristic length; residuals are multiplied by it.
  double length_scale = 1.0;

  NullFieldSpec(CongruenceField c, Profile p = nullcong::profile("one"), Event anchor = {});

  Pair<cplx> reference_spinor() const;
  bool uses_ad() const;
  // No formula guarantees a solution for this source.
  bool experimental() const;
  NullFieldSpec fork() const;
};

cplx amplitude_at(const NullFieldSpec& spec, const Event& x);

// G at x. Propagates congruence and profile errors.
TwoForm assemble_field(const NullFieldSpec& spec, const Event& x);

// G, phi_A'B' and their coordinate partials at one event.
struct FieldJet {
  cplx lambda = 0.0;
  Pair<cplx> o{};
  TwoForm g;
  std::array<TwoForm, 4> dg{};
  std::array<cplx, 3> phi{};
  std::array<std::array<cplx, 3>, 4> dphi{};
};

FieldJet field_jet(const NullFieldSpec& spec, const Event& x);

// (dG)_abc for abc = 012, 013, 023, 123.
std::array<cplx, 4> exterior_derivative(const FieldJet& j);
// J_BB' = eps^A'C' d_BC' phi_A'B', as a coordinate covector J_d.
CVec4 spinor_divergence(const FieldJet& j);
// -i eps_abcd J^d, the 3-form the spinor route predicts for dG.
std::array<cplx, 4> divergence_three_form(const CVec4& j_lower);

// Pointwise algebraic defects, relative to |G|.
double self_duality_defect(const TwoForm& g);
double nullity_defect(const TwoForm& g);

struct EnergyTensor {
  std::array<std::array<double, 4>, 4> t{};
  double trace = 0.0;          // g^ac T_ac / sigma_1
  double rank1_defect = 0.0;   // sigma_2 / sigma_1
  Vec4 k{};                    // T ~ k_a k_c, k_0 >= 0
  double k_null_defect = 0.0;  // |k.k| / |k|^2
};

// T_ac = -F_a^b F_cb + 1/4 g_ac F^de F_de
EnergyTensor energy_tensor(const RealTwoForm& f);

struct FieldPair {
  RealTwoForm f;       // Im G
  RealTwoForm star_f;  // Re G
};

FieldPair f_and_star_f(const TwoForm& g);

struct FieldReport {
  double maxwell_residual = 0.0;   // tensor route, scaled
  double spinor_residual = 0.0;    // spinor route, scaled
  double route_agreement = 0.0;    // |dG + i eps J|, scaled
  double self_duality_defect = 0.0;
  double nullity_defect = 0.0;
  double energy_rank1_defect = 0.0;
  double energy_trace = 0.0;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool experimental = false;
  Differentiation mode = Differentiation::ForwardAD;
};

// Sweeps `points` on `workers` threads. Residuals are max |.| times the length
// scale over max |lambda| |o|^2, both taken over the sweep.
FieldReport maxwell_residual(const NullFieldSpec& spec, const std::vector<Event>& points, int workers = 1);

// Recovers o from phi by its repeated root and returns the largest scaled
// shear over `points`. Throws DomainError("field is not null") first if any
// point has nullity defect above 1e-8.
double shear_from_field(const NullFieldSpec& spec, const std::vector<Event>& points);

}  // namespace nullcong

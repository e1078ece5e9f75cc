#pragma once

// Spinor fields x -> o_A'(x) and the analyzers run on them: shear, geodesy,
// twist, the one-forms gamma and lambda, and conformal inversion.

#include <functional>
#include <memory>
#include <string>

#include "nullcong/spinor.hpp"

namespace nullcong {

enum class Differentiation { ForwardAD, CentralFD };

std::string to_string(Differentiation d);

using Coords = std::array<cplx, 4>;
using DualCoords = std::array<Dual4, 4>;

// Value of o_A' and its four coordinate partials at one event.
struct SpinorJet {
  Pair<cplx> o{};
  std::array<Pair<cplx>, 4> d{};

  Pair<Dual4> as_dual() const;
};

class CongruenceSource {
 public:
  virtual ~CongruenceSource() = default;
  virtual std::string family() const = 0;
  virtual Pair<cplx> eval(const Event& x) const = 0;
  virtual bool has_ad() const { return false; }
  virtual Pair<Dual4> eval_ad(const DualCoords& x) const;
  virtual std::unique_ptr<CongruenceSource> clone() const = 0;
};

// Wraps a generic callable usable with both cplx and Dual4 coordinates:
//   f(const std::array<S,4>& x) -> Pair<S>.
template <typename F>
class GenericSource final : public CongruenceSource {
 public:
  GenericSource(std::string name, F f) : name_(std::move(name)), f_(std::move(f)) {}
  std::string family() const override { return name_; }
  Pair<cplx> eval(const Event& x) const override {
    return f_(Coords{x.x[0], x.x[1], x.x[2], x.x[3]});
  }
  bool has_ad() const override { return true; }
  Pair<Dual4> eval_ad(const DualCoords& x) const override { return f_(x); }
  std::unique_ptr<CongruenceSource> clone() const override {
    return std::make_unique<GenericSource>(*this);
  }

 private:
  std::string name_;
  F f_;
};

// A non-differentiable callable; only central differences apply.
class FunctionSource final : public CongruenceSource {
 public:
  FunctionSource(std::string name, std::function<Pair<cplx>(const Event&)> f)
      : name_(std::move(name)), f_(std::move(f)) {}
  std::string family() const override { return name_; }
  Pair<cplx> eval(const Event& x) const override { return f_(x); }
  std::unique_ptr<CongruenceSource> clone() const override {
    return std::make_unique<FunctionSource>(*this);
  }

 private:
  std::string name_;
  std::function<Pair<cplx>(const Event&)> f_;
};

class CongruenceField {
 public:
  static constexpr double kDefaultStep = 1e-5;

  CongruenceField(std::shared_ptr<const CongruenceSource> source, Differentiation mode,
                  double step = kDefaultStep);

  const std::string family() const { return source_->family(); }
  Differentiation mode() const { return mode_; }
  double step() const { return step_; }
  const CongruenceSource& source() const { return *source_; }
  std::shared_ptr<const CongruenceSource> shared_source() const { return source_; }

  Pair<cplx> eval(const Event& x) const;
  Spinor2 eval_spinor(const Event& x) const;
  SpinorJet jet(const Event& x) const;
  // AD evaluation at a dual point; throws if the source has no AD path.
  Pair<Dual4> eval_ad(const DualCoords& x) const;

  CongruenceField with(Differentiation mode, double step) const;
  // Deep copy with private solver state, for use on another thread.
  CongruenceField fork() const;

 private:
  std::shared_ptr<const CongruenceSource> source_;
  Differentiation mode_;
  double step_;
};

// Families.
CongruenceField constant_congruence(const Pair<cplx>& o);
// o_A' = eps_A'B' (i lambda_A x^{AB'} + mu^B'); lambda lower, mu upper.
CongruenceField linear_kerr(const Pair<cplx>& lambda_lower, const Pair<cplx>& mu_upper);
// o_A' = o0_A' + x^a m_a A' (generally shearing).
CongruenceField affine_congruence(const Pair<cplx>& o0, const std::array<Pair<cplx>, 4>& m);
// o / (xi^A' o_A'), a non-constant rescaling of the base field.
CongruenceField normalized(const CongruenceField& base, const Pair<cplx>& xi_upper);
// o * (1 + c x^a x_a), another non-constant rescaling.
CongruenceField rescaled_quadratic(const CongruenceField& base, cplx c);
CongruenceField from_function(std::string name, std::function<Pair<cplx>(const Event&)> f,
                              double step = CongruenceField::kDefaultStep);

// Generic pointwise kernels on a jet expressed in Dual4 form.
namespace cong {

// K_{AA'} = conj(o_A') o_A'  ->  k_a
template <typename S>
std::array<S, 4> null_covector(const Pair<S>& o) {
  const Pair<S> ob = spin::conj(o);
  return spin::covector(spin::outer(ob, o));
}

// iota^A with o_A iota^A = 1, Euclidean-orthogonal to o^A = conj(o^A').
template <typename S>
Pair<S> supplemental_upper(const Pair<S>& o) {
  const Pair<S> oA = spin::conj(spin::raise(o));
  using std::conj;
  const S n2 = spin::norm2(oA);
  return {S(-conj(oA[1])) / n2, S(conj(oA[0])) / n2};
}

}  // namespace cong

struct ShearReport {
  Spinor2 sigma;  // sigma_B, unprimed lower
  double sigma_norm_scaled = 0.0;
  cplx geodesy_kappa = 0.0;
  double geodesy_residual = 0.0;
  double twist_norm = 0.0;
};

// Pure kernels on a jet.
Pair<cplx> shear_spinor(const SpinorJet& j);
ShearReport shear(const SpinorJet& j);
double twist(const SpinorJet& j);

ShearReport shear(const CongruenceField& c, const Event& x);
double twist(const CongruenceField& c, const Event& x);

struct CrForms {
  CVec4 gamma{};
  CVec4 lambda{};
  cplx ik_gamma = 0.0;
  cplx ik_lambda = 0.0;
  double lie_drag_residual = 0.0;
};

CrForms cr_forms(const SpinorJet& j);
CrForms cr_forms(const CongruenceField& c, const Event& x);

// y = 2x/(x.x)
Event invert_event(const Event& x);
// Throws DomainError within 1e-8 of the null cone of the origin.
CongruenceField conformal_invert(const CongruenceField& c);

}  // namespace nullcong

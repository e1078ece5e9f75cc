#include "nullcong/congruence.hpp"

#include <algorithm>

namespace nullcong {

std::string to_string(Differentiation d) {
  return d == Differentiation::ForwardAD ? "forward-ad" : "central-fd";
}

Pair<Dual4> SpinorJet::as_dual() const {
  Pair<Dual4> r;
  for (int i = 0; i < 2; ++i) {
    r[i].v = o[i];
    for (int a = 0; a < 4; ++a) r[i].d[a] = d[a][i];
  }
  return r;
}

Pair<Dual4> CongruenceSource::eval_ad(const DualCoords&) const {
  throw Error("family '" + family() + "' has no forward-AD path");
}

CongruenceField::CongruenceField(std::shared_ptr<const CongruenceSource> source, Differentiation mode,
                                 double step)
    : source_(std::move(source)), mode_(mode), step_(step) {
  if (!source_) throw Error("null congruence source");
  if (mode_ == Differentiation::ForwardAD && !source_->has_ad())
    throw Error("family '" + source_->family() + "' supports only central differences");
  if (!(step_ > 0.0)) throw Error("finite-difference step must be positive");
}

Pair<cplx> CongruenceField::eval(const Event& x) const { return source_->eval(x); }

Spinor2 CongruenceField::eval_spinor(const Event& x) const {
  return Spinor2(source_->eval(x), IndexKind::PrimedLower);
}

Pair<Dual4> CongruenceField::eval_ad(const DualCoords& x) const { return source_->eval_ad(x); }

namespace {

bool finite(const Pair<cplx>& p) {
  return std::isfinite(p[0].real()) && std::isfinite(p[0].imag()) && std::isfinite(p[1].real()) &&
         std::isfinite(p[1].imag());
}

}  // namespace

SpinorJet CongruenceField::jet(const Event& x) const {
  SpinorJet j;
  if (mode_ == Differentiation::ForwardAD) {
    DualCoords xd;
    for (int a = 0; a < 4; ++a) xd[a] = Dual4::variable(x.x[a], static_cast<std::size_t>(a));
    const Pair<Dual4> o = source_->eval_ad(xd);
    for (int i = 0; i < 2; ++i) {
      j.o[i] = o[i].v;
      for (int a = 0; a < 4; ++a) j.d[a][i] = o[i].d[a];
    }
  } else {
    j.o = source_->eval(x);
    for (int a = 0; a < 4; ++a) {
      Event xp = x, xm = x;
      xp.x[a] += step_;
      xm.x[a] -= step_;
      if (xp.x[a] == x.x[a] || xm.x[a] == x.x[a]) throw Error("finite-difference step underflow");
      const double h2 = xp.x[a] - xm.x[a];
      const Pair<cplx> fp = source_->eval(xp), fm = source_->eval(xm);
      for (int i = 0; i < 2; ++i) j.d[a][i] = (fp[i] - fm[i]) / h2;
    }
  }
  bool ok = finite(j.o);
  for (const auto& d : j.d) ok = ok && finite(d);
  if (!ok) throw Error("non-finite derivatives");
  return j;
}

CongruenceField CongruenceField::with(Differentiation mode, double step) const {
  return CongruenceField(source_, mode, step);
}

CongruenceField CongruenceField::fork() const {
  return CongruenceField(std::shared_ptr<const CongruenceSource>(source_->clone()), mode_, step_);
}

namespace {

template <typename F>
CongruenceField make_ad(std::string name, F f) {
  return CongruenceField(std::make_shared<GenericSource<F>>(std::move(name), std::move(f)),
                         Differentiation::ForwardAD);
}

// Wraps a base source with a point map x -> y and a pointwise transform
// o(x) = M::apply(x, base(y)). The transform is templated on the scalar.
template <typename M>
class TransformSource final : public CongruenceSource {
 public:
  TransformSource(std::string name, std::shared_ptr<const CongruenceSource> base, M m)
      : name_(std::move(name)), base_(std::move(base)), m_(std::move(m)) {}

  std::string family() const override { return name_; }
  Pair<cplx> eval(const Event& x) const override {
    const Coords xc{x.x[0], x.x[1], x.x[2], x.x[3]};
    const Coords y = m_.point(xc);
    const Pair<cplx> o = base_->eval(Event(y[0].real(), y[1].real(), y[2].real(), y[3].real()));
    return m_.apply(xc, o);
  }
  bool has_ad() const override { return base_->has_ad(); }
  Pair<Dual4> eval_ad(const DualCoords& x) const override {
    return m_.apply(x, base_->eval_ad(m_.point(x)));
  }
  std::unique_ptr<CongruenceSource> clone() const override {
    return std::make_unique<TransformSource>(name_, std::shared_ptr<const CongruenceSource>(base_->clone()),
                                             m_);
  }

 private:
  std::string name_;
  std::shared_ptr<const CongruenceSource> base_;
  M m_;
};

template <typename M>
CongruenceField make_transform(const CongruenceField& base, std::string name, M m) {
  auto src = std::make_shared<TransformSource<M>>(std::move(name), base.shared_source(), std::move(m));
  const Differentiation mode = src->has_ad() ? Differentiation::ForwardAD : Differentiation::CentralFD;
  return CongruenceField(src, mode, base.step());
}

struct NormalizeMap {
  Pair<cplx> xi;
  template <typename S>
  std::array<S, 4> point(const std::array<S, 4>& x) const {
    return x;
  }
  template <typename S>
  Pair<S> apply(const std::array<S, 4>&, const Pair<S>& o) const {
    const S p = o[0] * xi[0] + o[1] * xi[1];
    return {o[0] / p, o[1] / p};
  }
};

struct QuadraticScaleMap {
  cplx c;
  template <typename S>
  std::array<S, 4> point(const std::array<S, 4>& x) const {
    return x;
  }
  template <typename S>
  Pair<S> apply(const std::array<S, 4>& x, const Pair<S>& o) const {
    S xx(0.0);
    for (int a = 0; a < 4; ++a) xx += x[a] * x[a] * kMinkowski[a];
    const S mu = S(1.0) + xx * c;
    return {o[0] * mu, o[1] * mu};
  }
};

template <typename S>
S minkowski_dot(const std::array<S, 4>& a, const std::array<S, 4>& b) {
  S s(0.0);
  for (int i = 0; i < 4; ++i) s += a[i] * b[i] * kMinkowski[i];
  return s;
}

constexpr double kConeTol = 1e-8;

struct InversionMap {
  template <typename S>
  std::array<S, 4> point(const std::array<S, 4>& x) const {
    const S xx = minkowski_dot(x, x);
    if (std::abs(primal(xx)) <= kConeTol) throw DomainError("event too close to the null cone of the origin");
    std::array<S, 4> y;
    for (int a = 0; a < 4; ++a) y[a] = x[a] * 2.0 / xx;
    return y;
  }

  // o at x from the base spinor at y = inv(x): push the base direction
  // forward with D inv(y), orient to the future and refactor.
  template <typename S>
  Pair<S> apply(const std::array<S, 4>& x, const Pair<S>& o_y) const {
    const std::array<S, 4> y = point(x);
    const Pair<S> u = spin::raise(o_y);
    const std::array<S, 4> k = spin::from_matrix(spin::outer(spin::conj(u), u));
    const S yy = minkowski_dot(y, y);
    const S yk = minkowski_dot(y, k);
    std::array<S, 4> kn;
    for (int a = 0; a < 4; ++a) kn[a] = (k[a] - y[a] * yk * 2.0 / yy) * 2.0 / yy;
    if (primal(kn[0]).real() < 0.0)
      for (auto& c : kn) c = -c;
    const Mat2<S> m = spin::to_matrix(kn);
    const int r = primal(m[0][0]).real() >= primal(m[1][1]).real() ? 0 : 1;
    using std::sqrt;
    const S s = sqrt(re(m[r][r]));
    return spin::lower(Pair<S>{m[r][0] / s, m[r][1] / s});
  }
};

}  // namespace

CongruenceField constant_congruence(const Pair<cplx>& o) {
  return make_ad("constant", [o]<typename S>(const std::array<S, 4>&) { return Pair<S>{S(o[0]), S(o[1])}; });
}

CongruenceField linear_kerr(const Pair<cplx>& lambda_lower, const Pair<cplx>& mu_upper) {
  return make_ad("linear_kerr", [lambda_lower, mu_upper]<typename S>(const std::array<S, 4>& x) {
    const Mat2<S> m = spin::to_matrix(x);
    const cplx i(0.0, 1.0);
    // V^B' = i lambda_A x^{AB'} + mu^B'
    Pair<S> v;
    for (int b = 0; b < 2; ++b) v[b] = (lambda_lower[0] * m[0][b] + lambda_lower[1] * m[1][b]) * i + mu_upper[b];
    // eps_A'B' V^B' = -V_A'
    return Pair<S>{v[1], -v[0]};
  });
}

CongruenceField affine_congruence(const Pair<cplx>& o0, const std::array<Pair<cplx>, 4>& mm) {
  return make_ad("affine", [o0, mm]<typename S>(const std::array<S, 4>& x) {
    Pair<S> r{S(o0[0]), S(o0[1])};
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 2; ++i) r[i] += x[a] * mm[a][i];
    return r;
  });
}

CongruenceField normalized(const CongruenceField& base, const Pair<cplx>& xi_upper) {
  return make_transform(base, base.family() + "/normalized", NormalizeMap{xi_upper});
}

CongruenceField rescaled_quadratic(const CongruenceField& base, cplx c) {
  return make_transform(base, base.family() + "/rescaled", QuadraticScaleMap{c});
}

CongruenceField from_function(std::string name, std::function<Pair<cplx>(const Event&)> f, double step) {
  return CongruenceField(std::make_shared<FunctionSource>(std::move(name), std::move(f)),
                         Differentiation::CentralFD, step);
}

Event invert_event(const Event& x) {
  const double xx = inner(x, x);
  if (std::abs(xx) <= kConeTol) throw DomainError("event too close to the null cone of the origin");
  return x * (2.0 / xx);
}

CongruenceField conformal_invert(const CongruenceField& c) {
  return make_transform(c, c.family() + "/inverted", InversionMap{});
}

namespace {

double norm_pair(const Pair<cplx>& p) { return std::sqrt(std::norm(p[0]) + std::norm(p[1])); }

// d_{BB'} o_A' as [B][B'][A'].
std::array<Mat2<cplx>, 2> spinor_gradient(const SpinorJet& j) {
  const auto& s = solder::inverse();
  std::array<Mat2<cplx>, 2> g{};
  for (int B = 0; B < 2; ++B)
    for (int Bp = 0; Bp < 2; ++Bp)
      for (int Ap = 0; Ap < 2; ++Ap) {
        cplx acc = 0.0;
        for (int a = 0; a < 4; ++a) acc += s[a][B][Bp] * j.d[a][Ap];
        g[B][Bp][Ap] = acc;
      }
  return g;
}

}  // namespace

Pair<cplx> shear_spinor(const SpinorJet& j) {
  const auto g = spinor_gradient(j);
  const Pair<cplx> ou = spin::raise(j.o);
  Pair<cplx> sigma{};
  for (int B = 0; B < 2; ++B)
    for (int Bp = 0; Bp < 2; ++Bp)
      for (int Ap = 0; Ap < 2; ++Ap) sigma[B] += ou[Ap] * ou[Bp] * g[B][Bp][Ap];
  return sigma;
}

double twist(const SpinorJet& j) {
  const Pair<Dual4> od = j.as_dual();
  const std::array<Dual4, 4> k = cong::null_covector(od);
  double dk[4][4] = {};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) dk[a][b] = k[b].d[a].real() - k[a].d[b].real();
  const int tri[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  double m = 0.0;
  for (const auto& t : tri) {
    const int a = t[0], b = t[1], c = t[2];
    const double w = k[a].v.real() * dk[b][c] + k[b].v.real() * dk[c][a] + k[c].v.real() * dk[a][b];
    m = std::max(m, std::abs(w));
  }
  const double n = norm_pair(j.o);
  return n == 0.0 ? 0.0 : m / (n * n * n * n);
}

ShearReport shear(const SpinorJet& j) {
  ShearReport r;
  const Pair<cplx> sigma = shear_spinor(j);
  r.sigma = Spinor2(sigma, IndexKind::UnprimedLower);
  const double n = norm_pair(j.o);
  if (n == 0.0) throw DomainError("congruence spinor vanishes");
  const double n3 = n * n * n;
  r.sigma_norm_scaled = norm_pair(sigma) / n3;

  // D_A' = o^B o^B' d_BB' o_A'
  const auto g = spinor_gradient(j);
  const Pair<cplx> ou = spin::raise(j.o);
  const Pair<cplx> ob = spin::conj(ou);
  Pair<cplx> D{};
  for (int B = 0; B < 2; ++B)
    for (int Bp = 0; Bp < 2; ++Bp)
      for (int Ap = 0; Ap < 2; ++Ap) D[Ap] += ob[B] * ou[Bp] * g[B][Bp][Ap];
  const cplx kappa = (std::conj(j.o[0]) * D[0] + std::conj(j.o[1]) * D[1]) / (n * n);
  r.geodesy_kappa = kappa;
  r.geodesy_residual = norm_pair({D[0] - kappa * j.o[0], D[1] - kappa * j.o[1]}) / n3;
  r.twist_norm = twist(j);
  return r;
}

ShearReport shear(const CongruenceField& c, const Event& x) { return shear(c.jet(x)); }

double twist(const CongruenceField& c, const Event& x) { return twist(c.jet(x)); }

namespace {

// Component of r orthogonal to span(a, b) in the Hermitian inner product.
double residual_off_span(const CVec4& r, const CVec4& a, const CVec4& b) {
  auto dot = [](const CVec4& p, const CVec4& q) {
    cplx s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::conj(p[i]) * q[i];
    return s;
  };
  const cplx aa = dot(a, a), ab = dot(a, b), bb = dot(b, b), ar = dot(a, r), br = dot(b, r);
  const cplx det = aa * bb - ab * std::conj(ab);
  CVec4 res = r;
  if (std::abs(det) > 1e-300) {
    const cplx ca = (bb * ar - ab * br) / det;
    const cplx cb = (aa * br - std::conj(ab) * ar) / det;
    for (int i = 0; i < 4; ++i) res[i] -= ca * a[i] + cb * b[i];
  } else if (std::abs(aa) > 0.0) {
    const cplx ca = ar / aa;
    for (int i = 0; i < 4; ++i) res[i] -= ca * a[i];
  }
  return std::sqrt(std::real(dot(res, res)));
}

}  // namespace

CrForms cr_forms(const SpinorJet& j) {
  const Pair<Dual4> o = j.as_dual();
  const std::array<Dual4, 4> gamma = cong::null_covector(o);
  const Pair<Dual4> iota_low = spin::lower(cong::supplemental_upper(o));
  const std::array<Dual4, 4> lambda = spin::covector(spin::outer(iota_low, o));

  CrForms f;
  std::array<double, 4> kup{};
  for (int a = 0; a < 4; ++a) {
    f.gamma[a] = gamma[a].v;
    f.lambda[a] = lambda[a].v;
    kup[a] = kMinkowski[a] * gamma[a].v.real();
  }
  double knorm = 0.0;
  for (int a = 0; a < 4; ++a) {
    f.ik_gamma += kup[a] * f.gamma[a];
    f.ik_lambda += kup[a] * f.lambda[a];
    knorm += kup[a] * kup[a];
  }
  knorm = std::sqrt(knorm);

  // L_k alpha = i_k d alpha, since i_k gamma = i_k lambda = 0 identically.
  auto lie = [&](const std::array<Dual4, 4>& al, double& grad) {
    CVec4 r{};
    grad = 0.0;
    for (int b = 0; b < 4; ++b) {
      for (int a = 0; a < 4; ++a) {
        r[b] += kup[a] * (al[b].d[a] - al[a].d[b]);
        grad += std::norm(al[b].d[a]);
      }
    }
    grad = std::sqrt(grad);
    return r;
  };
  double gg = 0.0, gl = 0.0;
  const CVec4 lg = lie(gamma, gg), ll = lie(lambda, gl);
  const double rg = residual_off_span(lg, f.gamma, f.lambda);
  const double rl = residual_off_span(ll, f.gamma, f.lambda);
  const double sg = gg > 0.0 ? rg / (knorm * gg) : 0.0;
  const double sl = gl > 0.0 ? rl / (knorm * gl) : 0.0;
  f.lie_drag_residual = std::max(sg, sl);
  return f;
}

CrForms cr_forms(const CongruenceField& c, const Event& x) { return cr_forms(c.jet(x)); }

}  // namespace nullcong

#include "nullcong/spinor.hpp"

#include <algorithm>
#include <stdexcept>

namespace nullcong {

std::string to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::UnprimedUpper: return "unprimed-upper";
    case IndexKind::UnprimedLower: return "unprimed-lower";
    case IndexKind::PrimedUpper: return "primed-upper";
    case IndexKind::PrimedLower: return "primed-lower";
  }
  return "?";
}

bool is_primed(IndexKind kind) {
  return kind == IndexKind::PrimedUpper || kind == IndexKind::PrimedLower;
}

bool is_upper(IndexKind kind) {
  return kind == IndexKind::UnprimedUpper || kind == IndexKind::PrimedUpper;
}

namespace {

IndexKind make_kind(bool primed, bool upper) {
  if (primed) return upper ? IndexKind::PrimedUpper : IndexKind::PrimedLower;
  return upper ? IndexKind::UnprimedUpper : IndexKind::UnprimedLower;
}

}  // namespace

Spinor2 Spinor2::conjugate() const {
  return {std::conj(c_[0]), std::conj(c_[1]), make_kind(!is_primed(kind_), is_upper(kind_))};
}

Spinor2 raise_lower(const Spinor2& s, IndexPosition target) {
  const bool want_upper = target == IndexPosition::Upper;
  if (is_upper(s.kind()) == want_upper)
    throw std::invalid_argument("raise_lower: spinor already has the target index position");
  const Pair<cplx> c = want_upper ? spin::raise(s.components()) : spin::lower(s.components());
  return {c, make_kind(is_primed(s.kind()), want_upper)};
}

cplx contract(const Spinor2& upper, const Spinor2& lower) {
  if (is_primed(upper.kind()) != is_primed(lower.kind()))
    throw std::invalid_argument("contract: primed and unprimed indices do not contract");
  if (!is_upper(upper.kind()) || is_upper(lower.kind()))
    throw std::invalid_argument("contract: need one upper and one lower index");
  return spin::contract(upper.components(), lower.components());
}

Mat2<double> epsilon_identity() {
  Mat2<double> m{};
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) {
      double s = 0.0;
      for (int b = 0; b < 2; ++b) s += eps(a, b) * eps(c, b);
      m[a][c] = s;
    }
  return m;
}

Mat2<cplx> Event::matrix() const {
  return spin::to_matrix(CVec4{x[0], x[1], x[2], x[3]});
}

Event Event::operator+(const Event& o) const {
  return {x[0] + o.x[0], x[1] + o.x[1], x[2] + o.x[2], x[3] + o.x[3]};
}

Event Event::operator-(const Event& o) const {
  return {x[0] - o.x[0], x[1] - o.x[1], x[2] - o.x[2], x[3] - o.x[3]};
}

Event Event::operator*(double s) const { return {x[0] * s, x[1] * s, x[2] * s, x[3] * s}; }

double Event::euclidean_norm() const {
  return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
}

bool ComplexEvent::is_real(double tol) const {
  return std::all_of(x.begin(), x.end(), [tol](cplx c) { return std::abs(c.imag()) <= tol; });
}

Event ComplexEvent::real_part() const { return {x[0].real(), x[1].real(), x[2].real(), x[3].real()}; }

Mat2<cplx> vector_spinor(const Event& v) { return v.matrix(); }

VectorFromSpinor spinor_vector(const Mat2<cplx>& m) {
  VectorFromSpinor r;
  r.vector.x = spin::from_matrix(m);
  const double scale = std::max({std::abs(m[0][0]), std::abs(m[0][1]), std::abs(m[1][0]),
                                 std::abs(m[1][1]), 1e-300});
  const double tol = 1e-14 * scale;
  r.hermitian = std::abs(m[0][0].imag()) <= tol && std::abs(m[1][1].imag()) <= tol &&
                std::abs(m[0][1] - std::conj(m[1][0])) <= tol;
  return r;
}

double inner(const Event& v, const Event& w) {
  return v.x[0] * w.x[0] - v.x[1] * w.x[1] - v.x[2] * w.x[2] - v.x[3] * w.x[3];
}

cplx inner_spinor(const Mat2<cplx>& v, const Mat2<cplx>& w) {
  cplx s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp) {
          const double e = eps(a, b) * eps(ap, bp);
          if (e != 0.0) s += e * v[a][ap] * w[b][bp];
        }
  return s;
}

cplx inner_complex(const ComplexEvent& v, const ComplexEvent& w) {
  cplx s = 0.0;
  for (int a = 0; a < 4; ++a) s += kMinkowski[a] * v.x[a] * w.x[a];
  return s;
}

Spinor2 factor_null(const Event& k, double tol) {
  const double scale = k.euclidean_norm();
  if (scale == 0.0) return {0.0, 0.0, IndexKind::UnprimedUpper};
  if (std::abs(inner(k, k)) > tol * scale * scale) throw DomainError("vector is not null");
  if (k.x[0] <= 0.0) throw DomainError("vector is not future-pointing");
  const Mat2<cplx> m = k.matrix();
  // m = o^A conj(o^A'); pick the larger diagonal entry as |o_i|^2.
  if (m[0][0].real() >= m[1][1].real()) {
    const double o0 = std::sqrt(m[0][0].real());
    return {o0, m[1][0] / o0, IndexKind::UnprimedUpper};
  }
  const double o1 = std::sqrt(m[1][1].real());
  return {m[0][1] / o1, o1, IndexKind::UnprimedUpper};
}

Event null_vector_from(const Pair<cplx>& o_primed_lower) {
  const Pair<cplx> up = spin::raise(o_primed_lower);
  const Pair<cplx> up_bar = spin::conj(up);
  return spinor_vector(spin::outer(up_bar, up)).vector.real_part();
}

double SymmetricSpinor2::norm() const {
  return std::sqrt(std::norm(c[0]) + 2.0 * std::norm(c[1]) + std::norm(c[2]));
}

SymmetricSpinor2 SymmetricSpinor2::symmetrized(const Pair<cplx>& a, const Pair<cplx>& b, bool primed) {
  SymmetricSpinor2 s;
  s.c = {a[0] * b[0], 0.5 * (a[0] * b[1] + a[1] * b[0]), a[1] * b[1]};
  s.primed = primed;
  return s;
}

namespace {

Pair<cplx> normalize_phase(const Pair<cplx>& p) {
  const double n = std::sqrt(std::norm(p[0]) + std::norm(p[1]));
  const cplx big = std::abs(p[0]) >= std::abs(p[1]) ? p[0] : p[1];
  const cplx phase = std::conj(big) / std::abs(big);
  return {p[0] * phase / n, p[1] * phase / n};
}

cplx weighted_dot(const SymmetricSpinor2& a, const SymmetricSpinor2& b) {
  return std::conj(a.c[0]) * b.c[0] + 2.0 * std::conj(a.c[1]) * b.c[1] + std::conj(a.c[2]) * b.c[2];
}

}  // namespace

SymmetricFactors factor_symmetric(const SymmetricSpinor2& phi, double repeat_tol) {
  const cplx p00 = phi.c[0], p01 = phi.c[1], p11 = phi.c[2];
  const double scale = std::max({std::abs(p00), std::abs(p01), std::abs(p11)});
  if (scale == 0.0) throw DomainError("zero spinor has no principal directions");

  // pi^X pi^Y phi_XY = phi_11 z^2 - 2 phi_01 z + phi_00 with z = pi_0/pi_1.
  const cplx disc = p01 * p01 - p00 * p11;
  SymmetricFactors out;
  Pair<cplx> r1, r2;
  if (std::abs(disc) < repeat_tol * scale * scale) {
    out.repeated = true;
    const Pair<cplx> row_a{p00, p01}, row_b{p01, p11};
    const bool use_a = std::norm(p00) + std::norm(p01) >= std::norm(p01) + std::norm(p11);
    r1 = use_a ? row_a : row_b;
    r2 = r1;
  } else {
    const cplx sq = std::sqrt(disc);
    const cplx qp = p01 + sq, qm = p01 - sq;
    const cplx q = std::abs(qp) >= std::abs(qm) ? qp : qm;
    r1 = {q, p11};
    r2 = {p00, q};
  }
  const IndexKind kind = phi.primed ? IndexKind::PrimedLower : IndexKind::UnprimedLower;
  const Pair<cplx> o = normalize_phase(r1), iota = normalize_phase(r2);
  out.o = Spinor2(o, kind);
  out.iota = Spinor2(iota, kind);
  const SymmetricSpinor2 basis = SymmetricSpinor2::symmetrized(o, iota, phi.primed);
  out.scale = weighted_dot(basis, phi) / weighted_dot(basis, basis).real();
  return out;
}

double max_abs(const TwoForm& g) {
  double m = 0.0;
  for (const cplx& c : g.c) m = std::max(m, std::abs(c));
  return m;
}

TwoForm operator+(const TwoForm& a, const TwoForm& b) {
  TwoForm r;
  for (std::size_t i = 0; i < 6; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

TwoForm operator-(const TwoForm& a, const TwoForm& b) {
  TwoForm r;
  for (std::size_t i = 0; i < 6; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

TwoForm operator*(cplx s, const TwoForm& a) {
  TwoForm r;
  for (std::size_t i = 0; i < 6; ++i) r.c[i] = s * a.c[i];
  return r;
}

TwoFormSpinors decompose_two_form(const TwoForm& g) {
  const auto& s = solder::inverse();
  // G_{AA'BB'} = sigma^a_{AA'} sigma^b_{BB'} G_ab
  cplx gs[2][2][2][2] = {};
  for (int A = 0; A < 2; ++A)
    for (int Ap = 0; Ap < 2; ++Ap)
      for (int B = 0; B < 2; ++B)
        for (int Bp = 0; Bp < 2; ++Bp) {
          cplx acc = 0.0;
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
              if (a != b) acc += s[a][A][Ap] * s[b][B][Bp] * g(a, b);
          gs[A][Ap][B][Bp] = acc;
        }
  TwoFormSpinors out;
  out.alpha.primed = false;
  out.beta.primed = true;
  const int idx[3][2] = {{0, 0}, {0, 1}, {1, 1}};
  for (int k = 0; k < 3; ++k) {
    const int X = idx[k][0], Y = idx[k][1];
    out.alpha.c[k] = 0.5 * (gs[X][0][Y][1] - gs[X][1][Y][0]);
    out.beta.c[k] = 0.5 * (gs[0][X][1][Y] - gs[1][X][0][Y]);
  }
  return out;
}

TwoForm assemble_two_form(const SymmetricSpinor2& alpha, const SymmetricSpinor2& beta) {
  BasicSymmetric<cplx> a, b;
  a.c = alpha.c;
  b.c = beta.c;
  return spin::two_form_from_spinors(a, b);
}

TwoForm hodge_star(const TwoForm& g) {
  TwoFormSpinors d = decompose_two_form(g);
  const cplx i(0.0, 1.0);
  for (auto& c : d.alpha.c) c *= -i;
  for (auto& c : d.beta.c) c *= i;
  return assemble_two_form(d.alpha, d.beta);
}

namespace {

int perm_sign(int a, int b, int c, int d) {
  const int p[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] == p[j]) return 0;
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

template <typename S>
BasicTwoForm<S> star_tensor(const BasicTwoForm<S>& g) {
  BasicTwoForm<S> r;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      S acc{};
      for (int c = 0; c < 4; ++c)
        for (int d = c + 1; d < 4; ++d) {
          const int e = perm_sign(a, b, c, d);
          if (e == 0) continue;
          // 1/2 sum over ordered (c,d) = sum over c<d.
          acc += kEps0123 * e * kMinkowski[c] * kMinkowski[d] * g(c, d);
        }
      r.set(a, b, acc);
    }
  return r;
}

}  // namespace

TwoForm hodge_star_tensor(const TwoForm& g) { return star_tensor(g); }
RealTwoForm hodge_star_tensor(const RealTwoForm& f) { return star_tensor(f); }

cplx contract_two_forms(const TwoForm& g, const TwoForm& h) {
  cplx s = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) s += 2.0 * kMinkowski[a] * kMinkowski[b] * g(a, b) * h(a, b);
  return s;
}

}  // namespace nullcong

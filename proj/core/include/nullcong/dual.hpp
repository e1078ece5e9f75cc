#pragma once

// Forward-mode automatic differentiation with a fixed number of tangent
// directions. The value type may itself be a Dual, so Dual<Dual<cplx, N>, N>
// carries second derivatives.
//
// Derivatives are taken with respect to *real* parameters. Complex values are
// allowed (T = std::complex<double>); conj() and re() then act componentwise,
// which is exact because d(conj f)/dx = conj(df/dx) for real x.

#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <type_traits>

namespace nullcong {

using cplx = std::complex<double>;

template <typename T, std::size_t N>
struct Dual;

template <typename X>
struct is_dual : std::false_type {};
template <typename T, std::size_t N>
struct is_dual<Dual<T, N>> : std::true_type {};
template <typename X>
inline constexpr bool is_dual_v = is_dual<std::remove_cvref_t<X>>::value;

template <typename T, std::size_t N>
struct Dual {
  T v{};
  std::array<T, N> d{};

  constexpr Dual() = default;

  template <typename U>
    requires(!is_dual_v<U> || std::is_same_v<std::remove_cvref_t<U>, T>) &&
            std::is_constructible_v<T, U>
  constexpr Dual(const U& value) : v(T(value)) {}  // NOLINT: implicit lift

  static constexpr Dual variable(const T& value, std::size_t direction) {
    Dual r(value);
    r.d[direction] = T(1.0);
    return r;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (std::size_t i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const T inv = T(1.0) / o.v;
    const T q = v * inv;
    for (std::size_t i = 0; i < N; ++i) d[i] = (d[i] - q * o.d[i]) * inv;
    v = q;
    return *this;
  }
};

template <typename T, std::size_t N>
Dual<T, N> operator-(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = -a.v;
  for (std::size_t i = 0; i < N; ++i) r.d[i] = -a.d[i];
  return r;
}

#define NULLCONG_DUAL_BINOP(OP, OPEQ)                                        \
  template <typename T, std::size_t N>                                       \
  Dual<T, N> operator OP(Dual<T, N> a, const Dual<T, N>& b) {                \
    a OPEQ b;                                                                \
    return a;                                                                \
  }                                                                          \
  template <typename T, std::size_t N, typename U>                           \
    requires(!std::is_same_v<std::remove_cvref_t<U>, Dual<T, N>> &&          \
             std::is_constructible_v<Dual<T, N>, U>)                         \
  Dual<T, N> operator OP(Dual<T, N> a, const U& b) {                         \
    a OPEQ Dual<T, N>(b);                                                    \
    return a;                                                                \
  }                                                                          \
  template <typename T, std::size_t N, typename U>                           \
    requires(!std::is_same_v<std::remove_cvref_t<U>, Dual<T, N>> &&          \
             std::is_constructible_v<Dual<T, N>, U>)                         \
  Dual<T, N> operator OP(const U& a, const Dual<T, N>& b) {                  \
    Dual<T, N> r(a);                                                         \
    r OPEQ b;                                                                \
    return r;                                                                \
  }

NULLCONG_DUAL_BINOP(+, +=)
NULLCONG_DUAL_BINOP(-, -=)
NULLCONG_DUAL_BINOP(*, *=)
NULLCONG_DUAL_BINOP(/, /=)
#undef NULLCONG_DUAL_BINOP

// Real part, kept in the same (complex) scalar type.
inline cplx re(const cplx& z) { return {z.real(), 0.0}; }
inline double re(double x) { return x; }
inline cplx im_as(const cplx& z) { return {z.imag(), 0.0}; }

template <typename T, std::size_t N>
Dual<T, N> re(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = re(a.v);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = re(a.d[i]);
  return r;
}

template <typename T, std::size_t N>
Dual<T, N> im_as(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = im_as(a.v);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = im_as(a.d[i]);
  return r;
}

template <typename T, std::size_t N>
Dual<T, N> conj(const Dual<T, N>& a) {
  using std::conj;
  Dual<T, N> r;
  r.v = T(conj(a.v));
  for (std::size_t i = 0; i < N; ++i) r.d[i] = T(conj(a.d[i]));
  return r;
}

template <typename T, std::size_t N>
Dual<T, N> exp(const Dual<T, N>& a) {
  using std::exp;
  Dual<T, N> r;
  r.v = exp(a.v);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = r.v * a.d[i];
  return r;
}

template <typename T, std::size_t N>
Dual<T, N> sqrt(const Dual<T, N>& a) {
  using std::sqrt;
  Dual<T, N> r;
  r.v = sqrt(a.v);
  const T half_inv = T(0.5) / r.v;
  for (std::size_t i = 0; i < N; ++i) r.d[i] = half_inv * a.d[i];
  return r;
}

// Principal-branch power with a real exponent.
template <typename T, std::size_t N>
Dual<T, N> pow(const Dual<T, N>& a, double p) {
  using std::pow;
  Dual<T, N> r;
  r.v = pow(a.v, p);
  const T slope = T(p) * pow(a.v, p - 1.0);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = slope * a.d[i];
  return r;
}

// Innermost scalar value.
inline cplx primal(const cplx& z) { return z; }
inline double primal(double x) { return x; }
template <typename T, std::size_t N>
auto primal(const Dual<T, N>& a) {
  return primal(a.v);
}

// |z|^2 as a real number, recursing to the primal.
inline double norm_primal(const cplx& z) { return std::norm(z); }
template <typename T, std::size_t N>
double norm_primal(const Dual<T, N>& a) {
  return norm_primal(a.v);
}

using Dual4 = Dual<cplx, 4>;
using Dual4x4 = Dual<Dual4, 4>;

}  // namespace nullcong

#pragma once

// Minimal complex arithmetic over an arbitrary real scalar (double or Jet).
// std::complex is only specified for floating-point types.

#include <complex>

#include "ypq/jet.hpp"

namespace ypq {

template <class T>
struct Cx {
  T re{};
  T im{};

  Cx() = default;
  Cx(T r) : re(r), im(0.0) {}  // NOLINT
  Cx(T r, T i) : re(r), im(i) {}

  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cx& operator-=(const Cx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cx& operator*=(const Cx& o) {
    T r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  Cx& operator*=(double c) {
    re *= c;
    im *= c;
    return *this;
  }
  Cx operator-() const { return {-re, -im}; }

  friend Cx operator+(Cx a, const Cx& b) { return a += b; }
  friend Cx operator-(Cx a, const Cx& b) { return a -= b; }
  friend Cx operator*(Cx a, const Cx& b) { return a *= b; }
  friend Cx operator*(Cx a, double c) { return a *= c; }
  friend Cx operator*(double c, Cx a) { return a *= c; }
};

template <class T>
Cx<T> conj(const Cx<T>& z) {
  return {z.re, -z.im};
}

// exp(re + i im)
template <class T>
Cx<T> cexp(const Cx<T>& z) {
  using std::cos;
  using std::exp;
  using std::sin;
  const T m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

inline std::complex<double> value_of(const std::complex<double>& z) { return z; }
inline std::complex<double> value_of(const Cx<double>& z) { return {z.re, z.im}; }

inline std::complex<double> to_std(const Cx<double>& z) { return {z.re, z.im}; }

template <int N, int O>
std::complex<double> value_of(const Cx<Jet<N, O>>& z) {
  return {z.re.value(), z.im.value()};
}

}  // namespace ypq

#pragma once

// Truncated Taylor arithmetic in N variables: value, gradient and (for Order 2)
// the symmetric Hessian, stored as its upper triangle.

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <type_traits>
#include <utility>

namespace ypq {

template <int N, int Order = 2>
class Jet {
  static_assert(N > 0, "Jet needs at least one variable");
  static_assert(Order == 1 || Order == 2, "Jet supports first and second order only");

 public:
  static constexpr int kVars = N;
  static constexpr int kOrder = Order;
  static constexpr int kTri = Order == 2 ? N * (N + 1) / 2 : 0;

  constexpr Jet() = default;
  constexpr Jet(double value) : v_(value) {}  // NOLINT: implicit constants are intended

  static Jet variable(double value, int index) {
    Jet j(value);
    j.g_[index] = 1.0;
    return j;
  }

  double value() const { return v_; }
  double d(int i) const { return g_[i]; }
  double dd(int i, int j) const {
    if constexpr (Order == 2) {
      return h_[tri(i, j)];
    } else {
      return 0.0;
    }
  }

  void set_value(double v) { v_ = v; }
  void set_d(int i, double v) { g_[i] = v; }
  void set_dd(int i, int j, double v) {
    if constexpr (Order == 2) h_[tri(i, j)] = v;
  }

  const std::array<double, N>& grad() const { return g_; }

  static constexpr int tri(int i, int j) {
    if (i > j) std::swap(i, j);
    return i * N - i * (i - 1) / 2 + (j - i);
  }

  // f(u) given f(v), f'(v), f''(v).
  Jet chain(double f0, double f1, double f2) const {
    Jet r(f0);
    for (int i = 0; i < N; ++i) r.g_[i] = f1 * g_[i];
    if constexpr (Order == 2) {
      for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
          const int k = tri(i, j);
          r.h_[k] = f1 * h_[k] + f2 * g_[i] * g_[j];
        }
    }
    return r;
  }

  Jet operator-() const {
    Jet r;
    r.v_ = -v_;
    for (int i = 0; i < N; ++i) r.g_[i] = -g_[i];
    for (int k = 0; k < kTri; ++k) r.h_[k] = -h_[k];
    return r;
  }

  Jet& operator+=(const Jet& o) {
    v_ += o.v_;
    for (int i = 0; i < N; ++i) g_[i] += o.g_[i];
    for (int k = 0; k < kTri; ++k) h_[k] += o.h_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v_ -= o.v_;
    for (int i = 0; i < N; ++i) g_[i] -= o.g_[i];
    for (int k = 0; k < kTri; ++k) h_[k] -= o.h_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    if constexpr (Order == 2) {
      for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
          const int k = tri(i, j);
          h_[k] = v_ * o.h_[k] + o.v_ * h_[k] + g_[i] * o.g_[j] + g_[j] * o.g_[i];
        }
    }
    for (int i = 0; i < N; ++i) g_[i] = v_ * o.g_[i] + o.v_ * g_[i];
    v_ *= o.v_;
    return *this;
  }
  Jet& operator/=(const Jet& o) { return *this *= o.chain(1.0 / o.v_, -1.0 / (o.v_ * o.v_), 2.0 / (o.v_ * o.v_ * o.v_)); }

  Jet& operator+=(double c) {
    v_ += c;
    return *this;
  }
  Jet& operator-=(double c) {
    v_ -= c;
    return *this;
  }
  Jet& operator*=(double c) {
    v_ *= c;
    for (int i = 0; i < N; ++i) g_[i] *= c;
    for (int k = 0; k < kTri; ++k) h_[k] *= c;
    return *this;
  }
  Jet& operator/=(double c) {
    v_ /= c;
    for (int i = 0; i < N; ++i) g_[i] /= c;
    for (int k = 0; k < kTri; ++k) h_[k] /= c;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator+(Jet a, double c) { return a += c; }
  friend Jet operator+(double c, Jet a) { return a += c; }
  friend Jet operator-(Jet a, double c) { return a -= c; }
  friend Jet operator-(double c, const Jet& a) { return (-a) += c; }
  friend Jet operator*(Jet a, double c) { return a *= c; }
  friend Jet operator*(double c, Jet a) { return a *= c; }
  friend Jet operator/(Jet a, double c) { return a /= c; }
  friend Jet operator/(double c, const Jet& a) { return a.chain(c / a.v_, -c / (a.v_ * a.v_), 2.0 * c / (a.v_ * a.v_ * a.v_)); }

  friend std::ostream& operator<<(std::ostream& os, const Jet& j) { return os << "Jet(" << j.v_ << ")"; }

 private:
  double v_ = 0.0;
  std::array<double, N> g_{};
  std::array<double, kTri> h_{};
};

template <class T>
struct is_jet : std::false_type {};
template <int N, int O>
struct is_jet<Jet<N, O>> : std::true_type {};

inline double value_of(double x) { return x; }
template <int N, int O>
double value_of(const Jet<N, O>& x) {
  return x.value();
}

template <int N, int O>
Jet<N, O> sin(const Jet<N, O>& x) {
  const double s = std::sin(x.value());
  return x.chain(s, std::cos(x.value()), -s);
}
template <int N, int O>
Jet<N, O> cos(const Jet<N, O>& x) {
  const double c = std::cos(x.value());
  return x.chain(c, -std::sin(x.value()), -c);
}
template <int N, int O>
Jet<N, O> tan(const Jet<N, O>& x) {
  const double t = std::tan(x.value());
  const double sec2 = 1.0 + t * t;
  return x.chain(t, sec2, 2.0 * t * sec2);
}
template <int N, int O>
Jet<N, O> sqrt(const Jet<N, O>& x) {
  const double s = std::sqrt(x.value());
  return x.chain(s, 0.5 / s, -0.25 / (s * x.value()));
}
template <int N, int O>
Jet<N, O> log(const Jet<N, O>& x) {
  const double v = x.value();
  return x.chain(std::log(v), 1.0 / v, -1.0 / (v * v));
}
template <int N, int O>
Jet<N, O> exp(const Jet<N, O>& x) {
  const double e = std::exp(x.value());
  return x.chain(e, e, e);
}
template <int N, int O>
Jet<N, O> pow(const Jet<N, O>& x, double k) {
  const double v = x.value();
  const double p = std::pow(v, k);
  return x.chain(p, k * p / v, k * (k - 1.0) * p / (v * v));
}

template <int N, int O>
Jet<N, O> abs(const Jet<N, O>& x) {
  const double s = x.value() < 0.0 ? -1.0 : 1.0;
  return x.chain(s * x.value(), s, 0.0);
}

inline double cot(double x) { return std::cos(x) / std::sin(x); }
template <int N, int O>
Jet<N, O> cot(const Jet<N, O>& x) {
  const double c = cot(x.value());
  const double csc2 = 1.0 + c * c;
  return x.chain(c, -csc2, 2.0 * c * csc2);
}

inline double sq(double x) { return x * x; }
template <int N, int O>
Jet<N, O> sq(const Jet<N, O>& x) {
  return x * x;
}

// Lifts point coordinates to independent jet variables 0..N-1.
template <int N, int O = 2>
std::array<Jet<N, O>, N> seed(const std::array<double, N>& x) {
  std::array<Jet<N, O>, N> out;
  for (int i = 0; i < N; ++i) out[i] = Jet<N, O>::variable(x[i], i);
  return out;
}

}  // namespace ypq

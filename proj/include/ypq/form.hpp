#pragma once

// Antisymmetric k-forms on an n-dimensional chart. Only strictly increasing
// index tuples are stored; access at any other ordering applies the
// permutation sign, and repeated indices read as zero.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ypq/cplx.hpp"
#include "ypq/errors.hpp"

namespace ypq {

constexpr int kMaxFormDim = 10;

struct IndexTable {
  std::vector<std::vector<int>> tuples;  // lexicographic order
  std::vector<std::uint32_t> masks;
  std::vector<int> index_of_mask;        // 2^dim entries, -1 when not of this degree
};

const IndexTable& index_table(int dim, int degree);

// Sorts idx in place and returns the sign of the sorting permutation, or 0 if
// an index repeats.
int sort_with_sign(std::vector<int>& idx);

int binomial(int n, int k);

template <class T>
class Form {
 public:
  Form() = default;
  Form(int degree, int dim) : degree_(degree), dim_(dim) {
    if (dim < 1 || dim > kMaxFormDim) throw DegreeOverflow("form dimension out of range: " + std::to_string(dim));
    if (degree < 0 || degree > dim) throw DegreeOverflow("degree " + std::to_string(degree) + " exceeds dimension " + std::to_string(dim));
    comps_.assign(binomial(dim, degree), T(0.0));
  }

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  std::size_t size() const { return comps_.size(); }

  const IndexTable& table() const { return index_table(dim_, degree_); }
  const std::vector<int>& tuple(std::size_t k) const { return table().tuples[k]; }

  T& operator[](std::size_t k) { return comps_[k]; }
  const T& operator[](std::size_t k) const { return comps_[k]; }
  std::vector<T>& components() { return comps_; }
  const std::vector<T>& components() const { return comps_; }

  // Component at an arbitrary index ordering.
  T get(std::span<const int> idx) const {
    std::vector<int> s(idx.begin(), idx.end());
    check_arity(s.size());
    const int sign = sort_with_sign(s);
    if (sign == 0) return T(0.0);
    const T& c = comps_[locate(s)];
    return sign > 0 ? c : T(-1.0) * c;
  }
  T get(std::initializer_list<int> idx) const { return get(std::span<const int>(idx.begin(), idx.size())); }

  // Adds v to the component at the given ordering (sign applied).
  void add(std::span<const int> idx, const T& v) {
    std::vector<int> s(idx.begin(), idx.end());
    check_arity(s.size());
    const int sign = sort_with_sign(s);
    if (sign == 0) return;
    T& c = comps_[locate(s)];
    c = sign > 0 ? c + v : c - v;
  }
  void add(std::initializer_list<int> idx, const T& v) { add(std::span<const int>(idx.begin(), idx.size()), v); }

  Form& operator+=(const Form& o) {
    check_same(o);
    for (std::size_t k = 0; k < comps_.size(); ++k) comps_[k] = comps_[k] + o.comps_[k];
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_same(o);
    for (std::size_t k = 0; k < comps_.size(); ++k) comps_[k] = comps_[k] - o.comps_[k];
    return *this;
  }
  template <class S>
  Form& scale(const S& s) {
    for (auto& c : comps_) c = c * s;
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, double s) { return a.scale(s); }
  friend Form operator*(double s, Form a) { return a.scale(s); }

 private:
  void check_arity(std::size_t n) const {
    if (static_cast<int>(n) != degree_) throw DegreeMismatch("expected " + std::to_string(degree_) + " indices, got " + std::to_string(n));
  }
  void check_same(const Form& o) const {
    if (o.degree_ != degree_ || o.dim_ != dim_) throw DegreeMismatch("forms of different degree or dimension");
  }
  std::size_t locate(const std::vector<int>& sorted) const {
    std::uint32_t mask = 0;
    for (int i : sorted) {
      if (i < 0 || i >= dim_) throw DegreeOverflow("index " + std::to_string(i) + " out of range");
      mask |= 1u << i;
    }
    return static_cast<std::size_t>(table().index_of_mask[mask]);
  }

  int degree_ = 0;
  int dim_ = 1;
  std::vector<T> comps_;
};

using AntisymForm = Form<std::complex<double>>;
using RealForm = Form<double>;

// Sign of merging two disjoint sorted tuples into sorted order.
inline int merge_sign(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  for (std::uint32_t bb = b; bb; bb &= bb - 1) {
    const int j = __builtin_ctz(bb);
    inversions += __builtin_popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

template <class T>
Form<T> wedge(const Form<T>& a, const Form<T>& b) {
  if (a.dim() != b.dim()) throw DegreeMismatch("wedge of forms on different charts");
  if (a.degree() + b.degree() > a.dim())
    throw DegreeOverflow("wedge degree " + std::to_string(a.degree() + b.degree()) + " exceeds dimension " + std::to_string(a.dim()));
  Form<T> out(a.degree() + b.degree(), a.dim());
  const auto& ta = a.table();
  const auto& tb = b.table();
  const auto& to = out.table();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::uint32_t ma = ta.masks[i];
      const std::uint32_t mb = tb.masks[j];
      if (ma & mb) continue;
      const int k = to.index_of_mask[ma | mb];
      const T prod = a[i] * b[j];
      out[k] = merge_sign(ma, mb) > 0 ? out[k] + prod : out[k] - prod;
    }
  }
  return out;
}

// (X ⌟ ψ)_{i2..ik} = X^j ψ_{j i2..ik}
template <class T, class V>
Form<T> interior(const V& x, const Form<T>& f) {
  if (f.degree() == 0) throw DegreeMismatch("interior product of a 0-form");
  Form<T> out(f.degree() - 1, f.dim());
  const auto& tf = f.table();
  const auto& to = out.table();
  for (std::size_t k = 0; k < f.size(); ++k) {
    const std::uint32_t m = tf.masks[k];
    int pos = 0;
    for (std::uint32_t mm = m; mm; mm &= mm - 1, ++pos) {
      const int j = __builtin_ctz(mm);
      const int idx = to.index_of_mask[m & ~(1u << j)];
      const T term = x[j] * f[k];
      out[idx] = (pos & 1) ? out[idx] - term : out[idx] + term;
    }
  }
  return out;
}

// Componentwise map to a new scalar type.
template <class U, class T, class Fn>
Form<U> map_form(const Form<T>& f, Fn fn) {
  Form<U> out(f.degree(), f.dim());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = fn(f[k]);
  return out;
}

// Shifts every index by offset into a chart of dimension new_dim.
template <class T>
Form<T> embed(const Form<T>& f, int new_dim, int offset) {
  Form<T> out(f.degree(), new_dim);
  for (std::size_t k = 0; k < f.size(); ++k) {
    std::vector<int> idx = f.tuple(k);
    for (int& i : idx) i += offset;
    out.add(idx, f[k]);
  }
  return out;
}

template <class T>
double max_abs(const Form<T>& f) {
  double m = 0.0;
  for (const auto& c : f.components()) m = std::max(m, std::abs(value_of(c)));
  return m;
}

inline double max_abs_diff(const RealForm& a, const RealForm& b) {
  if (a.degree() != b.degree() || a.dim() != b.dim()) throw DegreeMismatch("comparing forms of different shape");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double max_abs_diff(const AntisymForm& a, const AntisymForm& b) {
  if (a.degree() != b.degree() || a.dim() != b.dim()) throw DegreeMismatch("comparing forms of different shape");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline AntisymForm complexify(const RealForm& re, const RealForm& im) {
  AntisymForm out(re.degree(), re.dim());
  for (std::size_t k = 0; k < re.size(); ++k) out[k] = {re[k], im[k]};
  return out;
}
inline RealForm real_part(const AntisymForm& f) {
  return map_form<double>(f, [](const std::complex<double>& c) { return c.real(); });
}
inline RealForm imag_part(const AntisymForm& f) {
  return map_form<double>(f, [](const std::complex<double>& c) { return c.imag(); });
}

template <class T>
Form<double> form_values(const Form<T>& f) {
  return map_form<double>(f, [](const T& c) { return value_of(c); });
}

}  // namespace ypq

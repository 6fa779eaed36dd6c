#pragma once

// Fixed-size dense matrices over double or jet scalars.

#include <array>
#include <cmath>
#include <utility>

#include "ypq/errors.hpp"
#include "ypq/jet.hpp"

namespace ypq {

template <class T, int N>
using Vec = std::array<T, N>;

template <class T, int N>
using Mat = std::array<std::array<T, N>, N>;

template <class T, int N>
Mat<T, N> identity() {
  Mat<T, N> m{};
  for (int i = 0; i < N; ++i) m[i][i] = T(1.0);
  return m;
}

template <class T, int N>
Vec<T, N> matvec(const Mat<T, N>& m, const Vec<T, N>& v) {
  Vec<T, N> out{};
  for (int i = 0; i < N; ++i) {
    T acc(0.0);
    for (int j = 0; j < N; ++j) acc += m[i][j] * v[j];
    out[i] = acc;
  }
  return out;
}

template <class T, int N>
Mat<T, N> matmul(const Mat<T, N>& a, const Mat<T, N>& b) {
  Mat<T, N> out{};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      T acc(0.0);
      for (int k = 0; k < N; ++k) acc += a[i][k] * b[k][j];
      out[i][j] = acc;
    }
  return out;
}

template <class T, int N>
T dot(const Vec<T, N>& a, const Vec<T, N>& b) {
  T acc(0.0);
  for (int i = 0; i < N; ++i) acc += a[i] * b[i];
  return acc;
}

// Gauss-Jordan with partial pivoting on the value part; works for jets, so
// derivatives of the inverse come out of the same arithmetic.
template <class T, int N>
Mat<T, N> inverse(Mat<T, N> a) {
  Mat<T, N> inv = identity<T, N>();
  for (int col = 0; col < N; ++col) {
    int piv = col;
    double best = std::abs(value_of(a[col][col]));
    for (int r = col + 1; r < N; ++r) {
      const double c = std::abs(value_of(a[r][col]));
      if (c > best) {
        best = c;
        piv = r;
      }
    }
    if (best == 0.0) throw SingularMetric("zero pivot in matrix inversion");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const T d = T(1.0) / a[col][col];
    for (int j = 0; j < N; ++j) {
      a[col][j] = a[col][j] * d;
      inv[col][j] = inv[col][j] * d;
    }
    for (int r = 0; r < N; ++r) {
      if (r == col) continue;
      const T f = a[r][col];
      if (value_of(f) == 0.0 && !is_jet<T>::value) continue;
      for (int j = 0; j < N; ++j) {
        a[r][j] = a[r][j] - f * a[col][j];
        inv[r][j] = inv[r][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

// LU with partial pivoting on the value part.
template <class T, int N>
T determinant(Mat<T, N> a) {
  T det(1.0);
  for (int c = 0; c < N; ++c) {
    int piv = c;
    for (int r = c + 1; r < N; ++r)
      if (std::abs(value_of(a[r][c])) > std::abs(value_of(a[piv][c]))) piv = r;
    if (value_of(a[piv][c]) == 0.0) return T(0.0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det = det * a[c][c];
    for (int r = c + 1; r < N; ++r) {
      const T f = a[r][c] / a[c][c];
      for (int j = c; j < N; ++j) a[r][j] = a[r][j] - f * a[c][j];
    }
  }
  return det;
}

template <class T, int N>
Mat<double, N> values(const Mat<T, N>& m) {
  Mat<double, N> out{};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out[i][j] = value_of(m[i][j]);
  return out;
}

template <int N>
double max_abs_diff(const Mat<double, N>& a, const Mat<double, N>& b) {
  double m = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

// Reciprocal 2-norm condition number (smallest / largest singular value).
double reciprocal_condition(const double* data, int n);

template <int N>
double reciprocal_condition(const Mat<double, N>& m) {
  std::array<double, N * N> flat{};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) flat[i * N + j] = m[i][j];
  return reciprocal_condition(flat.data(), N);
}

}  // namespace ypq

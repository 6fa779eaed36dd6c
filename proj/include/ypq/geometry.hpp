#pragma once

// Chart-based Riemannian geometry driven by second-order jets: metric
// derivatives, Levi-Civita connection, Ricci curvature, covariant and exterior
// derivatives of forms, and residuals of the Killing-type equations.
//
// A metric field is any object with
//     template <class T> Mat<T, N> operator()(const std::array<T, N>& x) const;
// and a form field any object with
//     template <class T> Form<T> operator()(const std::array<T, N>& x) const;
// Both are evaluated on Jet<N> coordinates to obtain derivatives.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <span>
#include <vector>

#include "ypq/form.hpp"
#include "ypq/jet.hpp"
#include "ypq/linalg.hpp"

namespace ypq::geom {

inline constexpr double kSingularRcond = 1e-10;

template <int N>
using Point = std::array<double, N>;

template <int N>
using Connection = std::array<Mat<double, N>, N>;  // [lambda][mu][nu]

template <int N>
struct MetricEval {
  Mat<double, N> g{};
  Mat<double, N> g_inv{};
  std::array<Mat<double, N>, N> dg{};                 // dg[k][i][j] = d_k g_ij
  std::array<std::array<Mat<double, N>, N>, N> d2g{};  // d2g[k][l][i][j]
  std::array<Mat<double, N>, N> dg_inv{};              // d_k g^ij, when has_dg_inv
  bool has_dg_inv = false;
};

template <int N>
MetricEval<N> metric_eval_from_jets(const Mat<Jet<N>, N>& gj, const Mat<double, N>* g_inv = nullptr) {
  MetricEval<N> m;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      m.g[i][j] = gj[i][j].value();
      for (int k = 0; k < N; ++k) {
        m.dg[k][i][j] = gj[i][j].d(k);
        for (int l = 0; l < N; ++l) m.d2g[k][l][i][j] = gj[i][j].dd(k, l);
      }
    }
  const double rc = reciprocal_condition<N>(m.g);
  if (!(rc >= kSingularRcond)) throw SingularMetric("reciprocal condition number " + std::to_string(rc));
  m.g_inv = g_inv ? *g_inv : inverse<double, N>(m.g);
  return m;
}

// Fields with a closed-form inverse(x) supply g⁻¹ directly; inverting g
// numerically loses accuracy where the chart degenerates.
template <class MetricField, int N>
concept HasInverse = requires(const MetricField& f, const Point<N>& x) {
  { f.inverse(x) } -> std::convertible_to<Mat<double, N>>;
};

template <int N, class MetricField>
MetricEval<N> evaluate_metric(const MetricField& field, const Point<N>& x) {
  if constexpr (HasInverse<MetricField, N>) {
    const auto xs = seed<N>(x);
    const Mat<Jet<N>, N> gij = field.inverse(xs);
    Mat<double, N> gi{};
    std::array<Mat<double, N>, N> dgi{};
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        gi[i][j] = gij[i][j].value();
        for (int k = 0; k < N; ++k) dgi[k][i][j] = gij[i][j].d(k);
      }
    MetricEval<N> m = metric_eval_from_jets<N>(field(xs), &gi);
    m.dg_inv = dgi;
    m.has_dg_inv = true;
    return m;
  } else {
    return metric_eval_from_jets<N>(field(seed<N>(x)));
  }
}

// Γ^λ_{μν} = ½ g^{λσ}(∂_μ g_{σν} + ∂_ν g_{σμ} − ∂_σ g_{μν})
template <int N>
Connection<N> christoffel(const MetricEval<N>& m) {
  Connection<N> lower{};  // Γ_{σμν}
  for (int s = 0; s < N; ++s)
    for (int mu = 0; mu < N; ++mu)
      for (int nu = mu; nu < N; ++nu) {
        const double v = 0.5 * (m.dg[mu][s][nu] + m.dg[nu][s][mu] - m.dg[s][mu][nu]);
        lower[s][mu][nu] = v;
        lower[s][nu][mu] = v;
      }
  Connection<N> gam{};
  for (int l = 0; l < N; ++l)
    for (int mu = 0; mu < N; ++mu)
      for (int nu = mu; nu < N; ++nu) {
        double acc = 0.0;
        for (int s = 0; s < N; ++s) acc += m.g_inv[l][s] * lower[s][mu][nu];
        gam[l][mu][nu] = acc;
        gam[l][nu][mu] = acc;
      }
  return gam;
}

template <int N, class MetricField>
Connection<N> christoffel(const MetricField& field, const Point<N>& x) {
  return christoffel(evaluate_metric<N>(field, x));
}

// dGamma[k][l][mu][nu] = ∂_k Γ^l_{mu nu}
template <int N>
std::array<Connection<N>, N> christoffel_derivative(const MetricEval<N>& m) {
  std::array<Connection<N>, N> out{};
  for (int k = 0; k < N; ++k) {
    // ∂_k g^{ls} = −g^{la} ∂_k g_{ab} g^{bs}
    Mat<double, N> dginv;
    if (m.has_dg_inv) {
      dginv = m.dg_inv[k];
    } else {
      dginv = matmul<double, N>(matmul<double, N>(m.g_inv, m.dg[k]), m.g_inv);
      for (auto& row : dginv)
        for (auto& v : row) v = -v;
    }
    for (int l = 0; l < N; ++l)
      for (int mu = 0; mu < N; ++mu)
        for (int nu = mu; nu < N; ++nu) {
          double acc = 0.0;
          for (int s = 0; s < N; ++s) {
            const double low = 0.5 * (m.dg[mu][s][nu] + m.dg[nu][s][mu] - m.dg[s][mu][nu]);
            const double dlow = 0.5 * (m.d2g[k][mu][s][nu] + m.d2g[k][nu][s][mu] - m.d2g[k][s][mu][nu]);
            acc += dginv[l][s] * low + m.g_inv[l][s] * dlow;
          }
          out[k][l][mu][nu] = acc;
          out[k][l][nu][mu] = acc;
        }
  }
  return out;
}

// R_{μν} = ∂_λ Γ^λ_{μν} − ∂_ν Γ^λ_{μλ} + Γ^λ_{λκ} Γ^κ_{μν} − Γ^λ_{νκ} Γ^κ_{μλ}
template <int N>
Mat<double, N> ricci(const MetricEval<N>& m) {
  const auto gam = christoffel(m);
  const auto dgam = christoffel_derivative(m);
  Mat<double, N> ric{};
  for (int mu = 0; mu < N; ++mu)
    for (int nu = mu; nu < N; ++nu) {
      double acc = 0.0;
      for (int l = 0; l < N; ++l) {
        acc += dgam[l][l][mu][nu] - dgam[nu][l][mu][l];
        for (int k = 0; k < N; ++k) acc += gam[l][l][k] * gam[k][mu][nu] - gam[l][nu][k] * gam[k][mu][l];
      }
      ric[mu][nu] = acc;
      ric[nu][mu] = acc;
    }
  return ric;
}

template <int N, class MetricField>
Mat<double, N> ricci(const MetricField& field, const Point<N>& x) {
  return ricci(evaluate_metric<N>(field, x));
}

// Fields with an orthonormal coframe θ^a_μ (rows) and its dual frame E_a^μ.
template <class F, int N>
concept HasFrame = requires(const F& f, const std::array<Jet<N>, N>& x) {
  { f.coframe(x) } -> std::convertible_to<Mat<Jet<N>, N>>;
  { f.frame(x) } -> std::convertible_to<Mat<Jet<N>, N>>;
};

// Ricci tensor in coordinates computed in the orthonormal frame:
//   C^a_bc = −dθ^a(E_b, E_c),  Γ^a_bc = ½(C^a_bc − C^b_ca + C^c_ab),
//   R_bd = E_a(Γ^a_db) − E_d(Γ^a_ab) + Γ^a_ae Γ^e_db − Γ^a_de Γ^e_ab − C^f_ad Γ^a_fb,
// then Ric_μν = R_bd θ^b_μ θ^d_ν. No coordinate inverse enters, so the
// result stays accurate where the chart degenerates.
template <int N, class FrameField>
Mat<double, N> ricci_frame(const FrameField& field, const Point<N>& x) {
  using J1 = Jet<N, 1>;
  const auto xs = seed<N>(x);
  const Mat<Jet<N>, N> th = field.coframe(xs);
  const Mat<Jet<N>, N> fr = field.frame(xs);
  Mat<J1, N> E{};
  for (int a = 0; a < N; ++a)
    for (int mu = 0; mu < N; ++mu) {
      E[a][mu] = J1(fr[a][mu].value());
      for (int k = 0; k < N; ++k) E[a][mu].set_d(k, fr[a][mu].d(k));
    }
  auto at = [](int a, int b, int c) { return (static_cast<std::size_t>(a) * N + b) * N + c; };
  std::vector<J1> C(static_cast<std::size_t>(N) * N * N);
  for (int a = 0; a < N; ++a) {
    Mat<J1, N> dth{};
    for (int mu = 0; mu < N; ++mu)
      for (int nu = mu + 1; nu < N; ++nu) {
        J1 v(th[a][nu].d(mu) - th[a][mu].d(nu));
        for (int k = 0; k < N; ++k) v.set_d(k, th[a][nu].dd(mu, k) - th[a][mu].dd(nu, k));
        dth[mu][nu] = v;
        dth[nu][mu] = -v;
      }
    for (int b = 0; b < N; ++b)
      for (int c = b + 1; c < N; ++c) {
        J1 acc;
        for (int mu = 0; mu < N; ++mu)
          for (int nu = 0; nu < N; ++nu)
            if (mu != nu) acc += dth[mu][nu] * E[b][mu] * E[c][nu];
        C[at(a, b, c)] = -acc;
        C[at(a, c, b)] = acc;
      }
  }
  std::vector<J1> G(C.size());
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) G[at(a, b, c)] = 0.5 * (C[at(a, b, c)] - C[at(b, c, a)] + C[at(c, a, b)]);
  auto along = [&](int c, const J1& f) {
    double acc = 0.0;
    for (int mu = 0; mu < N; ++mu) acc += E[c][mu].value() * f.d(mu);
    return acc;
  };
  Mat<double, N> R{};
  for (int b = 0; b < N; ++b)
    for (int d = 0; d < N; ++d) {
      double acc = 0.0;
      for (int a = 0; a < N; ++a) {
        acc += along(a, G[at(a, d, b)]) - along(d, G[at(a, a, b)]);
        for (int e = 0; e < N; ++e) {
          acc += G[at(a, a, e)].value() * G[at(e, d, b)].value() - G[at(a, d, e)].value() * G[at(e, a, b)].value();
          acc -= C[at(e, a, d)].value() * G[at(a, e, b)].value();
        }
      }
      R[b][d] = acc;
    }
  Mat<double, N> ric{};
  for (int mu = 0; mu < N; ++mu)
    for (int nu = 0; nu < N; ++nu) {
      double acc = 0.0;
      for (int b = 0; b < N; ++b)
        for (int d = 0; d < N; ++d) acc += R[b][d] * th[b][mu].value() * th[d][nu].value();
      ric[mu][nu] = acc;
    }
  return ric;
}

// ---------------------------------------------------------------------------
// Forms with derivatives.

template <int N>
using FormJet = Form<Jet<N>>;

template <int N, class FormField>
FormJet<N> evaluate_form(const FormField& field, const Point<N>& x) {
  return field(seed<N>(x));
}

// Dense tensor with all indices running over 0..n-1, row-major.
struct DenseTensor {
  int n = 0;
  int rank = 0;
  std::vector<double> data;

  DenseTensor() = default;
  DenseTensor(int dim, int r) : n(dim), rank(r), data(static_cast<std::size_t>(std::pow(dim, r)), 0.0) {}

  std::size_t offset(std::span<const int> idx) const {
    std::size_t o = 0;
    for (int i : idx) o = o * n + i;
    return o;
  }
  double& at(std::span<const int> idx) { return data[offset(idx)]; }
  double at(std::span<const int> idx) const { return data[offset(idx)]; }
  double& at(std::initializer_list<int> idx) { return data[offset({idx.begin(), idx.size()})]; }
  double at(std::initializer_list<int> idx) const { return data[offset({idx.begin(), idx.size()})]; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data) m = std::max(m, std::abs(v));
    return m;
  }
};

// Calls fn(idx) for every tuple in {0..n-1}^rank.
template <class Fn>
void for_each_index(int n, int rank, Fn&& fn) {
  std::vector<int> idx(rank, 0);
  while (true) {
    fn(std::span<const int>(idx));
    int p = rank - 1;
    while (p >= 0 && ++idx[p] == n) idx[p--] = 0;
    if (p < 0) return;
  }
}

// ∇_μ ψ_{i1..ik} = ∂_μ ψ_{i1..ik} − Σ_s Γ^λ_{μ i_s} ψ_{i1..λ..ik}
// Only the value and first derivatives of the form jets are used.
template <int N, class T>
DenseTensor covariant_derivative_form(const MetricEval<N>& m, const Form<T>& psi) {
  if (psi.dim() != N) throw DegreeMismatch("form chart dimension does not match metric");
  if (psi.degree() < 1) throw DegreeMismatch("covariant derivative needs degree >= 1");
  const int k = psi.degree();
  const auto gam = christoffel(m);
  DenseTensor out(N, k + 1);
  std::vector<int> tmp(k);
  for_each_index(N, k + 1, [&](std::span<const int> idx) {
    const int mu = idx[0];
    std::vector<int> form_idx(idx.begin() + 1, idx.end());
    double acc = psi.get(form_idx).d(mu);
    for (int s = 0; s < k; ++s) {
      for (int l = 0; l < N; ++l) {
        const double G = gam[l][mu][form_idx[s]];
        if (G == 0.0) continue;
        tmp = form_idx;
        tmp[s] = l;
        acc -= G * psi.get(tmp).value();
      }
    }
    out.at(idx) = acc;
  });
  return out;
}

// (dψ)_{j0..jk} = Σ_s (−1)^s ∂_{j_s} ψ_{j0..ĵs..jk}, i.e. d(f dx^I) = df ∧ dx^I.
template <int N, class T>
RealForm exterior_derivative(const Form<T>& psi) {
  RealForm out(psi.degree() + 1, psi.dim());
  for (std::size_t c = 0; c < out.size(); ++c) {
    const auto& J = out.tuple(c);
    double acc = 0.0;
    std::vector<int> rest;
    for (int s = 0; s <= psi.degree(); ++s) {
      rest.clear();
      for (int t = 0; t <= psi.degree(); ++t)
        if (t != s) rest.push_back(J[t]);
      const double v = psi.get(rest).d(J[s]);
      acc += (s & 1) ? -v : v;
    }
    out[c] = acc;
  }
  return out;
}

// As exterior_derivative, keeping first derivatives of the result (taken from
// the Hessians of the input). Second derivatives of the result are not
// available and are left zero. Form index i is differentiated along jet
// variable i + offset, so a form on a sub-chart can be carried by jets of a
// larger chart.
template <int N>
FormJet<N> exterior_derivative_jet(const FormJet<N>& psi, int offset = 0) {
  FormJet<N> out(psi.degree() + 1, psi.dim());
  std::vector<int> rest;
  for (std::size_t c = 0; c < out.size(); ++c) {
    const auto& J = out.tuple(c);
    Jet<N> acc;
    for (int s = 0; s <= psi.degree(); ++s) {
      rest.clear();
      for (int t = 0; t <= psi.degree(); ++t)
        if (t != s) rest.push_back(J[t]);
      const Jet<N> comp = psi.get(rest);
      const int var = J[s] + offset;
      Jet<N> dcomp(comp.d(var));
      for (int q = 0; q < N; ++q) dcomp.set_d(q, comp.dd(var, q));
      if (s & 1)
        acc -= dcomp;
      else
        acc += dcomp;
    }
    out[c] = acc;
  }
  return out;
}

// First-order jet of the 1-form df.
template <int N, class S>
Form<S> differential(const Jet<N>& f) {
  Form<S> out(1, N);
  for (int i = 0; i < N; ++i) {
    Jet<N> c(f.d(i));
    for (int q = 0; q < N; ++q) c.set_d(q, f.dd(i, q));
    out[i] = S(c);
  }
  return out;
}

// max |∇_μ ψ_I − (1/(p+1)) (dψ)_{μ I}|
template <int N>
double killing_yano_residual(const MetricEval<N>& m, const FormJet<N>& psi) {
  const int p = psi.degree();
  const DenseTensor nab = covariant_derivative_form<N>(m, psi);
  const RealForm dpsi = exterior_derivative<N>(psi);
  double res = 0.0;
  for_each_index(N, p + 1, [&](std::span<const int> idx) {
    const double r = nab.at(idx) - dpsi.get(idx) / (p + 1);
    res = std::max(res, std::abs(r));
  });
  return res;
}

template <int N, class MetricField, class FormField>
double killing_yano_residual(const MetricField& g, const FormField& psi, const Point<N>& x) {
  return killing_yano_residual<N>(evaluate_metric<N>(g, x), evaluate_form<N>(psi, x));
}

// Pairs (∇_μ(dψ)_J, (X_μ* ∧ ψ)_J) over all frame directions μ and sorted J at one point.
struct SpecialKillingSamples {
  std::vector<double> lhs;
  std::vector<double> rhs;
};

template <int N>
SpecialKillingSamples special_killing_samples(const MetricEval<N>& m, const FormJet<N>& psi) {
  const FormJet<N> dpsi = exterior_derivative_jet<N>(psi);
  const DenseTensor nab = covariant_derivative_form<N>(m, dpsi);
  const RealForm psi0 = form_values(psi);
  SpecialKillingSamples s;
  for (int mu = 0; mu < N; ++mu) {
    RealForm xstar(1, N);
    for (int j = 0; j < N; ++j) xstar[j] = m.g[mu][j];
    const RealForm w = wedge(xstar, psi0);
    for (std::size_t c = 0; c < w.size(); ++c) {
      std::vector<int> idx{mu};
      const auto& J = w.tuple(c);
      idx.insert(idx.end(), J.begin(), J.end());
      s.lhs.push_back(nab.at(idx));
      s.rhs.push_back(w[c]);
    }
  }
  return s;
}

struct SpecialKillingFit {
  double c = 0.0;           // least-squares constant over all points and directions
  double residual = 0.0;    // max |∇_X dψ − c X*∧ψ|
  double c_std = 0.0;       // spread of the per-point constants
  double c_rel_std = 0.0;   // c_std / |c|
  double max_ky_residual = 0.0;
  std::vector<double> per_point;
};

// Fits ∇_X(dψ) = c X* ∧ ψ over a set of points. Throws NotKilling if the form
// fails the Killing-Yano equation at any point.
template <int N, class MetricField, class FormField>
SpecialKillingFit special_killing_fit(const MetricField& g, const FormField& psi, std::span<const Point<N>> pts,
                                      double ky_tol = 1e-7) {
  if (pts.size() < 2) throw DegreeMismatch("special_killing_fit needs at least two points");
  SpecialKillingFit fit;
  double num = 0.0, den = 0.0;
  std::vector<SpecialKillingSamples> all;
  for (const auto& x : pts) {
    const auto m = evaluate_metric<N>(g, x);
    const auto f = evaluate_form<N>(psi, x);
    const double ky = killing_yano_residual<N>(m, f);
    fit.max_ky_residual = std::max(fit.max_ky_residual, ky);
    if (ky > ky_tol) throw NotKilling("Killing-Yano residual " + std::to_string(ky) + " exceeds " + std::to_string(ky_tol));
    auto s = special_killing_samples<N>(m, f);
    double pn = 0.0, pd = 0.0;
    for (std::size_t i = 0; i < s.lhs.size(); ++i) {
      pn += s.lhs[i] * s.rhs[i];
      pd += s.rhs[i] * s.rhs[i];
    }
    num += pn;
    den += pd;
    fit.per_point.push_back(pd > 0.0 ? pn / pd : 0.0);
    all.push_back(std::move(s));
  }
  fit.c = den > 0.0 ? num / den : 0.0;
  for (const auto& s : all)
    for (std::size_t i = 0; i < s.lhs.size(); ++i) fit.residual = std::max(fit.residual, std::abs(s.lhs[i] - fit.c * s.rhs[i]));
  double mean = 0.0;
  for (double c : fit.per_point) mean += c;
  mean /= static_cast<double>(fit.per_point.size());
  double var = 0.0;
  for (double c : fit.per_point) var += (c - mean) * (c - mean);
  fit.c_std = std::sqrt(var / static_cast<double>(fit.per_point.size()));
  fit.c_rel_std = fit.c != 0.0 ? fit.c_std / std::abs(fit.c) : INFINITY;
  return fit;
}

// ---------------------------------------------------------------------------
// Symmetric tensors.

// K_{ij} = ψ_{i a2..ak} σ_j^{a2..ak} + σ_{i a2..ak} ψ_j^{a2..ak}, full index sums.
template <int N, class T>
Mat<T, N> ky_to_sk(const Form<T>& psi, const Form<T>& sigma, const Mat<T, N>& g_inv) {
  if (psi.degree() != sigma.degree()) throw DegreeMismatch("ky_to_sk needs forms of equal degree");
  if (psi.dim() != N || sigma.dim() != N) throw DegreeMismatch("ky_to_sk chart dimension mismatch");
  const int k = psi.degree();
  if (k < 1) throw DegreeMismatch("ky_to_sk needs degree >= 1");
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) total *= N;
  auto dense = [&](const Form<T>& f) {
    std::vector<T> d(total, T(0.0));
    for_each_index(N, k, [&](std::span<const int> idx) {
      std::size_t o = 0;
      for (int i : idx) o = o * N + i;
      d[o] = f.get(idx);
    });
    return d;
  };
  // Raise trailing k-1 slots of a dense tensor.
  auto raise = [&](std::vector<T> d) {
    std::size_t stride = 1;
    for (int slot = k - 1; slot >= 1; --slot) {
      std::vector<T> r(total, T(0.0));
      for (std::size_t o = 0; o < total; ++o) {
        const int b = static_cast<int>((o / stride) % N);
        const std::size_t base = o - static_cast<std::size_t>(b) * stride;
        T acc(0.0);
        for (int c = 0; c < N; ++c) acc += g_inv[b][c] * d[base + static_cast<std::size_t>(c) * stride];
        r[o] = acc;
      }
      d = std::move(r);
      stride *= N;
    }
    return d;
  };
  const auto p_low = dense(psi);
  const auto s_low = dense(sigma);
  const auto p_up = raise(p_low);
  const auto s_up = raise(s_low);
  const std::size_t tail = total / N;
  Mat<T, N> K{};
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      T acc(0.0);
      for (std::size_t a = 0; a < tail; ++a)
        acc += p_low[i * tail + a] * s_up[j * tail + a] + s_low[i * tail + a] * p_up[j * tail + a];
      K[i][j] = acc;
      K[j][i] = acc;
    }
  return K;
}

// max |∇_{(λ}K_{μν)}| for a symmetric tensor field carried as jets.
template <int N>
double stackel_killing_residual(const MetricEval<N>& m, const Mat<Jet<N>, N>& K) {
  const auto gam = christoffel(m);
  auto nabla = [&](int l, int mu, int nu) {
    double acc = K[mu][nu].d(l);
    for (int s = 0; s < N; ++s) acc -= gam[s][l][mu] * K[s][nu].value() + gam[s][l][nu] * K[mu][s].value();
    return acc;
  };
  double res = 0.0;
  for (int l = 0; l < N; ++l)
    for (int mu = l; mu < N; ++mu)
      for (int nu = mu; nu < N; ++nu) {
        const double sym = (nabla(l, mu, nu) + nabla(mu, nu, l) + nabla(nu, l, mu)) / 3.0;
        res = std::max(res, std::abs(sym));
      }
  return res;
}

// Killing residual of a constant-coefficient vector field X, via the 1-form X♭.
template <int N, class MetricField>
double killing_vector_residual(const MetricField& g, const Vec<double, N>& X, const Point<N>& x) {
  const auto xs = seed<N>(x);
  const auto gj = g(xs);
  FormJet<N> flat(1, N);
  for (int i = 0; i < N; ++i) {
    Jet<N> acc;
    for (int j = 0; j < N; ++j) acc += gj[i][j] * X[j];
    flat[i] = acc;
  }
  return killing_yano_residual<N>(metric_eval_from_jets<N>(gj), flat);
}

}  // namespace ypq::geom

#pragma once

#include <span>
#include <vector>

#include "folia/curvature.hpp"
#include "folia/errors.hpp"
#include "folia/foliation.hpp"

namespace folia::detail {

// The full pointwise geometry bundle of a foliation at base scalar S.
// Instantiated at S = double for the public operations and at S = D1 to
// carry first derivatives of every field through the pipeline (the metric is
// then evaluated at Dual<Dual<S>>-free depth: one level up for g, two for
// tau).
template <class S>
struct GeomJet {
  int m = 0;  // chart dimension
  int n = 0;  // leaf dimension
  SquareMat<S> g, ginv;
  Tensor3<S> gamma;                  // Gamma^a_{bc}
  std::vector<S> N;                  // unit future normal
  SquareMat<S> dN;                   // dN(c,a) = d_c N^a
  std::vector<std::vector<S>> e;     // frame: n leaf vectors then N
  Tensor3<S> de;                     // de(A,c,a) = d_c e_A^a
  SquareMat<S> gram;                 // g(e_A, e_B)
  SquareMat<S> h;                    // n x n
  S H{}, B2{};
  std::vector<S> A;                  // acceleration components
  std::vector<S> x;                  // x_i = g(A, e_i)
  S A2{};
  S umb2{};                          // squared umbilicity deviation
  Tensor3<S> omega;                  // omega(A,B,C) = g(nab_{e_C} e_A, e_B)
};

// Project the coordinate axes onto the leaf and orthonormalize in fixed axis
// order; branches only on scalar parts so it is dual-level safe.
template <class S>
std::vector<std::vector<S>> leaf_frame(const SquareMat<S>& g,
                                       const std::vector<S>& N) {
  const int m = g.dim();
  const int n = m - 1;
  std::vector<std::vector<S>> out;
  for (int axis = 0; axis < m && static_cast<int>(out.size()) < n; ++axis) {
    std::vector<S> v(m, S{});
    v[axis] = S(1.0);
    // leaf projection: v + g(v,N) N, using g(N,N) = -1
    S gvn = metric_dot<S>(g, v, N);
    for (int a = 0; a < m; ++a) v[a] += gvn * N[a];
    for (const auto& u : out) {
      S c = metric_dot<S>(g, v, u);
      for (int a = 0; a < m; ++a) v[a] -= c * u[a];
    }
    S vv = metric_dot<S>(g, v, v);
    if (scalar_value(vv) < 1e-10) continue;
    S inv = 1.0 / sqrt(vv);
    for (auto& comp : v) comp *= inv;
    out.push_back(std::move(v));
  }
  if (static_cast<int>(out.size()) < n)
    raise(Errc::degenerate_frame,
          "projected coordinate axes do not span the leaf");
  return out;
}

template <class S>
GeomJet<S> geometry_at(const Foliation& fol, std::span<const S> p) {
  using DS = Dual<S>;
  using DDS = Dual<DS>;

  GeomJet<S> J;
  J.m = fol.metric->dim();
  J.n = J.m - 1;
  const int m = J.m;
  const int n = J.n;

  // metric with one derivative level
  auto xd = seed_directions<S>(p);
  auto gj = fol.metric->eval_at<DS>(xd);
  J.g = values(gj);
  Tensor3<S> dg = grads(gj, m);
  J.ginv = invert(J.g);
  J.gamma = christoffel_sym(J.ginv, dg);

  // time function with two derivative levels: dtau[a] carries d_a tau and
  // its coordinate derivatives
  auto xdd = seed_directions<DS>(xd);
  DDS taujj = fol.tau.eval_at<DDS>(xdd);
  std::vector<DS> dtau(m);
  for (int a = 0; a < m; ++a) dtau[a] = taujj.deriv(a);

  // unit normal as a differentiated field
  auto ginvj = invert(gj);
  std::vector<DS> grad_up(m);
  for (int a = 0; a < m; ++a) {
    DS acc{};
    for (int b = 0; b < m; ++b) acc += ginvj(a, b) * dtau[b];
    grad_up[a] = acc;
  }
  DS nn{};
  for (int a = 0; a < m; ++a) nn += grad_up[a] * dtau[a];
  if (scalar_value(nn) >= -1e-12)
    raise(Errc::not_spacelike_leaf,
          "time function gradient is not timelike here");
  DS scale = 1.0 / sqrt(-nn);
  std::vector<DS> Nj(m);
  for (int a = 0; a < m; ++a) Nj[a] = grad_up[a] * scale;
  if (scalar_value(Nj[m - 1]) < 0)
    for (auto& c : Nj) c = -c;

  J.N.resize(m);
  J.dN = SquareMat<S>(m);
  for (int a = 0; a < m; ++a) {
    J.N[a] = Nj[a].value();
    for (int c = 0; c < m; ++c) J.dN(c, a) = Nj[a].deriv(c);
  }

  // frame, with derivatives, then values
  auto framej = leaf_frame<DS>(gj, Nj);
  framej.push_back(Nj);
  J.e.assign(m, std::vector<S>(m));
  J.de = Tensor3<S>(m);
  for (int A = 0; A < m; ++A)
    for (int a = 0; a < m; ++a) {
      J.e[A][a] = framej[A][a].value();
      for (int c = 0; c < m; ++c) J.de(A, c, a) = framej[A][a].deriv(c);
    }
  J.gram = SquareMat<S>(m);
  for (int A = 0; A < m; ++A)
    for (int B = 0; B < m; ++B)
      J.gram(A, B) = metric_dot<S>(J.g, J.e[A], J.e[B]);

  // nab N by coordinate direction: DNc(c,a) = (nab_{d_c} N)^a
  SquareMat<S> DNc(m);
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a) {
      S acc = J.dN(c, a);
      for (int b = 0; b < m; ++b) acc += J.gamma(a, c, b) * J.N[b];
      DNc(c, a) = acc;
    }

  // second fundamental form h_ij = -g(nab_{e_j} N, e_i)
  J.h = SquareMat<S>(n);
  std::vector<S> w(m);
  for (int j = 0; j < n; ++j) {
    for (int a = 0; a < m; ++a) {
      S acc{};
      for (int c = 0; c < m; ++c) acc += J.e[j][c] * DNc(c, a);
      w[a] = acc;
    }
    for (int i = 0; i < n; ++i) J.h(i, j) = -metric_dot<S>(J.g, w, J.e[i]);
  }
  S trh{};
  for (int i = 0; i < n; ++i) trh += J.h(i, i);
  J.H = trh * (-1.0 / n);
  J.B2 = S{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) J.B2 += J.h(i, j) * J.h(i, j);
  J.umb2 = S{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      S dev = J.h(i, j);
      if (i == j) dev += J.H;  // subtracting (tr h / n) Id with tr h = -nH
      J.umb2 += dev * dev;
    }

  // acceleration A = nab_N N and its frame components
  J.A.resize(m);
  for (int a = 0; a < m; ++a) {
    S acc{};
    for (int c = 0; c < m; ++c) acc += J.N[c] * DNc(c, a);
    J.A[a] = acc;
  }
  J.x.resize(n);
  for (int i = 0; i < n; ++i) J.x[i] = metric_dot<S>(J.g, J.A, J.e[i]);
  J.A2 = metric_dot<S>(J.g, J.A, J.A);

  // frame connection coefficients omega(A,B,C) = g(nab_{e_C} e_A, e_B)
  J.omega = Tensor3<S>(m);
  Tensor3<S> De(m);  // De(A,c,a) = (nab_{d_c} e_A)^a
  for (int A = 0; A < m; ++A)
    for (int c = 0; c < m; ++c)
      for (int a = 0; a < m; ++a) {
        S acc = J.de(A, c, a);
        for (int b = 0; b < m; ++b) acc += J.gamma(a, c, b) * J.e[A][b];
        De(A, c, a) = acc;
      }
  for (int A = 0; A < m; ++A)
    for (int C = 0; C < m; ++C) {
      for (int a = 0; a < m; ++a) {
        S acc{};
        for (int c = 0; c < m; ++c) acc += J.e[C][c] * De(A, c, a);
        w[a] = acc;
      }
      for (int B = 0; B < m; ++B)
        J.omega(A, B, C) = metric_dot<S>(J.g, w, J.e[B]);
    }

  return J;
}

// Cheap path: only the unit normal (metric at value level, tau at one
// derivative level).
template <class S>
std::vector<S> normal_only(const Foliation& fol, std::span<const S> p) {
  const int m = fol.metric->dim();
  auto g = fol.metric->eval_at<S>(p);
  auto ginv = invert(g);
  auto xd = seed_directions<S>(p);
  Dual<S> tauj = fol.tau.eval_at<Dual<S>>(xd);
  std::vector<S> grad_up(m);
  for (int a = 0; a < m; ++a) {
    S acc{};
    for (int b = 0; b < m; ++b) acc += ginv(a, b) * tauj.deriv(b);
    grad_up[a] = acc;
  }
  S nn{};
  for (int a = 0; a < m; ++a) nn += grad_up[a] * tauj.deriv(a);
  if (scalar_value(nn) >= -1e-12)
    raise(Errc::not_spacelike_leaf,
          "time function gradient is not timelike here");
  S scale = 1.0 / sqrt(-nn);
  std::vector<S> N(m);
  for (int a = 0; a < m; ++a) N[a] = grad_up[a] * scale;
  if (scalar_value(N[m - 1]) < 0)
    for (auto& c : N) c = -c;
  return N;
}

}  // namespace folia::detail

#include "folia/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "folia/curvature.hpp"
#include "folia/detail/pipeline.hpp"
#include "folia/errors.hpp"

namespace folia {

PointGeometry point_geometry(const Foliation& fol, const ChartPoint& p) {
  // run the whole pipeline on a coordinate-seeded base so every derived
  // field arrives together with its chart partials
  auto xd = seed_directions<double>(p);
  detail::GeomJet<D1> J = detail::geometry_at<D1>(fol, std::span<const D1>(xd));
  const int m = J.m, n = J.n;

  PointGeometry G;
  G.n = n;
  G.N.resize(m);
  for (int a = 0; a < m; ++a) G.N[a] = J.N[a].value();
  G.e.assign(m, std::vector<double>(m));
  for (int A = 0; A < m; ++A)
    for (int a = 0; a < m; ++a) G.e[A][a] = J.e[A][a].value();
  G.omega = Tensor3<double>(m);
  for (int A = 0; A < m; ++A)
    for (int B = 0; B < m; ++B)
      for (int C = 0; C < m; ++C) G.omega(A, B, C) = J.omega(A, B, C).value();
  G.h = SquareMat<double>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G.h(i, j) = J.h(i, j).value();
  G.x.resize(n);
  for (int i = 0; i < n; ++i) G.x[i] = J.x[i].value();
  G.H = J.H.value();
  G.B_norm_sq = J.B2.value();
  G.A_norm_sq = J.A2.value();
  G.umb_dev = std::sqrt(std::max(0.0, J.umb2.value()));

  G.NH = 0.0;
  for (int a = 0; a < m; ++a) G.NH += G.N[a] * J.H.deriv(a);
  G.dh_N = SquareMat<double>(n);
  G.dx_e = SquareMat<double>(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double hn = 0.0, xe = 0.0;
      for (int a = 0; a < m; ++a) {
        hn += G.N[a] * J.h(i, k).deriv(a);
        xe += G.e[k][a] * J.x[i].deriv(a);
      }
      G.dh_N(i, k) = hn;
      G.dx_e(i, k) = xe;
    }

  // divergences of the acceleration field: cov(b,a) = (nab_{d_b} A)^a
  std::vector<double> Aval(m);
  for (int a = 0; a < m; ++a) Aval[a] = J.A[a].value();
  SquareMat<double> gval(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) gval(a, b) = J.g(a, b).value();
  SquareMat<double> cov(m);
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < m; ++a) {
      double acc = J.A[a].deriv(b);
      for (int c = 0; c < m; ++c) acc += J.gamma(a, b, c).value() * Aval[c];
      cov(b, a) = acc;
    }
  G.div_A = 0.0;
  for (int a = 0; a < m; ++a) G.div_A += cov(a, a);
  G.divL_A = 0.0;
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < m; ++b)
      for (int a = 0; a < m; ++a)
        for (int d = 0; d < m; ++d)
          G.divL_A += G.e[i][b] * cov(b, a) * gval(a, d) * G.e[i][d];

  // curvature contractions against the frame
  CurvatureTensor R = riemann(*fol.metric, p);
  double ric_NN = 0.0;
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c) ric_NN += R.ricci_std(b, c) * G.N[b] * G.N[c];
  G.ric_N = -ric_NN / n;
  G.R_NiNk = SquareMat<double>(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c)
            for (int d = 0; d < m; ++d)
              acc += R.riemann_low(a, b, c, d) * G.N[a] * G.e[i][b] * G.N[c] *
                     G.e[k][d];
      G.R_NiNk(i, k) = acc;
    }
  return G;
}

double fundamental_residual(const PointGeometry& G, IdentitySignature sig) {
  return G.divL_A - (G.n * G.NH + sig.s_B * G.B_norm_sq +
                     sig.s_ric * G.n * G.ric_N + sig.s_A * G.A_norm_sq);
}

double fundamental_residual(const Foliation& fol, const ChartPoint& p,
                            IdentitySignature sig) {
  return fundamental_residual(point_geometry(fol, p), sig);
}

double split_residual(const PointGeometry& G) {
  return G.div_A - G.divL_A - G.A_norm_sq;
}

double split_residual(const Foliation& fol, const ChartPoint& p) {
  return split_residual(point_geometry(fol, p));
}

SquareMat<double> shape_transport_residual(const PointGeometry& G, int sig_R) {
  const int n = G.n;
  SquareMat<double> res(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double lhs = G.dx_e(i, k);
      for (int j = 0; j < n; ++j) lhs += G.x[j] * G.omega(j, i, k);
      double rhs = -G.x[i] * G.x[k] - sig_R * G.R_NiNk(i, k) - G.dh_N(i, k);
      for (int j = 0; j < n; ++j) {
        rhs += G.h(i, j) * G.h(j, k);
        rhs -= G.h(j, k) * G.omega(j, i, n) + G.h(i, j) * G.omega(j, k, n);
      }
      res(i, k) = lhs - rhs;
    }
  return res;
}

double shape_transport_residual(const Foliation& fol, const ChartPoint& p,
                                int i, int k, int sig_R) {
  PointGeometry G = point_geometry(fol, p);
  if (i < 0 || i >= G.n || k < 0 || k >= G.n)
    raise(Errc::invalid_params, "frame indices must lie in [0, n)");
  return shape_transport_residual(G, sig_R)(i, k);
}

SignatureResult calibrate_signature(const std::vector<WitnessSamples>& witnesses,
                                    double tol) {
  std::vector<PointGeometry> geoms;
  for (const auto& w : witnesses)
    for (const auto& p : w.points) geoms.push_back(point_geometry(w.fol, p));
  if (geoms.empty())
    raise(Errc::empty_sample_set, "signature calibration needs witness points");

  SignatureResult result;
  for (int s_B : {+1, -1})
    for (int s_ric : {+1, -1})
      for (int s_A : {+1, -1}) {
        IdentitySignature sig{s_B, s_ric, s_A};
        double worst = 0.0;
        for (const auto& G : geoms)
          worst = std::max(worst, std::abs(fundamental_residual(G, sig)));
        result.table.emplace_back(sig, worst);
      }

  int winners = 0;
  double runner_up = std::numeric_limits<double>::infinity();
  for (const auto& [sig, worst] : result.table) {
    if (worst < tol) {
      ++winners;
      result.winner = sig;
      result.winner_max_residual = worst;
    } else {
      runner_up = std::min(runner_up, worst);
    }
  }
  if (winners != 1)
    raise(Errc::no_unique_signature,
          "witness set admits " + std::to_string(winners) +
              " signatures at tolerance " + std::to_string(tol));
  result.runner_up_max_residual = runner_up;
  return result;
}

}  // namespace folia

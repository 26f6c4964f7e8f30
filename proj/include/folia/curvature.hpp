#pragma once

#include <span>
#include <vector>

#include "folia/chart.hpp"
#include "folia/linalg.hpp"

namespace folia {

// Connection coefficients Gamma^A_{BC} at a point, chart indices.
struct ConnectionCoeffs {
  Tensor3<double> gamma;
};

// Curvature with the pinned engine convention
//   R(X,Y)Z = nab_X nab_Y Z - nab_Y nab_X Z - nab_{[X,Y]} Z,
//   R_{ABCD} = g(R(e_A,e_B)e_C, e_D),
// riemann_low in the coordinate basis, ricci_std the trace Ric(X,Y) =
// tr(Z -> R(Z,X)Y). Under this convention a constant-curvature metric obeys
// R_{ABCD} = c (g_{AD} g_{BC} - g_{AC} g_{BD}).
struct CurvatureTensor {
  Tensor4<double> riemann_low;
  SquareMat<double> ricci_std;
};

namespace detail {

// Gamma^a_{bc} = 1/2 g^{ad} (d_b g_{dc} + d_c g_{bd} - d_d g_{bc}),
// with dg(k,i,j) = d_k g_ij.
template <class S>
Tensor3<S> christoffel_sym(const SquareMat<S>& ginv, const Tensor3<S>& dg) {
  const int m = ginv.dim();
  Tensor3<S> gamma(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        S acc{};
        for (int d = 0; d < m; ++d)
          acc += ginv(a, d) * (dg(b, d, c) + dg(c, b, d) - dg(d, b, c));
        gamma(a, b, c) = acc * 0.5;
      }
  return gamma;
}

}  // namespace detail

ConnectionCoeffs christoffel(const MetricField& metric, const ChartPoint& p);

CurvatureTensor riemann(const MetricField& metric, const ChartPoint& p);

// Contract all four slots with basis vectors (e.g. an adapted frame).
Tensor4<double> riemann_in_frame(const Tensor4<double>& riemann_low,
                                 const std::vector<std::vector<double>>& basis);

// ric(N) := -(1/n) ricci_std(N,N) for unit timelike N; normalized so the
// constant-curvature entries give ric(N) = c.
double ric_direction(const MetricField& metric, const ChartPoint& p,
                     std::span<const double> N);

// kappa(v) := g(R(v,N)N, v) for unit spacelike v orthogonal to N; the Riccati
// coefficient along normal geodesics, equal to -c at constant curvature c.
double radial_curvature(const MetricField& metric, const ChartPoint& p,
                        std::span<const double> N, std::span<const double> v);

// max_ABCD |R_{ABCD} - c (g_AD g_BC - g_AC g_BD)| at p.
double constant_curvature_deviation(const MetricField& metric,
                                    const ChartPoint& p, double c);

}  // namespace folia

#include "folia/curvature.hpp"

#include <cmath>

#include "folia/errors.hpp"

namespace folia {

ConnectionCoeffs christoffel(const MetricField& metric, const ChartPoint& p) {
  const int m = metric.dim();
  auto xd = seed_directions<double>(p);
  auto gj = metric.eval_at<D1>(xd);
  auto g = values(gj);
  auto dg = grads(gj, m);
  auto ginv = invert(g);
  return {detail::christoffel_sym(ginv, dg)};
}

CurvatureTensor riemann(const MetricField& metric, const ChartPoint& p) {
  const int m = metric.dim();
  auto xd = seed_directions<double>(p);
  auto xdd = seed_directions<D1>(xd);
  auto gjj = metric.eval_at<D2>(xdd);

  // Christoffels as first-order duals: value + all coordinate derivatives.
  SquareMat<D1> gj = values(gjj);
  Tensor3<D1> dgj = grads(gjj, m);
  auto ginvj = invert(gj);
  Tensor3<D1> gammaj = detail::christoffel_sym(ginvj, dgj);

  SquareMat<double> g = values(gj);
  Tensor3<double> gamma(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) gamma(a, b, c) = gammaj(a, b, c).value();

  // R^E_{ABC}: coefficient of e_E in R(d_A, d_B) d_C.
  Tensor4<double> r_up(m);
  for (int e = 0; e < m; ++e)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          double acc = gammaj(e, b, c).deriv(a) - gammaj(e, a, c).deriv(b);
          for (int f = 0; f < m; ++f)
            acc += gamma(e, a, f) * gamma(f, b, c) -
                   gamma(e, b, f) * gamma(f, a, c);
          r_up(e, a, b, c) = acc;
        }

  CurvatureTensor out;
  out.riemann_low = Tensor4<double>(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          double acc = 0.0;
          for (int e = 0; e < m; ++e) acc += g(e, d) * r_up(e, a, b, c);
          out.riemann_low(a, b, c, d) = acc;
        }

  out.ricci_std = SquareMat<double>(m);
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c) {
      double acc = 0.0;
      for (int a = 0; a < m; ++a) acc += r_up(a, a, b, c);
      out.ricci_std(b, c) = acc;
    }
  return out;
}

Tensor4<double> riemann_in_frame(const Tensor4<double>& riemann_low,
                                 const std::vector<std::vector<double>>& basis) {
  const int m = riemann_low.dim();
  Tensor4<double> out(static_cast<int>(basis.size()));
  for (size_t A = 0; A < basis.size(); ++A)
    for (size_t B = 0; B < basis.size(); ++B)
      for (size_t C = 0; C < basis.size(); ++C)
        for (size_t D = 0; D < basis.size(); ++D) {
          double acc = 0.0;
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
              for (int c = 0; c < m; ++c)
                for (int d = 0; d < m; ++d)
                  acc += riemann_low(a, b, c, d) * basis[A][a] * basis[B][b] *
                         basis[C][c] * basis[D][d];
          out(static_cast<int>(A), static_cast<int>(B), static_cast<int>(C),
              static_cast<int>(D)) = acc;
        }
  return out;
}

double ric_direction(const MetricField& metric, const ChartPoint& p,
                     std::span<const double> N) {
  const int m = metric.dim();
  auto g = metric.eval_at<double>(p);
  double nn = metric_dot<double>(g, N, N);
  if (std::abs(nn + 1.0) > 1e-9)
    raise(Errc::not_unit_timelike, "ric direction needs g(N,N) = -1");
  auto curv = riemann(metric, p);
  double acc = 0.0;
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c) acc += curv.ricci_std(b, c) * N[b] * N[c];
  return -acc / static_cast<double>(m - 1);
}

double radial_curvature(const MetricField& metric, const ChartPoint& p,
                        std::span<const double> N, std::span<const double> v) {
  const int m = metric.dim();
  auto g = metric.eval_at<double>(p);
  if (std::abs(metric_dot<double>(g, N, N) + 1.0) > 1e-8)
    raise(Errc::not_unit_timelike, "radial curvature needs g(N,N) = -1");
  if (std::abs(metric_dot<double>(g, v, v) - 1.0) > 1e-8 ||
      std::abs(metric_dot<double>(g, v, N)) > 1e-8)
    raise(Errc::bad_frame_vector,
          "radial curvature needs unit spacelike v orthogonal to N");
  auto curv = riemann(metric, p);
  // kappa(v) = g(R(v,N)N, v) = R_low(v, N, N, v)
  double acc = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          acc += curv.riemann_low(a, b, c, d) * v[a] * N[b] * N[c] * v[d];
  return acc;
}

double constant_curvature_deviation(const MetricField& metric,
                                    const ChartPoint& p, double c) {
  const int m = metric.dim();
  auto g = metric.eval_at<double>(p);
  auto curv = riemann(metric, p);
  double worst = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int cc = 0; cc < m; ++cc)
        for (int d = 0; d < m; ++d) {
          double model = c * (g(a, d) * g(b, cc) - g(a, cc) * g(b, d));
          worst = std::max(worst,
                           std::abs(curv.riemann_low(a, b, cc, d) - model));
        }
  return worst;
}

}  // namespace folia

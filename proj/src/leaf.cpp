#include "folia/leaf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "folia/audit.hpp"
#include "folia/dual.hpp"
#include "folia/errors.hpp"
#include "folia/linalg.hpp"

namespace folia {

namespace {

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// Solve tau(..., t) = tau0 for the last coordinate by Newton, starting from
// the fiber midpoint and staying strictly inside the open interval.
double solve_fiber(const Foliation& fol, ChartPoint& p, double tau0) {
  const Box& box = fol.metric->box();
  const int t_axis = box.dim() - 1;
  const double lo = box.lo[t_axis] + 1e-9 * box.span(t_axis);
  const double hi = box.hi[t_axis] - 1e-9 * box.span(t_axis);
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    p[t_axis] = t;
    auto q = seed_directions<double>(p);
    const D1 tv = fol.tau.eval_at<D1>(std::span<const D1>(q));
    const double value = tv.value() - tau0;
    const double slope = tv.deriv(t_axis);
    if (std::abs(slope) < 1e-14)
      raise(Errc::not_spacelike_leaf,
            "time function is stationary along the fiber");
    if (std::abs(value) < 1e-14) return t;
    t = std::clamp(t - value / slope, lo, hi);
  }
  p[t_axis] = t;
  auto q = seed_directions<double>(p);
  if (std::abs(fol.tau.eval_at<D1>(std::span<const D1>(q)).value() - tau0) >
      1e-10)
    raise(Errc::out_of_domain,
          "leaf tau = " + std::to_string(tau0) +
              " does not meet the chart above a grid node");
  return t;
}

}  // namespace

double LeafQuadrature::area() const { return pairwise_sum(weights); }

LeafQuadrature build_leaf_quadrature(const Foliation& fol, double tau0,
                                     int per_axis) {
  if (!std::isfinite(tau0)) raise(Errc::invalid_params, "tau0 must be finite");
  if (per_axis < 2) raise(Errc::invalid_params, "need at least 2 nodes per axis");
  const Box& box = fol.metric->box();
  const int m = box.dim();
  const int n = m - 1;
  for (int a = 0; a < n; ++a)
    if (!box.is_periodic(a))
      raise(Errc::non_compact_leaf,
            "leaf axis " + std::to_string(a) +
                " is not periodic: the leaf cannot be compact");

  LeafQuadrature quad;
  quad.tau0 = tau0;
  quad.per_axis = per_axis;

  double cell = 1.0;
  for (int a = 0; a < n; ++a) cell *= box.span(a) / per_axis;

  long total = 1;
  for (int a = 0; a < n; ++a) total *= per_axis;
  quad.nodes.reserve(total);
  quad.weights.reserve(total);

  ChartPoint p(m, 0.0);
  for (long lin = 0; lin < total; ++lin) {
    long rem = lin;
    for (int a = 0; a < n; ++a) {
      const int idx = static_cast<int>(rem % per_axis);
      rem /= per_axis;
      p[a] = box.lo[a] + box.span(a) * idx / per_axis;
    }
    p[m - 1] = solve_fiber(fol, p, tau0);

    // Leaf tangents v_a = d_a - (d_a tau / d_t tau) d_t span the graph.
    auto q = seed_directions<double>(p);
    const D1 tv = fol.tau.eval_at<D1>(std::span<const D1>(q));
    const SquareMat<double> g = fol.metric->evaluate(p);
    std::vector<std::vector<double>> v(n, std::vector<double>(m, 0.0));
    for (int a = 0; a < n; ++a) {
      v[a][a] = 1.0;
      v[a][m - 1] = -tv.deriv(a) / tv.deriv(m - 1);
    }
    SquareMat<double> g_leaf(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        g_leaf(a, b) = metric_dot<double>(g, v[a], v[b]);
    const Inertia sig = sym_inertia(g_leaf);
    if (sig.positive != n || sig.negative != 0)
      raise(Errc::not_spacelike_leaf,
            "induced metric is not positive definite on the leaf");
    double det = 1.0;
    SquareMat<double> inv = invert(g_leaf, &det);
    (void)inv;
    quad.nodes.push_back(p);
    quad.weights.push_back(std::sqrt(det) * cell);
  }
  return quad;
}

double leaf_integrate(const LeafQuadrature& quad,
                      const std::function<double(const ChartPoint&)>& f) {
  if (quad.nodes.empty()) raise(Errc::empty_sample_set, "empty quadrature");
  std::vector<double> terms(quad.nodes.size());
  for (std::size_t i = 0; i < quad.nodes.size(); ++i)
    terms[i] = quad.weights[i] * f(quad.nodes[i]);
  return pairwise_sum(terms);
}

double l1_norm_leaf(const LeafQuadrature& quad,
                    const std::function<double(const ChartPoint&)>& f) {
  if (quad.nodes.empty()) raise(Errc::empty_sample_set, "empty quadrature");
  std::vector<double> terms(quad.nodes.size());
  for (std::size_t i = 0; i < quad.nodes.size(); ++i)
    terms[i] = quad.weights[i] * std::abs(f(quad.nodes[i]));
  return pairwise_sum(terms);
}

ObstructionReport obstruction_report(const Foliation& fol, double tau0,
                                     int per_axis, double tol) {
  LeafQuadrature quad = build_leaf_quadrature(fol, tau0, per_axis);
  ObstructionReport rep;
  rep.tau0 = tau0;
  rep.area = quad.area();

  const std::size_t count = quad.nodes.size();
  std::vector<double> div_terms(count), ric_terms(count), acc_terms(count);
  for (std::size_t i = 0; i < count; ++i) {
    PointGeometry geom = point_geometry(fol, quad.nodes[i]);
    div_terms[i] = quad.weights[i] * geom.divL_A;
    ric_terms[i] = quad.weights[i] * geom.n * geom.ric_N;
    acc_terms[i] = quad.weights[i] * geom.A_norm_sq;
    rep.max_B_norm = std::max(rep.max_B_norm, std::sqrt(geom.B_norm_sq));
  }
  rep.stokes_residual = std::abs(pairwise_sum(div_terms));
  rep.integral_n_ric = pairwise_sum(ric_terms);
  rep.integral_A_sq = pairwise_sum(acc_terms);
  rep.obstruction = rep.integral_n_ric + rep.integral_A_sq;
  rep.obstructed = rep.obstruction > tol;
  return rep;
}

}  // namespace folia

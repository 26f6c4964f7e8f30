#include "folia/foliation.hpp"

#include <cmath>

#include "folia/detail/pipeline.hpp"

namespace folia {

std::vector<double> unit_normal(const Foliation& fol, const ChartPoint& p) {
  return detail::normal_only<double>(fol, p);
}

AdaptedFrame adapted_frame(const Foliation& fol, const ChartPoint& p) {
  auto J = detail::geometry_at<double>(fol, p);
  return {J.e, J.gram, J.omega};
}

ExtrinsicData shape_operator(const Foliation& fol, const ChartPoint& p) {
  auto J = detail::geometry_at<double>(fol, p);
  ExtrinsicData out;
  out.h = J.h;
  out.H = J.H;
  out.B_norm_sq = J.B2;
  out.A = J.A;
  out.x = J.x;
  out.A_norm_sq = J.A2;
  out.umb_dev = std::sqrt(std::max(0.0, J.umb2));
  return out;
}

std::vector<double> acceleration(const Foliation& fol, const ChartPoint& p,
                                 std::vector<double>* frame_components) {
  auto J = detail::geometry_at<double>(fol, p);
  if (frame_components) *frame_components = J.x;
  return J.A;
}

double leaf_divergence(const Foliation& fol, const VectorField& V,
                       const ChartPoint& p) {
  auto J = detail::geometry_at<double>(fol, p);
  const int m = J.m;
  auto xd = seed_directions<double>(p);
  auto vj = V.eval_at<D1>(xd);

  std::vector<double> v(m);
  for (int a = 0; a < m; ++a) v[a] = vj[a].value();
  if (std::abs(metric_dot<double>(J.g, v, J.N)) > 1e-8)
    raise(Errc::not_leaf_tangent, "field has a normal component here");

  double div = 0.0;
  std::vector<double> w(m);
  for (int i = 0; i < J.n; ++i) {
    for (int a = 0; a < m; ++a) {
      double acc = 0.0;
      for (int c = 0; c < m; ++c) {
        double cov = vj[a].deriv(c);
        for (int b = 0; b < m; ++b) cov += J.gamma(a, c, b) * v[b];
        acc += J.e[i][c] * cov;
      }
      w[a] = acc;
    }
    div += metric_dot<double>(J.g, w, J.e[i]);
  }
  return div;
}

double full_divergence(const MetricField& metric, const VectorField& V,
                       const ChartPoint& p) {
  const int m = metric.dim();
  auto xd = seed_directions<double>(p);
  auto gj = metric.eval_at<D1>(xd);
  auto g = values(gj);
  auto dg = grads(gj, m);
  auto ginv = invert(g);
  auto gamma = detail::christoffel_sym(ginv, dg);
  auto vj = V.eval_at<D1>(xd);

  // Div V = d_a V^a + Gamma^a_{ab} V^b
  double div = 0.0;
  for (int a = 0; a < m; ++a) {
    div += vj[a].deriv(a);
    for (int b = 0; b < m; ++b) div += gamma(a, a, b) * vj[b].value();
  }
  return div;
}

double full_divergence_coordinate(const MetricField& metric,
                                  const VectorField& V, const ChartPoint& p) {
  const int m = metric.dim();
  auto xd = seed_directions<double>(p);
  auto gj = metric.eval_at<D1>(xd);
  D1 det;
  invert(gj, &det);
  D1 w = sqrt(-det);  // Lorentzian: det g < 0
  auto vj = V.eval_at<D1>(xd);
  double acc = 0.0;
  for (int a = 0; a < m; ++a)
    acc += w.deriv(a) * vj[a].value() + w.value() * vj[a].deriv(a);
  return acc / w.value();
}

NormalCurve normal_curve(const Foliation& fol, const ChartPoint& p0,
                         double s_max, double ds) {
  if (!(s_max > 0.0) || !(ds > 0.0))
    raise(Errc::invalid_params, "normal curve needs s_max > 0 and ds > 0");
  const Box& box = fol.metric->box();
  if (!box.contains(p0))
    raise(Errc::out_of_domain, "normal curve start point outside chart");
  const int m = fol.metric->dim();

  auto rhs = [&](const ChartPoint& q) {
    return detail::normal_only<double>(fol, q);
  };
  auto step_ok = [&](const ChartPoint& q, double step, ChartPoint& out) {
    // classical RK4; false if any stage leaves the box
    ChartPoint q2(m), q3(m), q4(m);
    auto k1 = rhs(q);
    for (int a = 0; a < m; ++a) q2[a] = q[a] + 0.5 * step * k1[a];
    if (!box.contains(q2)) return false;
    auto k2 = rhs(q2);
    for (int a = 0; a < m; ++a) q3[a] = q[a] + 0.5 * step * k2[a];
    if (!box.contains(q3)) return false;
    auto k3 = rhs(q3);
    for (int a = 0; a < m; ++a) q4[a] = q[a] + step * k3[a];
    if (!box.contains(q4)) return false;
    auto k4 = rhs(q4);
    out.resize(m);
    for (int a = 0; a < m; ++a)
      out[a] = q[a] + step / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    return box.contains(out);
  };

  NormalCurve curve;
  ChartPoint p = p0;
  double s = 0.0;
  curve.s.push_back(s);
  curve.points.push_back(p);

  double sup_a = 0.0;
  {
    auto J = detail::geometry_at<double>(fol, p);
    sup_a = std::sqrt(std::max(0.0, J.A2));
  }

  while (s < s_max - 1e-15) {
    double step = std::min(ds, s_max - s);
    ChartPoint next;
    if (!step_ok(p, step, next)) {
      // locate the boundary by halving
      while (step > 1e-9 && !step_ok(p, step, next)) step *= 0.5;
      if (step <= 1e-9) {
        curve.exited = true;
        curve.exit_s = s;
        curve.exit_point = p;
        break;
      }
      p = next;
      s += step;
      curve.s.push_back(s);
      curve.points.push_back(p);
      curve.exited = true;
      curve.exit_s = s;
      curve.exit_point = p;
      break;
    }
    p = next;
    s += step;
    curve.s.push_back(s);
    curve.points.push_back(p);
    auto J = detail::geometry_at<double>(fol, p);
    sup_a = std::max(sup_a, std::sqrt(std::max(0.0, J.A2)));
  }
  curve.geodesic_flag = sup_a < 1e-8;
  return curve;
}

}  // namespace folia

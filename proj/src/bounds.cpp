#include "folia/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "folia/audit.hpp"
#include "folia/curvature.hpp"
#include "folia/errors.hpp"
#include "folia/riccati.hpp"

namespace folia {

namespace {

std::string fmt_point(const ChartPoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

}  // namespace

double gf_integrand(const Foliation& fol, const ChartPoint& p) {
  PointGeometry geom = point_geometry(fol, p);
  return geom.divL_A / geom.n - geom.ric_N - 2.0 * geom.A_norm_sq / geom.n;
}

GfReport gf_estimate(const Foliation& fol, std::span<const ChartPoint> points) {
  if (points.empty()) raise(Errc::empty_sample_set, "no sample points");
  GfReport out;
  out.count = points.size();
  out.inf_integrand = std::numeric_limits<double>::infinity();
  for (const ChartPoint& p : points) {
    PointGeometry geom = point_geometry(fol, p);
    const double value =
        geom.divL_A / geom.n - geom.ric_N - 2.0 * geom.A_norm_sq / geom.n;
    if (value < out.inf_integrand) {
      out.inf_integrand = value;
      out.argmin = p;
    }
    out.max_abs_integrand = std::max(out.max_abs_integrand, std::abs(value));
    const double h_sq = geom.H * geom.H;
    if (h_sq > out.sup_H_sq || out.arg_sup_H.empty()) {
      out.sup_H_sq = h_sq;
      out.arg_sup_H = p;
    }
    out.sup_B_norm = std::max(out.sup_B_norm, std::sqrt(geom.B_norm_sq));
  }
  return out;
}

BoundCheck check_bounds(const Foliation& fol, std::span<const ChartPoint> points,
                        double tol, double vanish_tol) {
  BoundCheck out;
  out.report = gf_estimate(fol, points);
  out.margin = -out.report.inf_integrand - out.report.sup_H_sq;
  if (out.report.sup_H_sq > -out.report.inf_integrand + tol)
    raise(Errc::bound_violated,
          "sup H^2 = " + std::to_string(out.report.sup_H_sq) + " at " +
              fmt_point(out.report.arg_sup_H) + " exceeds -inf integrand = " +
              std::to_string(-out.report.inf_integrand));
  const bool integrand_vanishes = out.report.max_abs_integrand <= vanish_tol;
  const bool totally_geodesic = out.report.sup_B_norm <= vanish_tol;
  if (integrand_vanishes && !totally_geodesic)
    raise(Errc::bound_violated,
          "integrand vanishes on the samples but the slices are curved "
          "(sup |B| = " +
              std::to_string(out.report.sup_B_norm) + ")");
  if (totally_geodesic && !integrand_vanishes)
    raise(Errc::bound_violated,
          "totally geodesic slices with nonvanishing integrand (inf = " +
              std::to_string(out.report.inf_integrand) + " at " +
              fmt_point(out.report.argmin) + ")");
  return out;
}

ComparisonWitness comparison_witness(double kappa, double h0, double b,
                                     double s_max, int samples) {
  if (!std::isfinite(kappa) || !std::isfinite(h0) || !std::isfinite(b) ||
      !std::isfinite(s_max))
    raise(Errc::invalid_params, "comparison parameters must be finite");
  if (kappa > 0.0)
    raise(Errc::regime_violation,
          "comparison functional needs kappa <= 0 (focusing is immediate "
          "otherwise)");
  const double a = std::sqrt(-kappa);
  if (!(h0 > a))
    raise(Errc::regime_violation,
          "comparison functional needs a start above the equilibrium");
  if (samples < 2) raise(Errc::invalid_params, "need at least two samples");
  if (!(s_max > b)) raise(Errc::invalid_params, "need s_max > b");

  const auto functional = [a](double H) {
    return a == 0.0 ? -1.0 / H : std::log((H - a) / (H + a)) / (2.0 * a);
  };

  ComparisonWitness out;
  out.a = a;
  out.h0 = h0;
  out.b = b;
  const double f0 = functional(h0);
  out.blow_up_bound = b - f0;
  if (!(s_max < out.blow_up_bound))
    raise(Errc::invalid_params,
          "sample window must end strictly before the certified focusing "
          "time " +
              std::to_string(out.blow_up_bound));

  out.s.push_back(b);
  out.H.push_back(h0);
  out.functional.push_back(f0);
  double s = b;
  double H = h0;
  const double ds = (s_max - b) / (samples - 1);
  const auto f = [a](double y) { return y * y - a * a; };
  for (int k = 1; k < samples; ++k) {
    const double target = b + k * ds;
    while (s < target - 1e-15) {
      const double dt = std::min(target - s, 0.002 / (std::abs(H) + a + 1.0));
      const double k1 = f(H);
      const double k2 = f(H + 0.5 * dt * k1);
      const double k3 = f(H + 0.5 * dt * k2);
      const double k4 = f(H + dt * k3);
      H += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      s += dt;
    }
    s = target;
    out.s.push_back(target);
    out.H.push_back(H);
    const double fk = functional(H);
    out.functional.push_back(fk);
    out.max_gap_residual = std::max(out.max_gap_residual,
                                    std::abs((fk - f0) - (target - b)));
  }
  return out;
}

CcCheck geodesic_cc_check(const Foliation& fol,
                          std::span<const ChartPoint> points) {
  if (points.empty()) raise(Errc::empty_sample_set, "no sample points");
  CcCheck out;
  const MetricField& metric = *fol.metric;
  std::vector<PointGeometry> geoms;
  geoms.reserve(points.size());
  for (const ChartPoint& p : points) geoms.push_back(point_geometry(fol, p));

  double tr = 0.0;
  for (int i = 0; i < geoms[0].n; ++i) tr += geoms[0].R_NiNk(i, i);
  out.c_est = tr / geoms[0].n;

  for (std::size_t k = 0; k < points.size(); ++k) {
    if (constant_curvature_deviation(metric, points[k], out.c_est) > 1e-8)
      raise(Errc::not_constant_curvature,
            "curvature at " + fmt_point(points[k]) +
                " does not match the constant-curvature form with c = " +
                std::to_string(out.c_est));
  }

  if (out.c_est >= 0.0) {
    out.bound_checked = true;
    for (std::size_t k = 0; k < geoms.size(); ++k) {
      if (std::sqrt(geoms[k].A_norm_sq) > 1e-8)
        raise(Errc::not_geodesic_normal,
              "the nonnegative-curvature bound needs a geodesic unit normal "
              "(|A| = " +
                  std::to_string(std::sqrt(geoms[k].A_norm_sq)) + " at " +
                  fmt_point(points[k]) + ")");
      out.sup_H_sq = std::max(out.sup_H_sq, geoms[k].H * geoms[k].H);
    }
    out.margin = out.c_est - out.sup_H_sq;
  } else {
    // Negative curvature: every transported shape eigenvalue focuses in
    // finite time, whatever its initial value.
    out.sweep_checked = true;
    const double kap = -out.c_est;
    for (int i = 0; i <= 40; ++i) {
      const double h0 = -10.0 + 0.5 * i;
      ++out.sweep_total;
      RiccatiSolution sol = riccati_closed_form(kap, h0);
      if (sol.blow_up) {
        ++out.sweep_blow_ups;
        out.max_blow_up_time =
            std::max(out.max_blow_up_time, *sol.blow_up);
      }
    }
  }
  return out;
}

}  // namespace folia

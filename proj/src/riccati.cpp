#include "folia/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "folia/audit.hpp"
#include "folia/curvature.hpp"
#include "folia/errors.hpp"
#include "folia/linalg.hpp"

namespace folia {

namespace {

constexpr double kPi = 3.14159265358979323846;

// acoth(x) = atanh(1/x), valid for |x| > 1.
double acoth(double x) { return 0.5 * std::log((x + 1.0) / (x - 1.0)); }

}  // namespace

RiccatiSolution riccati_closed_form(double kappa, double h0) {
  if (!std::isfinite(kappa) || !std::isfinite(h0))
    raise(Errc::invalid_params, "riccati coefficients must be finite");
  RiccatiSolution sol;
  sol.kappa = kappa;
  sol.h0 = h0;
  if (kappa > 0.0) {
    // h = sqrt(k) tan(theta0 - sqrt(k) s): focuses at finite s both ways.
    sol.branch = RiccatiBranch::tan_oscillatory;
    const double rk = std::sqrt(kappa);
    const double theta0 = std::atan(h0 / rk);
    sol.blow_up = (theta0 + kPi / 2.0) / rk;
    sol.blow_down = (theta0 - kPi / 2.0) / rk;
  } else if (kappa == 0.0) {
    // h = h0 / (1 + h0 s): single pole at -1/h0 when h0 != 0.
    sol.branch = RiccatiBranch::rational;
    if (h0 < 0.0) sol.blow_up = -1.0 / h0;
    if (h0 > 0.0) sol.blow_down = -1.0 / h0;
  } else {
    const double a = std::sqrt(-kappa);
    if (std::abs(h0) < a) {
      // h = a tanh(atanh(h0/a) + a s): global, -> +a as s -> +inf.
      sol.branch = RiccatiBranch::tanh_interior;
    } else if (std::abs(h0) == a) {
      sol.branch = RiccatiBranch::equilibrium;
    } else {
      // h = a coth(acoth(h0/a) + a s): pole where the argument vanishes,
      // at positive s exactly when h0 < -a.
      sol.branch = RiccatiBranch::coth_exterior;
      const double star = -acoth(h0 / a) / a;
      if (h0 < -a)
        sol.blow_up = star;
      else
        sol.blow_down = star;
    }
  }
  return sol;
}

double RiccatiSolution::evaluate(double s) const {
  if (blow_up && s >= *blow_up)
    raise(Errc::left_domain, "riccati solution queried at or past its blow-up");
  if (blow_down && s <= *blow_down)
    raise(Errc::left_domain,
          "riccati solution queried at or past its backward pole");
  switch (branch) {
    case RiccatiBranch::tan_oscillatory: {
      const double rk = std::sqrt(kappa);
      return rk * std::tan(std::atan(h0 / rk) - rk * s);
    }
    case RiccatiBranch::rational:
      return h0 / (1.0 + h0 * s);
    case RiccatiBranch::tanh_interior: {
      const double a = std::sqrt(-kappa);
      return a * std::tanh(std::atanh(h0 / a) + a * s);
    }
    case RiccatiBranch::coth_exterior: {
      const double a = std::sqrt(-kappa);
      return a / std::tanh(acoth(h0 / a) + a * s);
    }
    case RiccatiBranch::equilibrium:
      return h0;
  }
  return h0;
}

double RiccatiSolution::derivative(double s) const {
  const double h = evaluate(s);
  return -(h * h + kappa);
}

namespace {

// One classical RK4 step of the autonomous equation y' = f(y).
template <class F>
double rk4_step(const F& f, double y, double dt) {
  const double k1 = f(y);
  const double k2 = f(y + 0.5 * dt * k1);
  const double k3 = f(y + 0.5 * dt * k2);
  const double k4 = f(y + dt * k3);
  return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

RiccatiNumeric riccati_integrate(double kappa, double h0,
                                 std::span<const double> query_s) {
  if (!std::isfinite(kappa) || !std::isfinite(h0))
    raise(Errc::invalid_params, "riccati coefficients must be finite");
  for (std::size_t i = 0; i < query_s.size(); ++i) {
    if (!(query_s[i] > 0.0) || (i > 0 && !(query_s[i] > query_s[i - 1])))
      raise(Errc::invalid_params,
            "query times must be positive and strictly increasing");
  }

  const auto f_h = [kappa](double h) { return -(h * h + kappa); };
  const auto f_w = [kappa](double w) { return 1.0 + kappa * w * w; };

  RiccatiNumeric out;
  double s = 0.0;
  bool reciprocal = std::abs(h0) > 4.0;  // integrate w = 1/h near poles
  double y = reciprocal ? 1.0 / h0 : h0;

  const double atol = 1e-12, rtol = 1e-11;
  double dt = 1e-3;
  std::size_t next = 0;

  while (next < query_s.size()) {
    const double target = query_s[next];
    const double dt_try = std::min(dt, target - s);

    const double y_full = reciprocal ? rk4_step(f_w, y, dt_try)
                                     : rk4_step(f_h, y, dt_try);
    const double y_mid = reciprocal ? rk4_step(f_w, y, 0.5 * dt_try)
                                    : rk4_step(f_h, y, 0.5 * dt_try);
    const double y_half = reciprocal ? rk4_step(f_w, y_mid, 0.5 * dt_try)
                                     : rk4_step(f_h, y_mid, 0.5 * dt_try);
    const double err = std::abs(y_full - y_half) / 15.0;
    const double scale =
        atol + rtol * std::max(std::abs(y), std::abs(y_half));
    if (err > scale && dt_try > 1e-14) {
      dt = std::max(
          dt_try * std::clamp(0.9 * std::pow(scale / (err + 1e-300), 0.2),
                              0.2, 1.0),
          1e-14);
      continue;
    }

    if (reciprocal && y < 0.0 && y_half >= 0.0) {
      // w crosses zero upward: locate the pole by step bisection from the
      // last state below zero, then one Newton correction w' (0) = 1.
      double lo_s = s, lo_w = y, step = dt_try;
      while (step > 1e-13) {
        const double mid = rk4_step(f_w, lo_w, 0.5 * step);
        if (mid < 0.0) {
          lo_s += 0.5 * step;
          lo_w = mid;
        }
        step *= 0.5;
      }
      out.blow_up_estimate = lo_s - lo_w / (1.0 + kappa * lo_w * lo_w);
      return out;
    }

    s += dt_try;
    y = y_half;
    if (std::abs(s - target) < 1e-12) {
      s = target;
      out.s.push_back(target);
      out.h.push_back(reciprocal ? 1.0 / y : y);
      ++next;
    }
    if (err > 0.0)
      dt = std::min(dt_try * std::clamp(0.9 * std::pow(scale / err, 0.2),
                                        1.0, 5.0),
                    0.1);
    else
      dt = std::min(dt_try * 5.0, 0.1);

    if (!reciprocal && std::abs(y) > 4.0) {
      reciprocal = true;
      y = 1.0 / y;
      dt = std::min(dt, 1e-3);
    } else if (reciprocal && std::abs(y) > 0.5) {
      reciprocal = false;
      y = 1.0 / y;
    }
  }
  return out;
}

SpectrumPropagation propagate_spectrum(const Foliation& fol,
                                       const ChartPoint& p0, double s_max,
                                       double ds) {
  if (!(s_max > 0.0) || !(ds > 0.0) || ds > s_max)
    raise(Errc::invalid_params, "need 0 < ds <= s_max");
  NormalCurve curve = normal_curve(fol, p0, s_max, ds);
  if (curve.exited)
    raise(Errc::left_domain, "normal curve left the chart before s_max");
  if (!curve.geodesic_flag)
    raise(Errc::not_geodesic_normal,
          "spectrum transport requires a geodesic unit normal");

  SpectrumPropagation out;
  out.s = curve.s;
  const std::size_t count = curve.points.size();
  std::vector<double> kappas(count);
  out.measured.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    PointGeometry geom = point_geometry(fol, curve.points[k]);
    std::vector<double> lam = sym_eigenvalues(geom.h);
    double tr = 0.0;
    for (int i = 0; i < geom.n; ++i) tr += geom.R_NiNk(i, i);
    kappas[k] = -tr / geom.n;  // isotropic radial curvature
    out.max_spread = std::max(out.max_spread, lam.back() - lam.front());
    out.measured.push_back(std::move(lam));
  }

  // Transport lambda' = lambda^2 + kappa(s) from s = 0, with kappa
  // interpolated linearly between the measured samples. Eigenvalue order is
  // preserved: solutions of one scalar equation cannot cross.
  out.predicted.resize(count);
  out.predicted[0] = out.measured[0];
  constexpr int kSubsteps = 8;
  for (std::size_t k = 0; k + 1 < count; ++k) {
    const double s0 = curve.s[k], s1 = curve.s[k + 1];
    const double ka = kappas[k], kb = kappas[k + 1];
    const auto kap = [&](double t) {
      return s1 > s0 ? ka + (kb - ka) * (t - s0) / (s1 - s0) : ka;
    };
    std::vector<double> lam = out.predicted[k];
    for (double& v : lam) {
      double t = s0;
      const double dt = (s1 - s0) / kSubsteps;
      for (int q = 0; q < kSubsteps; ++q) {
        const double c1 = v * v + kap(t);
        const double y2 = v + 0.5 * dt * c1;
        const double c2 = y2 * y2 + kap(t + 0.5 * dt);
        const double y3 = v + 0.5 * dt * c2;
        const double c3 = y3 * y3 + kap(t + 0.5 * dt);
        const double y4 = v + dt * c3;
        const double c4 = y4 * y4 + kap(t + dt);
        v += dt / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4);
        t += dt;
      }
    }
    out.predicted[k + 1] = std::move(lam);
  }

  for (std::size_t k = 0; k < count; ++k)
    for (std::size_t i = 0; i < out.measured[k].size(); ++i)
      out.max_mismatch =
          std::max(out.max_mismatch,
                   std::abs(out.measured[k][i] - out.predicted[k][i]));
  return out;
}

UmbilicityPropagation umbilicity_propagation_check(const Foliation& fol,
                                                   const ChartPoint& p0,
                                                   double s_max, double ds) {
  if (!(s_max > 0.0) || !(ds > 0.0) || ds > s_max)
    raise(Errc::invalid_params, "need 0 < ds <= s_max");
  NormalCurve curve = normal_curve(fol, p0, s_max, ds);
  if (curve.exited)
    raise(Errc::left_domain, "normal curve left the chart before s_max");
  if (!curve.geodesic_flag)
    raise(Errc::not_geodesic_normal,
          "umbilicity propagation requires a geodesic unit normal");

  UmbilicityPropagation out;
  {
    PointGeometry geom = point_geometry(fol, curve.points.front());
    double tr = 0.0;
    for (int i = 0; i < geom.n; ++i) tr += geom.R_NiNk(i, i);
    out.c_est = tr / geom.n;  // c = -radial curvature
  }

  const MetricField& metric = *fol.metric;
  for (std::size_t k = 0; k < curve.points.size(); ++k) {
    const double dev =
        constant_curvature_deviation(metric, curve.points[k], out.c_est);
    if (dev > 1e-8)
      raise(Errc::not_constant_curvature,
            "curvature along the normal curve does not match the "
            "constant-curvature form");
    ExtrinsicData ext = shape_operator(fol, curve.points[k]);
    out.s.push_back(curve.s[k]);
    out.umb_dev.push_back(ext.umb_dev);
    out.max_umb_dev = std::max(out.max_umb_dev, ext.umb_dev);
  }
  out.initial_umb_dev = out.umb_dev.front();
  return out;
}

std::vector<LeafUmbilicity> umbilicity_scan(const Foliation& fol,
                                            std::span<const double> leaf_values,
                                            int per_axis) {
  if (leaf_values.empty())
    raise(Errc::empty_sample_set, "no leaf coordinates to scan");
  if (per_axis < 1) raise(Errc::invalid_params, "per_axis must be positive");
  const Box& box = fol.metric->box();
  const int m = box.dim();
  const int t = m - 1;

  std::vector<LeafUmbilicity> out;
  out.reserve(leaf_values.size());
  for (double v : leaf_values) {
    if (!(v > box.lo[t] && v < box.hi[t]))
      raise(Errc::out_of_domain, "leaf coordinate outside the chart");
    LeafUmbilicity row;
    row.leaf_coordinate = v;

    long total = 1;
    for (int a = 0; a < t; ++a) total *= per_axis;
    ChartPoint p(m, 0.0);
    p[t] = v;
    for (long lin = 0; lin < total; ++lin) {
      long rem = lin;
      for (int a = 0; a < t; ++a) {
        const int idx = static_cast<int>(rem % per_axis);
        rem /= per_axis;
        p[a] = box.lo[a] + box.span(a) * (idx + 0.5) / per_axis;
      }
      ExtrinsicData ext = shape_operator(fol, p);
      row.max_umb_dev = std::max(row.max_umb_dev, ext.umb_dev);
      row.max_shape_norm =
          std::max(row.max_shape_norm, std::sqrt(ext.B_norm_sq));
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace folia

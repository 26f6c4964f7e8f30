#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "folia/foliation.hpp"

namespace folia {

// Pointwise integrand of the divergence functional,
//   (1/n) div_L A - ric(N) - (2/n) ||A||^2,
// whose leaf integral controls the mean curvature of compact leaves.
double gf_integrand(const Foliation& fol, const ChartPoint& p);

// Sample extrema of the integrand and of the derived quantities entering
// the mean-curvature bound.
struct GfReport {
  std::size_t count = 0;
  double inf_integrand = 0.0;
  ChartPoint argmin;
  double max_abs_integrand = 0.0;
  double sup_H_sq = 0.0;
  ChartPoint arg_sup_H;
  double sup_B_norm = 0.0;  // Frobenius norm of the shape operator
};

GfReport gf_estimate(const Foliation& fol, std::span<const ChartPoint> points);

// Checks, over the sample set, that
//   sup H^2 <= -inf integrand + tol,
// and that the integrand vanishes exactly when the slices are totally
// geodesic (to vanish_tol). Raises bound_violated with the offending
// witness in the message when either direction fails; the static lapse
// torus (integrand < 0 with B = 0) and the hyperboloid slicing
// (integrand = 0 with B != 0) are genuine violations of the vanishing
// link outside the compact-leaf setting.
struct BoundCheck {
  GfReport report;
  double margin = 0.0;  // -inf_integrand - sup_H_sq
};

BoundCheck check_bounds(const Foliation& fol, std::span<const ChartPoint> points,
                        double tol = 1e-9, double vanish_tol = 1e-8);

// Monotone functional along the comparison equation H' = H^2 - a^2 started
// above the equilibrium: for a = 0, G = -1/H increases at exactly unit
// rate; for a > 0 so does L = (1/2a) ln((H-a)/(H+a)). Either certifies
// focusing no later than the time where the functional reaches zero. H is
// integrated numerically on [b, s_max] and the functional gap F(s) - F(b)
// is compared against s - b.
struct ComparisonWitness {
  double a = 0.0;
  double h0 = 0.0;
  double b = 0.0;
  std::vector<double> s;
  std::vector<double> H;           // numeric solution samples
  std::vector<double> functional;  // G or L at the samples
  double max_gap_residual = 0.0;   // max |(F(s) - F(b)) - (s - b)|
  double blow_up_bound = 0.0;      // b - F(b): certified focusing time
};

// kappa = -a^2 must be <= 0 and h0 > a, else regime_violation; s_max must
// end strictly before the certified focusing time.
ComparisonWitness comparison_witness(double kappa, double h0, double b,
                                     double s_max, int samples);

// Constant-curvature dichotomy on a sample set. Measures c from the radial
// curvature, verifies the closed-form curvature relation at every sample
// (raises not_constant_curvature otherwise), then:
//   c >= 0: requires a geodesic unit normal and reports the margin
//           c - sup H^2 (saturated by the exponential slicing);
//   c  < 0: sweeps the transport equation with kappa = -c > 0 and counts
//           finite focusing times; every start must focus.
struct CcCheck {
  double c_est = 0.0;
  bool bound_checked = false;  // c >= 0 branch ran
  double sup_H_sq = 0.0;
  double margin = 0.0;  // c_est - sup_H_sq
  bool sweep_checked = false;  // c < 0 branch ran
  int sweep_total = 0;
  int sweep_blow_ups = 0;
  double max_blow_up_time = 0.0;
};

CcCheck geodesic_cc_check(const Foliation& fol,
                          std::span<const ChartPoint> points);

}  // namespace folia

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "folia/foliation.hpp"

namespace folia {

// Scalar focal equation h' = -(h^2 + kappa) with constant coefficient.
// Solutions evaluated backwards (s -> -s) solve the transport form
// h' = +(h^2 + kappa) satisfied by measured shape eigenvalues along future
// normal geodesics.
enum class RiccatiBranch {
  tan_oscillatory,  // kappa > 0: every solution focuses in finite time
  rational,         // kappa = 0
  tanh_interior,    // kappa < 0, |h0| < sqrt(-kappa): global, -> +sqrt(-kappa)
  coth_exterior,    // kappa < 0, |h0| > sqrt(-kappa)
  equilibrium,      // kappa < 0, h0 = +-sqrt(-kappa)
};

struct RiccatiSolution {
  double kappa = 0.0;
  double h0 = 0.0;
  RiccatiBranch branch = RiccatiBranch::rational;
  std::optional<double> blow_up;    // smallest s > 0 with |h| -> inf
  std::optional<double> blow_down;  // largest s < 0 with |h| -> inf

  double evaluate(double s) const;    // raises left_domain past a pole
  double derivative(double s) const;  // -(h(s)^2 + kappa)
};

RiccatiSolution riccati_closed_form(double kappa, double h0);

// Adaptive RK4 integration of the focal equation from h(0) = h0, reporting
// h at the (strictly increasing, positive) query times. Near a pole the
// integration switches to the reciprocal w = 1/h, whose equation
// w' = 1 + kappa w^2 is regular through the blow-up; the pole location is
// then resolved by step bisection. Queries past the pole are not reached.
struct RiccatiNumeric {
  std::vector<double> s;
  std::vector<double> h;
  std::optional<double> blow_up_estimate;
};

RiccatiNumeric riccati_integrate(double kappa, double h0,
                                 std::span<const double> query_s);

// Shape spectrum along the normal curve from p0: measured eigenvalues of h
// at each sample against the transport equation lambda' = lambda^2 + kappa
// integrated with the pointwise isotropic radial curvature. Requires the
// normal to be geodesic along the curve and the curve to stay in the chart.
struct SpectrumPropagation {
  std::vector<double> s;
  std::vector<std::vector<double>> measured;   // ascending eigenvalues
  std::vector<std::vector<double>> predicted;  // transported from s = 0
  double max_mismatch = 0.0;
  double max_spread = 0.0;  // max over samples of lambda_max - lambda_min
};

SpectrumPropagation propagate_spectrum(const Foliation& fol,
                                       const ChartPoint& p0, double s_max,
                                       double ds);

// Umbilicity along the normal curve from p0 on a constant-curvature chart:
// estimates c from the radial curvature at p0, verifies the closed-form
// curvature relation along the curve (raises not_constant_curvature
// otherwise), and records the umbilicity deviation at every sample.
struct UmbilicityPropagation {
  double c_est = 0.0;
  double initial_umb_dev = 0.0;
  double max_umb_dev = 0.0;
  std::vector<double> s;
  std::vector<double> umb_dev;
};

UmbilicityPropagation umbilicity_propagation_check(const Foliation& fol,
                                                   const ChartPoint& p0,
                                                   double s_max, double ds);

// Per-leaf extrema of the umbilicity deviation and the shape operator norm,
// sampled on a grid of cell centers over the leaf axes at fixed last
// coordinate.
struct LeafUmbilicity {
  double leaf_coordinate = 0.0;
  double max_umb_dev = 0.0;
  double max_shape_norm = 0.0;  // Frobenius norm of h
};

std::vector<LeafUmbilicity> umbilicity_scan(const Foliation& fol,
                                            std::span<const double> leaf_values,
                                            int per_axis);

}  // namespace folia

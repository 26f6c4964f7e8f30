#pragma once

#include <functional>
#include <span>
#include <vector>

#include "folia/foliation.hpp"

namespace folia {

// Quadrature over one compact leaf tau = tau0. The leaf must be a graph
// over the periodic leaf axes: node fibers are solved by Newton in the
// last coordinate, weights carry the induced area element on the uniform
// periodic grid (trapezoid rule, spectrally accurate for smooth data).
struct LeafQuadrature {
  double tau0 = 0.0;
  int per_axis = 0;
  std::vector<ChartPoint> nodes;
  std::vector<double> weights;  // sqrt(det g_leaf) * cell volume

  double area() const;  // pairwise sum of the weights
};

// Raises non_compact_leaf unless every leaf axis is periodic,
// out_of_domain when the leaf misses the chart fiber, and
// not_spacelike_leaf when the induced metric fails to be positive.
LeafQuadrature build_leaf_quadrature(const Foliation& fol, double tau0,
                                     int per_axis);

double leaf_integrate(const LeafQuadrature& quad,
                      const std::function<double(const ChartPoint&)>& f);

double l1_norm_leaf(const LeafQuadrature& quad,
                    const std::function<double(const ChartPoint&)>& f);

// Leaf integrals of the divergence identity pieces. On a compact leaf the
// integral of div_L A vanishes (Stokes), so the integral of
// n ric(N) + ||A||^2 equals that of n N(H) + ||B||^2: a strictly positive
// value rules out a compact leaf of this slicing with B = 0 and
// stationary H.
struct ObstructionReport {
  double tau0 = 0.0;
  double area = 0.0;
  double max_B_norm = 0.0;
  double stokes_residual = 0.0;  // |integral of div_L A|
  double integral_n_ric = 0.0;   // integral of n ric(N)
  double integral_A_sq = 0.0;    // integral of ||A||^2
  double obstruction = 0.0;      // integral_n_ric + integral_A_sq
  bool obstructed = false;       // obstruction > tol
};

ObstructionReport obstruction_report(const Foliation& fol, double tau0,
                                     int per_axis, double tol = 1e-8);

}  // namespace folia

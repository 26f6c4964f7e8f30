#pragma once

#include <memory>
#include <span>
#include <vector>

#include "folia/chart.hpp"

namespace folia {

// Spacelike foliation of a chart: the level sets of a time function whose
// gradient is timelike everywhere it is queried. The unit normal N is
// oriented to have positive last chart component (future-pointing on all zoo
// charts).
struct Foliation {
  std::shared_ptr<const MetricField> metric;
  ScalarField tau;
};

// Orthonormal frame adapted to the leaves: e[0..n-1] tangent, e[n] = N.
// omega(A,B,C) = g(nab_{e_C} e_A, e_B); antisymmetric in (A,B).
struct AdaptedFrame {
  std::vector<std::vector<double>> e;
  SquareMat<double> gram;
  Tensor3<double> omega;
};

// Pointwise extrinsic geometry of the leaf through a point.
//   h_ij = -g(nab_{e_j} N, e_i)          (n x n, symmetric)
//   H    = -(1/n) tr h                   (makes Div N = nH an identity)
//   B_norm_sq = sum h_ij^2
//   A    = nab_N N (chart components), x_i = g(A, e_i), A_norm_sq = g(A,A)
//   umb_dev = Frobenius norm of the trace-free part of h
struct ExtrinsicData {
  SquareMat<double> h;
  double H = 0.0;
  double B_norm_sq = 0.0;
  std::vector<double> A;
  std::vector<double> x;
  double A_norm_sq = 0.0;
  double umb_dev = 0.0;
};

// Integral curve of N, unit timelike by construction.
struct NormalCurve {
  std::vector<double> s;
  std::vector<ChartPoint> points;
  bool geodesic_flag = true;  // sup |A| < 1e-8 along the samples
  bool exited = false;        // stopped at the chart boundary before s_max
  double exit_s = 0.0;
  ChartPoint exit_point;
};

std::vector<double> unit_normal(const Foliation& fol, const ChartPoint& p);

AdaptedFrame adapted_frame(const Foliation& fol, const ChartPoint& p);

ExtrinsicData shape_operator(const Foliation& fol, const ChartPoint& p);

std::vector<double> acceleration(const Foliation& fol, const ChartPoint& p,
                                 std::vector<double>* frame_components = nullptr);

// div_L V = sum_i g(nab_{e_i} V, e_i); V must be leaf-tangent at p.
double leaf_divergence(const Foliation& fol, const VectorField& V,
                       const ChartPoint& p);

// Div V as the connection trace d_a V^a + Gamma^a_{ab} V^b.
double full_divergence(const MetricField& metric, const VectorField& V,
                       const ChartPoint& p);

// Same divergence through the density formula (1/sqrt|g|) d_a(sqrt|g| V^a);
// kept as an independent cross-check path.
double full_divergence_coordinate(const MetricField& metric,
                                  const VectorField& V, const ChartPoint& p);

// RK4 integration of pdot = N(p) from p0 for parameter length s_max with
// step ds; stops at the chart boundary (exit point located by step halving).
NormalCurve normal_curve(const Foliation& fol, const ChartPoint& p0,
                         double s_max, double ds);

}  // namespace folia

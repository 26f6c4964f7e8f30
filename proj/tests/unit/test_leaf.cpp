#include <cmath>
#include <vector>

#include "doctest.h"
#include "folia/errors.hpp"
#include "folia/leaf.hpp"
#include "folia/zoo.hpp"
#include "support.hpp"

using namespace folia;
using testsup::thrown_code;

namespace {

ZooParams compact_leaves() {
  ZooParams zp;
  zp.periodic_leaves = true;
  return zp;
}

const double kTwoPi = 4.0 * std::acos(0.0);

}  // namespace

// === quadrature construction ===

TEST_CASE("flat torus: uniform weights and exact area") {
  Spacetime mink = zoo_build("minkowski", compact_leaves());
  LeafQuadrature quad = build_leaf_quadrature(mink.foliation, 0.0, 32);
  REQUIRE(quad.nodes.size() == 32u * 32u);
  CHECK(quad.area() == doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-12));
  const double cell = (kTwoPi / 32) * (kTwoPi / 32);
  for (double w : quad.weights) CHECK(w == doctest::Approx(cell).epsilon(1e-13));
  for (const ChartPoint& p : quad.nodes) CHECK(p[2] == 0.0);
}

TEST_CASE("tilted graph leaf: Newton fibers and elliptic area") {
  Spacetime tilt = zoo_build("minkowski_tilted", compact_leaves());
  LeafQuadrature quad = build_leaf_quadrature(tilt.foliation, 0.0, 48);
  // Fibers solve t = eps sin x on the graph.
  for (const ChartPoint& p : quad.nodes)
    CHECK(p[2] == doctest::Approx(0.5 * std::sin(p[0])).epsilon(1e-11));
  // Induced element sqrt(1 - eps^2 cos^2 x): the area is an elliptic
  // integral, 2 pi * 4 E(eps).
  const double want = kTwoPi * 4.0 * std::comp_ellint_2(0.5);
  CHECK(quad.area() == doctest::Approx(want).epsilon(1e-10));

  // A shifted leaf has the same area by translation invariance.
  LeafQuadrature up = build_leaf_quadrature(tilt.foliation, 0.8, 48);
  CHECK(up.area() == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("expanding torus: area scales with the squared scale factor") {
  Spacetime rw = zoo_build("robertson_walker", compact_leaves());
  LeafQuadrature quad = build_leaf_quadrature(rw.foliation, 0.5, 24);
  const double a = 1.0 + 0.1 * 0.25;
  CHECK(quad.area() ==
        doctest::Approx(a * a * kTwoPi * kTwoPi).epsilon(1e-11));
}

TEST_CASE("quadrature rejects non-compact leaves and bad inputs") {
  Spacetime mink = zoo_build("minkowski");
  CHECK(thrown_code([&] { build_leaf_quadrature(mink.foliation, 0.0, 16); }) ==
        Errc::non_compact_leaf);
  Spacetime hyp = zoo_build("minkowski_hyperboloids");
  CHECK(thrown_code([&] { build_leaf_quadrature(hyp.foliation, 2.0, 16); }) ==
        Errc::non_compact_leaf);

  Spacetime torus = zoo_build("static_lapse_torus");
  CHECK(thrown_code([&] { build_leaf_quadrature(torus.foliation, 0.0, 1); }) ==
        Errc::invalid_params);
  CHECK(thrown_code([&] {
          build_leaf_quadrature(torus.foliation,
                                std::numeric_limits<double>::quiet_NaN(), 8);
        }) == Errc::invalid_params);

  // Leaf value no fiber reaches.
  Spacetime mink_t = zoo_build("minkowski", compact_leaves());
  CHECK(thrown_code([&] { build_leaf_quadrature(mink_t.foliation, 5.0, 8); }) ==
        Errc::out_of_domain);
}

TEST_CASE("quadrature rejects leaves that tip over the light cone") {
  Spacetime mink = zoo_build("minkowski", compact_leaves());
  const Box& box = mink.metric->box();
  Foliation steep{mink.metric,
                  ScalarField(box, []<class S>(std::span<const S> q) {
                    return q[2] - 1.2 * sin(q[0]);
                  })};
  CHECK(thrown_code([&] { build_leaf_quadrature(steep, 0.0, 8); }) ==
        Errc::not_spacelike_leaf);
}

// === integration on the leaf ===

TEST_CASE("periodic trapezoid integrates trigonometric data exactly") {
  Spacetime mink = zoo_build("minkowski", compact_leaves());
  LeafQuadrature quad = build_leaf_quadrature(mink.foliation, 0.0, 32);

  CHECK(leaf_integrate(quad, [](const ChartPoint&) { return 1.0; }) ==
        doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-12));
  // cos^2 x integrates to half the area.
  CHECK(leaf_integrate(quad,
                       [](const ChartPoint& p) {
                         return std::cos(p[0]) * std::cos(p[0]);
                       }) == doctest::Approx(kTwoPi * kTwoPi / 2).epsilon(1e-12));
  // Pure harmonics drop out.
  CHECK(std::abs(leaf_integrate(quad, [](const ChartPoint& p) {
          return std::sin(3.0 * p[0]) + std::cos(p[1]);
        })) < 1e-12);

  // Positive integrands: the L1 norm equals the integral.
  CHECK(l1_norm_leaf(quad,
                     [](const ChartPoint& p) { return 2.0 + std::cos(p[0]); }) ==
        doctest::Approx(2.0 * kTwoPi * kTwoPi).epsilon(1e-12));
  // |cos x|: kinks reduce the rule to second order.
  LeafQuadrature fine = build_leaf_quadrature(mink.foliation, 0.0, 96);
  CHECK(l1_norm_leaf(fine, [](const ChartPoint& p) { return std::cos(p[0]); }) ==
        doctest::Approx(4.0 * kTwoPi).epsilon(1e-3));
}

// === leaf balance of the divergence identity ===

TEST_CASE("static lapse torus: leaf balance holds with zero shape operator") {
  Spacetime torus = zoo_build("static_lapse_torus");
  ObstructionReport rep = obstruction_report(torus.foliation, 0.0, 64);
  CHECK(rep.area == doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-12));
  CHECK(rep.max_B_norm < 1e-10);
  CHECK(rep.stokes_residual < 1e-10);
  // integral of n ric(N) cancels the integral of ||A||^2 exactly.
  CHECK(rep.integral_n_ric ==
        doctest::Approx(-rep.integral_A_sq).epsilon(1e-10));
  CHECK(rep.integral_A_sq > 0.1);  // the lapse genuinely accelerates
  CHECK(std::abs(rep.obstruction) < 1e-10);
  CHECK(!rep.obstructed);
}

TEST_CASE("flat torus: every leaf integral vanishes") {
  Spacetime mink = zoo_build("minkowski", compact_leaves());
  ObstructionReport rep = obstruction_report(mink.foliation, 0.0, 32);
  CHECK(rep.max_B_norm < 1e-12);
  CHECK(rep.stokes_residual < 1e-12);
  CHECK(std::abs(rep.integral_n_ric) < 1e-12);
  CHECK(std::abs(rep.integral_A_sq) < 1e-12);
  CHECK(!rep.obstructed);
}

TEST_CASE("expanding torus: positive Ricci integral obstructs a balance") {
  Spacetime rw = zoo_build("robertson_walker", compact_leaves());
  ObstructionReport rep = obstruction_report(rw.foliation, 0.0, 32);
  // Comoving slices are geodesic and the t = 0 leaf is totally geodesic,
  // yet the balance integral stays strictly positive.
  CHECK(rep.max_B_norm < 1e-9);
  CHECK(rep.integral_A_sq < 1e-12);
  CHECK(rep.integral_n_ric ==
        doctest::Approx(0.4 * kTwoPi * kTwoPi).epsilon(1e-9));
  CHECK(rep.obstruction == doctest::Approx(0.4 * kTwoPi * kTwoPi).epsilon(1e-9));
  CHECK(rep.obstructed);

  // Off the vertex the slice curves but the conclusion is unchanged.
  ObstructionReport later = obstruction_report(rw.foliation, 0.5, 32);
  const double a = 1.025;
  CHECK(later.integral_n_ric ==
        doctest::Approx(2.0 * (0.2 / a) * a * a * kTwoPi * kTwoPi).epsilon(1e-9));
  CHECK(later.max_B_norm > 0.1);
  CHECK(later.obstructed);
}

TEST_CASE("tilted graph leaf: Stokes holds on a warped compact leaf") {
  Spacetime tilt = zoo_build("minkowski_tilted", compact_leaves());
  ObstructionReport rep = obstruction_report(tilt.foliation, 0.0, 48);
  CHECK(rep.stokes_residual < 1e-8);
  CHECK(std::abs(rep.integral_n_ric) < 1e-10);  // flat ambient space
  CHECK(rep.integral_A_sq > 0.01);
  CHECK(rep.obstruction == doctest::Approx(rep.integral_A_sq).epsilon(1e-12));
}

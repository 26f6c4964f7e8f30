#include "folia/zoo.hpp"

#include <algorithm>
#include <cmath>

#include "folia/errors.hpp"

namespace folia {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

ScalarField last_coordinate_time(const Box& box) {
  return ScalarField(box, []<class S>(std::span<const S> q) {
    return q[q.size() - 1];
  });
}

Spacetime make_minkowski(const ZooParams& params) {
  Box box;
  if (params.periodic_leaves) {
    box = {{0.0, 0.0, -3.0}, {kTwoPi, kTwoPi, 3.0}, {true, true, false}};
  } else {
    box = {{-3.0, -3.0, -3.0}, {3.0, 3.0, 3.0}, {}};
  }
  auto metric = std::make_shared<MetricField>(
      box, []<class S>(std::span<const S>) {
        SquareMat<S> g(3);
        g(0, 0) = S(1.0);
        g(1, 1) = S(1.0);
        g(2, 2) = S(-1.0);
        return g;
      });
  Spacetime st;
  st.name = "minkowski";
  st.description = "flat metric diag(1,1,-1); leaves are constant-t planes";
  st.metric = metric;
  st.foliation = {metric, last_coordinate_time(box)};
  st.curvature_constant = 0.0;
  st.geodesic_normal = true;
  st.params = params;
  return st;
}

Spacetime make_minkowski_tilted(const ZooParams& params) {
  double eps = params.get("eps", 0.5);
  if (!(std::abs(eps) < 1.0))
    raise(Errc::invalid_params, "tilted slices need |eps| < 1");
  Box box;
  if (params.periodic_leaves) {
    box = {{0.0, 0.0, -3.0}, {kTwoPi, kTwoPi, 3.0}, {true, true, false}};
  } else {
    box = {{-3.0, -3.0, -3.0}, {3.0, 3.0, 3.0}, {}};
  }
  auto metric = std::make_shared<MetricField>(
      box, []<class S>(std::span<const S>) {
        SquareMat<S> g(3);
        g(0, 0) = S(1.0);
        g(1, 1) = S(1.0);
        g(2, 2) = S(-1.0);
        return g;
      });
  Spacetime st;
  st.name = "minkowski_tilted";
  st.description =
      "flat metric; wavy graph slices tau = t - eps*sin(x), accelerated normal";
  st.metric = metric;
  st.foliation = {metric, ScalarField(box, [eps]<class S>(std::span<const S> q) {
                    return q[2] - eps * sin(q[0]);
                  })};
  st.curvature_constant = 0.0;
  st.geodesic_normal = false;
  st.params = params;
  st.params.values["eps"] = eps;
  return st;
}

Spacetime make_minkowski_hyperboloids(const ZooParams& params) {
  Box box{{-0.8, -0.8, 1.5}, {0.8, 0.8, 4.0}, {}};
  auto metric = std::make_shared<MetricField>(
      box, []<class S>(std::span<const S>) {
        SquareMat<S> g(3);
        g(0, 0) = S(1.0);
        g(1, 1) = S(1.0);
        g(2, 2) = S(-1.0);
        return g;
      });
  Spacetime st;
  st.name = "minkowski_hyperboloids";
  st.description =
      "flat metric on a future-cone box; leaves tau = sqrt(t^2-x^2-y^2) are "
      "umbilical hyperboloids with radial geodesic normal";
  st.metric = metric;
  st.foliation = {metric, ScalarField(box, []<class S>(std::span<const S> q) {
                    return sqrt(q[2] * q[2] - q[0] * q[0] - q[1] * q[1]);
                  })};
  st.curvature_constant = 0.0;
  st.geodesic_normal = true;
  st.params = params;
  return st;
}

Spacetime make_robertson_walker(const ZooParams& params) {
  double a0 = params.get("a0", 1.0);
  double a1 = params.get("a1", 0.0);
  double a2 = params.get("a2", 0.1);
  Box box;
  if (params.periodic_leaves) {
    box = {{0.0, 0.0, -1.0}, {kTwoPi, kTwoPi, 1.0}, {true, true, false}};
  } else {
    box = {{-3.0, -3.0, -1.0}, {3.0, 3.0, 1.0}, {}};
  }
  // scale factor must stay positive on the closed t-range
  auto a_of = [=](double t) { return a0 + a1 * t + a2 * t * t; };
  double amin = std::min(a_of(box.lo[2]), a_of(box.hi[2]));
  if (std::abs(a2) > 0) {
    double tv = -a1 / (2.0 * a2);
    if (tv > box.lo[2] && tv < box.hi[2]) amin = std::min(amin, a_of(tv));
  }
  if (!(amin > 1e-6))
    raise(Errc::invalid_params, "scale factor must be positive on the chart");
  auto metric = std::make_shared<MetricField>(
      box, [a0, a1, a2]<class S>(std::span<const S> q) {
        S a = a0 + a1 * q[2] + a2 * q[2] * q[2];
        SquareMat<S> g(3);
        g(0, 0) = a * a;
        g(1, 1) = a * a;
        g(2, 2) = S(-1.0);
        return g;
      });
  Spacetime st;
  st.name = "robertson_walker";
  st.description =
      "warped product -dt^2 + a(t)^2 delta with a(t) = a0 + a1 t + a2 t^2; "
      "comoving constant-t leaves, geodesic normal";
  st.metric = metric;
  st.foliation = {metric, last_coordinate_time(box)};
  st.geodesic_normal = true;
  st.params = params;
  st.params.values["a0"] = a0;
  st.params.values["a1"] = a1;
  st.params.values["a2"] = a2;
  return st;
}

Spacetime make_de_sitter(const ZooParams& params) {
  double c = params.get("c", 1.0);
  if (!(c > 0.0))
    raise(Errc::invalid_params, "expanding flat slicing needs c > 0");
  Box box{{-2.0, -2.0, -1.5}, {2.0, 2.0, 1.5}, {}};
  double root_c = std::sqrt(c);
  auto metric = std::make_shared<MetricField>(
      box, [root_c]<class S>(std::span<const S> q) {
        S a = exp(root_c * q[2]);
        SquareMat<S> g(3);
        g(0, 0) = a * a;
        g(1, 1) = a * a;
        g(2, 2) = S(-1.0);
        return g;
      });
  Spacetime st;
  st.name = "de_sitter_flat_slicing";
  st.description =
      "constant curvature c > 0 in exponentially expanding flat slicing "
      "a(t) = exp(sqrt(c) t); umbilical leaves, geodesic normal";
  st.metric = metric;
  st.foliation = {metric, last_coordinate_time(box)};
  st.curvature_constant = c;
  st.geodesic_normal = true;
  st.params = params;
  st.params.values["c"] = c;
  return st;
}

Spacetime make_anti_de_sitter(const ZooParams& params) {
  double c = params.get("c", -1.0);
  if (!(c < 0.0))
    raise(Errc::invalid_params, "this static chart needs c < 0");
  Box box{{0.3, 0.2, -1.0}, {2.5, 6.0, 1.0}, {}};
  auto metric = std::make_shared<MetricField>(
      box, [c]<class S>(std::span<const S> q) {
        S f = 1.0 - c * q[0] * q[0];  // 1 + |c| r^2 > 0 everywhere
        SquareMat<S> g(3);
        g(0, 0) = 1.0 / f;
        g(1, 1) = q[0] * q[0];
        g(2, 2) = -f;
        return g;
      });
  Spacetime st;
  st.name = "anti_de_sitter_chart";
  st.description =
      "constant curvature c < 0 in a static chart (r, phi, t), "
      "g = diag(1/(1-c r^2), r^2, -(1-c r^2)); constant-t leaves have "
      "accelerated normal";
  st.metric = metric;
  st.foliation = {metric, last_coordinate_time(box)};
  st.curvature_constant = c;
  st.geodesic_normal = false;
  st.params = params;
  st.params.values["c"] = c;
  return st;
}

Spacetime make_slab(const ZooParams& params) {
  double lo = params.get("lo", 1.5);
  double hi = params.get("hi", 3.0);
  double amp = params.get("amp", 1.0);
  Box box{{-3.0, -3.0, -2.0}, {3.0, 3.0, 4.0}, {}};
  if (!(hi > lo) || !(lo > box.lo[2]) || !(hi < box.hi[2]))
    raise(Errc::invalid_params, "warp window must sit inside the chart");
  auto metric = std::make_shared<MetricField>(
      box, [lo, hi, amp]<class S>(std::span<const S> q) {
        S phi = detail::slab_warp(q[2], lo, hi, amp);
        S ex = exp(phi);
        SquareMat<S> g(3);
        g(0, 0) = ex * ex;
        g(1, 1) = S(1.0);
        g(2, 2) = S(-1.0);
        return g;
      });
  Spacetime st;
  st.name = "slab_counterexample";
  st.description =
      "g = exp(2 phi(z)) dx^2 + dy^2 - dz^2 with phi' a one-sided bump on "
      "[lo, hi]: constant-z leaves are totally geodesic below the bump and "
      "anisotropically curved inside it";
  st.metric = metric;
  st.foliation = {metric, last_coordinate_time(box)};
  st.geodesic_normal = true;
  st.params = params;
  st.params.values["lo"] = lo;
  st.params.values["hi"] = hi;
  st.params.values["amp"] = amp;
  return st;
}

Spacetime make_static_lapse_torus(const ZooParams& params) {
  double base = params.get("base", 1.0);
  double amp = params.get("amp", 0.3);
  if (!(base > std::abs(amp)))
    raise(Errc::invalid_params, "lapse must stay positive: base > |amp|");
  Box box{{0.0, 0.0, -2.0}, {kTwoPi, kTwoPi, 2.0}, {true, true, false}};
  auto metric = std::make_shared<MetricField>(
      box, [base, amp]<class S>(std::span<const S> q) {
        S lapse = base + amp * sin(q[0]);
        SquareMat<S> g(3);
        g(0, 0) = S(1.0);
        g(1, 1) = S(1.0);
        g(2, 2) = -(lapse * lapse);
        return g;
      });
  Spacetime st;
  st.name = "static_lapse_torus";
  st.description =
      "static metric dx^2 + dy^2 - (base + amp sin x)^2 dt^2 on toroidal "
      "leaves: totally geodesic slices with nonzero acceleration";
  st.metric = metric;
  st.foliation = {metric, last_coordinate_time(box)};
  st.geodesic_normal = false;
  st.params = params;
  st.params.values["base"] = base;
  st.params.values["amp"] = amp;
  return st;
}

}  // namespace

const std::vector<std::string>& zoo_names() {
  static const std::vector<std::string> names{
      "minkowski",
      "minkowski_tilted",
      "minkowski_hyperboloids",
      "robertson_walker",
      "de_sitter_flat_slicing",
      "anti_de_sitter_chart",
      "slab_counterexample",
      "static_lapse_torus",
  };
  return names;
}

Spacetime zoo_build(const std::string& name, const ZooParams& params) {
  if (name == "minkowski") return make_minkowski(params);
  if (name == "minkowski_tilted") return make_minkowski_tilted(params);
  if (name == "minkowski_hyperboloids") return make_minkowski_hyperboloids(params);
  if (name == "robertson_walker") return make_robertson_walker(params);
  if (name == "de_sitter_flat_slicing") return make_de_sitter(params);
  if (name == "anti_de_sitter_chart") return make_anti_de_sitter(params);
  if (name == "slab_counterexample") return make_slab(params);
  if (name == "static_lapse_torus") return make_static_lapse_torus(params);
  raise(Errc::invalid_params, "unknown spacetime: " + name);
}

}  // namespace folia

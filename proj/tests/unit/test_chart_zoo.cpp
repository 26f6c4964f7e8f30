#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "folia/chart.hpp"
#include "folia/errors.hpp"
#include "folia/zoo.hpp"
#include "support.hpp"

using namespace folia;
using testsup::sample_box;
using testsup::thrown_code;

namespace {

// d_k g_ij by central differences; the exact-derivative oracle's competitor.
double fd_metric_partial(const MetricField& g, const ChartPoint& p, int k,
                         int i, int j) {
  const double step = 1e-5;
  ChartPoint pp = p, pm = p;
  pp[k] += step;
  pm[k] -= step;
  return (g.eval_at<double>(pp)(i, j) - g.eval_at<double>(pm)(i, j)) /
         (2.0 * step);
}

// Composite Simpson integral of the slab warp rate amp * (4u(1-u))^4,
// independent of the closed-form antiderivative the chart uses.
double slab_phi_quadrature(double z, double lo, double hi, double amp) {
  if (z <= lo) return 0.0;
  const double w = hi - lo;
  auto rate = [&](double t) {
    double u = (t - lo) / w;
    double q = 4.0 * u * (1.0 - u);
    return amp * q * q * q * q;
  };
  const double b = std::min(z, hi);
  const int nseg = 2000;
  const double h = (b - lo) / nseg;
  double acc = rate(lo) + rate(b);
  for (int k = 1; k < nseg; ++k) acc += rate(lo + k * h) * (k % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

// === catalog =============================================================

TEST_CASE("catalog lists eight spacetimes and rejects unknown names") {
  const auto& names = zoo_names();
  REQUIRE(names.size() == 8);
  for (const auto& name : names) {
    Spacetime st = zoo_build(name);
    CHECK(st.name == name);
    CHECK(!st.description.empty());
    REQUIRE(st.metric != nullptr);
    CHECK(st.metric->dim() == 3);
    CHECK(st.foliation.metric.get() == st.metric.get());
  }
  CHECK(thrown_code([] { zoo_build("schwarzschild"); }) ==
        Errc::invalid_params);
}

TEST_CASE("flat charts evaluate to the constant Minkowski matrix") {
  for (const char* name : {"minkowski", "minkowski_tilted",
                           "minkowski_hyperboloids"}) {
    Spacetime st = zoo_build(name);
    REQUIRE(st.curvature_constant.has_value());
    CHECK(*st.curvature_constant == 0.0);
    for (const auto& p : sample_box(st.metric->box(), 10, 11)) {
      auto g = st.metric->evaluate(p);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double want = (i == j) ? (i == 2 ? -1.0 : 1.0) : 0.0;
          CHECK(g(i, j) == want);
        }
    }
  }
}

// === closed-form values ==================================================

TEST_CASE("expanding slicing metrics match their scale factors") {
  Spacetime rw = zoo_build("robertson_walker");
  ChartPoint p{0.3, -0.5, 0.5};  // a(0.5) = 1.025 for a = 1 + 0.1 t^2
  auto g = rw.metric->evaluate(p);
  CHECK(g(0, 0) == doctest::Approx(1.025 * 1.025).epsilon(1e-14));
  CHECK(g(1, 1) == doctest::Approx(1.025 * 1.025).epsilon(1e-14));
  CHECK(g(2, 2) == -1.0);
  CHECK(rw.params.get("a2", 0.0) == 0.1);  // defaults echoed back

  Spacetime ds = zoo_build("de_sitter_flat_slicing");
  ChartPoint q{0.0, 0.0, 0.25};
  auto gd = ds.metric->evaluate(q);
  CHECK(gd(0, 0) == doctest::Approx(std::exp(0.5)).epsilon(1e-14));
  CHECK(*ds.curvature_constant == 1.0);

  // steeper expansion: a = exp(2t) for c = 4
  Spacetime ds4 = zoo_build("de_sitter_flat_slicing", {{{"c", 4.0}}, false});
  auto gd4 = ds4.metric->evaluate(q);
  CHECK(gd4(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("static anti-de Sitter chart matches its closed form") {
  Spacetime ads = zoo_build("anti_de_sitter_chart");
  CHECK(*ads.curvature_constant == -1.0);
  ChartPoint p{1.0, 2.0, 0.0};  // f = 1 + r^2 = 2
  auto g = ads.metric->evaluate(p);
  CHECK(g(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g(2, 2) == doctest::Approx(-2.0).epsilon(1e-14));

  Spacetime deep = zoo_build("anti_de_sitter_chart", {{{"c", -2.0}}, false});
  auto gdeep = deep.metric->evaluate(p);  // f = 1 + 2 r^2 = 3
  CHECK(gdeep(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(gdeep(2, 2) == doctest::Approx(-3.0).epsilon(1e-14));
}

TEST_CASE("time-warped slab has a one-sided plateau profile") {
  Spacetime slab = zoo_build("slab_counterexample");
  const double lo = 1.5, hi = 3.0, amp = 1.0;

  // untouched region below the window
  auto g_low = slab.metric->evaluate({0.0, 0.0, 1.0});
  CHECK(g_low(0, 0) == 1.0);

  // mid-window value against an independent quadrature of the warp rate
  double phi2 = slab_phi_quadrature(2.0, lo, hi, amp);
  auto g_mid = slab.metric->evaluate({0.0, 0.0, 2.0});
  CHECK(g_mid(0, 0) == doctest::Approx(std::exp(2.0 * phi2)).epsilon(1e-9));

  // plateau: constant warp amp * 256 * w / 630 above the window
  const double plateau = amp * 256.0 * (hi - lo) / 630.0;
  auto g_hi = slab.metric->evaluate({0.0, 0.0, 3.5});
  CHECK(g_hi(0, 0) == doctest::Approx(std::exp(2.0 * plateau)).epsilon(1e-14));
  auto g_hi2 = slab.metric->evaluate({0.0, 0.0, 3.8});
  CHECK(g_hi2(0, 0) == g_hi(0, 0));

  // warp rate at z = 2 is (8/9)^4; check the exact metric partial
  auto dg = metric_partials(*slab.metric, {0.0, 0.0, 2.0});
  double rate = std::pow(8.0 / 9.0, 4);
  CHECK(dg(2, 0, 0) ==
        doctest::Approx(2.0 * rate * std::exp(2.0 * phi2)).epsilon(1e-9));
  auto dg_hi = metric_partials(*slab.metric, {0.0, 0.0, 3.5});
  CHECK(dg_hi(2, 0, 0) == 0.0);
}

// === exact partials vs finite differences ================================

TEST_CASE("metric partials agree with central finite differences") {
  for (const char* name :
       {"robertson_walker", "de_sitter_flat_slicing", "anti_de_sitter_chart",
        "slab_counterexample", "static_lapse_torus"}) {
    Spacetime st = zoo_build(name);
    for (const auto& p : sample_box(st.metric->box(), 6, 23)) {
      auto dg = metric_partials(*st.metric, p);
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            double fd = fd_metric_partial(*st.metric, p, k, i, j);
            CHECK(std::abs(dg(k, i, j) - fd) < 1e-6 * (1.0 + std::abs(fd)));
          }
    }
  }

  // one frozen value: d_t g_xx = 2 a a' = 0.205 at t = 0.5
  Spacetime rw = zoo_build("robertson_walker");
  auto dg = metric_partials(*rw.metric, {0.0, 0.0, 0.5});
  CHECK(dg(2, 0, 0) == doctest::Approx(0.205).epsilon(1e-13));
  CHECK(dg(0, 0, 0) == 0.0);
  CHECK(dg(2, 2, 2) == 0.0);
}

// === periodic axes ========================================================

TEST_CASE("periodic axes accept any representative and wrap correctly") {
  Spacetime torus = zoo_build("static_lapse_torus");
  const Box& box = torus.metric->box();
  CHECK(box.is_periodic(0));
  CHECK(box.is_periodic(1));
  CHECK(!box.is_periodic(2));

  const double two_pi = 2.0 * std::acos(-1.0);
  ChartPoint p{1.0, 2.0, 0.5};
  ChartPoint q{1.0 + two_pi, 2.0 - 2.0 * two_pi, 0.5};
  auto gp = torus.metric->evaluate(p);
  auto gq = torus.metric->evaluate(q);
  CHECK(gp(2, 2) == doctest::Approx(gq(2, 2)).epsilon(1e-13));

  CHECK(box.contains(std::vector<double>{100.0, -40.0, 0.5}));
  CHECK(!box.contains(std::vector<double>{0.0, 0.0, 2.5}));
  ChartPoint far_rep{17.0, -1.0, 0.5};
  ChartPoint w = box.wrap(far_rep);
  CHECK(w[0] == doctest::Approx(17.0 - 2.0 * two_pi).epsilon(1e-13));
  CHECK(w[1] == doctest::Approx(two_pi - 1.0).epsilon(1e-13));
  CHECK(w[2] == 0.5);

  Spacetime mink_t = zoo_build("minkowski", {{}, true});
  CHECK(mink_t.metric->box().is_periodic(0));
  CHECK_NOTHROW(mink_t.metric->evaluate({-5.0, 9.0, 0.0}));
}

// === validation ===========================================================

TEST_CASE("every chart is Lorentzian at sampled points") {
  for (const auto& name : zoo_names()) {
    Spacetime st = zoo_build(name);
    for (const auto& p : sample_box(st.metric->box(), 40, 7))
      CHECK_NOTHROW(st.metric->evaluate(p));
  }
}

TEST_CASE("signature violations are detected") {
  Box box{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, {}};
  MetricField riemannian(box, []<class S>(std::span<const S>) {
    SquareMat<S> g(3);
    g(0, 0) = S(1.0);
    g(1, 1) = S(1.0);
    g(2, 2) = S(1.0);
    return g;
  });
  CHECK(thrown_code([&] { riemannian.evaluate({0.0, 0.0, 0.0}); }) ==
        Errc::signature_violation);

  MetricField degenerate(box, []<class S>(std::span<const S> q) {
    SquareMat<S> g(3);
    g(0, 0) = q[2];  // changes sign at t = 0
    g(1, 1) = S(1.0);
    g(2, 2) = S(-1.0);
    return g;
  });
  CHECK_NOTHROW(degenerate.evaluate({0.0, 0.0, 0.5}));
  CHECK(thrown_code([&] { degenerate.evaluate({0.0, 0.0, -0.5}); }) ==
        Errc::signature_violation);
}

TEST_CASE("chart boxes reject outside evaluation") {
  Spacetime mink = zoo_build("minkowski");
  CHECK(thrown_code([&] { mink.metric->evaluate({0.0, 0.0, 3.5}); }) ==
        Errc::out_of_domain);
  CHECK(thrown_code([&] { mink.foliation.tau.evaluate({4.0, 0.0, 0.0}); }) ==
        Errc::out_of_domain);
  CHECK_NOTHROW(mink.metric->evaluate({0.0, 0.0, 2.9}));

  double nan = std::nan("");
  CHECK(!mink.metric->box().contains(std::vector<double>{nan, 0.0, 0.0}));
}

TEST_CASE("parameter validation guards each family") {
  auto code_of = [](const char* name, std::map<std::string, double> values) {
    return thrown_code([&] { zoo_build(name, {std::move(values), false}); });
  };
  CHECK(code_of("minkowski_tilted", {{"eps", 1.0}}) == Errc::invalid_params);
  CHECK(code_of("minkowski_tilted", {{"eps", -1.2}}) == Errc::invalid_params);
  CHECK(code_of("minkowski_tilted", {{"eps", 0.9}}) == testsup::kNoError);
  CHECK(code_of("robertson_walker", {{"a2", -1.0}}) == Errc::invalid_params);
  CHECK(code_of("robertson_walker", {{"a0", -1.0}, {"a2", 0.0}}) ==
        Errc::invalid_params);
  CHECK(code_of("de_sitter_flat_slicing", {{"c", 0.0}}) ==
        Errc::invalid_params);
  CHECK(code_of("de_sitter_flat_slicing", {{"c", -1.0}}) ==
        Errc::invalid_params);
  CHECK(code_of("anti_de_sitter_chart", {{"c", 0.5}}) == Errc::invalid_params);
  CHECK(code_of("anti_de_sitter_chart", {{"c", 0.0}}) == Errc::invalid_params);
  CHECK(code_of("slab_counterexample", {{"lo", -3.0}}) ==
        Errc::invalid_params);
  CHECK(code_of("slab_counterexample", {{"hi", 4.5}}) == Errc::invalid_params);
  CHECK(code_of("slab_counterexample", {{"lo", 2.0}, {"hi", 1.5}}) ==
        Errc::invalid_params);
  CHECK(code_of("static_lapse_torus", {{"base", 0.2}}) ==
        Errc::invalid_params);
  CHECK(code_of("static_lapse_torus", {{"base", 0.3}, {"amp", 0.3}}) ==
        Errc::invalid_params);
  CHECK(code_of("static_lapse_torus", {{"base", 0.31}, {"amp", 0.3}}) ==
        testsup::kNoError);
}

// === scalar fields through duals ==========================================

TEST_CASE("hyperboloid time function and its exact gradient") {
  Spacetime hyp = zoo_build("minkowski_hyperboloids");
  ChartPoint p{0.3, 0.2, 2.0};
  double tau = std::sqrt(4.0 - 0.09 - 0.04);
  CHECK(hyp.foliation.tau.evaluate(p) == doctest::Approx(tau).epsilon(1e-14));

  auto xd = seed_directions<double>(p);
  D1 tj = hyp.foliation.tau.eval_at<D1>(xd);
  CHECK(tj.deriv(0) == doctest::Approx(-0.3 / tau).epsilon(1e-14));
  CHECK(tj.deriv(1) == doctest::Approx(-0.2 / tau).epsilon(1e-14));
  CHECK(tj.deriv(2) == doctest::Approx(2.0 / tau).epsilon(1e-14));
}

TEST_CASE("fields may opt out of deep derivative levels") {
  Box box{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, {}};
  ScalarField shallow(box, []<class S>(std::span<const S> q)
                               requires(!std::is_same_v<S, D3>) {
    return q[0] * q[1];
  });
  ChartPoint p{0.25, 0.5, 0.0};
  CHECK(shallow.evaluate(p) == doctest::Approx(0.125));
  auto xd = seed_directions<double>(p);
  CHECK(shallow.eval_at<D1>(xd).deriv(0) == doctest::Approx(0.5));

  std::vector<D3> deep(3, D3(0.0));
  CHECK(thrown_code([&] { shallow.eval_at<D3>(deep); }) ==
        Errc::invalid_params);
}

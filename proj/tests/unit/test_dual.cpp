#include <doctest.h>

#include <cmath>
#include <vector>

#include "folia/dual.hpp"
#include "folia/linalg.hpp"

using namespace folia;

// ============================================================
// Dual scalars: first, second, and third derivatives
// ============================================================

TEST_CASE("first derivatives of a rational-trig expression") {
  // f(x) = sin(x) / (1 + x^2),  f'(x) = cos(x)/(1+x^2) - 2x sin(x)/(1+x^2)^2
  double x0 = 0.7;
  D1 x(x0);
  x.set_dirs(1);
  x.deriv_mut(0) = 1.0;
  D1 f = sin(x) / (1.0 + x * x);
  double denom = 1.0 + x0 * x0;
  double expect = std::cos(x0) / denom -
                  2.0 * x0 * std::sin(x0) / (denom * denom);
  CHECK(f.value() == doctest::Approx(std::sin(x0) / denom).epsilon(1e-14));
  CHECK(f.deriv(0) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("second derivatives via nesting") {
  // f(x) = exp(2x) * log(x); analytic f'' at x = 1.3.
  double x0 = 1.3;
  D2 x{D1(x0)};
  x.set_dirs(1);
  x.deriv_mut(0) = D1(1.0);
  x.value().set_dirs(1);
  x.value().deriv_mut(0) = 1.0;

  D2 f = exp(2.0 * x) * log(x);
  double e = std::exp(2.0 * x0);
  double fpp = e * (4.0 * std::log(x0) + 4.0 / x0 - 1.0 / (x0 * x0));
  CHECK(f.deriv(0).deriv(0) == doctest::Approx(fpp).epsilon(1e-13));
}

TEST_CASE("mixed partials are symmetric at second order") {
  // F(x,y) = sin(x y) + x^3 exp(y): d2F/dxdy == d2F/dydx to rounding.
  double x0 = 0.9, y0 = -0.4;
  std::vector<D1> base{D1(x0), D1(y0)};
  base[0].set_dirs(2);
  base[0].deriv_mut(0) = 1.0;
  base[1].set_dirs(2);
  base[1].deriv_mut(1) = 1.0;
  auto pt = seed_directions<D1>(base);

  D2 F = sin(pt[0] * pt[1]) + powi(pt[0], 3) * exp(pt[1]);
  double dxy = F.deriv(0).deriv(1);
  double dyx = F.deriv(1).deriv(0);
  CHECK(dxy == doctest::Approx(dyx).epsilon(1e-15));
  // Analytic: d2/dxdy [sin(xy)] = cos(xy) - xy sin(xy); plus 3x^2 e^y.
  double expect = std::cos(x0 * y0) - x0 * y0 * std::sin(x0 * y0) +
                  3.0 * x0 * x0 * std::exp(y0);
  CHECK(dxy == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("third derivative via triple nesting") {
  // f(x) = tanh(x), f''' = -2 sech^2(x) (2 - 3 sech^2(x)) ... use closed form:
  // f' = s, s = 1 - t^2; f'' = -2 t s; f''' = -2 s^2 + 4 t^2 s.
  double x0 = 0.31;
  D3 x{D2{D1(x0)}};
  x.set_dirs(1);
  x.deriv_mut(0) = D2{D1(1.0)};
  x.value().set_dirs(1);
  x.value().deriv_mut(0) = D1(1.0);
  x.value().value().set_dirs(1);
  x.value().value().deriv_mut(0) = 1.0;

  D3 f = tanh(x);
  double t = std::tanh(x0), s = 1.0 - t * t;
  double fppp = -2.0 * s * s + 4.0 * t * t * s;
  CHECK(f.deriv(0).deriv(0).deriv(0) == doctest::Approx(fppp).epsilon(1e-12));
}

TEST_CASE("seeded directions give the gradient at once") {
  std::vector<double> p{1.2, -0.5, 0.3};
  auto x = seed_directions<double>(p);
  D1 f = x[0] * x[1] * x[1] + sqrt(x[0]) * x[2];
  CHECK(f.deriv(0) == doctest::Approx(p[1] * p[1] +
                                      0.5 / std::sqrt(p[0]) * p[2]));
  CHECK(f.deriv(1) == doctest::Approx(2.0 * p[0] * p[1]));
  CHECK(f.deriv(2) == doctest::Approx(std::sqrt(p[0])));
}

TEST_CASE("directional seeding contracts the gradient with the direction") {
  std::vector<double> p{0.4, 1.1};
  std::vector<double> dir{2.0, -3.0};
  auto x = seed_one_direction<double>(p, dir);
  D1 f = exp(x[0]) * sin(x[1]);
  double expect = 2.0 * std::exp(p[0]) * std::sin(p[1]) -
                  3.0 * std::exp(p[0]) * std::cos(p[1]);
  CHECK(f.deriv(0) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("scalar_value pierces all nesting levels") {
  D3 x{D2{D1(2.5)}};
  CHECK(scalar_value(x) == 2.5);
  CHECK(scalar_value(3.25) == 3.25);
}

// ============================================================
// Matrix inverse over dual scalars
// ============================================================

TEST_CASE("inverse of a dual-valued matrix differentiates correctly") {
  // M(t) = [[1+t, t], [t, 2]];  d/dt M^{-1} = -M^{-1} M' M^{-1}.
  double t0 = 0.3;
  D1 t(t0);
  t.set_dirs(1);
  t.deriv_mut(0) = 1.0;
  SquareMat<D1> m(2);
  m(0, 0) = 1.0 + t;
  m(0, 1) = t;
  m(1, 0) = t;
  m(1, 1) = D1(2.0);
  D1 det;
  auto inv = invert(m, &det);

  double d0 = 2.0 * (1.0 + t0) - t0 * t0;
  CHECK(det.value() == doctest::Approx(d0).epsilon(1e-14));
  CHECK(inv(0, 0).value() == doctest::Approx(2.0 / d0).epsilon(1e-14));

  // Finite-difference oracle for d(inv)/dt.
  auto inv_at = [](double tv) {
    double d = 2.0 * (1.0 + tv) - tv * tv;
    return std::vector<double>{2.0 / d, -tv / d, -tv / d, (1.0 + tv) / d};
  };
  double h = 1e-6;
  auto up = inv_at(t0 + h), dn = inv_at(t0 - h);
  int k = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j, ++k) {
      double fd = (up[k] - dn[k]) / (2.0 * h);
      CHECK(inv(i, j).deriv(0) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("singular matrix is rejected") {
  SquareMat<double> m(2);
  m(0, 0) = 1.0;
  m(0, 1) = 2.0;
  m(1, 0) = 2.0;
  m(1, 1) = 4.0;
  CHECK_THROWS_AS(invert(m), Error);
}

TEST_CASE("symmetric eigenvalues and inertia") {
  SquareMat<double> m(3);
  m(0, 0) = 2.0;
  m(1, 1) = -1.0;
  m(2, 2) = 5.0;
  m(0, 1) = m(1, 0) = 0.5;
  auto ev = sym_eigenvalues(m);
  REQUIRE(ev.size() == 3);
  CHECK(ev[0] < ev[1]);
  CHECK(ev[1] < ev[2]);
  // trace and det preserved
  CHECK(ev[0] + ev[1] + ev[2] == doctest::Approx(6.0).epsilon(1e-12));
  auto sig = sym_inertia(m);
  CHECK(sig.negative == 1);
  CHECK(sig.positive == 2);
  CHECK(sig.zero == 0);
}

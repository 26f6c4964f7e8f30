#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "folia/dual.hpp"
#include "folia/errors.hpp"
#include "folia/linalg.hpp"

namespace folia {

// Chart coordinates; by zoo convention the last coordinate is the one the
// canonical time function increases along.
using ChartPoint = std::vector<double>;

// Open axis-aligned coordinate box. Axes may be flagged periodic, in which
// case the axis is a circle of circumference hi-lo and every real coordinate
// value is accepted (identified mod the period).
struct Box {
  std::vector<double> lo, hi;
  std::vector<bool> periodic;

  int dim() const { return static_cast<int>(lo.size()); }
  double span(int i) const { return hi[i] - lo[i]; }
  bool is_periodic(int i) const {
    return !periodic.empty() && periodic[static_cast<size_t>(i)];
  }

  bool contains(std::span<const double> p) const {
    if (static_cast<int>(p.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
      if (!std::isfinite(p[i])) return false;
      if (is_periodic(i)) continue;
      if (!(p[i] > lo[i] && p[i] < hi[i])) return false;
    }
    return true;
  }

  // Reduce periodic coordinates into [lo, lo + span).
  ChartPoint wrap(std::span<const double> p) const {
    ChartPoint q(p.begin(), p.end());
    for (int i = 0; i < dim(); ++i) {
      if (!is_periodic(i)) continue;
      double s = span(i);
      q[i] = lo[i] + std::fmod(std::fmod(q[i] - lo[i], s) + s, s);
    }
    return q;
  }

  ChartPoint center() const {
    ChartPoint c(lo.size());
    for (int i = 0; i < dim(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
  }
};

namespace detail {

// One closed-form expression erased at the four scalar levels the
// differentiation pipeline uses (value, gradient, Hessian, third order).
// Expressions may opt out of a level with a requires-clause (fields built
// from other differentiated fields bottom out early); evaluating a skipped
// level raises instead of failing to compile.
template <template <class> class R>
struct ErasedLevels {
  std::function<R<double>(std::span<const double>)> f0;
  std::function<R<D1>(std::span<const D1>)> f1;
  std::function<R<D2>(std::span<const D2>)> f2;
  std::function<R<D3>(std::span<const D3>)> f3;

  template <class F>
  void assign(F f) {
    if constexpr (std::is_invocable_v<const F&, std::span<const double>>)
      f0 = [f](std::span<const double> x) { return f(x); };
    if constexpr (std::is_invocable_v<const F&, std::span<const D1>>)
      f1 = [f](std::span<const D1> x) { return f(x); };
    if constexpr (std::is_invocable_v<const F&, std::span<const D2>>)
      f2 = [f](std::span<const D2> x) { return f(x); };
    if constexpr (std::is_invocable_v<const F&, std::span<const D3>>)
      f3 = [f](std::span<const D3> x) { return f(x); };
  }

  template <class S>
  const auto& pick() const {
    static_assert(std::is_same_v<S, double> || std::is_same_v<S, D1> ||
                  std::is_same_v<S, D2> || std::is_same_v<S, D3>);
    if constexpr (std::is_same_v<S, double>)
      return check(f0);
    else if constexpr (std::is_same_v<S, D1>)
      return check(f1);
    else if constexpr (std::is_same_v<S, D2>)
      return check(f2);
    else
      return check(f3);
  }

 private:
  template <class Fn>
  static const Fn& check(const Fn& fn) {
    if (!fn)
      raise(Errc::invalid_params,
            "field is not differentiable to the requested order");
    return fn;
  }
};

template <class S>
using Scalar = S;
template <class S>
using Vector = std::vector<S>;

inline void require_inside(const Box& box, std::span<const double> p,
                           const char* what) {
  if (!box.contains(p))
    raise(Errc::out_of_domain, std::string(what) + ": point outside chart box");
}

template <class S>
std::vector<double> scalar_parts(std::span<const S> x) {
  std::vector<double> p(x.size());
  for (size_t i = 0; i < x.size(); ++i) p[i] = scalar_value(x[i]);
  return p;
}

}  // namespace detail

// Lorentzian metric as a closed-form matrix function on a chart box,
// evaluable on nested dual scalars for exact derivatives. The public
// evaluate() verifies the (+...+,-) signature by an eigenvalue check at a
// configurable call stride; eval_at is the raw pipeline entry point and
// checks the domain only.
class MetricField {
 public:
  template <class F>
  MetricField(Box box, F f, int signature_check_stride = 1)
      : box_(std::move(box)), stride_(signature_check_stride) {
    if (box_.dim() < 2 || box_.dim() > kMaxDualDirs)
      raise(Errc::invalid_params, "metric chart dimension must be 2..4");
    if (stride_ < 1) raise(Errc::invalid_params, "signature stride must be >= 1");
    levels_.assign(f);
  }
  MetricField(const MetricField&) = delete;
  MetricField& operator=(const MetricField&) = delete;

  int dim() const { return box_.dim(); }
  const Box& box() const { return box_; }

  template <class S>
  SquareMat<S> eval_at(std::span<const S> x) const {
    detail::require_inside(box_, detail::scalar_parts(x), "metric");
    return levels_.pick<S>()(x);
  }

  SquareMat<double> evaluate(const ChartPoint& p) const {
    auto g = eval_at<double>(p);
    if (calls_.fetch_add(1) % stride_ == 0) verify_signature(p, g);
    return g;
  }

  void verify_signature(const ChartPoint& p) const {
    verify_signature(p, eval_at<double>(p));
  }

 private:
  void verify_signature(const ChartPoint& p, const SquareMat<double>& g) const {
    Inertia sig = sym_inertia(g);
    if (sig.negative != 1 || sig.positive != dim() - 1) {
      std::string loc;
      for (double c : p) loc += (loc.empty() ? "(" : ", ") + std::to_string(c);
      raise(Errc::signature_violation,
            "metric is not Lorentzian at " + loc + ")");
    }
  }

  Box box_;
  detail::ErasedLevels<SquareMat> levels_;
  int stride_;
  mutable std::atomic<unsigned long> calls_{0};
};

// Scalar function on the chart (time functions, test integrands).
class ScalarField {
 public:
  ScalarField() = default;
  template <class F>
  ScalarField(Box box, F f) : box_(std::move(box)) {
    levels_.assign(f);
  }

  const Box& box() const { return box_; }

  template <class S>
  S eval_at(std::span<const S> x) const {
    detail::require_inside(box_, detail::scalar_parts(x), "scalar field");
    return levels_.pick<S>()(x);
  }

  double evaluate(const ChartPoint& p) const { return eval_at<double>(p); }

 private:
  Box box_;
  detail::ErasedLevels<detail::Scalar> levels_;
};

// Vector field by chart components.
class VectorField {
 public:
  VectorField() = default;
  template <class F>
  VectorField(Box box, F f) : box_(std::move(box)) {
    levels_.assign(f);
  }

  const Box& box() const { return box_; }

  template <class S>
  std::vector<S> eval_at(std::span<const S> x) const {
    detail::require_inside(box_, detail::scalar_parts(x), "vector field");
    return levels_.pick<S>()(x);
  }

  std::vector<double> evaluate(const ChartPoint& p) const {
    return eval_at<double>(p);
  }

 private:
  Box box_;
  detail::ErasedLevels<detail::Vector> levels_;
};

// All first partials d_C g_AB, exact through dual arithmetic.
Tensor3<double> metric_partials(const MetricField& metric, const ChartPoint& p);

}  // namespace folia

#pragma once

// Shared helpers for the unit suites: deterministic point sampling inside
// chart boxes and error-code capture.

#include <random>
#include <vector>

#include "folia/chart.hpp"
#include "folia/errors.hpp"

namespace testsup {

// Seeded points strictly inside the box (5% inset per axis).
inline std::vector<folia::ChartPoint> sample_box(const folia::Box& box,
                                                 int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::vector<folia::ChartPoint> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    folia::ChartPoint p(static_cast<size_t>(box.dim()));
    for (int i = 0; i < box.dim(); ++i) p[i] = box.lo[i] + u(rng) * box.span(i);
    pts.push_back(std::move(p));
  }
  return pts;
}

inline constexpr folia::Errc kNoError = static_cast<folia::Errc>(-1);

// Runs f and reports which typed error it raised (kNoError if none).
template <class F>
folia::Errc thrown_code(F&& f) {
  try {
    f();
  } catch (const folia::Error& e) {
    return e.code();
  }
  return kNoError;
}

}  // namespace testsup

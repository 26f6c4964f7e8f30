#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "folia/chart.hpp"

namespace folia {

// Inclusive per-axis grid on the box inset by 1e-9 of each span.
// per_axis = 2k-1 refines per_axis = k in place: coarse nodes reappear.
std::vector<ChartPoint> grid_sample(const Box& box, int per_axis);

// Digital base-2 low-discrepancy points (dimension <= 6), emitted in
// Gray-code order. seed != 0 applies a per-axis XOR scramble; prefixes are
// nested either way: the first n points of a longer run coincide.
std::vector<ChartPoint> sobol_sample(const Box& box, std::size_t count,
                                     std::uint64_t seed = 0);

// Independent uniforms on the inset box.
std::vector<ChartPoint> uniform_sample(const Box& box, std::size_t count,
                                       std::uint64_t seed);

// Worker count: FOLIA_THREADS when set to a positive integer, else the
// hardware concurrency (at least 1).
int thread_budget();

// Index-parallel map over [0, count). fn must only write to per-index
// slots, so results do not depend on the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace folia

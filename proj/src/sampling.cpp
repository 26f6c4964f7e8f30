#include "folia/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>

#include "folia/errors.hpp"

namespace folia {

namespace {

constexpr double kInset = 1e-9;

double axis_value(const Box& box, int a, double unit) {
  const double pad = kInset * box.span(a);
  return box.lo[a] + pad + unit * (box.span(a) - 2.0 * pad);
}

// Direction-number seeds for the first six axes: degree, recurrence bits,
// and the initial odd integers of the standard table.
struct SobolDim {
  int s;
  std::uint32_t a;
  std::uint32_t m[4];
};

constexpr SobolDim kSobolDims[6] = {
    {0, 0, {0, 0, 0, 0}},  // van der Corput
    {1, 0, {1, 0, 0, 0}},  {2, 1, {1, 3, 0, 0}}, {3, 1, {1, 3, 1, 0}},
    {3, 2, {1, 1, 1, 0}},  {4, 1, {1, 1, 3, 3}},
};

constexpr int kSobolBits = 32;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// v[k], k = 1..kSobolBits, for one axis.
std::vector<std::uint32_t> direction_numbers(int axis) {
  const SobolDim& dim = kSobolDims[axis];
  std::vector<std::uint32_t> m(kSobolBits + 1, 0);
  if (dim.s == 0) {
    for (int k = 1; k <= kSobolBits; ++k) m[k] = 1;
  } else {
    for (int k = 1; k <= dim.s; ++k) m[k] = dim.m[k - 1];
    for (int k = dim.s + 1; k <= kSobolBits; ++k) {
      std::uint32_t value = m[k - dim.s] ^ (m[k - dim.s] << dim.s);
      for (int i = 1; i < dim.s; ++i)
        if ((dim.a >> (dim.s - 1 - i)) & 1u) value ^= m[k - i] << i;
      m[k] = value;
    }
  }
  std::vector<std::uint32_t> v(kSobolBits + 1, 0);
  for (int k = 1; k <= kSobolBits; ++k) v[k] = m[k] << (kSobolBits - k);
  return v;
}

}  // namespace

std::vector<ChartPoint> grid_sample(const Box& box, int per_axis) {
  if (per_axis < 1) raise(Errc::invalid_params, "per_axis must be positive");
  const int m = box.dim();
  long total = 1;
  for (int a = 0; a < m; ++a) total *= per_axis;
  std::vector<ChartPoint> out;
  out.reserve(total);
  ChartPoint p(m, 0.0);
  for (long lin = 0; lin < total; ++lin) {
    long rem = lin;
    for (int a = 0; a < m; ++a) {
      const int idx = static_cast<int>(rem % per_axis);
      rem /= per_axis;
      const double unit =
          per_axis == 1 ? 0.5 : static_cast<double>(idx) / (per_axis - 1);
      p[a] = axis_value(box, a, unit);
    }
    out.push_back(p);
  }
  return out;
}

std::vector<ChartPoint> sobol_sample(const Box& box, std::size_t count,
                                     std::uint64_t seed) {
  const int m = box.dim();
  if (m > 6)
    raise(Errc::invalid_params,
          "low-discrepancy sampling is wired for at most 6 axes");
  std::vector<std::vector<std::uint32_t>> v(m);
  std::vector<std::uint32_t> x(m, 0), scramble(m, 0);
  std::uint64_t state = seed;
  for (int a = 0; a < m; ++a) {
    v[a] = direction_numbers(a);
    if (seed != 0) scramble[a] = static_cast<std::uint32_t>(splitmix64(state) >> 32);
  }

  std::vector<ChartPoint> out;
  out.reserve(count);
  ChartPoint p(m, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    for (int a = 0; a < m; ++a) {
      const double unit = (x[a] ^ scramble[a]) * 0x1p-32;
      p[a] = axis_value(box, a, unit);
    }
    out.push_back(p);
    const int k = std::countr_zero(i + 1) + 1;  // Gray code flip position
    if (k <= kSobolBits)
      for (int a = 0; a < m; ++a) x[a] ^= v[a][k];
  }
  return out;
}

std::vector<ChartPoint> uniform_sample(const Box& box, std::size_t count,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int m = box.dim();
  std::vector<ChartPoint> out;
  out.reserve(count);
  ChartPoint p(m, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    for (int a = 0; a < m; ++a) {
      const double unit = (rng() >> 11) * 0x1p-53;
      p[a] = axis_value(box, a, unit);
    }
    out.push_back(p);
  }
  return out;
}

int thread_budget() {
  if (const char* env = std::getenv("FOLIA_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
  const int workers = std::min<std::size_t>(thread_budget(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace folia

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace gowerslab {

// Global worker budget. Affects speed only: every reduction in the library is
// arranged so that results are byte-identical for any budget.
int thread_budget();
void set_thread_budget(int n);

// Runs block_fn(lo, hi) over a partition of [0, n) into contiguous blocks,
// one per worker. The partition depends only on n and the budget; since all
// per-index results are materialized (never reduced in arrival order), the
// partition itself never influences output values.
void parallel_blocks(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& block_fn);

template <class F>
void parallel_for(std::int64_t n, F&& f) {
  parallel_blocks(n, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) f(i);
  });
}

// Fixed pairwise summation tree over [lo, hi); shape depends only on the index
// range, so the result is independent of how the values were produced.
template <class T>
T pairwise_sum(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += v[i];
    return acc;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v, 0, v.size());
}

// values[i] = f(i) evaluated in parallel, then summed over the fixed tree.
template <class T, class F>
T parallel_map_sum(std::int64_t n, F&& f) {
  std::vector<T> vals(static_cast<std::size_t>(n));
  parallel_for(n, [&](std::int64_t i) { vals[static_cast<std::size_t>(i)] = f(i); });
  return pairwise_sum(vals);
}

}  // namespace gowerslab

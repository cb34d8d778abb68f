#include "gowerslab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace gowerslab {

namespace {

int initial_budget() {
  if (const char* env = std::getenv("GOWERSLAB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::atomic<int> g_budget{initial_budget()};

}  // namespace

int thread_budget() { return g_budget.load(std::memory_order_relaxed); }

void set_thread_budget(int n) { g_budget.store(n < 1 ? 1 : n, std::memory_order_relaxed); }

void parallel_blocks(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& block_fn) {
  if (n <= 0) return;
  int workers = thread_budget();
  if (workers > n) workers = static_cast<int>(n);
  if (workers <= 1 || n < 2) {
    block_fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::int64_t lo = w * chunk;
    std::int64_t hi = lo + chunk < n ? lo + chunk : n;
    if (lo >= hi) break;
    pool.emplace_back(block_fn, lo, hi);
  }
  for (auto& th : pool) th.join();
}

}  // namespace gowerslab

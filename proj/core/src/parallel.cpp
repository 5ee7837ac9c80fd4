#include "sternlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <thread>

namespace sternlab {
namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("STERN_SPECTRAL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::atomic<unsigned> g_threads{0};  // 0 = not yet initialized

}  // namespace

unsigned thread_count() {
  unsigned v = g_threads.load(std::memory_order_relaxed);
  if (v == 0) {
    v = default_threads();
    g_threads.store(v, std::memory_order_relaxed);
  }
  return v;
}

void set_thread_count(unsigned n) {
  g_threads.store(n == 0 ? 1 : n, std::memory_order_relaxed);
}

std::size_t chunk_count(std::size_t n) {
  // Fixed chunk size keeps the decomposition independent of thread count.
  constexpr std::size_t kChunk = 1u << 14;
  return n == 0 ? 0 : (n + kChunk - 1) / kChunk;
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t,
                                              std::size_t)>& body) {
  const std::size_t chunks = chunk_count(n);
  if (chunks == 0) return;
  const std::size_t chunk = (n + chunks - 1) / chunks;
  const unsigned workers = std::min<std::size_t>(thread_count(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c)
      body(c, c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= chunks) return;
        body(c, c * chunk, std::min(n, (c + 1) * chunk));
      }
    }));
  }
  for (auto& f : pool) f.get();
}

}  // namespace sternlab

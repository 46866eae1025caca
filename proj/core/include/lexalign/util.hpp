#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string_view>
#include <thread>
#include <vector>

namespace lexalign {

// Runs fn(begin, end) over fixed-size chunks of [0, n). Chunk boundaries do
// not depend on the thread count, so any per-chunk arithmetic is identical
// whether the work runs on 1 or N threads. Callers must write results into
// disjoint, preallocated slots.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn,
                         std::size_t chunk = 1024) {
  if (n == 0) return;
  if (threads <= 1) {
    for (std::size_t b = 0; b < n; b += chunk) fn(b, std::min(n, b + chunk));
    return;
  }
  std::vector<std::thread> pool;
  std::size_t nchunks = (n + chunk - 1) / chunk;
  std::size_t per = (nchunks + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::size_t c0 = static_cast<std::size_t>(t) * per;
    std::size_t c1 = std::min(nchunks, c0 + per);
    if (c0 >= c1) break;
    pool.emplace_back([=, &fn] {
      for (std::size_t c = c0; c < c1; ++c) {
        std::size_t b = c * chunk;
        fn(b, std::min(n, b + chunk));
      }
    });
  }
  for (auto& th : pool) th.join();
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based generator: the stream for a given (seed, iteration, row) key
// is independent of evaluation order, which keeps stochastic masking
// identical across thread counts.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t iteration, std::uint64_t row)
      : state_(splitmix64(splitmix64(seed ^ 0x6C62272E07BB0142ULL) + iteration) ^
               splitmix64(row + 0x100000001B3ULL)) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xCBF29CE484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace lexalign

#pragma once
//
// Small shared utilities: deterministic seeding, and a chunked parallel
// sweep used by the heavier law checkers.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace duofreyd {

/// The process-wide base seed: DUOFREYD_SEED when set (decimal), else a
/// fixed default so every run is reproducible out of the box.
inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("DUOFREYD_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return static_cast<std::uint64_t>(v);
  }
  return 0xd00f12eedull;
}

/// Upper bound on worker threads parallel_chunks may use.
inline unsigned max_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 4 : hw;
}

/// splitmix64 step; stable across platforms, used to derive sub-seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// FNV-1a, for mixing strings into seeds deterministically.
inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Deterministic per-purpose RNG: same (seed, purpose) -> same stream.
class Rng {
  std::mt19937_64 gen_;

 public:
  Rng(std::uint64_t seed, const std::string& purpose) {
    std::uint64_t s = seed ^ fnv1a(purpose);
    gen_.seed(splitmix64(s));
  }
  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
    return d(gen_);
  }
  std::uint64_t raw() { return gen_(); }
};

/// Runs fn(begin, end) over [0, n) split into contiguous chunks across
/// hardware threads.  fn must be safe to run concurrently on disjoint
/// ranges; callers collect per-chunk results for deterministic merging.
inline void parallel_chunks(std::uint64_t n,
                            const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& fn,
                            unsigned max_threads = 0) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 4;
  if (max_threads != 0 && max_threads < hw) hw = max_threads;
  if (n < 4096 || hw <= 1) {
    fn(0, n, 0);
    return;
  }
  unsigned k = hw;
  std::vector<std::thread> workers;
  std::uint64_t chunk = (n + k - 1) / k;
  for (unsigned t = 0; t < k; ++t) {
    std::uint64_t b = t * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    workers.emplace_back([&fn, b, e, t] { fn(b, e, t); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace duofreyd

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckn {

using Vec = std::vector<double>;

// ---------------------------------------------------------------------------
// Typed errors. Every failure mode of the library surfaces as one of these,
// so callers (and the CLI) can map them to exit codes without string parsing.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateParams : Error {
  explicit DegenerateParams(const std::string& msg) : Error(msg) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};
struct OriginError : Error {
  explicit OriginError(const std::string& msg) : Error(msg) {}
};
struct BoundaryError : Error {
  explicit BoundaryError(const std::string& msg) : Error(msg) {}
};
struct PositivityError : Error {
  explicit PositivityError(const std::string& msg) : Error(msg) {}
};
struct SpecError : Error {
  explicit SpecError(const std::string& msg) : Error(msg) {}
};
struct PoleError : Error {
  explicit PoleError(const std::string& msg) : Error(msg) {}
};
struct MissingZ : Error {
  explicit MissingZ(const std::string& msg) : Error(msg) {}
};
struct NonFinite : Error {
  explicit NonFinite(const std::string& msg) : Error(msg) {}
};

// ---------------------------------------------------------------------------
// Deterministic RNG. splitmix64-seeded xoshiro256** with an explicit
// double conversion, so sample sets are bit-identical across platforms and
// standard-library versions (std::uniform_real_distribution is not).
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& si : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      si = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }
  std::uint64_t s_[4];
};

// ---------------------------------------------------------------------------
// Deterministic reductions.
// ---------------------------------------------------------------------------

/// Pairwise (tree) sum. The reduction order depends only on the length of the
/// input, never on thread count, so parallel producers stay bit-reproducible.
double pairwise_sum(std::span<const double> values);

/// Thread cap for the few parallel loops in the library. Reads CKNLAB_THREADS
/// (>=1) and falls back to hardware concurrency clamped to 8.
int thread_cap();

/// Runs fn(i) for i in [0, count) on up to thread_cap() threads. Results must
/// be written to per-index storage by the callee; the schedule is a static
/// block partition, so outputs do not depend on the number of threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Shortest-faithful decimal with 17 significant digits ('.' separator,
/// C-locale independent). Used by the CSV/JSON emitters.
std::string fmt17(double v);

inline double sq(double v) { return v * v; }

inline constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace ckn

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace infodepth {

/// Deterministic generator passed explicitly to every random operation.
///
/// Wraps a 64-bit Mersenne twister. Uniform variates use the top 53 bits so
/// the sequence of doubles is the same on every platform; normals go through
/// the standard library distribution.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  explicit Rng(std::seed_seq& seq) : engine_(seq) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n));
  }

  double normal() { return normal_(engine_); }

  /// Heavy-tailed symmetric step: 10^(1.5 - 6u) * z with u ~ U[0,1), z ~ N(0,1).
  /// Spans roughly thirty times to a few millionths of the base scale.
  double heavy_tailed() {
    const double u = uniform();
    return std::pow(10.0, 1.5 - 6.0 * u) * normal();
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Generator for one repetition, derived only from (master_seed, rep_id) so
/// results never depend on which worker ran the rep.
inline Rng rep_rng(std::uint64_t master_seed, std::uint64_t rep_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(rep_id),
                    static_cast<std::uint32_t>(rep_id >> 32), 0x1d3e7u};
  return Rng(seq);
}

/// Wraps a value into [0, 1).
inline double wrap_unit(double x) { return x - std::floor(x); }

}  // namespace infodepth

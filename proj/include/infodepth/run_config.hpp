#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "infodepth/errors.hpp"
#include "infodepth/model_api.hpp"
#include "infodepth/sampler.hpp"

namespace infodepth {

enum class DistanceKind { TwoSided, OneSided };

inline std::string_view to_string(DistanceKind k) {
  return k == DistanceKind::TwoSided ? "two-sided" : "one-sided";
}

inline DistanceKind parse_distance_kind(std::string_view s) {
  if (s == "two-sided") return DistanceKind::TwoSided;
  if (s == "one-sided") return DistanceKind::OneSided;
  throw UsageError("unknown distance kind '" + std::string(s) + "'");
}

/// Everything needed to reproduce a batch of descents.
struct RunConfig {
  std::string model_name;
  Mode mode = Mode::Entropy;
  DistanceKind distance = DistanceKind::TwoSided;
  bool perfect = false;  ///< exact constrained draws (toy models only)
  std::size_t n_particles = 10;
  std::size_t mcmc_steps = 1000;
  double tolerance = 1e-3;
  std::size_t reps = 200;
  std::uint64_t master_seed = 0;
  std::size_t threads = 1;
  double depth_cap = 200.0;
  std::string output_path = "output.txt";

  DescentConfig descent() const {
    return {n_particles, mcmc_steps, tolerance, depth_cap, mode};
  }

  /// Settings used for the published runs: 1000 reference particles and
  /// 10000 MCMC steps per NS iteration.
  void apply_paper_scale() {
    mcmc_steps = 10000;
    reps = 1000;
  }

  void validate() const {
    if (n_particles < 1) throw UsageError("--particles must be >= 1");
    if (mcmc_steps < 1) throw UsageError("--mcmc-steps must be >= 1");
    if (!(tolerance > 0.0)) throw UsageError("--tolerance must be > 0");
    if (reps < 1) throw UsageError("--reps must be >= 1");
    if (threads < 1) throw UsageError("--threads must be >= 1");
    if (!(depth_cap > 0.0)) throw UsageError("--depth-cap must be > 0");
  }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

}  // namespace infodepth

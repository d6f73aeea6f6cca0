#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "infodepth/errors.hpp"
#include "infodepth/model_api.hpp"
#include "infodepth/rng.hpp"

namespace infodepth {

enum class Termination { ToleranceReached, DepthCapHit };

inline std::string_view to_string(Termination t) {
  return t == Termination::ToleranceReached ? "ToleranceReached" : "DepthCapHit";
}

/// Numerical settings of a single descent.
struct DescentConfig {
  std::size_t n_particles = 10;
  std::size_t mcmc_steps = 1000;
  double tolerance = 1e-3;
  double depth_cap = 200.0;
  Mode mode = Mode::Entropy;
};

/// Trace of one Nested Sampling descent toward a reference particle.
///
/// `discarded` holds the worst distance at each iteration, so it is
/// nonincreasing, and the depth at any tolerance no finer than the run
/// tolerance can be recovered from it.
struct DepthRecord {
  std::uint64_t rep_id = 0;
  std::vector<double> discarded;
  std::size_t n_particles = 1;
  double run_tolerance = 0.0;
  Termination terminated_by = Termination::ToleranceReached;
  Mode mode = Mode::Entropy;
  Geometry geometry{};

  std::size_t iterations() const { return discarded.size(); }

  /// Depth at the run tolerance, k / N nats.
  double depth() const {
    return static_cast<double>(discarded.size()) / static_cast<double>(n_particles);
  }

  friend bool operator==(const DepthRecord&, const DepthRecord&) = default;
};

/// Depth re-estimated at a coarser tolerance: |{d > tol}| / N.
inline double depth_at(const DepthRecord& record, double tol) {
  if (tol < record.run_tolerance) {
    throw InsufficientResolution("tolerance " + std::to_string(tol) +
                                 " is below the run tolerance " +
                                 std::to_string(record.run_tolerance));
  }
  // discarded is nonincreasing, so the count is a prefix length
  const auto it = std::partition_point(record.discarded.begin(), record.discarded.end(),
                                       [tol](double d) { return d > tol; });
  return static_cast<double>(it - record.discarded.begin()) /
         static_cast<double>(record.n_particles);
}

/// Standard deviation of a single depth estimate, sqrt(depth / N).
inline double depth_std_error_theoretical(double depth, std::size_t n_particles) {
  if (depth < 0.0 || n_particles == 0) throw DomainError("depth must be >= 0 and N >= 1");
  return std::sqrt(depth / static_cast<double>(n_particles));
}

namespace detail {

/// Is (d, label) strictly inside the current level (d_max, label_max)?
///
/// Finite levels use the plain strict inequality. An infinite level (a
/// plateau of +inf sentinel distances) is ordered by the tie-break label so
/// the plateau is peeled off at the correct rate.
inline bool inside_level(double d, double label, double d_max, double label_max) {
  if (std::isinf(d_max)) return d < d_max || label < label_max;
  return d < d_max;
}

template <class Particle>
struct Walker {
  Particle particle;
  double distance;
  double label;
};

}  // namespace detail

/// Runs one Nested Sampling descent with the model distribution as the
/// quasi-prior and minus the distance to `reference` as the quasi-likelihood.
///
/// Stops when the worst distance is within the tolerance, or when one more
/// discard would push the depth past the cap (record flagged DepthCapHit).
template <TargetModel M>
DepthRecord run_descent(const M& model, const typename M::Particle& reference,
                        const DescentConfig& config, Rng& rng, std::uint64_t rep_id = 0) {
  if (config.n_particles < 1) throw UsageError("need at least one particle");
  if (!(config.tolerance >= 0.0)) throw UsageError("tolerance must be >= 0");
  if (!(config.depth_cap > 0.0)) throw UsageError("depth cap must be > 0");

  using Particle = typename M::Particle;
  const std::size_t n = config.n_particles;

  DepthRecord record;
  record.rep_id = rep_id;
  record.n_particles = n;
  record.run_tolerance = config.tolerance;
  record.mode = config.mode;
  record.geometry = model.geometry();

  std::vector<detail::Walker<Particle>> walkers;
  walkers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Particle p = draw_initial(model, rng, config.mode, reference, config.mcmc_steps);
    const double d = model.distance(p, reference);
    walkers.push_back({std::move(p), d, rng.uniform()});
  }

  auto worst_index = [&walkers] {
    std::size_t w = 0;
    for (std::size_t i = 1; i < walkers.size(); ++i) {
      const auto& a = walkers[i];
      const auto& b = walkers[w];
      if (a.distance > b.distance || (a.distance == b.distance && a.label > b.label)) w = i;
    }
    return w;
  };

  for (;;) {
    const std::size_t worst = worst_index();
    const double d_max = walkers[worst].distance;
    const double label_max = walkers[worst].label;
    if (!(d_max > config.tolerance)) {
      record.terminated_by = Termination::ToleranceReached;
      break;
    }
    if (static_cast<double>(record.discarded.size() + 1) / static_cast<double>(n) >
        config.depth_cap) {
      record.terminated_by = Termination::DepthCapHit;
      break;
    }
    record.discarded.push_back(d_max);

    bool perfect = false;
    if constexpr (PerfectResampler<M>) {
      perfect = model.perfect_resampling() && std::isfinite(d_max);
      if (perfect) {
        Particle p = model.draw_constrained(rng, reference, d_max);
        const double d = model.distance(p, reference);
        walkers[worst] = {std::move(p), d, rng.uniform()};
      }
    }
    if (perfect) continue;

    // Clone a surviving particle; with N = 1 there is none, so the chain
    // restarts from the discarded particle and only constrained moves stick.
    detail::Walker<Particle> current = walkers[worst];
    if (n > 1) {
      std::size_t j = rng.index(n - 1);
      if (j >= worst) ++j;
      current = walkers[j];
    }
    for (std::size_t step = 0; step < config.mcmc_steps; ++step) {
      auto proposal = model.explore(current.particle, rng, config.mode, reference);
      const double label = wrap_unit(current.label + rng.heavy_tailed());
      if (!(proposal.log_accept >= 0.0)) {
        if (proposal.log_accept == -INFINITY || std::isnan(proposal.log_accept)) continue;
        if (std::log(rng.uniform()) >= proposal.log_accept) continue;
      }
      const double d = model.distance(proposal.particle, reference);
      if (!detail::inside_level(d, label, d_max, label_max)) continue;
      current.particle = std::move(proposal.particle);
      current.distance = d;
      current.label = label;
    }
    walkers[worst] = std::move(current);
  }
  return record;
}

}  // namespace infodepth

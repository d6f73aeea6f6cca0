#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "infodepth/errors.hpp"
#include "infodepth/rng.hpp"

namespace infodepth {

/// What a descent measures: the model distribution itself, or the posterior
/// given the reference's data (conditional entropy).
enum class Mode { Entropy, ConditionalEntropy };

/// Shape of the region {d < r}; decides the log-volume correction.
enum class Metric { L2Ball, IntervalPerAxis, OneSided };

struct Geometry {
  std::size_t dim = 1;
  Metric metric = Metric::L2Ball;

  friend bool operator==(const Geometry&, const Geometry&) = default;
};

inline std::string_view to_string(Mode m) {
  return m == Mode::Entropy ? "entropy" : "conditional";
}

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::L2Ball:
      return "l2-ball";
    case Metric::IntervalPerAxis:
      return "interval";
    case Metric::OneSided:
      return "one-sided";
  }
  return "?";
}

inline Mode parse_mode(std::string_view s) {
  if (s == "entropy") return Mode::Entropy;
  if (s == "conditional" || s == "conditional-entropy") return Mode::ConditionalEntropy;
  throw UsageError("unknown mode '" + std::string(s) + "'");
}

inline Metric parse_metric(std::string_view s) {
  if (s == "l2-ball") return Metric::L2Ball;
  if (s == "interval") return Metric::IntervalPerAxis;
  if (s == "one-sided") return Metric::OneSided;
  throw UsageError("unknown metric '" + std::string(s) + "'");
}

/// A proposed particle together with the log Metropolis-Hastings ratio for the
/// unconstrained target. -inf marks a proposal outside the support.
template <class Particle>
struct Proposal {
  Particle particle;
  double log_accept = 0.0;
};

/// Contract for a target distribution.
///
/// The model draws and perturbs particles and measures their distance to a
/// reference; the sampler owns accept/reject and the distance constraint.
/// Models are immutable after construction and all randomness comes from the
/// Rng argument.
template <class M>
concept TargetModel = requires(const M& m, const typename M::Particle& p, Rng& rng, Mode mode) {
  typename M::Particle;
  { m.name() } -> std::convertible_to<std::string>;
  { m.geometry() } -> std::same_as<Geometry>;
  { m.supports(mode) } -> std::same_as<bool>;
  { m.draw_reference(rng) } -> std::same_as<typename M::Particle>;
  { m.explore(p, rng, mode, p) } -> std::same_as<Proposal<typename M::Particle>>;
  { m.distance(p, p) } -> std::same_as<double>;
  { m.summary(p) } -> std::same_as<std::vector<double>>;
};

/// Models that can draw exactly from the constrained distribution
/// {d(x, ref) < d_max}, bypassing MCMC. Used by the oracle toys.
template <class M>
concept PerfectResampler =
    TargetModel<M> && requires(const M& m, const typename M::Particle& p, Rng& rng) {
      { m.perfect_resampling() } -> std::same_as<bool>;
      { m.draw_constrained(rng, p, 1.0) } -> std::same_as<typename M::Particle>;
    };

/// One Metropolis step against the unconstrained target.
template <TargetModel M>
bool metropolis_step(const M& model, typename M::Particle& current, Rng& rng, Mode mode,
                     const typename M::Particle& reference) {
  auto proposal = model.explore(current, rng, mode, reference);
  if (!(proposal.log_accept >= 0.0)) {
    if (proposal.log_accept == -INFINITY || std::isnan(proposal.log_accept)) return false;
    if (std::log(rng.uniform()) >= proposal.log_accept) return false;
  }
  current = std::move(proposal.particle);
  return true;
}

/// Draws one initial NS particle.
///
/// Entropy mode draws from the model distribution, ignoring the reference.
/// Conditional mode starts at the reference (its parameters are a perfect
/// posterior sample for its own data) and runs `steps` posterior-kernel steps
/// with the data clamped.
template <TargetModel M>
typename M::Particle draw_initial(const M& model, Rng& rng, Mode mode,
                                  const typename M::Particle& reference, std::size_t steps) {
  if (!model.supports(mode)) {
    throw UnsupportedMode("model '" + std::string(model.name()) + "' does not support " +
                          std::string(to_string(mode)) + " mode");
  }
  if (mode == Mode::Entropy) return model.draw_reference(rng);
  typename M::Particle p = reference;
  for (std::size_t i = 0; i < steps; ++i) metropolis_step(model, p, rng, mode, reference);
  return p;
}

/// log N(x; mean, sd^2) up to the additive -0.5 ln(2 pi) constant.
inline double log_normal_kernel(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd);
}

}  // namespace infodepth

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "infodepth/model_api.hpp"
#include "infodepth/rng.hpp"

namespace infodepth::models {

enum class Schedule { Even, Uneven };

/// Observation times on [0, 1]: evenly spaced including both endpoints, or
/// t_i = ((i - 1/2) / n)^3, bunched near the start.
inline std::vector<double> observation_times(Schedule schedule, std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i);
    if (schedule == Schedule::Even) {
      t[i] = n == 1 ? 0.0 : k / static_cast<double>(n - 1);
    } else {
      const double s = (k + 0.5) / static_cast<double>(n);
      t[i] = s * s * s;
    }
  }
  return t;
}

/// Noisy sinusoid y(t) = A sin(2 pi t / T + phi) with T = 10^tau, observed at
/// a fixed schedule.
///
/// Priors: ln A ~ Normal(0, 0.1^2), tau ~ Uniform(-1, 0), phi ~ Uniform(0, 2 pi).
/// Data: Y_i ~ Normal(y(t_i), noise_sd^2). The distance is |tau - tau_ref|.
/// Conditional mode clamps Y to the reference data and explores the posterior
/// over (A, tau, phi) one parameter at a time with heavy-tailed steps.
class SinusoidModel {
 public:
  struct Particle {
    double log_amp = 0.0;
    double tau = -0.5;
    double phase = 0.0;
    std::vector<double> y;
    double log_lik = 0.0;  ///< cached log p(y | params), up to a constant
  };

  enum class Move { LogAmp, Tau, Phase, ResampleData };

  explicit SinusoidModel(Schedule schedule = Schedule::Even, std::size_t n = 101,
                         double noise_sd = 0.1, double log_amp_sd = 0.1)
      : schedule_(schedule),
        times_(observation_times(schedule, n)),
        noise_sd_(noise_sd),
        log_amp_sd_(log_amp_sd) {}

  std::string name() const {
    return schedule_ == Schedule::Even ? "sinusoid-even" : "sinusoid-uneven";
  }
  Geometry geometry() const { return {1, Metric::IntervalPerAxis}; }
  bool supports(Mode) const { return true; }
  const std::vector<double>& times() const { return times_; }
  double noise_sd() const { return noise_sd_; }

  double signal(double log_amp, double tau, double phase, double t) const {
    const double period = std::pow(10.0, tau);
    return std::exp(log_amp) * std::sin(2.0 * std::numbers::pi * t / period + phase);
  }

  double log_likelihood(double log_amp, double tau, double phase,
                        const std::vector<double>& y) const {
    const double amp = std::exp(log_amp);
    const double omega = 2.0 * std::numbers::pi / std::pow(10.0, tau);
    double ss = 0.0;
    for (std::size_t i = 0; i < times_.size(); ++i) {
      const double r = y[i] - amp * std::sin(omega * times_[i] + phase);
      ss += r * r;
    }
    return -0.5 * ss / (noise_sd_ * noise_sd_);
  }

  double log_prior(double log_amp, double tau) const {
    if (tau < -1.0 || tau > 0.0) return -INFINITY;
    return log_normal_kernel(log_amp, 0.0, log_amp_sd_);
  }

  Particle draw_reference(Rng& rng) const {
    Particle p;
    p.log_amp = log_amp_sd_ * rng.normal();
    p.tau = -1.0 + rng.uniform();
    p.phase = 2.0 * std::numbers::pi * rng.uniform();
    p.y.resize(times_.size());
    for (std::size_t i = 0; i < times_.size(); ++i) {
      p.y[i] = signal(p.log_amp, p.tau, p.phase, times_[i]) + noise_sd_ * rng.normal();
    }
    p.log_lik = log_likelihood(p.log_amp, p.tau, p.phase, p.y);
    return p;
  }

  /// Entropy mode explores the joint prior over (params, Y); conditional mode
  /// is the posterior kernel with Y fixed at the reference data.
  Proposal<Particle> explore(const Particle& p, Rng& rng, Mode mode, const Particle& ref) const {
    if (mode == Mode::ConditionalEntropy) {
      return propose(p, rng, static_cast<Move>(rng.index(3)), ref.y);
    }
    return propose(p, rng, static_cast<Move>(rng.index(4)), p.y);
  }

  /// One move of the given kind against data `y`.
  Proposal<Particle> propose(const Particle& p, Rng& rng, Move kind,
                             const std::vector<double>& y) const {
    if (kind == Move::ResampleData) {
      Proposal<Particle> out{p, 0.0};
      Particle& q = out.particle;
      const double u = rng.uniform();
      const auto k = static_cast<std::size_t>(std::ceil(static_cast<double>(q.y.size()) * u * u));
      for (std::size_t j = 0; j < std::max<std::size_t>(k, 1); ++j) {
        const std::size_t i = rng.index(q.y.size());
        q.y[i] = signal(q.log_amp, q.tau, q.phase, times_[i]) + noise_sd_ * rng.normal();
      }
      q.log_lik = log_likelihood(q.log_amp, q.tau, q.phase, q.y);
      return out;
    }
    return step(p, kind, rng.heavy_tailed(), y);
  }

  /// Moves one parameter by `delta` in units of its prior width (0.1 for
  /// ln A, 1 for tau, 2 pi for phi) and scores the move against `y`.
  Proposal<Particle> step(const Particle& p, Move kind, double delta,
                          const std::vector<double>& y) const {
    Proposal<Particle> out{p, 0.0};
    Particle& q = out.particle;
    switch (kind) {
      case Move::LogAmp:
        q.log_amp += log_amp_sd_ * delta;
        break;
      case Move::Tau:
        q.tau += delta;
        if (q.tau < -1.0 || q.tau > 0.0) {
          out.log_accept = -INFINITY;
          return out;
        }
        break;
      case Move::Phase:
        q.phase = 2.0 * std::numbers::pi * wrap_unit(q.phase / (2.0 * std::numbers::pi) + delta);
        break;
      case Move::ResampleData:
        throw UsageError("ResampleData is not a parameter step");
    }
    q.log_lik = log_likelihood(q.log_amp, q.tau, q.phase, y);
    out.log_accept = log_prior(q.log_amp, q.tau) - log_prior(p.log_amp, p.tau) + q.log_lik -
                     log_likelihood_cached(p, y);
    return out;
  }

  double distance(const Particle& p, const Particle& ref) const { return std::abs(p.tau - ref.tau); }
  double scalar(const Particle& p) const { return p.tau; }
  std::vector<double> summary(const Particle& p) const {
    return {std::exp(p.log_amp), p.tau, p.phase};
  }

 private:
  // the cache is valid when p carries the data it is scored against
  double log_likelihood_cached(const Particle& p, const std::vector<double>& y) const {
    if (&y == &p.y || p.y == y) return p.log_lik;
    return log_likelihood(p.log_amp, p.tau, p.phase, y);
  }

  Schedule schedule_;
  std::vector<double> times_;
  double noise_sd_;
  double log_amp_sd_;
};

}  // namespace infodepth::models

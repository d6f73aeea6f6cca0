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

/// Joint prior over a mean and a dataset:
/// mu ~ Normal(0, prior_sd^2), x_i | mu ~ Normal(mu, noise_sd^2), i = 1..n.
///
/// The distance is Euclidean in the data only, so descents measure the
/// marginal distribution of the dataset; mu is a latent variable that lets
/// MCMC move through dataset space.
class NormalMeanModel {
 public:
  struct Particle {
    double mu = 0.0;
    std::vector<double> x;
  };

  enum class Move { ShiftMean, ShiftMeanAndData, ResampleSubset, NudgeOne };
  static constexpr std::size_t kMoveKinds = 4;

  explicit NormalMeanModel(std::size_t n = 100, double prior_sd = 10.0, double noise_sd = 1.0)
      : n_(n), prior_sd_(prior_sd), noise_sd_(noise_sd) {}

  std::string name() const { return "normal-mean"; }
  Geometry geometry() const { return {n_, Metric::L2Ball}; }
  bool supports(Mode mode) const { return mode == Mode::Entropy; }
  std::size_t size() const { return n_; }

  Particle draw_reference(Rng& rng) const {
    Particle p;
    p.mu = prior_sd_ * rng.normal();
    p.x.resize(n_);
    for (auto& xi : p.x) xi = p.mu + noise_sd_ * rng.normal();
    return p;
  }

  Proposal<Particle> explore(const Particle& p, Rng& rng, Mode, const Particle&) const {
    return propose(p, rng, static_cast<Move>(rng.index(kMoveKinds)));
  }

  /// A specific proposal kind, exposed for per-kind tests.
  Proposal<Particle> propose(const Particle& p, Rng& rng, Move kind) const {
    Proposal<Particle> out{p, 0.0};
    Particle& q = out.particle;
    switch (kind) {
      case Move::ShiftMean: {
        q.mu = p.mu + prior_sd_ * rng.heavy_tailed();
        double sum = 0.0;
        for (double xi : p.x) sum += xi;
        const double n = static_cast<double>(n_);
        // sum_i [(x_i - mu)^2 - (x_i - mu')^2] / (2 s^2)
        const double lik = ((q.mu - p.mu) * (2.0 * sum - n * (q.mu + p.mu))) /
                           (2.0 * noise_sd_ * noise_sd_);
        out.log_accept = log_prior_ratio(p.mu, q.mu) + lik;
        break;
      }
      case Move::ShiftMeanAndData: {
        // the likelihood depends on x - mu only, and the shift has unit Jacobian
        const double delta = prior_sd_ * rng.heavy_tailed();
        q.mu = p.mu + delta;
        for (auto& xi : q.x) xi += delta;
        out.log_accept = log_prior_ratio(p.mu, q.mu);
        break;
      }
      case Move::ResampleSubset: {
        const double u = rng.uniform();
        const auto k = static_cast<std::size_t>(std::ceil(static_cast<double>(n_) * u * u));
        for (std::size_t j = 0; j < std::max<std::size_t>(k, 1); ++j) {
          q.x[rng.index(n_)] = p.mu + noise_sd_ * rng.normal();
        }
        break;
      }
      case Move::NudgeOne: {
        const std::size_t i = rng.index(n_);
        q.x[i] = p.x[i] + noise_sd_ * rng.heavy_tailed();
        out.log_accept =
            log_normal_kernel(q.x[i], p.mu, noise_sd_) - log_normal_kernel(p.x[i], p.mu, noise_sd_);
        break;
      }
    }
    return out;
  }

  double distance(const Particle& p, const Particle& ref) const {
    double ss = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double d = p.x[i] - ref.x[i];
      ss += d * d;
    }
    return std::sqrt(ss);
  }

  std::vector<double> summary(const Particle& p) const {
    double sum = 0.0;
    for (double xi : p.x) sum += xi;
    return {p.mu, sum};
  }

  /// Closed-form H(x) = H(x | mu) + I(mu; x) in nats.
  double true_entropy() const {
    const double n = static_cast<double>(n_);
    const double s2 = noise_sd_ * noise_sd_;
    const double given_mu = 0.5 * n * std::log(2.0 * std::numbers::pi * std::numbers::e * s2);
    const double info = 0.5 * std::log1p(n * prior_sd_ * prior_sd_ / s2);
    return given_mu + info;
  }

 private:
  double log_prior_ratio(double mu, double mu_new) const {
    return log_normal_kernel(mu_new, 0.0, prior_sd_) - log_normal_kernel(mu, 0.0, prior_sd_);
  }

  std::size_t n_;
  double prior_sd_;
  double noise_sd_;
};

}  // namespace infodepth::models

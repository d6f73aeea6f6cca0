#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "infodepth/model_api.hpp"
#include "infodepth/rng.hpp"

namespace infodepth::models {

/// ln(sum exp(v)).
inline double log_sum_exp(std::span<const double> v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (std::isinf(m)) return m;
  double s = 0.0;
  for (double e : v) s += std::exp(e - m);
  return m + std::log(s);
}

/// Pareto data with x_min = 1 and unknown slope: ln alpha ~ Normal(0, 1),
/// p(x | alpha) = prod alpha / x_i^(alpha + 1).
///
/// Data are stored as ln x_i so very heavy tails cannot overflow. The first
/// half sums to y_tot and the second to z_tot; the marginal target measures
/// |ln y_tot - ln y_tot,ref|, the joint target the Euclidean distance in
/// (ln y_tot, ln z_tot).
class ParetoModel {
 public:
  enum class Target { Marginal, Joint };
  enum class Move { RescaleAlpha, ResampleSubset, NudgeOne };

  struct Particle {
    double log_alpha = 0.0;
    std::vector<double> log_x;
    double log_y_tot = 0.0;
    double log_z_tot = 0.0;
  };

  explicit ParetoModel(Target target = Target::Marginal, std::size_t n = 100)
      : target_(target), n_(n) {}

  std::string name() const {
    return target_ == Target::Marginal ? "pareto-marginal" : "pareto-joint";
  }
  Geometry geometry() const {
    return target_ == Target::Marginal ? Geometry{1, Metric::IntervalPerAxis}
                                       : Geometry{2, Metric::L2Ball};
  }
  bool supports(Mode mode) const { return mode == Mode::Entropy; }
  Target target() const { return target_; }

  Particle draw_reference(Rng& rng) const {
    Particle p;
    p.log_alpha = rng.normal();
    const double alpha = std::exp(p.log_alpha);
    p.log_x.resize(n_);
    for (auto& lx : p.log_x) lx = -std::log1p(-rng.uniform()) / alpha;
    update_totals(p);
    return p;
  }

  Proposal<Particle> explore(const Particle& p, Rng& rng, Mode, const Particle&) const {
    return propose(p, rng, static_cast<Move>(rng.index(3)));
  }

  /// One move of the given kind. Each x_i has the uniform quantile
  /// u_i = x_i^(-alpha); in (ln alpha, u) coordinates the target is the prior
  /// on ln alpha times a flat density, which gives the acceptance ratios below.
  Proposal<Particle> propose(const Particle& p, Rng& rng, Move kind) const {
    Proposal<Particle> out{p, 0.0};
    Particle& q = out.particle;
    const double alpha = std::exp(p.log_alpha);
    switch (kind) {
      case Move::RescaleAlpha:
        return rescale(p, p.log_alpha + rng.heavy_tailed());
      case Move::ResampleSubset: {
        const double u = rng.uniform();
        const auto k = static_cast<std::size_t>(std::ceil(static_cast<double>(n_) * u * u));
        for (std::size_t j = 0; j < std::max<std::size_t>(k, 1); ++j) {
          q.log_x[rng.index(n_)] = -std::log1p(-rng.uniform()) / alpha;
        }
        break;
      }
      case Move::NudgeOne: {
        // heavy-tailed step on the quantile, wrapped into (0, 1)
        const std::size_t i = rng.index(n_);
        const double quantile = std::exp(-alpha * p.log_x[i]);
        const double moved = wrap_unit(quantile + rng.heavy_tailed());
        if (moved <= 0.0) {
          out.log_accept = -std::numeric_limits<double>::infinity();
          return out;
        }
        q.log_x[i] = -std::log(moved) / alpha;
        break;
      }
    }
    update_totals(q);
    return out;
  }

  /// Moves ln alpha to `log_alpha` and maps x_i -> x_i^(alpha / alpha'),
  /// which keeps every quantile. The Jacobian cancels the likelihood change,
  /// leaving the prior ratio on ln alpha.
  Proposal<Particle> rescale(const Particle& p, double log_alpha) const {
    Proposal<Particle> out{p, 0.0};
    Particle& q = out.particle;
    q.log_alpha = log_alpha;
    const double ratio = std::exp(p.log_alpha - q.log_alpha);
    for (auto& lx : q.log_x) lx *= ratio;
    out.log_accept = 0.5 * (p.log_alpha * p.log_alpha - q.log_alpha * q.log_alpha);
    update_totals(q);
    return out;
  }

  double distance(const Particle& p, const Particle& ref) const {
    const double dy = p.log_y_tot - ref.log_y_tot;
    if (target_ == Target::Marginal) return std::abs(dy);
    const double dz = p.log_z_tot - ref.log_z_tot;
    return std::hypot(dy, dz);
  }
  double scalar(const Particle& p) const { return p.log_y_tot; }
  std::vector<double> summary(const Particle& p) const {
    return {std::exp(p.log_alpha), p.log_y_tot, p.log_z_tot};
  }

  void update_totals(Particle& p) const {
    const std::span<const double> all(p.log_x);
    const std::size_t half = n_ / 2;
    p.log_y_tot = log_sum_exp(all.first(half));
    p.log_z_tot = log_sum_exp(all.subspan(half));
  }

 private:
  Target target_;
  std::size_t n_;
};

}  // namespace infodepth::models

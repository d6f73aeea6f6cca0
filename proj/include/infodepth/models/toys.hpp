#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "infodepth/model_api.hpp"
#include "infodepth/rng.hpp"

// One-dimensional oracle models with closed-form interval probabilities.
// Both optionally replace MCMC by exact draws from the constrained interval.

namespace infodepth::models {

/// Uniform[0, 1] with distance |x - x_ref|.
class UniformToy {
 public:
  using Particle = double;

  explicit UniformToy(bool perfect = false) : perfect_(perfect) {}

  std::string name() const { return "uniform-toy"; }
  Geometry geometry() const { return {1, Metric::IntervalPerAxis}; }
  bool supports(Mode mode) const { return mode == Mode::Entropy; }
  bool perfect_resampling() const { return perfect_; }

  Particle draw_reference(Rng& rng) const { return rng.uniform(); }

  Proposal<Particle> explore(const Particle& x, Rng& rng, Mode, const Particle&) const {
    const double y = x + rng.heavy_tailed();
    if (y < 0.0 || y > 1.0) return {x, -std::numeric_limits<double>::infinity()};
    return {y, 0.0};
  }

  double distance(const Particle& x, const Particle& ref) const { return std::abs(x - ref); }
  double scalar(const Particle& x) const { return x; }
  std::vector<double> summary(const Particle& x) const { return {x}; }

  /// Exact draw from [lo, hi] intersected with the support.
  Particle draw_in_interval(Rng& rng, double lo, double hi) const {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    return lo + (hi - lo) * rng.uniform();
  }

  Particle draw_constrained(Rng& rng, const Particle& ref, double d_max) const {
    return draw_in_interval(rng, ref - d_max, ref + d_max);
  }

  /// P(|x - ref| < r).
  static double interval_probability(double ref, double r) {
    return std::min(ref + r, 1.0) - std::max(ref - r, 0.0);
  }

 private:
  bool perfect_;
};

/// Standard normal with distance |x - x_ref|.
class GaussianToy {
 public:
  using Particle = double;

  explicit GaussianToy(bool perfect = false) : perfect_(perfect) {}

  std::string name() const { return "gaussian-toy"; }
  Geometry geometry() const { return {1, Metric::IntervalPerAxis}; }
  bool supports(Mode mode) const { return mode == Mode::Entropy; }
  bool perfect_resampling() const { return perfect_; }

  Particle draw_reference(Rng& rng) const { return rng.normal(); }

  Proposal<Particle> explore(const Particle& x, Rng& rng, Mode, const Particle&) const {
    const double y = x + rng.heavy_tailed();
    return {y, 0.5 * (x * x - y * y)};
  }

  double distance(const Particle& x, const Particle& ref) const { return std::abs(x - ref); }
  double scalar(const Particle& x) const { return x; }
  std::vector<double> summary(const Particle& x) const { return {x}; }

  /// Inverse-CDF draw from [lo, hi]; the upper tail uses the complement.
  Particle draw_in_interval(Rng& rng, double lo, double hi) const {
    const boost::math::normal_distribution<double> n01;
    const double u = rng.uniform();
    if (lo > 0.0) {
      const double qlo = boost::math::cdf(boost::math::complement(n01, lo));
      const double qhi = boost::math::cdf(boost::math::complement(n01, hi));
      const double q = std::clamp(qlo - u * (qlo - qhi), qhi, qlo);
      if (q <= 0.0) return lo;
      return boost::math::quantile(boost::math::complement(n01, q));
    }
    const double plo = std::isinf(lo) ? 0.0 : boost::math::cdf(n01, lo);
    const double phi = std::isinf(hi) ? 1.0 : boost::math::cdf(n01, hi);
    const double p = std::clamp(plo + u * (phi - plo), plo, phi);
    if (p <= 0.0) return lo;
    if (p >= 1.0) return hi;
    return boost::math::quantile(n01, p);
  }

  Particle draw_constrained(Rng& rng, const Particle& ref, double d_max) const {
    return draw_in_interval(rng, ref - d_max, ref + d_max);
  }

  /// P(|x - ref| < r).
  static double interval_probability(double ref, double r) {
    const boost::math::normal_distribution<double> n01;
    return boost::math::cdf(n01, ref + r) - boost::math::cdf(n01, ref - r);
  }

  /// Differential entropy of N(0, 1), 0.5 ln(2 pi e).
  static double entropy() { return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e); }

 private:
  bool perfect_;
};

}  // namespace infodepth::models

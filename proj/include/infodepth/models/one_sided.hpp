#pragma once

#include <concepts>
#include <string>
#include <vector>

#include "infodepth/model_api.hpp"
#include "infodepth/precisional.hpp"

namespace infodepth::models {

/// 1-D models that expose the coordinate their distance acts on.
template <class M>
concept ScalarProjected = TargetModel<M> && requires(const M& m, const typename M::Particle& p) {
  { m.scalar(p) } -> std::convertible_to<double>;
};

/// Replaces a 1-D model's distance by the one-sided distance, so descents
/// estimate -ln P(x_ref - r < x <= x_ref) and hence precisional entropies.
template <ScalarProjected Inner>
class OneSided {
 public:
  using Particle = typename Inner::Particle;

  explicit OneSided(Inner inner) : inner_(std::move(inner)) {}

  const Inner& inner() const { return inner_; }

  std::string name() const { return inner_.name(); }
  Geometry geometry() const { return {1, Metric::OneSided}; }
  bool supports(Mode mode) const { return inner_.supports(mode); }

  Particle draw_reference(Rng& rng) const { return inner_.draw_reference(rng); }
  Proposal<Particle> explore(const Particle& p, Rng& rng, Mode mode, const Particle& ref) const {
    return inner_.explore(p, rng, mode, ref);
  }
  double distance(const Particle& p, const Particle& ref) const {
    return one_sided_distance(inner_.scalar(p), inner_.scalar(ref));
  }
  double scalar(const Particle& p) const { return inner_.scalar(p); }
  std::vector<double> summary(const Particle& p) const { return inner_.summary(p); }

  bool perfect_resampling() const
    requires PerfectResampler<Inner>
  {
    return inner_.perfect_resampling();
  }

  /// Exact draw from [x_ref - d_max, x_ref]; only for finite d_max.
  Particle draw_constrained(Rng& rng, const Particle& ref, double d_max) const
    requires PerfectResampler<Inner>
  {
    const double x = inner_.scalar(ref);
    return inner_.draw_in_interval(rng, x - d_max, x);
  }

 private:
  Inner inner_;
};

}  // namespace infodepth::models

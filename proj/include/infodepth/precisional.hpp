#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "infodepth/errors.hpp"
#include "infodepth/estimator.hpp"
#include "infodepth/model_api.hpp"
#include "infodepth/sampler.hpp"

// Entropies of precisional questions: "what is x to within a tolerance?",
// built from overlapping windows rather than from x itself.

namespace infodepth {

/// -p ln p with 0 ln 0 = 0.
inline double plogp_term(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

/// Finite distribution over ordered values.
class DiscretePmf {
 public:
  DiscretePmf() = default;
  explicit DiscretePmf(std::vector<std::pair<double, double>> entries)
      : entries_(std::move(entries)) {
    double total = 0.0;
    for (const auto& [value, p] : entries_) {
      if (!(p >= 0.0)) throw DomainError("probabilities must be nonnegative");
      total += p;
    }
    if (!entries_.empty() && std::abs(total - 1.0) > 1e-12) {
      throw DomainError("probabilities must sum to 1");
    }
  }

  /// Equal mass on each of `values`.
  static DiscretePmf uniform(std::span<const double> values) {
    std::vector<std::pair<double, double>> e;
    for (double v : values) e.emplace_back(v, 1.0 / static_cast<double>(values.size()));
    return DiscretePmf(std::move(e));
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double probability(std::size_t i) const { return entries_[i].second; }
  double value(std::size_t i) const { return entries_[i].first; }

 private:
  std::vector<std::pair<double, double>> entries_;
};

/// Entropy of "which window of `width` consecutive values holds x?",
/// with windows sliding by one: h(W_1) + sum_k [h(W_k) - h(W_k minus its last value)].
inline double precisional_entropy_discrete(const DiscretePmf& pmf, std::size_t width) {
  if (pmf.empty()) throw DomainError("empty pmf");
  if (width < 1 || width > pmf.size()) throw DomainError("window width must be in [1, size]");
  auto window_mass = [&](std::size_t start, std::size_t len) {
    double m = 0.0;
    for (std::size_t i = start; i < start + len; ++i) m += pmf.probability(i);
    return m;
  };
  double h = plogp_term(window_mass(0, width));
  for (std::size_t start = 1; start + width <= pmf.size(); ++start) {
    h += plogp_term(window_mass(start, width)) - plogp_term(window_mass(start, width - 1));
  }
  return h;
}

/// One-dimensional continuous distribution given by its CDF and density.
struct Cdf1D {
  std::function<double(double)> cdf;
  std::function<double(double)> pdf;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  /// Optional survival function 1 - F, used to avoid cancellation in the upper tail.
  std::function<double(double)> survival{};

  double sf(double x) const { return survival ? survival(x) : 1.0 - cdf(x); }

  /// Mass of [a, b], taking the difference on whichever side is better conditioned.
  double mass(double a, double b) const {
    if (b <= a) return 0.0;
    if (a > 0.0 && survival) return sf(a) - sf(b);
    return cdf(b) - cdf(a);
  }

  static Cdf1D standard_normal() {
    return {[](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); },
            [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); },
            -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            [](double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }};
  }

  static Cdf1D unit_uniform() {
    return {[](double x) { return std::clamp(x, 0.0, 1.0); },
            [](double x) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; }, 0.0, 1.0, {}};
  }
};

struct PrecisionalResult {
  double left = 0.0;   ///< H with the window to the left of x
  double right = 0.0;  ///< H' with the window to the right of x
  double error = 0.0;  ///< combined quadrature error estimate
};

namespace detail {

/// Integrates over the support split at the given breakpoints. Finite pieces
/// use tanh-sinh, which tolerates the logarithmic endpoint singularities of
/// bounded supports; infinite pieces use adaptive Gauss-Kronrod.
inline std::pair<double, double> integrate_support(const std::function<double(double)>& g,
                                                   double lower, double upper,
                                                   std::vector<double> cuts) {
  std::vector<double> nodes{lower};
  std::sort(cuts.begin(), cuts.end());
  // breakpoints closer than rounding noise would leave sliver pieces
  auto apart = [](double a, double b) { return b - a > 1e-12 * std::max(1.0, std::abs(b)); };
  for (double c : cuts) {
    if (c > nodes.back() && apart(nodes.back(), c) && c < upper && apart(c, upper)) {
      nodes.push_back(c);
    }
  }
  nodes.push_back(upper);
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double a = nodes[i];
    const double b = nodes[i + 1];
    double err = 0.0;
    if (std::isfinite(a) && std::isfinite(b)) {
      thread_local boost::math::quadrature::tanh_sinh<double> ts;
      total += ts.integrate(g, a, b, 1e-12, &err);
    } else {
      total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 20, 1e-12,
                                                                             &err);
    }
    error += err;
  }
  return {total, error};
}

}  // namespace detail

inline constexpr double kQuadratureTolerance = 1e-8;

/// Both forms of the continuous precisional entropy:
/// H = -int (1 + ln[F(x) - F(x - r)]) f(x) dx and the right-window H'.
inline PrecisionalResult precisional_entropy_both(const Cdf1D& dist, double r) {
  if (!(r > 0.0)) throw DomainError("precisional entropy needs r > 0");
  auto integrand = [&dist](double a_offset, double b_offset) {
    return [&dist, a_offset, b_offset](double x) {
      const double f = dist.pdf(x);
      if (f == 0.0) return 0.0;
      const double p = dist.mass(x + a_offset, x + b_offset);
      if (p < 1e-300) return 0.0;
      return -(1.0 + std::log(p)) * f;
    };
  };
  std::vector<double> cuts;
  if (std::isfinite(dist.lower)) cuts.push_back(dist.lower + r);
  if (std::isfinite(dist.upper)) cuts.push_back(dist.upper - r);

  const auto [left, e1] =
      detail::integrate_support(integrand(-r, 0.0), dist.lower, dist.upper, cuts);
  const auto [right, e2] =
      detail::integrate_support(integrand(0.0, r), dist.lower, dist.upper, cuts);
  const double error = e1 + e2;
  if (!(error <= kQuadratureTolerance) || !std::isfinite(left) || !std::isfinite(right)) {
    throw NumericalError("precisional quadrature did not converge", error);
  }
  return {left, right, error};
}

/// Continuous precisional entropy, checked against the right-window form.
inline double precisional_entropy_continuous(const Cdf1D& dist, double r) {
  const auto res = precisional_entropy_both(dist, r);
  if (std::abs(res.left - res.right) > 10.0 * kQuadratureTolerance) {
    throw NumericalError("left and right window forms disagree", std::abs(res.left - res.right));
  }
  return res.left;
}

/// Distance that is finite only when x lies at or below the reference, so
/// {d < r} is the interval (x_ref - r, x_ref].
inline double one_sided_distance(double x, double x_ref) {
  const double gap = x_ref - x;
  return gap >= 0.0 ? gap : std::numeric_limits<double>::infinity();
}

/// Precisional entropy from one-sided-distance records: the mean depth
/// estimates E[-ln(F(x) - F(x - r))], which exceeds the precisional entropy by 1.
inline EntropyEstimate precisional_entropy_via_sampler(std::span<const DepthRecord> records,
                                                       double tol) {
  for (const auto& r : records) {
    if (r.geometry.metric != Metric::OneSided) {
      throw ModeMismatch("precisional entropy needs one-sided distance records");
    }
  }
  const auto depth = aggregate(records, tol);
  EntropyEstimate h;
  h.log_volume = -1.0;
  h.value = depth.mean - 1.0;
  h.std_error = depth.std_error;
  h.geometry = {1, Metric::OneSided};
  return h;
}

}  // namespace infodepth

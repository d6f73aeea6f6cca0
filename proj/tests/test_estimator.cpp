#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "infodepth/infodepth.hpp"

using namespace infodepth;
using Catch::Approx;

namespace {

/// A record whose depth at any tolerance in [1e-6, 1) is k / N.
DepthRecord record_with_depth(std::uint64_t rep, std::size_t k, std::size_t n,
                              Mode mode = Mode::Entropy) {
  DepthRecord r;
  r.rep_id = rep;
  r.discarded.assign(k, 1.0);
  r.n_particles = n;
  r.run_tolerance = 1e-6;
  r.mode = mode;
  return r;
}

std::vector<DepthRecord> records_with_depths(const std::vector<std::size_t>& ks, std::size_t n,
                                             Mode mode = Mode::Entropy) {
  std::vector<DepthRecord> out;
  for (std::size_t i = 0; i < ks.size(); ++i) out.push_back(record_with_depth(i, ks[i], n, mode));
  return out;
}

/// Two independent Uniform[0, 1] coordinates with Chebyshev distance, or one
/// of them alone. Test-only model for the independent-pair MI check.
struct UniformPair {
  enum class View { X, Y, Joint };
  struct Particle {
    double x = 0.0;
    double y = 0.0;
  };
  View view = View::Joint;

  std::string name() const { return "uniform-pair"; }
  Geometry geometry() const {
    return view == View::Joint ? Geometry{2, Metric::IntervalPerAxis}
                               : Geometry{1, Metric::IntervalPerAxis};
  }
  bool supports(Mode m) const { return m == Mode::Entropy; }
  Particle draw_reference(Rng& rng) const {
    Particle p;
    p.x = rng.uniform();
    p.y = rng.uniform();
    return p;
  }
  Proposal<Particle> explore(const Particle& p, Rng& rng, Mode, const Particle&) const {
    Particle q = p;
    double& c = rng.index(2) == 0 ? q.x : q.y;
    c += rng.heavy_tailed();
    if (c < 0.0 || c > 1.0) return {p, -INFINITY};
    return {q, 0.0};
  }
  double distance(const Particle& p, const Particle& r) const {
    const double dx = std::abs(p.x - r.x);
    const double dy = std::abs(p.y - r.y);
    switch (view) {
      case View::X:
        return dx;
      case View::Y:
        return dy;
      case View::Joint:
        break;
    }
    return std::max(dx, dy);
  }
  std::vector<double> summary(const Particle& p) const { return {p.x, p.y}; }
};

/// Plug-in MI of a 2-D histogram.
double histogram_mi(const std::vector<std::pair<double, double>>& samples, std::size_t bins) {
  std::vector<double> joint(bins * bins, 0.0);
  std::vector<double> px(bins, 0.0);
  std::vector<double> py(bins, 0.0);
  const double w = 1.0 / static_cast<double>(samples.size());
  for (const auto& [x, y] : samples) {
    const auto i = std::min(bins - 1, static_cast<std::size_t>(x * static_cast<double>(bins)));
    const auto j = std::min(bins - 1, static_cast<std::size_t>(y * static_cast<double>(bins)));
    joint[i * bins + j] += w;
    px[i] += w;
    py[j] += w;
  }
  double mi = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    for (std::size_t j = 0; j < bins; ++j) {
      const double p = joint[i * bins + j];
      if (p > 0.0) mi += p * std::log(p / (px[i] * py[j]));
    }
  }
  return mi;
}

}  // namespace

TEST_CASE("aggregate reports mean and standard error", "[aggregate]") {
  const auto a = aggregate(records_with_depths({1, 2, 3}, 1), 1e-3);
  CHECK(a.mean == Approx(2.0));
  CHECK(a.std_error == Approx(1.0 / std::sqrt(3.0)));
  CHECK(a.reps == 3);

  const auto b = aggregate(records_with_depths({5, 5, 5, 5}, 1), 1e-3);
  CHECK(b.mean == 5.0);
  CHECK(b.std_error == 0.0);
}

TEST_CASE("aggregate refuses cap hits and single records", "[aggregate]") {
  auto records = records_with_depths({3, 4, 5, 6}, 2);
  records[1].terminated_by = Termination::DepthCapHit;
  records[3].terminated_by = Termination::DepthCapHit;
  try {
    (void)aggregate(records, 1e-3);
    FAIL("expected AggregationError");
  } catch (const AggregationError& e) {
    const std::string what = e.what();
    CHECK(what.find('1') != std::string::npos);
    CHECK(what.find('3') != std::string::npos);
  }
  CHECK_THROWS_AS(aggregate(records_with_depths({3}, 2), 1e-3), AggregationError);
}

TEST_CASE("ball log-volumes", "[volume]") {
  // high-dimensional ball used for the 100-point dataset
  CHECK(ball_log_volume({100, Metric::L2Ball}, 0.01) == Approx(-551.758291258112).margin(1e-9));
  CHECK(ball_log_volume({100, Metric::L2Ball}, 0.01) == Approx(-551.76).margin(0.01));
  CHECK(ball_log_volume({1, Metric::IntervalPerAxis}, 1e-5) == Approx(std::log(2e-5)));
  CHECK(ball_log_volume({1, Metric::IntervalPerAxis}, 1e-5) == Approx(-10.820).margin(5e-4));
  CHECK(ball_log_volume({2, Metric::L2Ball}, 1.0) == Approx(std::log(std::numbers::pi)));
  CHECK(ball_log_volume({1, Metric::OneSided}, 0.25) == Approx(std::log(0.25)));
  CHECK_THROWS_AS(ball_log_volume({1, Metric::L2Ball}, 0.0), DomainError);
  CHECK_THROWS_AS(ball_log_volume({1, Metric::L2Ball}, -1.0), DomainError);
}

TEST_CASE("a 1-D ball is an interval", "[volume][property]") {
  for (double r = 1e-6; r < 1e3; r *= 3.7) {
    REQUIRE(ball_log_volume({1, Metric::L2Ball}, r) ==
            Approx(ball_log_volume({1, Metric::IntervalPerAxis}, r)).epsilon(1e-12));
  }
}

TEST_CASE("entropy is depth plus log-volume", "[entropy]") {
  // published depth for 100 normal data at r = 0.01
  const DepthEstimate depth{698.25, 0.34, 1000};
  const auto h = differential_entropy(depth, {100, Metric::L2Ball}, 0.01);
  CHECK(h.value == Approx(146.49).margin(0.01));
  CHECK(h.std_error == 0.34);
  CHECK(h.value - depth.mean == ball_log_volume({100, Metric::L2Ball}, 0.01));

  const auto zero = differential_entropy({0.0, 0.0, 10}, {1, Metric::OneSided}, 1.0);
  CHECK(zero.value == 0.0);
}

TEST_CASE("conditional entropy needs conditional-mode records", "[entropy]") {
  // published posterior depths of tau for the even and uneven schedules
  const auto even = records_with_depths({5379, 5379}, 1000, Mode::ConditionalEntropy);
  const auto h_even = conditional_entropy(even, 1e-5, {1, Metric::IntervalPerAxis});
  CHECK(h_even.value == Approx(-5.441).margin(5e-4));
  CHECK(0.0 - h_even.value == Approx(5.441).margin(5e-4));

  const auto uneven = records_with_depths({5422, 5422}, 1000, Mode::ConditionalEntropy);
  CHECK(conditional_entropy(uneven, 1e-5, {1, Metric::IntervalPerAxis}).value ==
        Approx(-5.398).margin(5e-4));

  const auto wrong = records_with_depths({5379, 5379}, 1000, Mode::Entropy);
  CHECK_THROWS_AS(conditional_entropy(wrong, 1e-5, {1, Metric::IntervalPerAxis}), ModeMismatch);
}

TEST_CASE("mutual information from three entropies", "[mi]") {
  const EntropyEstimate prior{0.0, 0.0, 0.0, {}};
  const EntropyEstimate h_y{3.0, 0.0, 0.0, {}};
  const EntropyEstimate h_xy{3.0 - 5.441, 0.038, 0.0, {}};
  const auto i = mutual_information(prior, h_y, h_xy);
  CHECK(i.value == Approx(5.441));
  CHECK(i.std_error == Approx(0.038));

  const EntropyEstimate h{2.5, 0.1, 0.0, {}};
  CHECK(mutual_information(h, h, h).value == 2.5);

  for (double c = -3.0; c < 3.0; c += 0.7) {
    const EntropyEstimate shifted_x{2.5 + c, 0.1, 0.0, {}};
    const EntropyEstimate shifted_xy{1.0 + c, 0.2, 0.0, {}};
    const EntropyEstimate x{2.5, 0.1, 0.0, {}};
    const EntropyEstimate xy{1.0, 0.2, 0.0, {}};
    REQUIRE(mutual_information(shifted_x, h, shifted_xy).value ==
            Approx(mutual_information(x, h, xy).value));
  }
}

TEST_CASE("paired and unpaired MI agree in mean", "[mi]") {
  const auto x = records_with_depths({20, 25, 31, 18, 22}, 10);
  const auto y = records_with_depths({11, 14, 9, 12, 13}, 10);
  const auto xy = records_with_depths({29, 36, 37, 28, 33}, 10);
  const Geometry g1{1, Metric::IntervalPerAxis};
  const Geometry g2{2, Metric::L2Ball};
  const RecordSet sx{x, 0.01, g1}, sy{y, 0.01, g1}, sxy{xy, 0.01, g2};
  const auto paired = mutual_information_paired(sx, sy, sxy);
  const auto unpaired = mutual_information_unpaired(sx, sy, sxy);
  CHECK(paired.value == Approx(unpaired.value).epsilon(1e-12));

  // identical per-rep combinations leave only the volume terms
  const auto same = records_with_depths({10, 10, 10}, 10);
  const auto twice = records_with_depths({20, 20, 20}, 10);
  const RecordSet a{same, 0.01, g1}, ab{twice, 0.01, g2};
  const auto v = mutual_information_paired(a, a, ab);
  CHECK(v.value == Approx(2.0 * ball_log_volume(g1, 0.01) - ball_log_volume(g2, 0.01)));
  CHECK(v.std_error == 0.0);
}

TEST_CASE("pairing requires shared rep ids and no cap hits", "[mi]") {
  const Geometry g{1, Metric::IntervalPerAxis};
  const auto x = records_with_depths({1, 2, 3}, 1);
  auto y = records_with_depths({1, 2, 3}, 1);
  y[2].rep_id = 7;
  CHECK_THROWS_AS(mutual_information_paired({x, 0.01, g}, {y, 0.01, g}, {x, 0.01, g}),
                  PairingError);
  const auto shorter = records_with_depths({1, 2}, 1);
  CHECK_THROWS_AS(mutual_information_paired({x, 0.01, g}, {shorter, 0.01, g}, {x, 0.01, g}),
                  PairingError);
  auto capped = records_with_depths({1, 2, 3}, 1);
  capped[0].terminated_by = Termination::DepthCapHit;
  CHECK_THROWS_AS(mutual_information_paired({x, 0.01, g}, {capped, 0.01, g}, {x, 0.01, g}),
                  AggregationError);
}

TEST_CASE("independent coordinates have zero mutual information", "[mi][statistical]") {
  RunConfig cfg;
  cfg.n_particles = 10;
  cfg.mcmc_steps = 100;
  cfg.tolerance = 0.01;
  cfg.reps = 150;
  cfg.master_seed = 77;
  const auto x = run_all(UniformPair{UniformPair::View::X}, cfg);
  const auto y = run_all(UniformPair{UniformPair::View::Y}, cfg);
  const auto xy = run_all(UniformPair{UniformPair::View::Joint}, cfg);
  const Geometry g1{1, Metric::IntervalPerAxis};
  const Geometry g2{2, Metric::IntervalPerAxis};
  const auto mi = mutual_information_paired({x, 0.01, g1}, {y, 0.01, g1}, {xy, 0.01, g2});

  Rng rng(123);
  std::vector<std::pair<double, double>> samples(1'000'000);
  for (auto& s : samples) s = {rng.uniform(), rng.uniform()};
  const double oracle = histogram_mi(samples, 20);
  CHECK(oracle < 1e-3);
  CHECK(std::abs(mi.value - oracle) < 4.0 * mi.std_error);
}

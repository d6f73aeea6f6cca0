#include <cmath>
#include <limits>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "infodepth/infodepth.hpp"

using namespace infodepth;
using Catch::Approx;

namespace {

/// Closed form for Uniform(0, 1) with r <= 1: the window mass is min(x, r),
/// so H = -(1 - r)(1 + ln r) - r ln r = r - 1 - ln r.
double uniform_precisional(double r) { return r - 1.0 - std::log(r); }

}  // namespace

TEST_CASE("discrete precisional entropy", "[precisional][discrete]") {
  const DiscretePmf point({{3.0, 1.0}});
  CHECK(precisional_entropy_discrete(point, 1) == 0.0);

  std::vector<double> values;
  for (int i = 0; i < 10; ++i) values.push_back(i);
  const auto uniform = DiscretePmf::uniform(values);
  CHECK(precisional_entropy_discrete(uniform, 3) == Approx(0.6363216529745059).epsilon(1e-12));
  CHECK(precisional_entropy_discrete(uniform, 10) == Approx(0.0).margin(1e-15));
  CHECK(precisional_entropy_discrete(uniform, 1) == Approx(std::log(10.0)));

  CHECK_THROWS_AS(precisional_entropy_discrete(DiscretePmf{}, 1), DomainError);
  CHECK_THROWS_AS(precisional_entropy_discrete(uniform, 11), DomainError);
  CHECK_THROWS_AS(DiscretePmf({{0.0, 0.5}, {1.0, 0.4}}), DomainError);

  const DiscretePmf with_zero({{0.0, 0.5}, {1.0, 0.0}, {2.0, 0.5}});
  CHECK(std::isfinite(precisional_entropy_discrete(with_zero, 2)));
}

TEST_CASE("width-one windows give the Shannon entropy", "[precisional][discrete][property]") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.index(20);
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& x : w) {
      x = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
      total += x;
    }
    if (total == 0.0) continue;
    std::vector<std::pair<double, double>> e;
    double shannon = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double p = w[i] / total;
      e.emplace_back(static_cast<double>(i), p);
      if (p > 0.0) shannon -= p * std::log(p);
    }
    REQUIRE(precisional_entropy_discrete(DiscretePmf(e), 1) == Approx(shannon).margin(1e-12));
  }
}

TEST_CASE("continuous precisional entropy of the uniform", "[precisional][continuous]") {
  const auto u = Cdf1D::unit_uniform();
  CHECK(precisional_entropy_continuous(u, 0.1) == Approx(1.40259).margin(1e-4));
  CHECK(precisional_entropy_continuous(u, 0.1) == Approx(1.402585092994046).margin(1e-8));
  for (double r : {0.01, 0.05, 0.3, 0.7}) {
    CHECK(precisional_entropy_continuous(u, r) == Approx(uniform_precisional(r)).margin(1e-8));
  }
  CHECK(precisional_entropy_continuous(u, 1.0) == Approx(0.0).margin(1e-8));
  CHECK(precisional_entropy_continuous(u, 2.0) == Approx(0.0).margin(1e-8));
  CHECK_THROWS_AS(precisional_entropy_continuous(u, 0.0), DomainError);
  CHECK_THROWS_AS(precisional_entropy_continuous(u, -0.5), DomainError);
}

TEST_CASE("continuous precisional entropy of the standard normal", "[precisional][continuous]") {
  const auto n = Cdf1D::standard_normal();
  // high-precision reference quadrature
  CHECK(precisional_entropy_continuous(n, 0.5) == Approx(1.1428034745844206).margin(1e-7));
  CHECK(precisional_entropy_continuous(n, 1.0) == Approx(0.5358740076479981).margin(1e-7));
  CHECK(precisional_entropy_continuous(n, 3.0) == Approx(0.0206552936801205).margin(1e-7));
  CHECK(precisional_entropy_continuous(n, 10.0) == Approx(0.0).margin(1e-10));
  CHECK(precisional_entropy_continuous(n, 40.0) == Approx(0.0).margin(1e-10));
}

TEST_CASE("left and right window forms agree", "[precisional][continuous][property]") {
  for (const auto& dist : {Cdf1D::standard_normal(), Cdf1D::unit_uniform()}) {
    for (double r = 0.02; r < 3.0; r *= 1.6) {
      const auto both = precisional_entropy_both(dist, r);
      REQUIRE(both.left == Approx(both.right).margin(1e-6));
    }
  }
}

TEST_CASE("precisional entropy is nonincreasing in r", "[precisional][continuous][property]") {
  const auto u = Cdf1D::unit_uniform();
  const auto n = Cdf1D::standard_normal();
  double prev_u = std::numeric_limits<double>::infinity();
  double prev_n = std::numeric_limits<double>::infinity();
  for (double r = 0.01; r <= 1.0; r += 0.01) {
    const double hu = precisional_entropy_continuous(u, r);
    const double hn = precisional_entropy_continuous(n, r);
    REQUIRE(hu <= prev_u + 1e-9);
    REQUIRE(hn <= prev_n + 1e-9);
    prev_u = hu;
    prev_n = hn;
  }
}

TEST_CASE("one-sided distance", "[precisional]") {
  CHECK(one_sided_distance(0.3, 0.5) == Approx(0.2));
  CHECK(one_sided_distance(0.5, 0.5) == 0.0);
  CHECK(std::isinf(one_sided_distance(0.7, 0.5)));
}

TEST_CASE("sampler route needs one-sided records", "[precisional]") {
  std::vector<DepthRecord> records(3);
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].rep_id = i;
    records[i].discarded.assign(25, 1.0);
    records[i].n_particles = 10;
    records[i].run_tolerance = 0.1;
    records[i].geometry = {1, Metric::OneSided};
  }
  const auto h = precisional_entropy_via_sampler(records, 0.1);
  CHECK(h.value == Approx(1.5));
  records[1].geometry = {1, Metric::IntervalPerAxis};
  CHECK_THROWS_AS(precisional_entropy_via_sampler(records, 0.1), ModeMismatch);
}

TEST_CASE("sampler route matches quadrature on the uniform", "[precisional][statistical]") {
  RunConfig cfg;
  cfg.n_particles = 10;
  cfg.mcmc_steps = 100;
  cfg.tolerance = 0.1;
  cfg.reps = 400;
  cfg.master_seed = 21;
  const models::OneSided<models::UniformToy> model{models::UniformToy{}};
  const auto records = run_all(model, cfg);
  const auto h = precisional_entropy_via_sampler(records, 0.1);
  const double exact = precisional_entropy_continuous(Cdf1D::unit_uniform(), 0.1);
  CHECK(std::abs(h.value - exact) < 4.0 * h.std_error);
}

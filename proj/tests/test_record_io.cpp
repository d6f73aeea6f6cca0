#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "infodepth/infodepth.hpp"

using namespace infodepth;

namespace {

std::string serialize(const RecordFile& f) {
  std::ostringstream os;
  write_record_file(os, f);
  return os.str();
}

std::string body(const std::vector<DepthRecord>& records) {
  std::ostringstream os;
  for (const auto& r : records) write_record(os, r);
  return os.str();
}

RecordFile sample_file() {
  RecordFile f;
  f.config.model_name = "gaussian-toy";
  f.config.tolerance = 0.01;
  f.config.n_particles = 3;
  f.config.reps = 3;
  f.config.master_seed = 99;
  f.geometry = {1, Metric::IntervalPerAxis};
  DepthRecord a;
  a.rep_id = 0;
  a.discarded = {std::numeric_limits<double>::infinity(), 2.5, 0.1 + 0.2, 1e-300};
  DepthRecord b;
  b.rep_id = 1;
  DepthRecord c;
  c.rep_id = 2;
  c.discarded = {3.0, 2.0};
  c.terminated_by = Termination::DepthCapHit;
  for (auto* r : {&a, &b, &c}) {
    r->n_particles = 3;
    r->run_tolerance = 0.01;
    r->geometry = f.geometry;
  }
  f.records = {a, b, c};
  return f;
}

}  // namespace

TEST_CASE("record files round-trip exactly", "[record-io]") {
  const RecordFile f = sample_file();
  const std::string text = serialize(f);
  std::istringstream is(text);
  const RecordFile back = read_record_file(is);
  CHECK(back.config == f.config);
  CHECK(back.geometry == f.geometry);
  CHECK(back.records == f.records);
  CHECK(serialize(back) == text);
}

TEST_CASE("descent records round-trip byte for byte", "[record-io][property]") {
  RunConfig cfg;
  cfg.model_name = "uniform-toy";
  cfg.distance = DistanceKind::OneSided;
  cfg.n_particles = 4;
  cfg.mcmc_steps = 30;
  cfg.tolerance = 0.01;
  cfg.reps = 25;
  cfg.master_seed = 5;
  cfg.depth_cap = 1.5;
  RecordFile f;
  f.config = cfg;
  models::with_model("uniform-toy", cfg.distance, false, [&](const auto& m) {
    f.geometry = m.geometry();
    f.records = run_all(m, cfg);
    return 0;
  });
  const std::string text = serialize(f);
  std::istringstream is(text);
  const RecordFile back = read_record_file(is);
  CHECK(back.records == f.records);
  CHECK(serialize(back) == text);
}

TEST_CASE("a trailing rep without END is dropped", "[record-io]") {
  std::string text = serialize(sample_file());
  text += "3\t0\t0.5\n3\t1\t0.25\n";
  std::istringstream is(text);
  CHECK(read_record_file(is).records.size() == 3);
}

TEST_CASE("malformed record files are rejected", "[record-io]") {
  const std::string good = serialize(sample_file());
  auto rejects = [](const std::string& text) {
    std::istringstream is(text);
    CHECK_THROWS_AS(read_record_file(is), FormatError);
  };
  rejects(good + "4\tEND\tSomethingElse\n");
  rejects(good + "4\t1\t0.5\n4\tEND\tToleranceReached\n");
  rejects(good + "1\tEND\tToleranceReached\n");
  rejects(good + "4\t0\tnot-a-number\n");
  rejects(good + "garbage\n");
  rejects(good.substr(good.find("# model")));

  std::string missing = good;
  missing.erase(missing.find("# seed="), missing.find('\n', missing.find("# seed=")) -
                                             missing.find("# seed=") + 1);
  rejects(missing);
}

TEST_CASE("results do not depend on the thread count", "[runner]") {
  RunConfig cfg;
  cfg.n_particles = 5;
  cfg.mcmc_steps = 50;
  cfg.tolerance = 1e-3;
  cfg.reps = 24;
  cfg.master_seed = 2024;
  const models::GaussianToy toy;
  cfg.threads = 1;
  const auto one = run_all(toy, cfg);
  cfg.threads = 4;
  const auto four = run_all(toy, cfg);
  CHECK(body(one) == body(four));
  for (std::size_t i = 0; i < one.size(); ++i) {
    REQUIRE(one[i].rep_id == i);
    REQUIRE(depth_at(one[i], cfg.tolerance) == one[i].depth());
  }
  cfg.master_seed = 2025;
  CHECK(body(run_all(toy, cfg)) != body(one));
}

TEST_CASE("models sharing draw code share references", "[runner]") {
  const models::ParetoModel marginal(models::ParetoModel::Target::Marginal);
  const models::ParetoModel joint(models::ParetoModel::Target::Joint);
  for (std::uint64_t rep = 0; rep < 5; ++rep) {
    Rng a = rep_rng(7, rep);
    Rng b = rep_rng(7, rep);
    REQUIRE(marginal.draw_reference(a).log_x == joint.draw_reference(b).log_x);
  }
}

TEST_CASE("worker failures propagate", "[runner]") {
  RunConfig cfg;
  cfg.reps = 4;
  cfg.threads = 2;
  cfg.mode = Mode::ConditionalEntropy;
  CHECK_THROWS_AS(run_all(models::UniformToy{}, cfg), UnsupportedMode);
  cfg.reps = 0;
  CHECK_THROWS_AS(run_all(models::UniformToy{}, cfg), UsageError);
}

// Command-line front end: run descents, postprocess record files into
// entropies, and pair record files into mutual informations.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "infodepth/infodepth.hpp"

namespace {

using namespace infodepth;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapHit = 3;
constexpr int kExitResolution = 4;
constexpr int kExitPairing = 5;

struct Units {
  bool bits = false;
  double scale() const { return bits ? 1.0 / std::numbers::ln2 : 1.0; }
  const char* name() const { return bits ? "bits" : "nats"; }
};

Units parse_units(const std::string& s) {
  if (s == "nats") return {false};
  if (s == "bits") return {true};
  throw UsageError("unknown units '" + s + "'");
}

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// ---------------------------------------------------------------- run

struct RunOptions {
  RunConfig config;
  std::string mode = "entropy";
  std::string distance = "two-sided";
  bool paper_scale = false;
  bool quiet = false;
};

int do_run(RunOptions& opt, const CLI::App& cmd) {
  RunConfig& c = opt.config;
  c.mode = parse_mode(opt.mode);
  c.distance = parse_distance_kind(opt.distance);
  if (opt.paper_scale) {
    if (cmd.get_option("--mcmc-steps")->count() == 0) c.mcmc_steps = 10000;
    if (cmd.get_option("--reps")->count() == 0) c.reps = 1000;
  }
  c.validate();
  if (!models::is_builtin(c.model_name)) throw UsageError("unknown model '" + c.model_name + "'");

  std::size_t cap_hits = 0;
  models::with_model(c.model_name, c.distance, c.perfect, [&](const auto& model) {
    if (!model.supports(c.mode)) {
      throw UsageError("model '" + c.model_name + "' does not support " +
                       std::string(to_string(c.mode)) + " mode");
    }
    std::ofstream out(c.output_path);
    if (!out) throw UsageError("cannot write '" + c.output_path + "'");
    write_header(out, c, model.geometry());
    out.flush();

    std::vector<double> depths;
    run_reps(model, c, [&](const DepthRecord& r) {
      write_record(out, r);
      out.flush();
      if (r.terminated_by == Termination::DepthCapHit) ++cap_hits;
      depths.push_back(r.depth());
      if (!opt.quiet) {
        const auto est = mean_and_error(depths);
        std::cerr << "rep " << r.rep_id + 1 << "/" << c.reps << "  depth " << fixed(r.depth())
                  << (r.terminated_by == Termination::DepthCapHit ? " (cap hit)" : "")
                  << "  running mean " << fixed(est.mean) << " +- " << fixed(est.std_error)
                  << '\n';
      }
    });
    return 0;
  });

  if (cap_hits > 0) {
    std::cerr << cap_hits << " rep(s) hit the depth cap of " << c.depth_cap << " nats\n";
    return kExitCapHit;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- postprocess

struct PostprocessOptions {
  std::string file;
  std::optional<double> tolerance;
  std::optional<std::size_t> dim;
  std::optional<std::string> metric;
  std::string units = "nats";
  bool machine = false;
  std::string dump_depths;
};

/// Entropy of the parameter's prior when known in closed form (for the MI line).
std::optional<double> known_prior_entropy(const std::string& model) {
  // tau ~ Uniform(-1, 0) has unit width
  if (model == "sinusoid-even" || model == "sinusoid-uneven") return 0.0;
  return std::nullopt;
}

int do_postprocess(const PostprocessOptions& opt) {
  const Units units = parse_units(opt.units);
  const RecordFile file = read_record_file(opt.file);
  const double tol = opt.tolerance.value_or(file.config.tolerance);
  Geometry geometry = file.geometry;
  if (opt.dim) geometry.dim = *opt.dim;
  if (opt.metric) geometry.metric = parse_metric(*opt.metric);

  if (!opt.dump_depths.empty()) {
    std::ofstream dump(opt.dump_depths);
    if (!dump) throw UsageError("cannot write '" + opt.dump_depths + "'");
    dump << "# rep_id\tdepth_" << units.name() << "\tterminated_by\n";
    for (const auto& r : file.records) {
      dump << r.rep_id << '\t' << format_real(depth_at(r, tol) * units.scale()) << '\t'
           << to_string(r.terminated_by) << '\n';
    }
  }

  const auto depth = aggregate(file.records, tol);
  const bool conditional = file.config.mode == Mode::ConditionalEntropy;
  const auto h = conditional ? conditional_entropy(file.records, tol, geometry)
                             : differential_entropy(depth, geometry, tol);
  const double s = units.scale();

  if (opt.machine) {
    std::cout << "model=" << file.config.model_name << '\n'
              << "mode=" << to_string(file.config.mode) << '\n'
              << "units=" << units.name() << '\n'
              << "reps=" << depth.reps << '\n'
              << "tolerance=" << format_real(tol) << '\n'
              << "geometry_dim=" << geometry.dim << '\n'
              << "geometry_metric=" << to_string(geometry.metric) << '\n'
              << "depth_mean=" << format_real(depth.mean * s) << '\n'
              << "depth_stderr=" << format_real(depth.std_error * s) << '\n'
              << "log_volume=" << format_real(h.log_volume * s) << '\n'
              << "entropy=" << format_real(h.value * s) << '\n'
              << "entropy_stderr=" << format_real(h.std_error * s) << '\n';
    if (geometry.metric == Metric::OneSided) {
      const auto p = precisional_entropy_via_sampler(file.records, tol);
      std::cout << "precisional_entropy=" << format_real(p.value * s) << '\n'
                << "precisional_entropy_stderr=" << format_real(p.std_error * s) << '\n';
    }
    if (const auto prior = known_prior_entropy(file.config.model_name); prior && conditional) {
      std::cout << "mutual_information=" << format_real((*prior - h.value) * s) << '\n'
                << "mutual_information_stderr=" << format_real(h.std_error * s) << '\n';
    }
    return kExitOk;
  }

  std::cout << "file        " << opt.file << '\n'
            << "model       " << file.config.model_name << " (" << to_string(file.config.mode)
            << " mode, N=" << file.config.n_particles << ", " << depth.reps << " reps)\n"
            << "tolerance   " << format_real(tol) << '\n'
            << "depth       " << fixed(depth.mean * s) << " +- " << fixed(depth.std_error * s)
            << ' ' << units.name() << '\n'
            << "log-volume  " << fixed(h.log_volume * s) << " (" << to_string(geometry.metric)
            << ", dim " << geometry.dim << ")\n"
            << (conditional ? "H(.|data)   " : "entropy     ") << fixed(h.value * s) << " +- "
            << fixed(h.std_error * s) << ' ' << units.name() << '\n';
  if (geometry.metric == Metric::OneSided) {
    const auto p = precisional_entropy_via_sampler(file.records, tol);
    std::cout << "precisional " << fixed(p.value * s) << " +- " << fixed(p.std_error * s) << ' '
              << units.name() << '\n';
  }
  if (const auto prior = known_prior_entropy(file.config.model_name); prior && conditional) {
    std::cout << "mutual inf. " << fixed((*prior - h.value) * s) << " +- "
              << fixed(h.std_error * s) << ' ' << units.name() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- pair

struct PairOptions {
  std::string file_x, file_y, file_xy;
  std::optional<double> tol_x, tol_y, tol_xy;
  std::string units = "nats";
  bool machine = false;
};

int do_pair(const PairOptions& opt) {
  const Units units = parse_units(opt.units);
  const RecordFile fx = read_record_file(opt.file_x);
  const RecordFile fy = read_record_file(opt.file_y);
  const RecordFile fxy = read_record_file(opt.file_xy);
  if (fx.config.master_seed != fy.config.master_seed ||
      fx.config.master_seed != fxy.config.master_seed) {
    throw PairingError("record files were produced with different master seeds");
  }
  const RecordSet x{fx.records, opt.tol_x.value_or(fx.config.tolerance), fx.geometry};
  const RecordSet y{fy.records, opt.tol_y.value_or(fy.config.tolerance), fy.geometry};
  const RecordSet xy{fxy.records, opt.tol_xy.value_or(fxy.config.tolerance), fxy.geometry};

  const auto paired = mutual_information_paired(x, y, xy);
  const auto unpaired = mutual_information_unpaired(x, y, xy);
  const double s = units.scale();
  if (opt.machine) {
    std::cout << "units=" << units.name() << '\n'
              << "reps=" << fx.records.size() << '\n'
              << "mi_paired=" << format_real(paired.value * s) << '\n'
              << "mi_paired_stderr=" << format_real(paired.std_error * s) << '\n'
              << "mi_unpaired=" << format_real(unpaired.value * s) << '\n'
              << "mi_unpaired_stderr=" << format_real(unpaired.std_error * s) << '\n';
    return kExitOk;
  }
  std::cout << "reps                 " << fx.records.size() << '\n'
            << "I (paired)           " << fixed(paired.value * s) << " +- "
            << fixed(paired.std_error * s) << ' ' << units.name() << '\n'
            << "I (unpaired)         " << fixed(unpaired.value * s) << " +- "
            << fixed(unpaired.std_error * s) << ' ' << units.name() << '\n';
  return kExitOk;
}

int do_models() {
  for (const auto& m : models::kBuiltinModels) {
    std::cout << m.name << "\t" << m.description;
    if (m.conditional) std::cout << " [conditional]";
    if (m.one_sided) std::cout << " [one-sided]";
    std::cout << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy and mutual information estimation by Nested Sampling depth"};
  app.require_subcommand(1);
  const std::string env = "INFODEPTH_";

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "run descents and write a record file");
  RunConfig& rc = run_opt.config;
  run->add_option("--model", rc.model_name, "builtin model name (see `models`)")
      ->required()
      ->envname(env + "MODEL");
  run->add_option("--mode", run_opt.mode, "entropy | conditional")
      ->envname(env + "MODE")
      ->capture_default_str();
  run->add_option("--particles", rc.n_particles, "NS particles per descent")
      ->envname(env + "PARTICLES")
      ->capture_default_str();
  run->add_option("--mcmc-steps", rc.mcmc_steps, "MCMC steps per NS iteration")
      ->envname(env + "MCMC_STEPS")
      ->capture_default_str();
  run->add_option("--tolerance", rc.tolerance, "distance tolerance r")
      ->envname(env + "TOLERANCE")
      ->capture_default_str();
  run->add_option("--reps", rc.reps, "number of reference particles")
      ->envname(env + "REPS")
      ->capture_default_str();
  run->add_option("--seed", rc.master_seed, "master seed")
      ->envname(env + "SEED")
      ->capture_default_str();
  run->add_option("--threads", rc.threads, "worker threads")
      ->envname(env + "THREADS")
      ->capture_default_str();
  run->add_option("--depth-cap", rc.depth_cap, "maximum depth in nats")
      ->envname(env + "DEPTH_CAP")
      ->capture_default_str();
  run->add_option("--output", rc.output_path, "record file")
      ->envname(env + "OUTPUT")
      ->capture_default_str();
  run->add_option("--distance", run_opt.distance, "two-sided | one-sided (1-D models)")
      ->envname(env + "DISTANCE")
      ->capture_default_str();
  run->add_flag("--perfect", rc.perfect, "exact constrained draws (toy models)")
      ->envname(env + "PERFECT");
  run->add_flag("--paper-scale", run_opt.paper_scale, "10000 MCMC steps and 1000 reps")
      ->envname(env + "PAPER_SCALE");
  run->add_flag("--quiet", run_opt.quiet, "no progress output");

  PostprocessOptions pp_opt;
  auto* pp = app.add_subcommand("postprocess", "estimate depth and entropy from a record file");
  pp->add_option("file", pp_opt.file, "record file")->required();
  pp->add_option("--tolerance", pp_opt.tolerance, "tolerance (default: run tolerance)")
      ->envname(env + "PP_TOLERANCE");
  pp->add_option("--dim", pp_opt.dim, "override geometry dimension");
  pp->add_option("--metric", pp_opt.metric, "override metric: l2-ball | interval | one-sided");
  pp->add_option("--units", pp_opt.units, "nats | bits")->envname(env + "UNITS");
  pp->add_flag("--machine", pp_opt.machine, "key=value output");
  pp->add_option("--dump-depths", pp_opt.dump_depths, "write per-rep depths as TSV");

  PairOptions pair_opt;
  auto* pair = app.add_subcommand("pair", "paired mutual information I = H(x) + H(y) - H(x,y)");
  pair->add_option("x", pair_opt.file_x, "record file for x")->required();
  pair->add_option("y", pair_opt.file_y, "record file for y")->required();
  pair->add_option("xy", pair_opt.file_xy, "record file for (x, y)")->required();
  pair->add_option("--tol-x", pair_opt.tol_x, "tolerance for x");
  pair->add_option("--tol-y", pair_opt.tol_y, "tolerance for y");
  pair->add_option("--tol-xy", pair_opt.tol_xy, "tolerance for (x, y)");
  pair->add_option("--units", pair_opt.units, "nats | bits")->envname(env + "UNITS");
  pair->add_flag("--machine", pair_opt.machine, "key=value output");

  auto* list = app.add_subcommand("models", "list builtin models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return do_run(run_opt, *run);
    if (*pp) return do_postprocess(pp_opt);
    if (*pair) return do_pair(pair_opt);
    if (*list) return do_models();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const AggregationError& e) {
    std::cerr << "aggregation error: " << e.what() << '\n';
    return kExitCapHit;
  } catch (const InsufficientResolution& e) {
    std::cerr << "insufficient resolution: " << e.what() << '\n';
    return kExitResolution;
  } catch (const PairingError& e) {
    std::cerr << "pairing error: " << e.what() << '\n';
    return kExitPairing;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

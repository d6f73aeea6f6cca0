#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "infodepth/errors.hpp"
#include "infodepth/model_api.hpp"
#include "infodepth/run_config.hpp"
#include "infodepth/sampler.hpp"

// Text record format:
//
//   # format=infodepth-records/1
//   # key=value             (the full RunConfig plus the record geometry)
//   rep_id<TAB>iteration<TAB>distance
//   rep_id<TAB>END<TAB>terminated_by
//
// Body lines are in ascending (rep_id, iteration) order; distances carry 17
// significant digits so they read back bit-exactly.

namespace infodepth {

inline constexpr std::string_view kFormatTag = "infodepth-records/1";

/// A record file: the run that produced it and the records it holds.
struct RecordFile {
  RunConfig config;
  Geometry geometry{};
  std::vector<DepthRecord> records;
};

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_header(std::ostream& os, const RunConfig& c, const Geometry& g) {
  os << "# format=" << kFormatTag << '\n'
     << "# model=" << c.model_name << '\n'
     << "# mode=" << to_string(c.mode) << '\n'
     << "# distance=" << to_string(c.distance) << '\n'
     << "# perfect=" << (c.perfect ? 1 : 0) << '\n'
     << "# particles=" << c.n_particles << '\n'
     << "# mcmc_steps=" << c.mcmc_steps << '\n'
     << "# tolerance=" << format_real(c.tolerance) << '\n'
     << "# reps=" << c.reps << '\n'
     << "# seed=" << c.master_seed << '\n'
     << "# threads=" << c.threads << '\n'
     << "# depth_cap=" << format_real(c.depth_cap) << '\n'
     << "# output=" << c.output_path << '\n'
     << "# geometry_dim=" << g.dim << '\n'
     << "# geometry_metric=" << to_string(g.metric) << '\n';
}

inline void write_record(std::ostream& os, const DepthRecord& r) {
  for (std::size_t i = 0; i < r.discarded.size(); ++i) {
    os << r.rep_id << '\t' << i << '\t' << format_real(r.discarded[i]) << '\n';
  }
  os << r.rep_id << "\tEND\t" << to_string(r.terminated_by) << '\n';
}

inline void write_record_file(std::ostream& os, const RecordFile& file) {
  write_header(os, file.config, file.geometry);
  for (const auto& r : file.records) write_record(os, r);
}

namespace detail {

template <class T>
T parse_number(const std::string& s, const std::string& what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw FormatError("bad " + what + " '" + s + "'");
  }
  return v;
}

inline double parse_real(const std::string& s, const std::string& what) {
  // strtod accepts "inf", which the one-sided sentinel prints as
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw FormatError("bad " + what + " '" + s + "'");
  return v;
}

}  // namespace detail

/// Reads a record file. A trailing rep without its END line (an interrupted
/// write) is dropped.
inline RecordFile read_record_file(std::istream& is) {
  RecordFile file;
  std::map<std::string, std::string> header;
  std::string line;
  std::vector<DepthRecord> records;
  DepthRecord current;
  bool open = false;

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos || line.size() < 3) continue;
      header[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    std::istringstream ls(line);
    std::string id_s, second, third;
    if (!std::getline(ls, id_s, '\t') || !std::getline(ls, second, '\t') ||
        !std::getline(ls, third)) {
      throw FormatError("malformed body line '" + line + "'");
    }
    const auto rep = detail::parse_number<std::uint64_t>(id_s, "rep_id");
    if (!open) {
      if (!records.empty() && rep <= records.back().rep_id) {
        throw FormatError("rep_ids are not ascending at rep " + id_s);
      }
      current = DepthRecord{};
      current.rep_id = rep;
      open = true;
    } else if (rep != current.rep_id) {
      throw FormatError("rep " + std::to_string(current.rep_id) + " has no END line");
    }
    if (second == "END") {
      if (third == "ToleranceReached") {
        current.terminated_by = Termination::ToleranceReached;
      } else if (third == "DepthCapHit") {
        current.terminated_by = Termination::DepthCapHit;
      } else {
        throw FormatError("unknown termination '" + third + "'");
      }
      records.push_back(std::move(current));
      open = false;
      continue;
    }
    const auto iter = detail::parse_number<std::size_t>(second, "iteration");
    if (iter != current.discarded.size()) {
      throw FormatError("iterations out of order in rep " + id_s);
    }
    current.discarded.push_back(detail::parse_real(third, "distance"));
  }

  auto get = [&header](const std::string& key) -> const std::string& {
    const auto it = header.find(key);
    if (it == header.end()) throw FormatError("header is missing '" + key + "'");
    return it->second;
  };
  if (get("format") != kFormatTag) throw FormatError("unsupported format '" + get("format") + "'");

  RunConfig& c = file.config;
  c.model_name = get("model");
  c.mode = parse_mode(get("mode"));
  c.distance = parse_distance_kind(get("distance"));
  c.perfect = get("perfect") == "1";
  c.n_particles = detail::parse_number<std::size_t>(get("particles"), "particles");
  c.mcmc_steps = detail::parse_number<std::size_t>(get("mcmc_steps"), "mcmc_steps");
  c.tolerance = detail::parse_real(get("tolerance"), "tolerance");
  c.reps = detail::parse_number<std::size_t>(get("reps"), "reps");
  c.master_seed = detail::parse_number<std::uint64_t>(get("seed"), "seed");
  c.threads = detail::parse_number<std::size_t>(get("threads"), "threads");
  c.depth_cap = detail::parse_real(get("depth_cap"), "depth_cap");
  c.output_path = get("output");
  file.geometry.dim = detail::parse_number<std::size_t>(get("geometry_dim"), "geometry_dim");
  file.geometry.metric = parse_metric(get("geometry_metric"));
  if (c.n_particles < 1) throw FormatError("particles must be >= 1");

  for (auto& r : records) {
    r.n_particles = c.n_particles;
    r.run_tolerance = c.tolerance;
    r.mode = c.mode;
    r.geometry = file.geometry;
  }
  file.records = std::move(records);
  return file;
}

inline RecordFile read_record_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open record file '" + path + "'");
  return read_record_file(in);
}

}  // namespace infodepth

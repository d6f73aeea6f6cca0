#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "infodepth/errors.hpp"
#include "infodepth/model_api.hpp"
#include "infodepth/sampler.hpp"

namespace infodepth {

/// Mean depth over repetitions and its standard error (nats).
struct DepthEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t reps = 0;
};

/// Differential entropy estimate: value = depth mean + log-volume.
struct EntropyEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double log_volume = 0.0;
  Geometry geometry{};
};

struct MutualInformation {
  double value = 0.0;
  double std_error = 0.0;
};

/// Sample mean and Bessel-corrected standard error of the mean.
inline DepthEstimate mean_and_error(std::span<const double> values) {
  DepthEstimate est;
  est.reps = values.size();
  if (values.empty()) return est;
  double sum = 0.0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    est.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return est;
}

namespace detail {

inline void reject_cap_hits(std::span<const DepthRecord> records) {
  std::string ids;
  for (const auto& r : records) {
    if (r.terminated_by == Termination::DepthCapHit) {
      if (!ids.empty()) ids += ", ";
      ids += std::to_string(r.rep_id);
    }
  }
  if (!ids.empty()) {
    throw AggregationError("records hit the depth cap (rep_ids: " + ids +
                           "); refusing to average truncated depths");
  }
}

}  // namespace detail

/// Per-record depths at `tol`, in record order.
inline std::vector<double> depths_at(std::span<const DepthRecord> records, double tol) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(depth_at(r, tol));
  return out;
}

/// Averages depth_at(record, tol) over records. Needs at least two records
/// and none that hit the depth cap.
inline DepthEstimate aggregate(std::span<const DepthRecord> records, double tol) {
  if (records.size() < 2) throw AggregationError("need at least two records to aggregate");
  detail::reject_cap_hits(records);
  const auto depths = depths_at(records, tol);
  return mean_and_error(depths);
}

/// Log-volume of {d < r}.
///
/// L2 ball: (n/2) ln(pi r^2) - lnGamma(n/2 + 1). Interval per axis: n ln(2r).
/// One-sided interval: ln r.
inline double ball_log_volume(const Geometry& geometry, double r) {
  if (!(r > 0.0)) throw DomainError("log-volume needs r > 0");
  if (geometry.dim < 1) throw DomainError("geometry dimension must be >= 1");
  const double n = static_cast<double>(geometry.dim);
  switch (geometry.metric) {
    case Metric::L2Ball:
      return 0.5 * n * std::log(std::numbers::pi * r * r) - std::lgamma(0.5 * n + 1.0);
    case Metric::IntervalPerAxis:
      return n * std::log(2.0 * r);
    case Metric::OneSided:
      return std::log(r);
  }
  throw DomainError("unknown metric");
}

inline EntropyEstimate differential_entropy(const DepthEstimate& depth, const Geometry& geometry,
                                            double r) {
  EntropyEstimate h;
  h.log_volume = ball_log_volume(geometry, r);
  h.value = depth.mean + h.log_volume;
  h.std_error = depth.std_error;
  h.geometry = geometry;
  return h;
}

/// H(theta | d) from records produced in conditional mode. The arithmetic is
/// the same as differential_entropy; only the record mode is enforced.
inline EntropyEstimate conditional_entropy(std::span<const DepthRecord> records, double tol,
                                           const Geometry& geometry) {
  for (const auto& r : records) {
    if (r.mode != Mode::ConditionalEntropy) {
      throw ModeMismatch("conditional entropy needs conditional-mode records (rep " +
                         std::to_string(r.rep_id) + " is entropy-mode)");
    }
  }
  return differential_entropy(aggregate(records, tol), geometry, tol);
}

/// I = H(x) + H(y) - H(x, y), errors combined assuming independence.
inline MutualInformation mutual_information(const EntropyEstimate& h_x, const EntropyEstimate& h_y,
                                            const EntropyEstimate& h_xy) {
  return {h_x.value + h_y.value - h_xy.value,
          std::sqrt(h_x.std_error * h_x.std_error + h_y.std_error * h_y.std_error +
                    h_xy.std_error * h_xy.std_error)};
}

/// A record set with the tolerance and geometry used to postprocess it.
struct RecordSet {
  std::span<const DepthRecord> records;
  double tolerance = 0.0;
  Geometry geometry{};
};

/// Mutual information with common random numbers: the three record sets share
/// reference particles, so the per-rep combination depth_x + depth_y - depth_xy
/// is averaged and its own standard error reported.
inline MutualInformation mutual_information_paired(const RecordSet& x, const RecordSet& y,
                                                   const RecordSet& xy) {
  auto sorted = [](std::span<const DepthRecord> rs) {
    std::vector<const DepthRecord*> v;
    v.reserve(rs.size());
    for (const auto& r : rs) v.push_back(&r);
    std::sort(v.begin(), v.end(),
              [](const DepthRecord* a, const DepthRecord* b) { return a->rep_id < b->rep_id; });
    return v;
  };
  const auto sx = sorted(x.records);
  const auto sy = sorted(y.records);
  const auto sxy = sorted(xy.records);
  if (sx.size() != sy.size() || sx.size() != sxy.size()) {
    throw PairingError("record sets have different numbers of reps");
  }
  for (std::size_t i = 0; i < sx.size(); ++i) {
    if (sx[i]->rep_id != sy[i]->rep_id || sx[i]->rep_id != sxy[i]->rep_id) {
      throw PairingError("record sets do not share the same rep_ids");
    }
  }
  if (sx.size() < 2) throw AggregationError("need at least two paired reps");
  detail::reject_cap_hits(x.records);
  detail::reject_cap_hits(y.records);
  detail::reject_cap_hits(xy.records);

  std::vector<double> diffs;
  diffs.reserve(sx.size());
  for (std::size_t i = 0; i < sx.size(); ++i) {
    diffs.push_back(depth_at(*sx[i], x.tolerance) + depth_at(*sy[i], y.tolerance) -
                    depth_at(*sxy[i], xy.tolerance));
  }
  const auto est = mean_and_error(diffs);
  const double volume = ball_log_volume(x.geometry, x.tolerance) +
                        ball_log_volume(y.geometry, y.tolerance) -
                        ball_log_volume(xy.geometry, xy.tolerance);
  return {est.mean + volume, est.std_error};
}

/// Unpaired counterpart of mutual_information_paired on the same inputs.
inline MutualInformation mutual_information_unpaired(const RecordSet& x, const RecordSet& y,
                                                     const RecordSet& xy) {
  return mutual_information(
      differential_entropy(aggregate(x.records, x.tolerance), x.geometry, x.tolerance),
      differential_entropy(aggregate(y.records, y.tolerance), y.geometry, y.tolerance),
      differential_entropy(aggregate(xy.records, xy.tolerance), xy.geometry, xy.tolerance));
}

}  // namespace infodepth

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include "infodepth/errors.hpp"
#include "infodepth/model_api.hpp"
#include "infodepth/models/normal_mean.hpp"
#include "infodepth/models/one_sided.hpp"
#include "infodepth/models/pareto.hpp"
#include "infodepth/models/sinusoid.hpp"
#include "infodepth/models/toys.hpp"
#include "infodepth/run_config.hpp"

namespace infodepth::models {

struct ModelInfo {
  std::string_view name;
  std::string_view description;
  bool conditional;  ///< supports conditional-entropy mode
  bool one_sided;    ///< accepts --distance one-sided
};

inline constexpr std::array<ModelInfo, 7> kBuiltinModels{{
    {"normal-mean", "mean mu ~ N(0,10^2), 100 data ~ N(mu,1); distance on the data", false, false},
    {"sinusoid-even", "sinusoid, 101 evenly spaced observations; distance |tau - tau_ref|", true,
     true},
    {"sinusoid-uneven", "sinusoid, 101 observations at ((i-1/2)/n)^3; distance |tau - tau_ref|",
     true, true},
    {"pareto-marginal", "Pareto halves; distance |ln y_tot - ln y_tot,ref|", false, true},
    {"pareto-joint", "Pareto halves; Euclidean distance in (ln y_tot, ln z_tot)", false, false},
    {"uniform-toy", "Uniform[0,1] oracle; distance |x - x_ref|", false, true},
    {"gaussian-toy", "Normal(0,1) oracle; distance |x - x_ref|", false, true},
}};

inline bool is_builtin(std::string_view name) {
  for (const auto& m : kBuiltinModels) {
    if (m.name == name) return true;
  }
  return false;
}

namespace detail {

template <class M, class F>
decltype(auto) dispatch_distance(M model, DistanceKind distance, F&& fn) {
  if (distance == DistanceKind::OneSided) {
    if constexpr (ScalarProjected<M>) {
      if (model.geometry().dim == 1) return std::forward<F>(fn)(OneSided<M>(std::move(model)));
    }
    throw UsageError("model '" + model.name() + "' does not support one-sided distance");
  }
  return std::forward<F>(fn)(std::move(model));
}

}  // namespace detail

/// Builds the named model and calls `fn` with it. `fn` must be callable with
/// every builtin model type and return the same type for all of them.
template <class F>
decltype(auto) with_model(std::string_view name, DistanceKind distance, bool perfect, F&& fn) {
  if (perfect && name != "uniform-toy" && name != "gaussian-toy") {
    throw UsageError("perfect resampling is only available for the toy models");
  }
  if (name == "normal-mean") return detail::dispatch_distance(NormalMeanModel{}, distance, fn);
  if (name == "sinusoid-even") {
    return detail::dispatch_distance(SinusoidModel{Schedule::Even}, distance, fn);
  }
  if (name == "sinusoid-uneven") {
    return detail::dispatch_distance(SinusoidModel{Schedule::Uneven}, distance, fn);
  }
  if (name == "pareto-marginal") {
    return detail::dispatch_distance(ParetoModel{ParetoModel::Target::Marginal}, distance, fn);
  }
  if (name == "pareto-joint") {
    return detail::dispatch_distance(ParetoModel{ParetoModel::Target::Joint}, distance, fn);
  }
  if (name == "uniform-toy") return detail::dispatch_distance(UniformToy{perfect}, distance, fn);
  if (name == "gaussian-toy") return detail::dispatch_distance(GaussianToy{perfect}, distance, fn);
  throw UsageError("unknown model '" + std::string(name) + "'");
}

/// Geometry the named model's records carry.
inline Geometry model_geometry(std::string_view name, DistanceKind distance) {
  return with_model(name, distance, false, [](const auto& m) { return m.geometry(); });
}

}  // namespace infodepth::models

#pragma once

#include "infodepth/errors.hpp"
#include "infodepth/estimator.hpp"
#include "infodepth/model_api.hpp"
#include "infodepth/models/registry.hpp"
#include "infodepth/precisional.hpp"
#include "infodepth/record_io.hpp"
#include "infodepth/rng.hpp"
#include "infodepth/run_config.hpp"
#include "infodepth/runner.hpp"
#include "infodepth/sampler.hpp"

#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "infodepth/model_api.hpp"
#include "infodepth/rng.hpp"
#include "infodepth/run_config.hpp"
#include "infodepth/sampler.hpp"

namespace infodepth {

/// One repetition: draw the reference from the rep's own generator, then descend.
template <TargetModel M>
DepthRecord run_rep(const M& model, const RunConfig& config, std::uint64_t rep_id) {
  Rng rng = rep_rng(config.master_seed, rep_id);
  const auto reference = model.draw_reference(rng);
  return run_descent(model, reference, config.descent(), rng, rep_id);
}

/// Runs config.reps repetitions on config.threads workers and hands each
/// record to `sink` on the calling thread, in ascending rep_id order.
///
/// Workers may finish out of order; completed records wait in a buffer until
/// every earlier rep has been emitted. Results do not depend on the thread count.
template <TargetModel M, class Sink>
void run_reps(const M& model, const RunConfig& config, Sink&& sink) {
  config.validate();
  std::atomic<std::uint64_t> next{0};
  std::mutex mutex;
  std::condition_variable ready;
  std::map<std::uint64_t, DepthRecord> done;
  std::exception_ptr failure;
  const std::uint64_t total = config.reps;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t rep = next.fetch_add(1);
      if (rep >= total) return;
      try {
        DepthRecord record = run_rep(model, config, rep);
        std::lock_guard lock(mutex);
        done.emplace(rep, std::move(record));
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
      ready.notify_one();
    }
  };

  std::vector<std::jthread> pool;
  const std::size_t n_threads = std::min<std::size_t>(config.threads, config.reps);
  pool.reserve(n_threads);
  for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);

  for (std::uint64_t emit = 0; emit < total; ++emit) {
    DepthRecord record;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return done.contains(emit) || failure; });
      if (failure && !done.contains(emit)) break;
      record = std::move(done.at(emit));
      done.erase(emit);
    }
    try {
      sink(record);
    } catch (...) {
      next.store(total);
      pool.clear();
      throw;
    }
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

/// Convenience wrapper collecting all records.
template <TargetModel M>
std::vector<DepthRecord> run_all(const M& model, const RunConfig& config) {
  std::vector<DepthRecord> out;
  out.reserve(config.reps);
  run_reps(model, config, [&out](const DepthRecord& r) { out.push_back(r); });
  return out;
}

}  // namespace infodepth

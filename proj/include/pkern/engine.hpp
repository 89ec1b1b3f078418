#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "pkern/error.hpp"
#include "pkern/graph.hpp"

namespace pkern {

/// Depth/work accounting. `rounds` counts commit phases that changed
/// something; `work` counts scan evaluations plus committed elementary changes.
struct RoundStats {
  std::size_t rounds = 0;
  std::size_t work = 0;
  /// rule name -> number of items whose verdict was not a no-op
  std::map<std::string, std::size_t> perRule;
  /// rule name -> number of commit phases the rule took part in
  std::map<std::string, std::size_t> commits;

  void absorb(const RoundStats& other);
  std::size_t applications(const std::string& rule) const;
  std::size_t commitsOf(const std::string& rule) const;
  friend bool operator==(const RoundStats&, const RoundStats&) = default;
};

class BudgetExceeded : public Error {
public:
  BudgetExceeded(Instance partial, RoundStats stats)
      : Error(ErrorCode::BudgetExceeded,
              "round budget exhausted after " + std::to_string(stats.rounds) + " rounds"),
        partial_(std::move(partial)),
        stats_(std::move(stats)) {}

  const Instance& partial() const { return partial_; }
  const RoundStats& stats() const { return stats_; }

private:
  Instance partial_;
  RoundStats stats_;
};

/// Evaluates independent items, possibly on several threads and in a shuffled
/// order. Results are stored by index, so the output never depends on the
/// schedule. If several items throw, the exception of the smallest index wins.
class Executor {
public:
  explicit Executor(std::size_t workers = 1, std::optional<std::uint64_t> scheduleSeed = std::nullopt)
      : workers_(std::max<std::size_t>(1, workers)), scheduleSeed_(scheduleSeed) {}

  std::size_t workers() const { return workers_; }
  std::optional<std::uint64_t> scheduleSeed() const { return scheduleSeed_; }

  template <class R, class F>
  std::vector<R> map(std::size_t n, F&& f) const {
    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (scheduleSeed_) {
      std::mt19937_64 gen(*scheduleSeed_ ^ (0x9e3779b97f4a7c15ULL * (n + 1)));
      for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[gen() % i]);
      }
    }
    auto evalAt = [&](std::size_t pos) {
      const std::size_t idx = order[pos];
      try {
        slots[idx].emplace(f(idx));
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    };
    const std::size_t threads = std::min(workers_, n);
    if (threads <= 1) {
      for (std::size_t pos = 0; pos < n; ++pos) evalAt(pos);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (std::size_t pos = next.fetch_add(1); pos < n; pos = next.fetch_add(1)) evalAt(pos);
        });
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (errors[i]) std::rethrow_exception(errors[i]);
    }
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
  }

private:
  std::size_t workers_;
  std::optional<std::uint64_t> scheduleSeed_;
};

/// Per-vertex scan bound to one snapshot. Must be pure and safe to call
/// concurrently.
using ScanFn = std::function<ChangeSet(VertexId)>;

/// A reduction pass: `bind` may precompute shared read-only data for the
/// snapshot (bridges, chains, ...) and returns the per-vertex scan.
struct PassSpec {
  std::string name;
  std::function<ScanFn(const Instance&)> bind;
};

struct EngineOptions {
  std::size_t workers = 1;
  std::optional<std::uint64_t> scheduleSeed;
  /// Upper bound on commit phases for a whole kernelizer run.
  std::optional<std::size_t> roundsBudget;
};

class Engine {
public:
  explicit Engine(EngineOptions options = {})
      : options_(options), executor_(options.workers, options.scheduleSeed) {}

  const EngineOptions& options() const { return options_; }
  const Executor& executor() const { return executor_; }

  /// Maps f over [0, n) and charges n scan evaluations to stats.work.
  template <class R, class F>
  std::vector<R> scan(std::size_t n, F&& f, RoundStats& stats) const {
    stats.work += n;
    return executor_.template map<R>(n, std::forward<F>(f));
  }

  /// Scans every live vertex of inst with the pass and merges the verdicts.
  /// Returns the merged change set and the number of effective verdicts.
  std::pair<ChangeSet, std::size_t> scanPass(const PassSpec& pass, const Instance& inst,
                                             RoundStats& stats) const;

  /// Commits one round. Empty change sets are not counted as rounds.
  /// Throws BudgetExceeded when the engine's round budget is already used up.
  Instance commitRound(const Instance& inst, const ChangeSet& changes, std::string_view rule,
                       std::size_t applications, RoundStats& stats) const;

  /// One scan + commit of a single pass. Returns true if something changed.
  bool step(const PassSpec& pass, Instance& inst, RoundStats& stats) const;

  /// Repeats the pass list until a full sweep commits nothing. `budget` bounds
  /// the number of commit phases of this call.
  std::pair<Instance, RoundStats> runToFixpoint(std::span<const PassSpec> passes, Instance inst,
                                                std::optional<std::size_t> budget = std::nullopt) const;

private:
  EngineOptions options_;
  Executor executor_;
};

/// Single-threaded, ascending-id reference run defining the canonical result.
std::pair<Instance, RoundStats> runSequentialReference(std::span<const PassSpec> passes, Instance inst,
                                                       std::optional<std::size_t> budget = std::nullopt);

}  // namespace pkern

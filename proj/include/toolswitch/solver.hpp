#pragma once

// Iterated local search over job orders. The solver is deliberately plain:
// its purpose is to show how evaluator speed translates into search
// throughput, so almost all of its time goes into objective calls.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "toolswitch/evaluator.hpp"
#include "toolswitch/generator.hpp"
#include "toolswitch/rng.hpp"

namespace toolswitch {

enum class Neighborhood { AdjacentSwap, AnySwap, Insertion };

constexpr std::string_view to_string(Neighborhood n) {
  switch (n) {
    case Neighborhood::AdjacentSwap: return "adjacent-swap";
    case Neighborhood::AnySwap: return "any-swap";
    case Neighborhood::Insertion: return "insertion";
  }
  return "?";
}

inline std::optional<Neighborhood> parse_neighborhood(std::string_view name) {
  for (auto n : {Neighborhood::AdjacentSwap, Neighborhood::AnySwap, Neighborhood::Insertion})
    if (to_string(n) == name) return n;
  return std::nullopt;
}

struct SolverConfig {
  EvaluatorKind evaluator = EvaluatorKind::MpcaBitwise;
  std::uint64_t max_evaluations = 10'000;
  std::size_t perturbation_strength = 2;
  Neighborhood neighborhood = Neighborhood::AnySwap;
  std::uint64_t seed = 1;
  std::optional<std::chrono::duration<double>> time_limit;
};

inline void validate_config(const SolverConfig& c) {
  if (c.max_evaluations < 1) throw Error(ErrorCode::InvalidSpec, "max_evaluations must be at least 1");
  if (c.perturbation_strength < 1) throw Error(ErrorCode::InvalidSpec, "perturbation_strength must be at least 1");
}

/// Best objective after `evaluation` calls; appended whenever it improves.
struct TrajectoryPoint {
  std::uint64_t evaluation = 0;
  std::size_t switches = 0;
  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct SolverResult {
  JobSequence best;
  std::size_t switches = 0;
  std::uint64_t evaluations = 0;
  std::vector<TrajectoryPoint> trajectory;
};

namespace detail {

class IlsRun {
 public:
  IlsRun(const Instance& inst, const SolverConfig& config)
      : inst_(inst), config_(config), rng_(config.seed), started_(std::chrono::steady_clock::now()) {}

  template <class Eval>
  SolverResult run(Eval eval) {
    const std::size_t n = inst_.job_count();
    std::vector<JobIndex> current(n);
    SequenceStream(n, rng_.next()).next(current);
    std::size_t current_value = evaluate(eval, current);  // records the first trajectory point

    if (n >= 2) {
      local_search(eval, current, current_value);
      while (!exhausted()) {
        std::vector<JobIndex> candidate = current;
        for (std::size_t k = 0; k < config_.perturbation_strength; ++k) {
          const auto i = static_cast<std::size_t>(rng_.below(n));
          auto j = static_cast<std::size_t>(rng_.below(n - 1));
          if (j >= i) ++j;
          std::swap(candidate[i], candidate[j]);
        }
        std::size_t candidate_value = evaluate(eval, candidate);
        local_search(eval, candidate, candidate_value);
        if (candidate_value <= current_value) {
          current = std::move(candidate);
          current_value = candidate_value;
        }
      }
    }
    return {JobSequence(best_), best_value_, evaluations_, std::move(trajectory_)};
  }

 private:
  bool exhausted() {
    if (evaluations_ >= config_.max_evaluations) return true;
    if (config_.time_limit && (evaluations_ & 63) == 0)
      timed_out_ = std::chrono::steady_clock::now() - started_ >= *config_.time_limit;
    return timed_out_;
  }

  template <class Eval>
  std::size_t evaluate(Eval& eval, std::span<const JobIndex> order) {
    ++evaluations_;
    const std::size_t value = eval(inst_, order, scratch_).switches;
    if (value < best_value_) {
      best_.assign(order.begin(), order.end());
      best_value_ = value;
      trajectory_.push_back({evaluations_, value});
    }
    return value;
  }

  std::size_t move_count(std::size_t n) const {
    switch (config_.neighborhood) {
      case Neighborhood::AdjacentSwap: return n - 1;
      case Neighborhood::AnySwap: return n * (n - 1) / 2;
      case Neighborhood::Insertion: return n * (n - 1);
    }
    return 0;
  }

  /// Applies move `k` (or its inverse) in place.
  void apply(std::vector<JobIndex>& order, std::size_t k, bool undo) const {
    const std::size_t n = order.size();
    switch (config_.neighborhood) {
      case Neighborhood::AdjacentSwap:
        std::swap(order[k], order[k + 1]);
        return;
      case Neighborhood::AnySwap: {
        // k enumerates pairs i < j row by row
        std::size_t i = 0, row = n - 1;
        while (k >= row) {
          k -= row;
          ++i;
          --row;
        }
        std::swap(order[i], order[i + 1 + k]);
        return;
      }
      case Neighborhood::Insertion: {
        // move the job at `from` to position `to`
        const std::size_t from = k / (n - 1);
        std::size_t to = k % (n - 1);
        if (to >= from) ++to;
        auto first = order.begin();
        const auto [src, dst] = undo ? std::pair{to, from} : std::pair{from, to};
        if (src < dst)
          std::rotate(first + static_cast<std::ptrdiff_t>(src), first + static_cast<std::ptrdiff_t>(src) + 1,
                      first + static_cast<std::ptrdiff_t>(dst) + 1);
        else
          std::rotate(first + static_cast<std::ptrdiff_t>(dst), first + static_cast<std::ptrdiff_t>(src),
                      first + static_cast<std::ptrdiff_t>(src) + 1);
        return;
      }
    }
  }

  /// First improvement: scan moves cyclically, apply any improving one and
  /// keep scanning from the next move, until a full cycle finds none.
  template <class Eval>
  void local_search(Eval& eval, std::vector<JobIndex>& order, std::size_t& value) {
    const std::size_t moves = move_count(order.size());
    std::size_t k = 0;
    std::size_t since_improvement = 0;
    while (since_improvement < moves && !exhausted()) {
      apply(order, k, false);
      const std::size_t trial = evaluate(eval, order);
      if (trial < value) {
        value = trial;
        since_improvement = 0;
      } else {
        apply(order, k, true);
        ++since_improvement;
      }
      k = (k + 1) % moves;
    }
  }

  const Instance& inst_;
  const SolverConfig& config_;
  Rng rng_;
  EvaluatorScratch scratch_;
  std::chrono::steady_clock::time_point started_;
  std::uint64_t evaluations_ = 0;
  bool timed_out_ = false;
  std::vector<JobIndex> best_;
  std::size_t best_value_ = std::numeric_limits<std::size_t>::max();
  std::vector<TrajectoryPoint> trajectory_;
};

}  // namespace detail

/// Random start, first-improvement local search, then repeated kicks of
/// `perturbation_strength` random swaps followed by local search; a kicked
/// solution replaces the current one when it is not worse. Stops at
/// `max_evaluations` objective calls or at `time_limit`. Deterministic per
/// seed when no time limit is set.
inline SolverResult ils_solve(const Instance& inst, const SolverConfig& config) {
  validate_config(config);
  detail::IlsRun run(inst, config);
  return with_evaluator(config.evaluator, [&](auto eval) { return run.run(eval); });
}

/// Independent searches, run on up to `workers` threads: restart 0 uses the
/// configured seed and restart r > 0 uses mix_seed(seed, r). Returns the
/// best run; ties go to the lowest r, so the result does not depend on
/// `workers`.
inline SolverResult ils_solve_restarts(const Instance& inst, const SolverConfig& config, std::size_t restarts,
                                       std::size_t workers = 1) {
  validate_config(config);
  if (restarts == 0) throw Error(ErrorCode::InvalidSpec, "restarts must be at least 1");
  std::vector<std::optional<SolverResult>> results(restarts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < restarts;) {
      SolverConfig c = config;
      if (r > 0) c.seed = mix_seed(config.seed, r);
      results[r] = ils_solve(inst, c);
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, restarts);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (results[r]->switches < results[best]->switches) best = r;
  return std::move(*results[best]);
}

struct Throughput {
  std::uint64_t evaluations = 0;
  double seconds = 0.0;
  double per_second = 0.0;
};

/// Runs ils_solve for `time_limit` (required) with an unbounded evaluation
/// budget and reports the evaluation rate.
inline Throughput solver_throughput(const Instance& inst, SolverConfig config) {
  if (!config.time_limit) throw Error(ErrorCode::InvalidSpec, "solver_throughput needs a time limit");
  config.max_evaluations = std::numeric_limits<std::uint64_t>::max();
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = ils_solve(inst, config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {result.evaluations, seconds, seconds > 0 ? static_cast<double>(result.evaluations) / seconds : 0.0};
}

}  // namespace toolswitch

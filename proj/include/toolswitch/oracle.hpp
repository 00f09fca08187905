#pragma once

// Slow reference computations used to cross-check the evaluators. Nothing in
// here shares code with the evaluator paths beyond the domain types.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "toolswitch/instance.hpp"

namespace toolswitch {

inline constexpr std::uint64_t default_dp_budget = 10'000'000;

namespace detail {

/// C(n, k), saturating at uint64 max.
inline std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n-k+i) is divisible by i; split i so the product stays exact
    const std::uint64_t g = std::gcd(r, i);
    const std::uint64_t factor = (n - k + i) / (i / g);
    r /= g;
    if (r > std::numeric_limits<std::uint64_t>::max() / factor) return std::numeric_limits<std::uint64_t>::max();
    r *= factor;
  }
  return r;
}

/// All masks that contain `required` and exactly `size` bits from {0..m-1}.
inline std::vector<std::uint64_t> supersets_of_size(std::uint64_t required, std::size_t m, std::size_t size) {
  std::vector<ToolIndex> free;
  for (ToolIndex t = 0; t < m; ++t)
    if (!((required >> t) & 1U)) free.push_back(t);
  const std::size_t extra = size - static_cast<std::size_t>(std::popcount(required));
  std::vector<std::uint64_t> out;
  std::vector<std::size_t> pick(extra);
  // lexicographic combinations of `extra` positions out of `free`
  for (std::size_t i = 0; i < extra; ++i) pick[i] = i;
  while (true) {
    std::uint64_t mask = required;
    for (std::size_t i : pick) mask |= std::uint64_t{1} << free[i];
    out.push_back(mask);
    std::size_t i = extra;
    while (i > 0 && pick[i - 1] == free.size() - extra + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < extra; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace detail

/// Exact minimum switch count for `order` by a layered shortest path over all
/// full magazines: layer i holds every C-subset containing T_i, and moving
/// from M to M' costs C - |M ∩ M'|. Requires m <= 64 and
/// C(m, C) * n <= budget; throws BudgetExceeded otherwise.
inline std::size_t tlp_dp_optimal(const Instance& inst, std::span<const JobIndex> order,
                                  std::uint64_t budget = default_dp_budget) {
  require_length(inst, order);
  const std::size_t n = order.size();
  const std::size_t m = inst.tool_count();
  const std::size_t capacity = inst.capacity();
  const std::uint64_t per_layer = detail::binomial_saturating(m, capacity);
  const std::uint64_t states =
      per_layer > budget / std::max<std::uint64_t>(n, 1) ? std::numeric_limits<std::uint64_t>::max()
                                                         : per_layer * n;
  if (m > 64 || states > budget)
    throw Error(ErrorCode::BudgetExceeded,
                "DP needs " + (states == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                                   : std::to_string(states)) +
                    " states (budget " + std::to_string(budget) + ", m <= 64)",
                static_cast<std::size_t>(std::min<std::uint64_t>(states, std::numeric_limits<std::size_t>::max())));

  auto mask_of = [&](JobIndex job) {
    std::uint64_t mask = 0;
    for (ToolIndex t : inst.tools(job)) mask |= std::uint64_t{1} << t;
    return mask;
  };

  std::vector<std::uint64_t> layer = detail::supersets_of_size(mask_of(order[0]), m, capacity);
  std::vector<std::size_t> cost(layer.size(), 0);
  for (std::size_t i = 1; i < n; ++i) {
    auto next = detail::supersets_of_size(mask_of(order[i]), m, capacity);
    std::vector<std::size_t> next_cost(next.size(), std::numeric_limits<std::size_t>::max());
    for (std::size_t b = 0; b < next.size(); ++b)
      for (std::size_t a = 0; a < layer.size(); ++a) {
        const auto kept = static_cast<std::size_t>(std::popcount(layer[a] & next[b]));
        next_cost[b] = std::min(next_cost[b], cost[a] + capacity - kept);
      }
    layer = std::move(next);
    cost = std::move(next_cost);
  }
  return *std::min_element(cost.begin(), cost.end());
}

using SequenceObjective = std::function<std::size_t(const Instance&, std::span<const JobIndex>)>;

struct ExhaustiveResult {
  JobSequence best;
  std::size_t switches = 0;
};

inline constexpr std::size_t max_exhaustive_jobs = 10;

/// Tries all n! orders; among optimal ones returns the lexicographically
/// smallest. Throws TooManyJobs for n > 10.
inline ExhaustiveResult jesp_exhaustive(const Instance& inst, const SequenceObjective& objective) {
  const std::size_t n = inst.job_count();
  if (n > max_exhaustive_jobs)
    throw Error(ErrorCode::TooManyJobs,
                std::to_string(n) + " jobs; exhaustive search is limited to " + std::to_string(max_exhaustive_jobs));
  std::vector<JobIndex> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = static_cast<JobIndex>(k);
  ExhaustiveResult best{JobSequence(order), objective(inst, order)};
  while (std::next_permutation(order.begin(), order.end())) {
    const std::size_t value = objective(inst, order);
    if (value < best.switches) best = {JobSequence(order), value};
  }
  return best;
}

/// Switch count of a full-capacity trace as C(n-1) - |A|, where A holds one
/// arc (i, i+1, t) per tool t kept from instant i to i+1.
inline std::size_t switches_via_arcs(const MagazineTrace& trace, std::size_t capacity) {
  if (!trace.full_capacity)
    throw Error(ErrorCode::NotFullCapacity, "trace is not marked full-capacity");
  for (std::size_t i = 0; i < trace.states.size(); ++i)
    if (trace.states[i].size() != capacity)
      throw Error(ErrorCode::NotFullCapacity,
                  "instant " + std::to_string(i + 1) + " holds " + std::to_string(trace.states[i].size()) +
                      " tools, capacity is " + std::to_string(capacity),
                  i + 1);
  if (trace.states.empty()) return 0;

  std::set<std::tuple<std::size_t, std::size_t, ToolIndex>> arcs;
  for (std::size_t i = 0; i + 1 < trace.states.size(); ++i)
    for (ToolIndex t : trace.states[i].to_vector())
      if (trace.states[i + 1].contains(t)) arcs.emplace(i, i + 1, t);
  return capacity * (trace.states.size() - 1) - arcs.size();
}

struct PipeViolation {
  enum class Kind {
    EmptyInterval,      // start >= end
    NotUsedAtEnds,      // tool missing from T_start or T_end
    UsedInInterior,     // tool required at an interior instant
    MissingFromMagazine,
    Overfull,           // |M_j| > C
    ArcOverlap,         // two pipes share an arc
    LengthMismatch,     // trace and sequence sizes differ
  };
  Kind kind;
  std::size_t pipe = 0;     // index into the pipe list (0 for per-instant checks)
  std::size_t instant = 0;  // 0-based
  ToolIndex tool = 0;
  std::string message;
};

/// Checks pipes and magazines against the pipe definition: each pipe's tool is
/// needed at both ends and idle but present in between, no magazine exceeds C,
/// and no two pipes share an arc (j, j+1, tool). Returns the first violation.
inline std::optional<PipeViolation> validate_pipe_set(const std::vector<ToolSet>& states,
                                                      const std::vector<Pipe>& pipes, const Instance& inst,
                                                      std::span<const JobIndex> order) {
  using K = PipeViolation::Kind;
  if (states.size() != order.size() || order.size() != inst.job_count())
    return PipeViolation{K::LengthMismatch, 0, 0, 0, "trace length differs from sequence length"};

  for (std::size_t j = 0; j < states.size(); ++j)
    if (states[j].size() > inst.capacity())
      return PipeViolation{K::Overfull, 0, j, 0,
                           "instant " + std::to_string(j + 1) + " holds " + std::to_string(states[j].size()) +
                               " tools"};

  std::set<std::pair<std::size_t, ToolIndex>> arcs;  // arc (j, j+1, tool) keyed by j
  for (std::size_t p = 0; p < pipes.size(); ++p) {
    const Pipe& pipe = pipes[p];
    const std::string where = "pipe (" + std::to_string(pipe.start + 1) + ", " + std::to_string(pipe.end + 1) +
                              ", tool " + std::to_string(pipe.tool + 1) + ")";
    if (pipe.start >= pipe.end || pipe.end >= order.size())
      return PipeViolation{K::EmptyInterval, p, pipe.start, pipe.tool, where + " has no valid interval"};
    const auto& used_at = [&](std::size_t j) { return inst.required(order[j]).contains(pipe.tool); };
    if (!used_at(pipe.start) || !used_at(pipe.end))
      return PipeViolation{K::NotUsedAtEnds, p, used_at(pipe.start) ? pipe.end : pipe.start, pipe.tool,
                           where + " tool not required at both ends"};
    for (std::size_t j = pipe.start + 1; j < pipe.end; ++j) {
      if (used_at(j))
        return PipeViolation{K::UsedInInterior, p, j, pipe.tool,
                             where + " tool required at interior instant " + std::to_string(j + 1)};
      if (!states[j].contains(pipe.tool))
        return PipeViolation{K::MissingFromMagazine, p, j, pipe.tool,
                             where + " tool absent from magazine at instant " + std::to_string(j + 1)};
    }
    for (std::size_t j = pipe.start; j < pipe.end; ++j)
      if (!arcs.emplace(j, pipe.tool).second)
        return PipeViolation{K::ArcOverlap, p, j, pipe.tool,
                             where + " shares arc (" + std::to_string(j + 1) + ", " + std::to_string(j + 2) +
                                 ") with an earlier pipe"};
  }
  return std::nullopt;
}

}  // namespace toolswitch

#pragma once

// Max Pipe Construction Algorithm.
//
// A pipe (s, e, t) keeps tool t in the magazine through the idle instants
// s+1..e-1 between two consecutive uses at s and e. Pipes are built greedily
// with `end` ascending and `start` descending, each limited by the fewest
// free slots over its interior; the resulting maximum pipe count P gives
//
//   min switches = sum |T_i| - min(C, |T_1 ∪ ... ∪ T_n|) - P.
//
// When the jobs together use fewer than C distinct tools every pipe fits and
// the minimum is zero, which is why the capacity term is clamped.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "toolswitch/block_ops.hpp"
#include "toolswitch/instance.hpp"
#include "toolswitch/scratch.hpp"

namespace toolswitch {

/// Switch count from a maximum pipe count. Throws NegativeResult when the
/// pipes cannot fit (sum_required < capacity + pipes_count).
inline std::size_t pipes_to_switches(std::size_t pipes_count, std::size_t sum_required,
                                     std::size_t capacity) {
  if (sum_required < capacity + pipes_count)
    throw Error(ErrorCode::NegativeResult,
                "pipe count " + std::to_string(pipes_count) + " exceeds sum_required - capacity = " +
                    std::to_string(sum_required) + " - " + std::to_string(capacity));
  return sum_required - capacity - pipes_count;
}

/// Capacity term of the pipe identity for this instance.
inline std::size_t effective_capacity(const Instance& inst) {
  return std::min(inst.capacity(), inst.distinct_tools());
}

namespace detail {

inline EvalResult from_pipes(const Instance& inst, std::size_t pipes) {
  return {pipes_to_switches(pipes, inst.total_required(), effective_capacity(inst)), pipes,
          inst.total_required()};
}

/// Runs the pipe construction over index lists. `on_build(start, end, tools)`
/// receives the tools of each nonempty batch of pipes built for one
/// (start, end) pair, highest tool indices first.
template <class OnBuild>
std::size_t mpca_run(const SequenceView& view, EvaluatorScratch& s, OnBuild&& on_build) {
  const Instance& inst = view.instance();
  const auto n = static_cast<std::int32_t>(view.size());
  const auto capacity = static_cast<std::int32_t>(inst.capacity());

  auto& empty = s.empty;
  auto& last_seen = s.last_seen;
  auto& ends = s.pipe_ends;
  empty.resize(static_cast<std::size_t>(n));
  for (std::int32_t j = 0; j < n; ++j)
    empty[j] = capacity - static_cast<std::int32_t>(view.job_size(static_cast<std::size_t>(j)));
  last_seen.assign(inst.tool_count(), -1);
  for (ToolIndex t : view.tools(0)) last_seen[t] = 0;

  std::size_t pipes = 0;
  for (std::int32_t end = 1; end < n; ++end) {
    // Every candidate pipe ending here starts at its tool's previous use.
    ends.clear();
    for (ToolIndex t : view.tools(static_cast<std::size_t>(end)))
      if (last_seen[t] >= 0) ends.emplace_back(last_seen[t], t);
    std::sort(ends.begin(), ends.end(), [](const auto& a, const auto& b) { return a > b; });

    std::int32_t interior_low = end;  // interior is [interior_low, end-1]
    std::int32_t free_slots = capacity;
    for (std::size_t i = 0; i < ends.size();) {
      const std::int32_t start = ends[i].first;
      std::size_t group_end = i;
      while (group_end < ends.size() && ends[group_end].first == start) ++group_end;
      while (interior_low > start + 1) free_slots = std::min(free_slots, empty[--interior_low]);

      auto build = static_cast<std::int32_t>(group_end - i);
      if (interior_low < end) build = std::min(build, free_slots);
      if (build == 0) break;  // a full instant blocks every earlier start too

      if (interior_low < end) {
        for (std::int32_t j = interior_low; j < end; ++j) empty[j] -= build;
        free_slots -= build;
      }
      pipes += static_cast<std::size_t>(build);
      on_build(start, end, std::span<const std::pair<std::int32_t, ToolIndex>>(ends).subspan(
                               i, static_cast<std::size_t>(build)));
      i = group_end;
    }
    for (ToolIndex t : view.tools(static_cast<std::size_t>(end))) last_seen[t] = end;
  }
  return pipes;
}

}  // namespace detail

/// Maximum pipe count and minimum switch count for `order`.
inline EvalResult mpca_evaluate(const Instance& inst, std::span<const JobIndex> order,
                                EvaluatorScratch& scratch) {
  const auto view = sequence_view(inst, order);
  if (view.size() == 1) return {0, 0, inst.total_required()};
  const std::size_t pipes = detail::mpca_run(view, scratch, [](auto, auto, auto) {});
  return detail::from_pipes(inst, pipes);
}

struct MpcaTrace {
  EvalResult result;
  MagazineTrace magazine;
  std::vector<Pipe> pipes;
};

/// As mpca_evaluate, also returning the built pipes (including capacity-0
/// pipes between adjacent instants) and the magazines they induce, starting
/// from M_i = T_i.
inline MpcaTrace mpca_trace(const Instance& inst, std::span<const JobIndex> order,
                            EvaluatorScratch& scratch) {
  const auto view = sequence_view(inst, order);
  MpcaTrace out;
  out.magazine.full_capacity = false;
  for (std::size_t k = 0; k < view.size(); ++k) out.magazine.states.push_back(view[k]);
  if (view.size() == 1) {
    out.result = {0, 0, inst.total_required()};
    return out;
  }
  const std::size_t pipes = detail::mpca_run(view, scratch, [&](std::int32_t start, std::int32_t end,
                                                                auto batch) {
    for (const auto& [s, tool] : batch) {
      out.pipes.push_back({static_cast<std::size_t>(start), static_cast<std::size_t>(end), tool});
      for (std::int32_t j = start + 1; j < end; ++j) out.magazine.states[static_cast<std::size_t>(j)].insert(tool);
    }
  });
  out.result = detail::from_pipes(inst, pipes);
  return out;
}

/// Instrumentation hook for mpca_bitwise_evaluate that compiles away.
struct NullProbe {
  void inner_iteration() noexcept {}
  void pipes_built(std::size_t, std::size_t, std::size_t) noexcept {}
};

/// Counts inner-loop iterations and the longest built pipe (end - start).
struct InnerLoopProbe {
  std::uint64_t iterations = 0;
  std::size_t max_pipe_length = 0;

  void inner_iteration() noexcept { ++iterations; }
  void pipes_built(std::size_t start, std::size_t end, std::size_t count) noexcept {
    if (count > 0) max_pipe_length = std::max(max_pipe_length, end - start);
  }
};

/// Bit-parallel pipe construction with a range-union table and full-magazine
/// pruning. Same result as mpca_evaluate.
///
/// `empty[j]` holds the free slots left at instant j and `fullmag` the latest
/// instant known to be full; no pipe may pass through it, so starts before it
/// are never examined. `end_tools` holds the tools of T_end whose previous use
/// lies in [fullmag, end-1]; each start consumes the tools last used there, and
/// the scan stops as soon as it is empty.
template <class Probe = NullProbe>
EvalResult mpca_bitwise_evaluate(const Instance& inst, std::span<const JobIndex> order,
                                 EvaluatorScratch& s, Probe&& probe = Probe{}) {
  const auto view = sequence_view(inst, order);
  const auto n = static_cast<std::int32_t>(view.size());
  if (n == 1) return {0, 0, inst.total_required()};

  const std::size_t words = inst.words();
  const auto capacity = static_cast<std::int32_t>(inst.capacity());
  s.unions.rebuild(view);
  s.remaining.resize(words);
  s.hit.resize(words);
  std::span<Block> end_tools(s.remaining), candidates(s.hit);

  auto& empty = s.empty;
  empty.resize(static_cast<std::size_t>(n));
  for (std::int32_t j = 0; j < n; ++j)
    empty[j] = capacity - static_cast<std::int32_t>(view.job_size(static_cast<std::size_t>(j)));

  std::int32_t fullmag = 0;
  std::size_t pipes = 0;
  for (std::int32_t end = 1; end < n; ++end) {
    if (empty[end - 1] == 0) fullmag = end - 1;
    s.unions.query_into(static_cast<std::size_t>(fullmag), static_cast<std::size_t>(end - 1), end_tools);
    blocks::and_assign<Block>(end_tools, view.row(static_cast<std::size_t>(end)));

    for (std::int32_t start = end - 1; start >= fullmag; --start) {
      if (blocks::none<Block>(end_tools)) break;
      probe.inner_iteration();
      blocks::and_into<Block>(candidates, view.row(static_cast<std::size_t>(start)), end_tools);
      const auto found = static_cast<std::int32_t>(blocks::count<Block>(candidates));
      if (found == 0) continue;
      blocks::and_not_assign<Block>(end_tools, candidates);

      // Instants before the new fullmag may be over-decremented below; they
      // are never inside a later pipe, so the excess is unobservable.
      std::int32_t built = found;
      for (std::int32_t j = start + 1; j < end; ++j) {
        if (empty[j] <= built) {
          built = empty[j];
          fullmag = j;
        }
        empty[j] -= built;
      }
      pipes += static_cast<std::size_t>(built);
      probe.pipes_built(static_cast<std::size_t>(start), static_cast<std::size_t>(end),
                        static_cast<std::size_t>(built));
    }
  }
  return detail::from_pipes(inst, pipes);
}

}  // namespace toolswitch

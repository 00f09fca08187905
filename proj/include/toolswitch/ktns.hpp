#pragma once

// Keep Tool Needed Soonest (Tang & Denardo): the classical optimal tool
// loading policy for a fixed job order, in a textbook form driven by the
// next-needed matrix and in a bit-parallel form.
//
// Only transitions are counted: the initial magazine load is free and the
// result is sum over i of C - |M_i ∩ M_{i+1}|.
//
// Ties are broken by tool index: when filling, the smallest index among
// equally-soon tools is loaded; when evicting, the smallest index among
// equally-late tools is removed. Both variants produce identical traces.

#include <algorithm>
#include <cstddef>
#include <span>

#include "toolswitch/block_ops.hpp"
#include "toolswitch/instance.hpp"
#include "toolswitch/scratch.hpp"

namespace toolswitch {

namespace detail {

template <class OnInstant>
std::size_t ktns_run(const SequenceView& view, EvaluatorScratch& s, OnInstant&& on_instant) {
  const Instance& inst = view.instance();
  const std::size_t n = view.size();
  const std::size_t m = inst.tool_count();
  const std::size_t capacity = inst.capacity();

  s.next.rebuild(view, m);
  auto& in_mag = s.in_magazine;
  auto& ranked = s.ranked;
  in_mag.assign(m, 0);

  for (ToolIndex t : view.tools(0)) in_mag[t] = 1;
  if (const std::size_t fill = capacity - view.job_size(0); fill > 0) {
    ranked.clear();
    const auto* col = s.next.column(0);
    for (ToolIndex t = 0; t < m; ++t)
      if (!in_mag[t]) ranked.emplace_back(col[t], t);
    // soonest first, then smallest index
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(fill), ranked.end());
    for (std::size_t k = 0; k < fill; ++k) in_mag[ranked[k].second] = 1;
  }
  on_instant(std::size_t{0}, in_mag);

  std::size_t switches = 0;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t missing = 0;
    for (ToolIndex t : view.tools(i)) missing += in_mag[t] ? 0 : 1;
    if (missing > 0) {
      ranked.clear();
      const auto* col = s.next.column(i);
      for (ToolIndex t = 0; t < m; ++t)
        if (in_mag[t] && col[t] != i) ranked.emplace_back(col[t], t);
      // latest first, then smallest index
      auto later = [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      };
      std::nth_element(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(missing - 1),
                       ranked.end(), later);
      for (std::size_t k = 0; k < missing; ++k) in_mag[ranked[k].second] = 0;
      for (ToolIndex t : view.tools(i)) in_mag[t] = 1;
      switches += missing;
    }
    on_instant(i, in_mag);
  }
  return switches;
}

template <class OnInstant>
std::size_t ktns_bitwise_run(const SequenceView& view, EvaluatorScratch& s, OnInstant&& on_instant) {
  const Instance& inst = view.instance();
  const std::size_t n = view.size();
  const std::size_t words = inst.words();
  const std::size_t capacity = inst.capacity();

  s.magazine.resize(words);
  s.missing.resize(words);
  s.remaining.resize(words);
  s.hit.resize(words);
  std::span<Block> mag(s.magazine), missing(s.missing), remaining(s.remaining), hit(s.hit);

  blocks::copy<Block>(mag, view.row(0));
  std::size_t fill = capacity - view.job_size(0);
  for (std::size_t j = 1; j < n && fill > 0; ++j) {
    blocks::and_not_into<Block>(hit, view.row(j), mag);
    const std::size_t c = blocks::count<Block>(hit);
    if (c > fill) blocks::keep_lowest<Block>(hit, fill);
    blocks::or_assign<Block>(mag, hit);
    fill -= std::min(c, fill);
  }
  if (fill > 0) {
    // never-needed tools: smallest indices
    for (std::size_t w = 0; w < words; ++w) hit[w] = static_cast<Block>(~mag[w]);
    hit[words - 1] &= blocks::tail_mask<Block>(inst.tool_count());
    blocks::keep_lowest<Block>(hit, fill);
    blocks::or_assign<Block>(mag, hit);
  }
  on_instant(std::size_t{0}, std::span<const Block>(mag));

  std::size_t switches = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const auto need = view.row(i);
    blocks::and_not_into<Block>(missing, need, mag);
    const std::size_t k = blocks::count<Block>(missing);
    if (k > 0) {
      blocks::and_not_into<Block>(remaining, mag, need);
      // Keep the soonest-needed evictable tools; whatever stays in
      // `remaining` after the forward scan is evicted.
      std::size_t keep = blocks::count<Block>(remaining) - k;
      for (std::size_t j = i + 1; j < n && keep > 0; ++j) {
        blocks::and_into<Block>(hit, remaining, view.row(j));
        const std::size_t c = blocks::count<Block>(hit);
        if (c > keep) blocks::keep_highest<Block>(hit, keep);
        blocks::and_not_assign<Block>(remaining, hit);
        keep -= std::min(c, keep);
      }
      if (keep > 0) {
        blocks::copy<Block>(hit, remaining);
        blocks::keep_highest<Block>(hit, keep);
        blocks::and_not_assign<Block>(remaining, hit);
      }
      blocks::and_not_assign<Block>(mag, remaining);
      blocks::or_assign<Block>(mag, missing);
      switches += k;
    }
    on_instant(i, std::span<const Block>(mag));
  }
  return switches;
}

}  // namespace detail

/// Minimum number of tool switches for `order` via KTNS.
inline EvalResult ktns_evaluate(const Instance& inst, std::span<const JobIndex> order,
                                EvaluatorScratch& scratch) {
  const auto view = sequence_view(inst, order);
  const std::size_t switches = detail::ktns_run(view, scratch, [](std::size_t, const auto&) {});
  return {switches, std::nullopt, inst.total_required()};
}

/// As ktns_evaluate, also returning the magazine contents at every instant.
inline std::pair<EvalResult, MagazineTrace> ktns_trace(const Instance& inst,
                                                       std::span<const JobIndex> order,
                                                       EvaluatorScratch& scratch) {
  const auto view = sequence_view(inst, order);
  MagazineTrace trace;
  trace.full_capacity = true;
  trace.states.reserve(order.size());
  const std::size_t switches = detail::ktns_run(view, scratch, [&](std::size_t, const auto& flags) {
    ToolSet state(inst.tool_count());
    for (ToolIndex t = 0; t < flags.size(); ++t)
      if (flags[t]) state.insert(t);
    trace.states.push_back(std::move(state));
  });
  return {{switches, std::nullopt, inst.total_required()}, std::move(trace)};
}

/// KTNS over bit-block sets; same result as ktns_evaluate.
inline EvalResult ktns_bitwise_evaluate(const Instance& inst, std::span<const JobIndex> order,
                                        EvaluatorScratch& scratch) {
  const auto view = sequence_view(inst, order);
  const std::size_t switches =
      detail::ktns_bitwise_run(view, scratch, [](std::size_t, std::span<const Block>) {});
  return {switches, std::nullopt, inst.total_required()};
}

inline std::pair<EvalResult, MagazineTrace> ktns_bitwise_trace(const Instance& inst,
                                                               std::span<const JobIndex> order,
                                                               EvaluatorScratch& scratch) {
  const auto view = sequence_view(inst, order);
  MagazineTrace trace;
  trace.full_capacity = true;
  const std::size_t switches =
      detail::ktns_bitwise_run(view, scratch, [&](std::size_t, std::span<const Block> mag) {
        trace.states.push_back(ToolSet::from_blocks(inst.tool_count(), mag));
      });
  return {{switches, std::nullopt, inst.total_required()}, std::move(trace)};
}

}  // namespace toolswitch

#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "toolswitch/toolswitch.hpp"

namespace tst {

namespace ts = toolswitch;

/// Builds an instance from 1-based tool lists.
inline ts::Instance instance_1b(std::size_t m, std::size_t capacity, std::vector<std::vector<ts::ToolIndex>> jobs) {
  ts::InstanceData data{m, capacity, {}};
  for (auto& job : jobs) {
    for (auto& t : job) --t;
    data.jobs.push_back(std::move(job));
  }
  return ts::validate_instance(std::move(data));
}

/// Six jobs over seven tools, capacity 5.
inline ts::Instance six_jobs() {
  return instance_1b(7, 5, {{4, 5, 6}, {1, 3, 4, 5}, {1, 2, 7}, {2, 3, 7}, {4, 5, 7}, {1, 2, 3, 6}});
}

inline ts::JobSequence seq_1b(std::vector<std::size_t> ids) { return ts::JobSequence::from_one_based(ids); }

/// Naive KTNS on std::set, used as an independent reference.
inline std::size_t naive_ktns(const ts::Instance& inst, const ts::JobSequence& seq,
                              std::vector<std::set<ts::ToolIndex>>* states = nullptr) {
  const std::size_t n = seq.size(), m = inst.tool_count(), c = inst.capacity();
  auto needs = [&](std::size_t i, ts::ToolIndex t) { return inst.required(seq[i]).contains(t); };
  auto next_use = [&](ts::ToolIndex t, std::size_t from) {
    for (std::size_t j = from; j < n; ++j)
      if (needs(j, t)) return j;
    return n;
  };
  std::set<ts::ToolIndex> mag;
  for (auto t : inst.tools(seq[0])) mag.insert(t);
  // fill with the soonest needed, ties to the smallest index
  while (mag.size() < c) {
    ts::ToolIndex best = 0;
    std::size_t best_next = n + 1;
    for (ts::ToolIndex t = 0; t < m; ++t)
      if (!mag.count(t) && next_use(t, 1) < best_next) best = t, best_next = next_use(t, 1);
    mag.insert(best);
  }
  if (states) states->assign(1, mag);
  std::size_t switches = 0;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t missing = 0;
    for (auto t : inst.tools(seq[i])) missing += mag.count(t) == 0;
    for (std::size_t k = 0; k < missing; ++k) {
      // evict the latest needed, ties to the smallest index
      ts::ToolIndex victim = 0;
      std::size_t latest = 0;
      bool any = false;
      for (auto t : mag) {
        if (needs(i, t)) continue;
        const std::size_t nu = next_use(t, i + 1);
        if (!any || nu > latest) victim = t, latest = nu, any = true;
      }
      mag.erase(victim);
    }
    for (auto t : inst.tools(seq[i])) mag.insert(t);
    switches += missing;
    if (states) states->push_back(mag);
  }
  return switches;
}

}  // namespace tst

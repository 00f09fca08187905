#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toolswitch/evaluator.hpp"
#include "toolswitch/generator.hpp"
#include "toolswitch/instance_io.hpp"
#include "toolswitch/oracle.hpp"

namespace toolswitch {

struct VerifyConfig {
  std::size_t trials = 10'000;
  std::uint64_t seed = 1;
  /// Size bounds for the larger half of the random draws.
  std::size_t max_n = 40;
  std::size_t max_m = 60;
  std::size_t max_capacity = 30;
  /// The DP oracle runs whenever C(m, C) * n fits this budget.
  std::uint64_t dp_budget = 200'000;
  /// When nonempty, trials draw random orders for these instances instead
  /// of drawing instances.
  std::vector<Instance> instances;
};

struct Counterexample {
  Instance instance;
  JobSequence sequence;
  std::vector<std::pair<std::string, std::size_t>> values;

  /// Native-format instance followed by the order and each method's value.
  std::string fixture() const {
    std::string s = serialize_instance(instance);
    s += "# sequence " + sequence.to_string() + "\n";
    for (const auto& [name, value] : values) s += "# " + name + " = " + std::to_string(value) + "\n";
    return s;
  }
};

struct VerifyReport {
  std::size_t trials = 0;
  std::size_t oracle_checks = 0;
  std::optional<Counterexample> failure;
  bool passed() const { return !failure; }
};

/// Test hook that may alter an evaluator's result before comparison.
using FaultHook = std::function<void(EvaluatorKind, EvalResult&)>;

/// Draws a random instance with n <= max_n, m <= max_m, C <= max_capacity;
/// jobs may repeat.
inline Instance draw_random_instance(Rng& rng, std::size_t max_n, std::size_t max_m, std::size_t max_capacity) {
  const auto n = static_cast<std::size_t>(rng.between(1, max_n));
  const auto m = static_cast<std::size_t>(rng.between(2, std::max<std::size_t>(2, max_m)));
  const auto capacity = static_cast<std::size_t>(rng.between(1, std::min(max_capacity, m - 1)));
  const auto size_max = static_cast<std::size_t>(rng.between(1, capacity));
  const auto size_min = static_cast<std::size_t>(rng.between(1, size_max));
  return validate_instance(draw_instance_data(rng, n, m, capacity, size_min, size_max, false));
}

/// Four-way evaluator equality plus, where affordable, equality with the DP
/// oracle. Even trials draw tiny instances (n <= 6, m <= 8, C <= 4) so the
/// oracle always runs on them; odd trials use the configured bounds.
inline VerifyReport run_verification(const VerifyConfig& config, const FaultHook& fault = {}) {
  VerifyReport report;
  Rng rng(config.seed);
  EvaluatorScratch scratch;
  for (std::size_t t = 0; t < config.trials; ++t) {
    std::optional<Instance> drawn;
    if (config.instances.empty())
      drawn = t % 2 == 0 ? draw_random_instance(rng, 6, 8, 4)
                         : draw_random_instance(rng, config.max_n, config.max_m, config.max_capacity);
    const Instance& inst = drawn ? *drawn : config.instances[t % config.instances.size()];
    JobSequence seq = SequenceStream(inst.job_count(), rng.next()).next();

    std::vector<std::pair<std::string, std::size_t>> values;
    for (auto kind : all_evaluators) {
      EvalResult r = evaluate(kind, inst, seq, scratch);
      if (fault) fault(kind, r);
      values.emplace_back(std::string(to_string(kind)), r.switches);
    }
    const std::uint64_t states = detail::binomial_saturating(inst.tool_count(), inst.capacity());
    if (inst.tool_count() <= 64 && states <= config.dp_budget / inst.job_count()) {
      values.emplace_back("dp-oracle", tlp_dp_optimal(inst, seq, config.dp_budget));
      ++report.oracle_checks;
    }
    ++report.trials;
    const bool agree = std::all_of(values.begin(), values.end(),
                                   [&](const auto& v) { return v.second == values.front().second; });
    if (!agree) {
      report.failure = Counterexample{inst, std::move(seq), std::move(values)};
      break;
    }
  }
  return report;
}

}  // namespace toolswitch

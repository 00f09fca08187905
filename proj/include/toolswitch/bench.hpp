#pragma once

// Benchmark protocol: per family, 10 generated instances and `sequences`
// random orders per instance; each evaluator is timed over the whole
// workload with a monotonic clock around the evaluation loop only (order
// generation and I/O are excluded), after one untimed warm-up pass.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <thread>
#include <vector>

#include "toolswitch/evaluator.hpp"
#include "toolswitch/generator.hpp"
#include "toolswitch/results_csv.hpp"

namespace toolswitch {

struct BenchConfig {
  std::vector<DatasetSpec> families;
  std::size_t sequences = 100'000;
  std::vector<EvaluatorKind> evaluators{all_evaluators.begin(), all_evaluators.end()};
  /// Worker threads; each (instance, evaluator) cell is still timed sequentially.
  std::size_t parallel = 1;
};

struct FamilyResult {
  DatasetSpec spec;
  std::vector<BenchRow> rows;              // one per evaluator, in config order
  std::vector<std::uint64_t> checksums;    // sum of switches over the workload
  /// time(first evaluator) / time(this evaluator)
  std::vector<double> speedups;
  bool consistent() const {
    for (auto c : checksums)
      if (c != checksums.front()) return false;
    return true;
  }
};

struct BenchReport {
  std::vector<FamilyResult> families;

  std::vector<BenchRow> rows() const {
    std::vector<BenchRow> out;
    for (const auto& f : families) out.insert(out.end(), f.rows.begin(), f.rows.end());
    return out;
  }
  bool consistent() const {
    for (const auto& f : families)
      if (!f.consistent()) return false;
    return true;
  }
};

/// Seed of the random orders for one instance of a family.
inline std::uint64_t sequence_seed(const DatasetSpec& spec, std::size_t instance) {
  return mix_seed(spec.seed, 0x5e9 + instance);
}

inline BenchReport run_bench(const BenchConfig& config) {
  if (config.sequences == 0) throw Error(ErrorCode::InvalidSpec, "sequences must be at least 1");
  if (config.evaluators.empty()) throw Error(ErrorCode::InvalidSpec, "no evaluators selected");

  struct Cell {
    std::size_t family, instance, evaluator;
  };
  std::vector<std::vector<Instance>> instances;
  std::vector<Cell> cells;
  for (std::size_t f = 0; f < config.families.size(); ++f) {
    instances.push_back(generate_instances(config.families[f]));
    for (std::size_t i = 0; i < instances.back().size(); ++i)
      for (std::size_t e = 0; e < config.evaluators.size(); ++e) cells.push_back({f, i, e});
  }

  const std::size_t evaluators = config.evaluators.size();
  std::vector<double> seconds(config.families.size() * evaluators, 0.0);
  std::vector<std::uint64_t> checksums(config.families.size() * evaluators, 0);
  std::mutex merge;
  std::atomic<std::size_t> next_cell{0};

  auto worker = [&] {
    EvaluatorScratch scratch;
    std::vector<JobIndex> orders;
    for (std::size_t c; (c = next_cell.fetch_add(1)) < cells.size();) {
      const Cell cell = cells[c];
      const DatasetSpec& spec = config.families[cell.family];
      const Instance& inst = instances[cell.family][cell.instance];
      const std::size_t n = inst.job_count();
      fill_random_orders(n, config.sequences, sequence_seed(spec, cell.instance), orders);

      auto [elapsed, checksum] = with_evaluator(config.evaluators[cell.evaluator], [&](auto eval) {
        auto pass = [&] {
          std::uint64_t sum = 0;
          for (std::size_t k = 0; k < config.sequences; ++k)
            sum += eval(inst, std::span<const JobIndex>(orders).subspan(k * n, n), scratch).switches;
          return sum;
        };
        if (cell.instance == 0) (void)pass();  // warm-up
        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t sum = pass();
        const auto t1 = std::chrono::steady_clock::now();
        return std::pair{std::chrono::duration<double>(t1 - t0).count(), sum};
      });

      std::lock_guard lock(merge);
      seconds[cell.family * evaluators + cell.evaluator] += elapsed;
      checksums[cell.family * evaluators + cell.evaluator] += checksum;
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, config.parallel);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  BenchReport report;
  for (std::size_t f = 0; f < config.families.size(); ++f) {
    const DatasetSpec& spec = config.families[f];
    FamilyResult fr;
    fr.spec = spec;
    const double evals = static_cast<double>(spec.instances) * static_cast<double>(config.sequences);
    for (std::size_t e = 0; e < evaluators; ++e) {
      const double s = seconds[f * evaluators + e];
      fr.rows.push_back({spec.family, spec.n, spec.m, spec.capacity, std::string(to_string(config.evaluators[e])),
                         spec.instances, config.sequences, s, s * 1e6 / evals});
      fr.checksums.push_back(checksums[f * evaluators + e]);
    }
    for (std::size_t e = 0; e < evaluators; ++e) {
      const double s = seconds[f * evaluators + e];
      fr.speedups.push_back(s > 0 ? seconds[f * evaluators] / s : 0.0);
    }
    report.families.push_back(std::move(fr));
  }
  return report;
}

}  // namespace toolswitch

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "toolswitch/instance.hpp"
#include "toolswitch/oracle.hpp"
#include "toolswitch/rng.hpp"

namespace toolswitch {

/// Parameters of a benchmark family. Job sizes default to [max(1, C/2), C].
struct DatasetSpec {
  std::string family = "custom";
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t capacity = 0;
  std::size_t instances = 10;
  std::optional<std::size_t> job_size_min;
  std::optional<std::size_t> job_size_max;
  std::uint64_t seed = 1;

  std::size_t min_job_size() const { return job_size_min.value_or(std::max<std::size_t>(1, capacity / 2)); }
  std::size_t max_job_size() const { return job_size_max.value_or(capacity); }
};

inline void validate_spec(const DatasetSpec& spec) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidSpec, "dataset '" + spec.family + "': " + why);
  };
  if (spec.n == 0) fail("n must be at least 1");
  if (spec.instances == 0) fail("instances must be at least 1");
  if (spec.capacity >= spec.m) fail("capacity must be below the tool count");
  if (spec.min_job_size() < 1) fail("job_size_min must be at least 1");
  if (spec.min_job_size() > spec.max_job_size()) fail("job_size_min exceeds job_size_max");
  if (spec.max_job_size() > spec.capacity) fail("job_size_max exceeds capacity");
  std::uint64_t distinct = 0;
  for (std::size_t k = spec.min_job_size(); k <= spec.max_job_size() && distinct < spec.n; ++k)
    distinct += detail::binomial_saturating(spec.m, k);
  if (distinct < spec.n) fail("too few distinct tool sets for " + std::to_string(spec.n) + " distinct jobs");
}

struct FamilyParams {
  std::string_view label;
  std::size_t n, m, capacity;
};

/// (n, m, C) of the Catanzaro et al. benchmark families.
inline constexpr std::array<FamilyParams, 16> catanzaro_families{{
    {"A1", 10, 10, 4},  {"A2", 10, 10, 5},  {"A3", 10, 10, 6},  {"A4", 10, 10, 7},
    {"B1", 15, 20, 6},  {"B2", 15, 20, 8},  {"B3", 15, 20, 10}, {"B4", 15, 20, 12},
    {"C1", 30, 40, 15}, {"C2", 30, 40, 17}, {"C3", 30, 40, 20}, {"C4", 30, 40, 25},
    {"D1", 40, 60, 20}, {"D2", 40, 60, 22}, {"D3", 40, 60, 25}, {"D4", 40, 60, 30},
}};

/// Spec for a named family; the seed is salted by the label so families
/// generated under one base seed differ from each other.
inline std::optional<DatasetSpec> catanzaro_family(std::string_view label, std::uint64_t seed = 1) {
  for (const auto& f : catanzaro_families)
    if (f.label == label) {
      DatasetSpec spec;
      spec.family = std::string(f.label);
      spec.n = f.n;
      spec.m = f.m;
      spec.capacity = f.capacity;
      spec.instances = 10;
      spec.seed = mix_seed(seed, hash_label(label));
      return spec;
    }
  return std::nullopt;
}

/// Random instance data: each job size uniform in [size_min, size_max], tools
/// uniform without replacement. With `distinct_jobs`, a job equal to an
/// earlier one is redrawn. Preconditions as validate_spec.
inline InstanceData draw_instance_data(Rng& rng, std::size_t n, std::size_t m, std::size_t capacity,
                                       std::size_t size_min, std::size_t size_max, bool distinct_jobs) {
  InstanceData data;
  data.tools = m;
  data.capacity = capacity;
  std::vector<ToolIndex> pool(m);
  std::set<std::vector<ToolIndex>> seen;
  constexpr int max_redraws = 10'000;
  for (std::size_t j = 0; j < n; ++j) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == max_redraws)
        throw Error(ErrorCode::GenerationFailed, "could not draw a distinct job " + std::to_string(j + 1));
      const auto size = static_cast<std::size_t>(rng.between(size_min, size_max));
      std::iota(pool.begin(), pool.end(), ToolIndex{0});
      for (std::size_t i = 0; i < size; ++i)
        std::swap(pool[i], pool[i + static_cast<std::size_t>(rng.below(m - i))]);
      std::vector<ToolIndex> job(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
      std::sort(job.begin(), job.end());
      if (distinct_jobs && !seen.insert(job).second) continue;
      data.jobs.push_back(std::move(job));
      break;
    }
  }
  return data;
}

/// `spec.instances` validated instances, deterministic in spec.seed.
inline std::vector<Instance> generate_instances(const DatasetSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);
  std::vector<Instance> out;
  out.reserve(spec.instances);
  for (std::size_t k = 0; k < spec.instances; ++k)
    out.push_back(validate_instance(
        draw_instance_data(rng, spec.n, spec.m, spec.capacity, spec.min_job_size(), spec.max_job_size(), true)));
  return out;
}

/// Endless stream of uniformly random job orders.
class SequenceStream {
 public:
  SequenceStream(std::size_t n, std::uint64_t seed) : rng_(seed), n_(n) {}

  /// Writes the next order into `out` (size n).
  void next(std::span<JobIndex> out) {
    std::iota(out.begin(), out.end(), JobIndex{0});
    rng_.shuffle(out);
  }
  JobSequence next() {
    std::vector<JobIndex> order(n_);
    next(order);
    return JobSequence(std::move(order));
  }

 private:
  Rng rng_;
  std::size_t n_;
};

inline std::vector<JobSequence> random_sequences(std::size_t n, std::size_t count, std::uint64_t seed) {
  SequenceStream stream(n, seed);
  std::vector<JobSequence> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(stream.next());
  return out;
}

/// `count` orders of length n stored back to back; same draws as random_sequences.
inline void fill_random_orders(std::size_t n, std::size_t count, std::uint64_t seed, std::vector<JobIndex>& flat) {
  SequenceStream stream(n, seed);
  flat.resize(n * count);
  for (std::size_t k = 0; k < count; ++k) stream.next(std::span<JobIndex>(flat).subspan(k * n, n));
}

}  // namespace toolswitch

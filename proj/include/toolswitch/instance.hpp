#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toolswitch/config.hpp"
#include "toolswitch/error.hpp"
#include "toolswitch/tool_set.hpp"

namespace toolswitch {

/// Unvalidated instance description with 0-based tool indices.
struct InstanceData {
  std::size_t tools = 0;     // m
  std::size_t capacity = 0;  // C
  std::vector<std::vector<ToolIndex>> jobs;
};

class Instance;
Instance validate_instance(InstanceData data);

/// A validated SSP instance: n jobs over m tools with magazine capacity C.
/// Immutable; only obtainable through validate_instance().
class Instance {
 public:
  std::size_t job_count() const noexcept { return sets_.size(); }
  std::size_t tool_count() const noexcept { return tools_; }
  std::size_t capacity() const noexcept { return capacity_; }

  /// Blocks per ToolSet row.
  std::size_t words() const noexcept { return words_; }

  const ToolSet& required(JobIndex j) const { return sets_[j]; }
  /// Required tools of job j, ascending.
  std::span<const ToolIndex> tools(JobIndex j) const { return lists_[j]; }
  std::size_t job_size(JobIndex j) const { return lists_[j].size(); }
  /// Flat block row of job j (same bits as required(j)).
  std::span<const Block> row(JobIndex j) const {
    return std::span<const Block>(flat_).subspan(static_cast<std::size_t>(j) * words_, words_);
  }

  /// Sum of |T_i| over all jobs.
  std::size_t total_required() const noexcept { return total_required_; }
  /// |T_1 ∪ ... ∪ T_n|.
  std::size_t distinct_tools() const noexcept { return distinct_tools_; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.tools_ == b.tools_ && a.capacity_ == b.capacity_ && a.lists_ == b.lists_;
  }

 private:
  friend Instance validate_instance(InstanceData data);
  Instance() = default;

  std::size_t tools_ = 0;
  std::size_t capacity_ = 0;
  std::size_t words_ = 0;
  std::size_t total_required_ = 0;
  std::size_t distinct_tools_ = 0;
  std::vector<ToolSet> sets_;
  std::vector<std::vector<ToolIndex>> lists_;
  std::vector<Block> flat_;
};

/// Checks every instance invariant and returns the immutable Instance.
/// Job tool lists are sorted; a repeated tool inside one job is rejected.
inline Instance validate_instance(InstanceData data) {
  if (data.jobs.empty()) throw Error(ErrorCode::NoJobs, "instance has no jobs");
  if (data.capacity >= data.tools)
    throw Error(ErrorCode::CapacityNotBelowToolCount,
                "capacity " + std::to_string(data.capacity) + " must be below tool count " +
                    std::to_string(data.tools));

  Instance inst;
  inst.tools_ = data.tools;
  inst.capacity_ = data.capacity;
  inst.words_ = blocks::words_for<Block>(data.tools);
  inst.flat_.assign(inst.words_ * data.jobs.size(), Block{0});
  inst.sets_.reserve(data.jobs.size());
  ToolSet used(data.tools);

  for (std::size_t j = 0; j < data.jobs.size(); ++j) {
    auto& list = data.jobs[j];
    const std::size_t job = j + 1;
    for (ToolIndex t : list)
      if (t >= data.tools)
        throw Error(ErrorCode::BadToolIndex,
                    "job " + std::to_string(job) + " uses tool " + std::to_string(t + 1) +
                        " outside 1.." + std::to_string(data.tools),
                    job);
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
      throw Error(ErrorCode::BadToolIndex, "job " + std::to_string(job) + " repeats a tool", job);
    if (list.empty()) throw Error(ErrorCode::EmptyJob, "job " + std::to_string(job) + " needs no tools", job);
    if (list.size() > data.capacity)
      throw Error(ErrorCode::JobTooLarge,
                  "job " + std::to_string(job) + " needs " + std::to_string(list.size()) +
                      " tools, capacity is " + std::to_string(data.capacity),
                  job);

    auto set = ToolSet::from_indices(data.tools, list);
    std::copy(set.blocks().begin(), set.blocks().end(), inst.flat_.begin() + j * inst.words_);
    used |= set;
    inst.total_required_ += list.size();
    inst.sets_.push_back(std::move(set));
  }
  inst.distinct_tools_ = used.size();
  inst.lists_ = std::move(data.jobs);
  return inst;
}

/// Processing order: a permutation of {0, ..., n-1}.
class JobSequence {
 public:
  JobSequence() = default;
  /// Throws NotAPermutation unless `order` contains each of 0..n-1 exactly once.
  explicit JobSequence(std::vector<JobIndex> order) : order_(std::move(order)) {
    std::vector<bool> seen(order_.size(), false);
    for (JobIndex j : order_) {
      if (j >= order_.size() || seen[j])
        throw Error(ErrorCode::NotAPermutation, "sequence is not a permutation of the jobs");
      seen[j] = true;
    }
  }

  static JobSequence identity(std::size_t n) {
    std::vector<JobIndex> order(n);
    std::iota(order.begin(), order.end(), JobIndex{0});
    return JobSequence(std::move(order));
  }

  /// From 1-based job ids as they appear in files and on the command line.
  static JobSequence from_one_based(std::span<const std::size_t> ids) {
    std::vector<JobIndex> order;
    order.reserve(ids.size());
    for (std::size_t id : ids) {
      if (id == 0 || id > ids.size())
        throw Error(ErrorCode::NotAPermutation, "job id " + std::to_string(id) + " out of range");
      order.push_back(static_cast<JobIndex>(id - 1));
    }
    return JobSequence(std::move(order));
  }

  std::size_t size() const noexcept { return order_.size(); }
  JobIndex operator[](std::size_t k) const { return order_[k]; }
  std::span<const JobIndex> order() const noexcept { return order_; }
  operator std::span<const JobIndex>() const noexcept { return order_; }

  JobSequence inverse() const {
    std::vector<JobIndex> inv(order_.size());
    for (std::size_t k = 0; k < order_.size(); ++k) inv[order_[k]] = static_cast<JobIndex>(k);
    return JobSequence(std::move(inv));
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < order_.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(order_[k] + 1);
    }
    return s;
  }

  friend bool operator==(const JobSequence&, const JobSequence&) = default;
  friend auto operator<=>(const JobSequence&, const JobSequence&) = default;

 private:
  std::vector<JobIndex> order_;
};

/// Jobs of an instance seen in processing order: element k is T_{order[k]}.
class SequenceView {
 public:
  SequenceView(const Instance& inst, std::span<const JobIndex> order) : inst_(&inst), order_(order) {}

  std::size_t size() const noexcept { return order_.size(); }
  const ToolSet& operator[](std::size_t k) const { return inst_->required(order_[k]); }
  std::span<const ToolIndex> tools(std::size_t k) const { return inst_->tools(order_[k]); }
  std::span<const Block> row(std::size_t k) const { return inst_->row(order_[k]); }
  std::size_t job_size(std::size_t k) const { return inst_->job_size(order_[k]); }
  JobIndex job(std::size_t k) const { return order_[k]; }
  const Instance& instance() const noexcept { return *inst_; }

 private:
  const Instance* inst_;
  std::span<const JobIndex> order_;
};

inline void require_length(const Instance& inst, std::span<const JobIndex> order) {
  if (order.size() != inst.job_count())
    throw Error(ErrorCode::LengthMismatch, "sequence has " + std::to_string(order.size()) +
                                               " jobs, instance has " +
                                               std::to_string(inst.job_count()));
}

/// Reindexes the instance by `order`; throws LengthMismatch on a size mismatch.
inline SequenceView sequence_view(const Instance& inst, std::span<const JobIndex> order) {
  require_length(inst, order);
  return SequenceView(inst, order);
}

/// Magazine contents per instant, as produced by a traced evaluation.
struct MagazineTrace {
  std::vector<ToolSet> states;
  /// Every |M_i| == C. Set for KTNS traces; MPCA traces may leave slots empty.
  bool full_capacity = false;
};

/// Tool kept unused in the magazine strictly between instants `start` and `end`
/// (0-based instants of the sequence), where it is required at both ends.
struct Pipe {
  std::size_t start = 0;
  std::size_t end = 0;
  ToolIndex tool = 0;

  /// Empty-slot demand: number of interior instants.
  std::size_t capacity() const noexcept { return end - start - 1; }
  std::size_t length() const noexcept { return end - start; }
  friend bool operator==(const Pipe&, const Pipe&) = default;
  friend auto operator<=>(const Pipe&, const Pipe&) = default;
};

struct EvalResult {
  std::size_t switches = 0;
  /// Present for MPCA evaluators only.
  std::optional<std::size_t> pipes_count;
  std::size_t sum_required = 0;
  friend bool operator==(const EvalResult&, const EvalResult&) = default;
};

}  // namespace toolswitch

#pragma once

#include <bit>
#include <cstddef>
#include <span>
#include <vector>

#include "toolswitch/block_ops.hpp"
#include "toolswitch/instance.hpp"

namespace toolswitch {

/// Doubling table answering union(T_i, ..., T_j) over a sequence of sets.
///
/// Level k stores the union of every window of 2^k consecutive sets, so any
/// range is covered by two overlapping windows; union is idempotent, so the
/// overlap is harmless. Build is O(n log n) row unions, query is two.
class RangeUnionTable {
 public:
  RangeUnionTable() = default;

  void rebuild(const SequenceView& view) {
    n_ = view.size();
    words_ = view.instance().words();
    universe_ = view.instance().tool_count();
    const std::size_t levels = n_ == 0 ? 0 : static_cast<std::size_t>(std::bit_width(n_));
    offsets_.resize(levels);
    std::size_t total = 0;
    for (std::size_t k = 0; k < levels; ++k) {
      offsets_[k] = total;
      total += (n_ - (std::size_t{1} << k) + 1) * words_;
    }
    data_.resize(total);

    for (std::size_t i = 0; i < n_; ++i) blocks::copy<Block>(row_mut(0, i), view.row(i));
    for (std::size_t k = 1; k < levels; ++k) {
      const std::size_t half = std::size_t{1} << (k - 1);
      const std::size_t rows = n_ - (std::size_t{1} << k) + 1;
      for (std::size_t i = 0; i < rows; ++i)
        blocks::or_into<Block>(row_mut(k, i), row(k - 1, i), row(k - 1, i + half));
    }
  }

  std::size_t size() const noexcept { return n_; }

  /// out = union of rows first..last (0-based, inclusive). Unchecked.
  void query_into(std::size_t first, std::size_t last, std::span<Block> out) const {
    const std::size_t len = last - first + 1;
    const auto k = static_cast<std::size_t>(std::bit_width(len) - 1);
    blocks::or_into<Block>(out, row(k, first), row(k, last + 1 - (std::size_t{1} << k)));
  }

  /// Checked query; throws BadRange unless first <= last < size().
  ToolSet query(std::size_t first, std::size_t last) const {
    if (first > last || last >= n_)
      throw Error(ErrorCode::BadRange, "range [" + std::to_string(first) + ", " +
                                           std::to_string(last) + "] outside 0.." +
                                           std::to_string(n_ == 0 ? 0 : n_ - 1));
    std::vector<Block> out(words_);
    query_into(first, last, out);
    return ToolSet::from_blocks(universe_, out);
  }

  std::span<const Block> row(std::size_t level, std::size_t i) const {
    return std::span<const Block>(data_).subspan(offsets_[level] + i * words_, words_);
  }

 private:
  std::span<Block> row_mut(std::size_t level, std::size_t i) {
    return std::span<Block>(data_).subspan(offsets_[level] + i * words_, words_);
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t universe_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Block> data_;
};

inline RangeUnionTable range_union_table(const SequenceView& view) {
  RangeUnionTable t;
  t.rebuild(view);
  return t;
}

}  // namespace toolswitch

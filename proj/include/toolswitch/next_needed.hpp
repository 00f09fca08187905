#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "toolswitch/instance.hpp"

namespace toolswitch {

/// Next-needed matrix of KTNS: at(t, j) is the first instant >= j at which
/// tool t is required, or sentinel() == n when it is never needed again.
/// Instants are 0-based; the 1-based form adds one to every entry.
class NextNeededMatrix {
 public:
  NextNeededMatrix() = default;

  void rebuild(const SequenceView& view, std::size_t tools) {
    n_ = view.size();
    m_ = tools;
    cells_.resize(n_ * m_);
    const auto sentinel = static_cast<std::uint32_t>(n_);
    // Column-major: column j holds the m entries for instant j.
    auto col = [&](std::size_t j) { return cells_.begin() + static_cast<std::ptrdiff_t>(j * m_); };
    std::fill(col(n_ - 1), col(n_ - 1) + static_cast<std::ptrdiff_t>(m_), sentinel);
    for (ToolIndex t : view.tools(n_ - 1)) cells_[(n_ - 1) * m_ + t] = static_cast<std::uint32_t>(n_ - 1);
    for (std::size_t j = n_ - 1; j-- > 0;) {
      std::copy(col(j + 1), col(j + 1) + static_cast<std::ptrdiff_t>(m_), col(j));
      for (ToolIndex t : view.tools(j)) cells_[j * m_ + t] = static_cast<std::uint32_t>(j);
    }
  }

  std::uint32_t at(ToolIndex tool, std::size_t instant) const { return cells_[instant * m_ + tool]; }
  const std::uint32_t* column(std::size_t instant) const { return cells_.data() + instant * m_; }
  std::uint32_t sentinel() const noexcept { return static_cast<std::uint32_t>(n_); }
  std::size_t tool_count() const noexcept { return m_; }
  std::size_t instant_count() const noexcept { return n_; }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint32_t> cells_;
};

inline NextNeededMatrix next_needed_matrix(const SequenceView& view, std::size_t tools) {
  NextNeededMatrix a;
  a.rebuild(view, tools);
  return a;
}

}  // namespace toolswitch

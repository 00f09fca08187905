#pragma once

#include <bit>
#include <cassert>
#include <concepts>
#include <cstddef>
#include <iterator>
#include <ranges>
#include <span>
#include <vector>

#include "toolswitch/block_ops.hpp"
#include "toolswitch/config.hpp"
#include "toolswitch/error.hpp"

namespace toolswitch {

/// Fixed-universe set of tool indices stored as a bit vector.
///
/// Bits at positions >= universe_size() are always zero. Binary operators
/// require both operands to share a universe (checked by assert only).
template <std::unsigned_integral B>
class BasicToolSet {
 public:
  using block_type = B;
  static constexpr std::size_t block_bits = blocks::bits_per<B>;

  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = ToolIndex;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = ToolIndex;

    const_iterator() = default;

    ToolIndex operator*() const {
      return static_cast<ToolIndex>(word_ * block_bits +
                                    static_cast<std::size_t>(std::countr_zero(current_)));
    }
    const_iterator& operator++() {
      current_ &= static_cast<B>(current_ - 1);
      advance();
      return *this;
    }
    const_iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const const_iterator& a, const const_iterator& b) {
      return a.word_ == b.word_ && a.current_ == b.current_;
    }

   private:
    friend class BasicToolSet;
    const_iterator(std::span<const B> words, std::size_t word)
        : words_(words), word_(word), current_(word < words.size() ? words[word] : B{0}) {
      advance();
    }
    void advance() {
      while (current_ == 0 && word_ < words_.size()) {
        ++word_;
        current_ = word_ < words_.size() ? words_[word_] : B{0};
      }
    }

    std::span<const B> words_;
    std::size_t word_ = 0;
    B current_ = 0;
  };

  BasicToolSet() = default;
  explicit BasicToolSet(std::size_t universe)
      : blocks_(blocks::words_for<B>(universe), B{0}), universe_(universe) {}

  /// Builds a set from 0-based indices; throws BadToolIndex on out-of-range input.
  template <std::ranges::input_range R>
  static BasicToolSet from_indices(std::size_t universe, R&& tools) {
    BasicToolSet s(universe);
    for (auto t : tools) {
      if (static_cast<std::size_t>(t) >= universe)
        throw Error(ErrorCode::BadToolIndex, "tool index out of range");
      s.insert(static_cast<ToolIndex>(t));
    }
    return s;
  }
  static BasicToolSet from_indices(std::size_t universe, std::initializer_list<ToolIndex> tools) {
    return from_indices(universe, std::span<const ToolIndex>(tools.begin(), tools.size()));
  }

  /// Adopts raw blocks; bits past `universe` are cleared.
  static BasicToolSet from_blocks(std::size_t universe, std::span<const B> words) {
    BasicToolSet s(universe);
    for (std::size_t i = 0; i < s.blocks_.size() && i < words.size(); ++i) s.blocks_[i] = words[i];
    if (!s.blocks_.empty()) s.blocks_.back() &= blocks::tail_mask<B>(universe);
    return s;
  }

  /// The full set {0, ..., universe-1}.
  static BasicToolSet full(std::size_t universe) {
    BasicToolSet s(universe);
    for (auto& w : s.blocks_) w = static_cast<B>(~B{0});
    if (!s.blocks_.empty()) s.blocks_.back() &= blocks::tail_mask<B>(universe);
    return s;
  }

  std::size_t universe_size() const noexcept { return universe_; }
  std::span<const B> blocks() const noexcept { return blocks_; }

  bool contains(ToolIndex t) const {
    assert(t < universe_);
    return (blocks_[t / block_bits] >> (t % block_bits)) & B{1};
  }
  void insert(ToolIndex t) {
    assert(t < universe_);
    blocks_[t / block_bits] |= static_cast<B>(B{1} << (t % block_bits));
  }
  void erase(ToolIndex t) {
    assert(t < universe_);
    blocks_[t / block_bits] &= static_cast<B>(~(B{1} << (t % block_bits)));
  }
  void clear() noexcept {
    for (auto& w : blocks_) w = 0;
  }

  std::size_t size() const noexcept { return blocks::count<B>(blocks_); }
  bool empty() const noexcept { return blocks::none<B>(blocks_); }

  bool is_subset_of(const BasicToolSet& other) const {
    assert(universe_ == other.universe_);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if ((blocks_[i] & static_cast<B>(~other.blocks_[i])) != 0) return false;
    return true;
  }

  std::size_t intersection_size(const BasicToolSet& other) const {
    assert(universe_ == other.universe_);
    return blocks::intersection_count<B>(blocks_, other.blocks_);
  }

  BasicToolSet& operator|=(const BasicToolSet& o) {
    assert(universe_ == o.universe_);
    blocks::or_assign<B>(blocks_, o.blocks_);
    return *this;
  }
  BasicToolSet& operator&=(const BasicToolSet& o) {
    assert(universe_ == o.universe_);
    blocks::and_assign<B>(blocks_, o.blocks_);
    return *this;
  }
  /// Set difference.
  BasicToolSet& operator-=(const BasicToolSet& o) {
    assert(universe_ == o.universe_);
    blocks::and_not_assign<B>(blocks_, o.blocks_);
    return *this;
  }

  friend BasicToolSet operator|(BasicToolSet a, const BasicToolSet& b) { return a |= b; }
  friend BasicToolSet operator&(BasicToolSet a, const BasicToolSet& b) { return a &= b; }
  friend BasicToolSet operator-(BasicToolSet a, const BasicToolSet& b) { return a -= b; }
  friend bool operator==(const BasicToolSet&, const BasicToolSet&) = default;

  const_iterator begin() const { return const_iterator(blocks_, 0); }
  const_iterator end() const { return const_iterator(blocks_, blocks_.size()); }

  std::vector<ToolIndex> to_vector() const {
    std::vector<ToolIndex> out;
    out.reserve(size());
    for (ToolIndex t : *this) out.push_back(t);
    return out;
  }

 private:
  std::vector<B> blocks_;
  std::size_t universe_ = 0;
};

using ToolSet = BasicToolSet<Block>;

}  // namespace toolswitch

#pragma once

// Word-level set algebra shared by ToolSet and the bitwise evaluators.
// All functions take equally sized spans; sizes are not checked.

#include <bit>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>

namespace toolswitch::blocks {

template <std::unsigned_integral B>
inline constexpr std::size_t bits_per = std::numeric_limits<B>::digits;

template <std::unsigned_integral B>
constexpr std::size_t words_for(std::size_t universe) {
  return (universe + bits_per<B> - 1) / bits_per<B>;
}

/// Mask of the valid bits in the last word of a universe of `universe` bits.
template <std::unsigned_integral B>
constexpr B tail_mask(std::size_t universe) {
  const std::size_t rem = universe % bits_per<B>;
  return rem == 0 ? static_cast<B>(~B{0}) : static_cast<B>((B{1} << rem) - 1);
}

template <std::unsigned_integral B>
inline std::size_t count(std::span<const B> a) {
  std::size_t c = 0;
  for (B w : a) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

template <std::unsigned_integral B>
inline bool none(std::span<const B> a) {
  for (B w : a)
    if (w != 0) return false;
  return true;
}

template <std::unsigned_integral B>
inline void copy(std::span<B> dst, std::span<const B> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i];
}

template <std::unsigned_integral B>
inline void or_assign(std::span<B> dst, std::span<const B> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

template <std::unsigned_integral B>
inline void and_assign(std::span<B> dst, std::span<const B> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
}

template <std::unsigned_integral B>
inline void and_not_assign(std::span<B> dst, std::span<const B> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= static_cast<B>(~src[i]);
}

/// dst = a & b
template <std::unsigned_integral B>
inline void and_into(std::span<B> dst, std::span<const B> a, std::span<const B> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] & b[i];
}

/// dst = a & ~b
template <std::unsigned_integral B>
inline void and_not_into(std::span<B> dst, std::span<const B> a, std::span<const B> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] & static_cast<B>(~b[i]);
}

/// dst = a | b
template <std::unsigned_integral B>
inline void or_into(std::span<B> dst, std::span<const B> a, std::span<const B> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] | b[i];
}

template <std::unsigned_integral B>
inline std::size_t intersection_count(std::span<const B> a, std::span<const B> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    c += static_cast<std::size_t>(std::popcount(static_cast<B>(a[i] & b[i])));
  return c;
}

/// Clears every set bit except the `k` lowest-indexed ones.
template <std::unsigned_integral B>
inline void keep_lowest(std::span<B> a, std::size_t k) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (k == 0) {
      a[i] = 0;
      continue;
    }
    B w = a[i];
    const auto c = static_cast<std::size_t>(std::popcount(w));
    if (c <= k) {
      k -= c;
      continue;
    }
    B kept = 0;
    for (; k > 0; --k) {
      const B low = static_cast<B>(w & (~w + 1));
      kept |= low;
      w ^= low;
    }
    a[i] = kept;
  }
}

/// Clears every set bit except the `k` highest-indexed ones.
template <std::unsigned_integral B>
inline void keep_highest(std::span<B> a, std::size_t k) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (k == 0) {
      a[i] = 0;
      continue;
    }
    B w = a[i];
    const auto c = static_cast<std::size_t>(std::popcount(w));
    if (c <= k) {
      k -= c;
      continue;
    }
    B kept = 0;
    for (; k > 0; --k) {
      const B high = static_cast<B>(B{1} << (bits_per<B> - 1 - std::countl_zero(w)));
      kept |= high;
      w ^= high;
    }
    a[i] = kept;
  }
}

/// Calls f(index) for each set bit in ascending order.
template <std::unsigned_integral B, class F>
inline void for_each_bit(std::span<const B> a, F&& f) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    B w = a[i];
    while (w != 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(w));
      f(i * bits_per<B> + bit);
      w &= static_cast<B>(w - 1);
    }
  }
}

}  // namespace toolswitch::blocks

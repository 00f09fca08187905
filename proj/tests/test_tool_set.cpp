#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "toolswitch/tool_set.hpp"

namespace ts = toolswitch;

template <class B>
class ToolSetTyped : public ::testing::Test {};
using BlockTypes = ::testing::Types<std::uint8_t, std::uint16_t, std::uint32_t, std::uint64_t>;
TYPED_TEST_SUITE(ToolSetTyped, BlockTypes);

namespace {

template <class B>
std::vector<ts::ToolIndex> as_vector(const ts::BasicToolSet<B>& s) {
  return std::vector<ts::ToolIndex>(s.begin(), s.end());
}

std::vector<ts::ToolIndex> as_vector(const std::set<ts::ToolIndex>& s) { return {s.begin(), s.end()}; }

std::set<ts::ToolIndex> random_subset(std::mt19937_64& gen, std::size_t universe) {
  std::set<ts::ToolIndex> s;
  std::bernoulli_distribution coin(0.3);
  for (std::size_t t = 0; t < universe; ++t)
    if (coin(gen)) s.insert(static_cast<ts::ToolIndex>(t));
  return s;
}

}  // namespace

TYPED_TEST(ToolSetTyped, MatchesSortedListModel) {
  using Set = ts::BasicToolSet<TypeParam>;
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t universe = 1 + gen() % 150;
    const auto a = random_subset(gen, universe), b = random_subset(gen, universe);
    const Set sa = Set::from_indices(universe, as_vector(a));
    const Set sb = Set::from_indices(universe, as_vector(b));

    std::set<ts::ToolIndex> u, i, d;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(u, u.end()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(i, i.end()));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(d, d.end()));

    EXPECT_EQ(as_vector(sa), as_vector(a));
    EXPECT_EQ(sa.size(), a.size());
    EXPECT_EQ(sa.empty(), a.empty());
    EXPECT_EQ(as_vector(sa | sb), as_vector(u));
    EXPECT_EQ(as_vector(sa & sb), as_vector(i));
    EXPECT_EQ(as_vector(sa - sb), as_vector(d));
    EXPECT_EQ(sa.intersection_size(sb), i.size());
    EXPECT_EQ(sa.is_subset_of(sb), std::includes(b.begin(), b.end(), a.begin(), a.end()));
    EXPECT_EQ(sa.to_vector(), as_vector(a));
    for (std::size_t t = 0; t < universe; ++t) EXPECT_EQ(sa.contains(static_cast<ts::ToolIndex>(t)), a.count(t) == 1);
  }
}

TYPED_TEST(ToolSetTyped, FullAndMutators) {
  using Set = ts::BasicToolSet<TypeParam>;
  for (std::size_t universe : {1u, 7u, 8u, 9u, 63u, 64u, 65u, 130u}) {
    Set s = Set::full(universe);
    EXPECT_EQ(s.size(), universe);
    s.erase(0);
    EXPECT_FALSE(s.contains(0));
    EXPECT_EQ(s.size(), universe - 1);
    s.insert(0);
    EXPECT_EQ(s, Set::full(universe));
    s.clear();
    EXPECT_TRUE(s.empty());
  }
}

TYPED_TEST(ToolSetTyped, FromBlocksClearsTail) {
  using Set = ts::BasicToolSet<TypeParam>;
  std::vector<TypeParam> words(3, static_cast<TypeParam>(~TypeParam{0}));
  const std::size_t universe = 2 * ts::blocks::bits_per<TypeParam> + 3;
  const Set s = Set::from_blocks(universe, words);
  EXPECT_EQ(s.size(), universe);
  EXPECT_EQ(s, Set::full(universe));
}

TEST(ToolSet, RejectsOutOfRangeTool) {
  try {
    (void)ts::ToolSet::from_indices(5, {1, 5});
    FAIL() << "expected BadToolIndex";
  } catch (const ts::Error& e) {
    EXPECT_EQ(e.code(), ts::ErrorCode::BadToolIndex);
  }
}

TEST(ToolSet, IteratesAscending) {
  const auto s = ts::ToolSet::from_indices(200, {199, 3, 64, 63, 0});
  EXPECT_EQ(s.to_vector(), (std::vector<ts::ToolIndex>{0, 3, 63, 64, 199}));
}

TEST(BlockOps, KeepLowestAndHighest) {
  std::vector<std::uint8_t> a{0b10110110, 0b00000101};
  auto b = a;
  ts::blocks::keep_lowest<std::uint8_t>(a, 3);
  EXPECT_EQ(a, (std::vector<std::uint8_t>{0b00010110, 0}));
  ts::blocks::keep_highest<std::uint8_t>(b, 3);
  EXPECT_EQ(b, (std::vector<std::uint8_t>{0b10000000, 0b00000101}));
}

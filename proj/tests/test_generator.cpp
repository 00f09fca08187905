#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "support.hpp"

namespace ts = toolswitch;

TEST(Rng, PortableStream) {
  ts::Rng rng(5489);
  std::uint64_t x = 0;
  for (int k = 0; k < 10000; ++k) x = rng.next();
  EXPECT_EQ(x, 9981545732273789042ull);
  EXPECT_EQ(ts::hash_label(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(ts::hash_label("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_NE(ts::mix_seed(1, 0), ts::mix_seed(1, 1));
  EXPECT_NE(ts::mix_seed(1, 0), ts::mix_seed(2, 0));
}

TEST(Rng, BelowStaysInRange) {
  ts::Rng rng(1);
  for (std::uint64_t bound : {1ull, 2ull, 3ull, 7ull, 1000ull, (1ull << 63) + 1}) {
    for (int k = 0; k < 1000; ++k) ASSERT_LT(rng.below(bound), bound);
  }
  for (int k = 0; k < 1000; ++k) {
    const auto v = rng.between(5, 9);
    ASSERT_GE(v, 5u);
    ASSERT_LE(v, 9u);
  }
}

TEST(SequenceStream, UniformOverPermutations) {
  // chi-square over the 24 orders of 4 jobs; 23 degrees of freedom
  constexpr int draws = 100'000;
  ts::SequenceStream stream(4, 12345);
  std::map<std::vector<ts::JobIndex>, int> counts;
  for (int k = 0; k < draws; ++k) {
    const auto s = stream.next();
    ++counts[{s.order().begin(), s.order().end()}];
  }
  ASSERT_EQ(counts.size(), 24u);
  const double expected = draws / 24.0;
  double chi2 = 0;
  for (const auto& [order, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  const double mean = 23, sigma = std::sqrt(2.0 * 23);
  EXPECT_LT(std::abs(chi2 - mean), 5 * sigma) << "chi2 = " << chi2;
}

TEST(SequenceStream, FlatAndListFormsAgree) {
  const auto list = ts::random_sequences(7, 50, 9);
  std::vector<ts::JobIndex> flat;
  ts::fill_random_orders(7, 50, 9, flat);
  for (std::size_t k = 0; k < 50; ++k)
    EXPECT_TRUE(std::equal(list[k].order().begin(), list[k].order().end(), flat.begin() + static_cast<long>(k * 7)));
  EXPECT_EQ(ts::random_sequences(7, 50, 9), list);
  EXPECT_NE(ts::random_sequences(7, 50, 10), list);
}

TEST(Families, SixteenLabelsWithExpectedShapes) {
  EXPECT_EQ(ts::catanzaro_families.size(), 16u);
  const auto a1 = ts::catanzaro_family("A1");
  ASSERT_TRUE(a1);
  EXPECT_EQ(a1->n, 10u);
  EXPECT_EQ(a1->m, 10u);
  EXPECT_EQ(a1->capacity, 4u);
  const auto d4 = ts::catanzaro_family("D4");
  ASSERT_TRUE(d4);
  EXPECT_EQ(d4->n, 40u);
  EXPECT_EQ(d4->m, 60u);
  EXPECT_EQ(d4->capacity, 30u);
  EXPECT_FALSE(ts::catanzaro_family("E1"));
  EXPECT_NE(ts::catanzaro_family("A1", 1)->seed, ts::catanzaro_family("A2", 1)->seed);
}

TEST(Families, GeneratedInstancesRespectSpec) {
  for (const auto& f : ts::catanzaro_families) {
    const auto spec = *ts::catanzaro_family(f.label, 77);
    const auto insts = ts::generate_instances(spec);
    ASSERT_EQ(insts.size(), 10u);
    for (const auto& inst : insts) {
      EXPECT_EQ(inst.job_count(), f.n);
      EXPECT_EQ(inst.tool_count(), f.m);
      EXPECT_EQ(inst.capacity(), f.capacity);
      std::set<std::vector<ts::ToolIndex>> jobs;
      for (ts::JobIndex j = 0; j < inst.job_count(); ++j) {
        EXPECT_GE(inst.job_size(j), std::max<std::size_t>(1, f.capacity / 2));
        EXPECT_LE(inst.job_size(j), f.capacity);
        jobs.insert({inst.tools(j).begin(), inst.tools(j).end()});
      }
      EXPECT_EQ(jobs.size(), f.n) << "jobs must be distinct";
    }
  }
}

TEST(Families, DeterministicPerSeed) {
  ts::DatasetSpec spec{"X", 12, 15, 6, 4, 2, 5, 42};
  const auto a = ts::generate_instances(spec), b = ts::generate_instances(spec);
  EXPECT_EQ(a, b);
  std::string text_a, text_b;
  for (const auto& i : a) text_a += ts::serialize_instance(i);
  for (const auto& i : b) text_b += ts::serialize_instance(i);
  EXPECT_EQ(text_a, text_b);
  spec.seed = 43;
  EXPECT_NE(ts::generate_instances(spec), a);
}

TEST(Families, InvalidSpecs) {
  auto code_of = [](ts::DatasetSpec spec) {
    try {
      ts::validate_spec(spec);
    } catch (const ts::Error& e) {
      return e.code();
    }
    return ts::ErrorCode::Io;
  };
  EXPECT_EQ(code_of({"x", 0, 5, 2, 10, {}, {}}), ts::ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of({"x", 3, 5, 5, 10, {}, {}}), ts::ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of({"x", 3, 5, 2, 10, 3, 2}), ts::ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of({"x", 3, 5, 2, 10, 1, 3}), ts::ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of({"x", 6, 5, 2, 10, 1, 1}), ts::ErrorCode::InvalidSpec);  // only 5 singletons
  EXPECT_EQ(code_of({"x", 5, 5, 2, 10, 1, 1}), ts::ErrorCode::Io);          // valid
  ts::DatasetSpec instances_zero{"x", 3, 5, 2, 10, {}, {}};
  instances_zero.instances = 0;
  EXPECT_EQ(code_of(instances_zero), ts::ErrorCode::InvalidSpec);
}

TEST(ResultsCsv, RoundTripAndFormatting) {
  std::vector<ts::BenchRow> rows{{"A1", 10, 10, 4, "ktns", 10, 100, 0.25, 250.0},
                                 {"D4", 40, 60, 30, "mpca-bitwise", 10, 100, 1.0 / 3, 1e6 / 3000}};
  std::stringstream out;
  ts::write_results_csv(out, rows);
  EXPECT_EQ(out.str(),
            "dataset,n,m,C,evaluator,instances,sequences,total_seconds,mean_microseconds_per_eval\n"
            "A1,10,10,4,ktns,10,100,0.250000,250.0000\n"
            "D4,40,60,30,mpca-bitwise,10,100,0.333333,333.3333\n");
  const auto back = ts::read_results_csv(out);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].dataset, "D4");
  EXPECT_EQ(back[1].evaluator, "mpca-bitwise");
  EXPECT_NEAR(back[1].total_seconds, 1.0 / 3, 1e-6);
  std::stringstream bad("dataset,n\n");
  EXPECT_THROW(ts::read_results_csv(bad), ts::Error);
  std::stringstream short_row(std::string(ts::results_csv_header) + "\nA1,1,2\n");
  EXPECT_THROW(ts::read_results_csv(short_row), ts::Error);
}

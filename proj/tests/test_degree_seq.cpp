#include <gtest/gtest.h>

#include "cybergraph/degree_seq.hpp"
#include "oracles.hpp"

using namespace cybergraph;

TEST(IsGraphical, KnownCases) {
  EXPECT_TRUE(is_graphical(std::vector<std::size_t>{3, 3, 2, 2, 2}));
  EXPECT_TRUE(is_graphical(std::vector<std::size_t>{2, 2, 2}));
  EXPECT_TRUE(is_graphical(std::vector<std::size_t>{}));
  EXPECT_TRUE(is_graphical(std::vector<std::size_t>{0, 0}));
  EXPECT_FALSE(is_graphical(std::vector<std::size_t>{3, 3, 1, 1}));
  EXPECT_FALSE(is_graphical(std::vector<std::size_t>{4, 1, 1, 1}));
  EXPECT_FALSE(is_graphical(std::vector<std::size_t>{1, 1, 1}));
  EXPECT_FALSE(is_graphical(std::vector<std::size_t>{2}));
}

TEST(IsGraphical, AgreesWithErdosGallaiExhaustively) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::size_t> s(n, 0);
    for (;;) {
      ASSERT_EQ(is_graphical(s), oracle::erdos_gallai(s));
      std::size_t i = 0;
      while (i < n && s[i] == n) s[i++] = 0;
      if (i == n) break;
      ++s[i];
    }
  }
}

TEST(DegreeSequence, FromDegrees) {
  const auto s = DegreeSequence::from_degrees({1, 2, 1});
  EXPECT_EQ(s.target_edges, 2u);
  EXPECT_THROW(DegreeSequence::from_degrees({1, 2}), InputError);
}

TEST(SampleSequence, HitsTargetSumAndIsGraphical) {
  SequenceRequest req;
  req.n = 30;
  req.m = 35;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    req.seed = seed;
    const auto s = sample_sequence(req);
    ASSERT_EQ(s.degrees.size(), 30u);
    EXPECT_EQ(s.degree_sum(), 70u);
    EXPECT_EQ(s.target_edges, 35u);
    EXPECT_TRUE(oracle::erdos_gallai(s.degrees));
    for (auto d : s.degrees) {
      EXPECT_GE(d, 1u);
      EXPECT_LE(d, 10u);
    }
  }
}

TEST(SampleSequence, SameSeedSameSequence) {
  SequenceRequest req;
  req.n = 118;
  req.m = 130;
  req.seed = 9;
  EXPECT_EQ(sample_sequence(req).degrees, sample_sequence(req).degrees);
  req.seed = 10;
  const auto other = sample_sequence(req).degrees;
  req.seed = 9;
  EXPECT_NE(sample_sequence(req).degrees, other);
}

TEST(SampleSequence, RepairModeAlwaysSucceedsQuickly) {
  SequenceRequest req;
  req.n = 300;
  req.m = 312;
  req.repair = true;
  req.max_attempts = 5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    req.seed = seed;
    const auto s = sample_sequence(req);
    EXPECT_EQ(s.degree_sum(), 624u);
  }
}

TEST(SampleSequence, RejectsImpossibleRequests) {
  SequenceRequest req;
  req.n = 10;
  req.m = 8;
  EXPECT_THROW(sample_sequence(req), InputError);
  req.m = 51;
  EXPECT_THROW(sample_sequence(req), InputError);
  req.n = 1;
  req.m = 0;
  EXPECT_THROW(sample_sequence(req), InputError);
}

TEST(SampleSequence, ExhaustedAttemptsRaiseAlgorithmError) {
  SequenceRequest req;
  req.n = 10;
  req.m = 45;
  req.d_max = 9;
  req.max_attempts = 10;
  EXPECT_THROW(sample_sequence(req), AlgorithmError);
}

TEST(SampleSequence, DegreeFrequenciesFollowTheLaw) {
  SequenceRequest req;
  req.n = 300;
  req.m = 312;
  req.repair = true;
  std::vector<double> hist(10, 0.0);
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    req.seed = seed;
    for (auto d : sample_sequence(req).degrees) {
      hist[d - 1] += 1.0;
      total += 1.0;
    }
  }
  const auto f = frequency_of(req.spec, 10);
  EXPECT_NEAR(hist[0] / total, f[0], 0.05);
  EXPECT_NEAR(hist[1] / total, f[1], 0.05);
}

// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "opsum/optimizer.h"

#include <cmath>
#include <random>
#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace opsum {
namespace {

using ::opsum::testing::RandomProblem;
namespace oracle = ::opsum::testing::oracle;

constexpr double kFemaleRatios[] = {0.0, 0.3, 0.5, 1.0};

TEST(EvaluateTest, EmptySelection) {
  SelectionProblem p(2);
  p.score = {0.5, 0.5};
  p.length = {3, 3};
  p.is_female = {true, false};
  p.budget = 10;
  auto s = EvaluateObjective(p, {false, false});
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->objective, 0.0);
  EXPECT_EQ(s->fairness_term, 0.0);
}

TEST(EvaluateTest, SingleMale) {
  SelectionProblem p(1);
  p.score = {0.8};
  p.length = {5};
  p.is_female = {false};
  p.budget = 10;
  auto s = EvaluateObjective(p, {true});
  ASSERT_TRUE(s.ok());
  EXPECT_NEAR(s->objective, 0.8 - 0.0 - std::fabs(0.5 * 1 - 0.5 * 0), 1e-12);
  EXPECT_NEAR(s->objective, 0.3, 1e-12);
  EXPECT_NEAR(s->fairness_term, 0.5, 1e-12);
}

TEST(EvaluateTest, TwoFemalesWithOverlap) {
  SelectionProblem p(2);
  p.score = {0.8, 0.7};
  p.length = {5, 5};
  p.is_female = {true, true};
  p.set_sim(0, 1, 0.4);
  p.budget = 10;
  auto s = EvaluateObjective(p, {true, true});
  ASSERT_TRUE(s.ok());
  EXPECT_NEAR(s->objective, 1.5 - 0.4 - 1.0, 1e-12);
  EXPECT_NEAR(s->objective, 0.1, 1e-12);
  EXPECT_NEAR(s->penalty_sum, 0.4, 1e-12);
  EXPECT_EQ(s->total_length, 10);
}

TEST(EvaluateTest, OverBudgetIsError) {
  SelectionProblem p(1);
  p.score = {0.8};
  p.length = {5};
  p.is_female = {false};
  p.budget = 4;
  EXPECT_FALSE(EvaluateObjective(p, {true}).ok());
  EXPECT_FALSE(EvaluateObjective(p, {true, false}).ok());
}

TEST(ValidateTest, RejectsBadInstances) {
  SelectionProblem p(2);
  p.score = {0.5, 0.5};
  p.length = {1, 1};
  p.is_female = {true, false};
  p.budget = 2;
  EXPECT_TRUE(p.Validate().ok());
  p.female_ratio = 1.5;
  EXPECT_FALSE(p.Validate().ok());
  p.female_ratio = 0.5;
  p.length[0] = 0;
  EXPECT_FALSE(p.Validate().ok());
  p.length[0] = 1;
  p.score[1] = 1.2;
  EXPECT_FALSE(p.Validate().ok());
  p.score[1] = 0.2;
  p.set_sim(0, 1, 2.0);
  EXPECT_FALSE(p.Validate().ok());
  p.set_sim(0, 1, 0.2);
  p.budget = -1;
  EXPECT_FALSE(p.Validate().ok());
}

TEST(ExactTest, ZeroBudget) {
  SelectionProblem p = RandomProblem(1, 6, 0.5);
  p.budget = 0;
  auto s = SolveExact(p);
  ASSERT_TRUE(s.ok());
  EXPECT_THAT(s->Indices(), ::testing::IsEmpty());
  EXPECT_EQ(s->objective, 0.0);
  EXPECT_TRUE(s->optimal);
}

TEST(ExactTest, EmptyProblem) {
  auto s = SolveExact(SelectionProblem(0));
  ASSERT_TRUE(s.ok());
  EXPECT_TRUE(s->selected.empty());
  auto o = BruteForceOracle(SelectionProblem(0));
  ASSERT_TRUE(o.ok());
  EXPECT_TRUE(o->selected.empty());
}

TEST(ExactTest, MatchesEnumerationOn200Seeds) {
  int seed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 12;
    const double fp = kFemaleRatios[trial % 4];
    SelectionProblem p = RandomProblem(++seed, n, fp);
    auto exact = SolveExact(p);
    ASSERT_TRUE(exact.ok()) << exact.status();
    const oracle::Best want = oracle::Enumerate(p);
    EXPECT_NEAR(exact->objective, want.objective, 1e-9) << "seed " << seed;
    EXPECT_EQ(exact->Indices(), want.chosen) << "seed " << seed;
    EXPECT_TRUE(exact->optimal);
    EXPECT_LE(exact->total_length, p.budget);
  }
}

TEST(ExactTest, LibraryOracleAgreesWithEnumeration) {
  for (int seed = 500; seed < 560; ++seed) {
    SelectionProblem p = RandomProblem(seed, 1 + seed % 10, 0.3);
    auto lib = BruteForceOracle(p);
    ASSERT_TRUE(lib.ok());
    const oracle::Best want = oracle::Enumerate(p);
    EXPECT_NEAR(lib->objective, want.objective, 1e-12);
    EXPECT_EQ(lib->Indices(), want.chosen);
  }
  EXPECT_FALSE(BruteForceOracle(SelectionProblem(kBruteForceLimit + 1)).ok());
}

TEST(ExactTest, TieGoesToSmallestIndexSet) {
  // Items 0..3 are identical and unrelated; budget admits two of them.
  SelectionProblem p(4);
  p.score = {0.6, 0.6, 0.6, 0.6};
  p.length = {5, 5, 5, 5};
  p.is_female = {true, false, true, false};
  p.budget = 10;
  p.female_ratio = 0.5;
  auto s = SolveExact(p);
  ASSERT_TRUE(s.ok());
  EXPECT_THAT(s->Indices(), ::testing::ElementsAre(0, 1));
}

TEST(ExactTest, LargerInstancesAgainstLibraryOracle) {
  for (int seed = 900; seed < 910; ++seed) {
    SelectionProblem p = RandomProblem(seed, 18, kFemaleRatios[seed % 4]);
    auto exact = SolveExact(p);
    auto brute = BruteForceOracle(p);
    ASSERT_TRUE(exact.ok());
    ASSERT_TRUE(brute.ok());
    EXPECT_NEAR(exact->objective, brute->objective, 1e-9);
    EXPECT_EQ(exact->Indices(), brute->Indices());
  }
}

TEST(ExactTest, LimitsAndFallbackMessage) {
  SolverConfig config;
  config.exact_limit = 5;
  auto s = SolveExact(RandomProblem(3, 6, 0.5), config);
  ASSERT_FALSE(s.ok());
  EXPECT_THAT(std::string(s.status().message()),
              ::testing::HasSubstr("heuristic"));
}

TEST(ExactTest, NodeLimitReturnsIncumbent) {
  SolverConfig config;
  config.node_limit = 3;
  SelectionProblem p = RandomProblem(77, 30, 0.5);
  auto s = SolveExact(p, config);
  ASSERT_TRUE(s.ok());
  EXPECT_FALSE(s->optimal);
  EXPECT_LE(s->total_length, p.budget);
}

TEST(HeuristicTest, NeverBeatsExactAndStaysFeasible) {
  for (int seed = 1; seed <= 200; ++seed) {
    SelectionProblem p = RandomProblem(seed * 31, 12, kFemaleRatios[seed % 4]);
    auto greedy = SolveHeuristic(p);
    auto exact = SolveExact(p);
    ASSERT_TRUE(greedy.ok());
    ASSERT_TRUE(exact.ok());
    EXPECT_LE(greedy->objective, exact->objective + 1e-9) << seed;
    EXPECT_LE(greedy->total_length, p.budget);
    EXPECT_FALSE(greedy->optimal);
    auto again = EvaluateObjective(p, greedy->selected);
    ASSERT_TRUE(again.ok());
    EXPECT_NEAR(again->objective, greedy->objective, 1e-12);
  }
}

TEST(HeuristicTest, OptimalOnSeparableEqualLengthInstance) {
  // No overlap, equal lengths, alternating genders with fp = 0.5: taking the
  // best pairs in order is optimal.
  SelectionProblem p(8);
  p.score = {0.9, 0.85, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3};
  p.length = std::vector<int>(8, 10);
  p.is_female = {true, false, true, false, true, false, true, false};
  p.budget = 40;
  auto greedy = SolveHeuristic(p);
  auto exact = SolveExact(p);
  ASSERT_TRUE(greedy.ok());
  ASSERT_TRUE(exact.ok());
  EXPECT_NEAR(greedy->objective, exact->objective, 1e-12);
  EXPECT_EQ(greedy->Indices(), exact->Indices());
}

TEST(LinearizationTest, PairIndicatorsAndAbsoluteValue) {
  for (int seed = 1; seed <= 100; ++seed) {
    SelectionProblem p = RandomProblem(seed * 7, 10, kFemaleRatios[seed % 4]);
    auto s = SolveExact(p);
    ASSERT_TRUE(s.ok());
    EXPECT_TRUE(VerifyLinearization(p, *s).ok());
    // Ordered-pair sum is twice the unordered one.
    double ordered = 0.0;
    int women = 0, men = 0;
    for (int i : s->Indices()) {
      (p.is_female[i] ? women : men)++;
      for (int j : s->Indices()) {
        if (i != j) ordered += p.sim(i, j);
      }
    }
    EXPECT_NEAR(ordered, 2.0 * s->penalty_sum, 1e-12);
    const double e = p.female_ratio * men - (1.0 - p.female_ratio) * women;
    EXPECT_NEAR(s->fairness_term, std::max(e, -e), 1e-12);
  }
}

TEST(LinearizationTest, DetectsTamperedSolution) {
  SelectionProblem p = RandomProblem(5, 6, 0.5);
  p.budget = 1000;
  auto s = SolveExact(p);
  ASSERT_TRUE(s.ok());
  Solution bad = *s;
  bad.penalty_sum += 0.25;
  EXPECT_FALSE(VerifyLinearization(p, bad).ok());
  bad = *s;
  bad.fairness_term += 0.25;
  EXPECT_FALSE(VerifyLinearization(p, bad).ok());
}

TEST(FairnessTest, MixedPairBeatsSameGenderPair) {
  // Two equal candidates of opposite gender plus an extra male; no overlap.
  // {F, M}: 1.2 - |0.5 - 0.5| = 1.2; {M, M}: 1.2 - 1.0 = 0.2.
  SelectionProblem p(3);
  p.score = {0.6, 0.6, 0.6};
  p.length = {10, 10, 10};
  p.is_female = {false, true, false};
  p.budget = 20;
  p.female_ratio = 0.5;
  auto s = SolveExact(p);
  ASSERT_TRUE(s.ok());
  EXPECT_THAT(s->Indices(), ::testing::ElementsAre(0, 1));
  EXPECT_NEAR(s->objective, 1.2, 1e-12);
  EXPECT_NEAR(s->fairness_term, 0.0, 1e-12);
}

TEST(FairnessTest, ImbalanceFormula) {
  // Signed; the objective uses its magnitude.
  EXPECT_DOUBLE_EQ(FairnessImbalance(0.5, 1, 0), 0.5);
  EXPECT_DOUBLE_EQ(FairnessImbalance(0.3, 2, 1), 0.3 * 2 - 0.7 * 1);
  EXPECT_DOUBLE_EQ(FairnessImbalance(1.0, 3, 3), 3.0);
  EXPECT_DOUBLE_EQ(FairnessImbalance(0.0, 3, 3), -3.0);
}

TEST(FairnessTest, DisabledStillReported) {
  SelectionProblem p(1);
  p.score = {0.8};
  p.length = {5};
  p.is_female = {false};
  p.budget = 10;
  p.fairness_enabled = false;
  auto s = EvaluateObjective(p, {true});
  ASSERT_TRUE(s.ok());
  EXPECT_NEAR(s->objective, 0.8, 1e-12);
  EXPECT_NEAR(s->fairness_term, 0.5, 1e-12);
}

TEST(PropertyTest, MonotoneInBudget) {
  for (int seed = 1; seed <= 40; ++seed) {
    SelectionProblem p = RandomProblem(seed * 13, 10, kFemaleRatios[seed % 4]);
    double previous = -1e300;
    for (int budget = 0; budget <= 150; budget += 10) {
      p.budget = budget;
      auto s = SolveExact(p);
      ASSERT_TRUE(s.ok());
      EXPECT_GE(s->objective, previous - 1e-12);
      previous = s->objective;
    }
  }
}

TEST(PropertyTest, GenderSwapSymmetryAtHalf) {
  for (int seed = 1; seed <= 50; ++seed) {
    SelectionProblem p = RandomProblem(seed * 17, 9, 0.5);
    SelectionProblem q = p;
    for (int i = 0; i < p.size(); ++i) q.is_female[i] = !p.is_female[i];
    auto a = SolveExact(p);
    auto b = SolveExact(q);
    ASSERT_TRUE(a.ok());
    ASSERT_TRUE(b.ok());
    EXPECT_NEAR(a->objective, b->objective, 1e-12);
  }
}

TEST(PropertyTest, SwappingTwinCandidatesKeepsObjective) {
  SelectionProblem p(2);
  p.score = {0.7, 0.7};
  p.length = {8, 8};
  p.is_female = {true, false};
  p.budget = 8;
  SelectionProblem q = p;
  q.is_female = {false, true};
  EXPECT_NEAR(SolveExact(p)->objective, SolveExact(q)->objective, 1e-12);
}

TEST(ProblemFileTest, RoundTrip) {
  SelectionProblem p = RandomProblem(42, 7, 0.3);
  p.penalty_weight = 0.75;
  std::stringstream buffer;
  ASSERT_TRUE(WriteProblem(p, buffer).ok());
  auto q = ReadProblem(buffer);
  ASSERT_TRUE(q.ok()) << q.status();
  ASSERT_EQ(q->size(), p.size());
  EXPECT_EQ(q->budget, p.budget);
  EXPECT_EQ(q->female_ratio, p.female_ratio);
  EXPECT_EQ(q->penalty_weight, p.penalty_weight);
  for (int i = 0; i < p.size(); ++i) {
    EXPECT_EQ(q->score[i], p.score[i]);
    EXPECT_EQ(q->length[i], p.length[i]);
    EXPECT_EQ(q->is_female[i], p.is_female[i]);
    for (int j = 0; j < p.size(); ++j) EXPECT_EQ(q->sim(i, j), p.sim(i, j));
  }
}

TEST(ProblemFileTest, HandWritten) {
  std::istringstream in(
      "# fairness fixture\n"
      "3 20 0.5 1\n"
      "0.6 10 M\n0.6 10 F\n0.6 10 M\n"
      "0 2 0.25\n");
  auto p = ReadProblem(in);
  ASSERT_TRUE(p.ok()) << p.status();
  EXPECT_EQ(p->sim(2, 0), 0.25);
  EXPECT_THAT(SolveExact(*p)->Indices(), ::testing::ElementsAre(0, 1));
  std::istringstream bad("2 10 0.5 1\n0.5 3 F\n");
  EXPECT_FALSE(ReadProblem(bad).ok());
}

}  // namespace
}  // namespace opsum

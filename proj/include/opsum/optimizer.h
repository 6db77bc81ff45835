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

// 0-1 sentence selection with a length budget, a pairwise redundancy
// penalty and a gender-balance penalty:
//
//   maximize   sum_i score_i x_i
//            - lambda * sum_{i<j} sim_ij y_ij
//            - | fp * sum_i m_i x_i - (1 - fp) * sum_i f_i x_i |
//   subject to sum_i length_i x_i <= budget
//              y_ij <= (x_i + x_j) / 2,  y_ij >= x_i + x_j - 1
//              x, y binary
//
// where f_i = 1 for sentences written by women and m_i = 1 - f_i. The pair
// sum runs over unordered pairs; summing over ordered pairs is the same
// problem with lambda doubled. The absolute value is linearized with a
// continuous c >= e, c >= -e that the objective pushes down to |e|.

#ifndef OPSUM_OPTIMIZER_H_
#define OPSUM_OPTIMIZER_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace opsum {

class SelectionProblem {
 public:
  SelectionProblem() = default;
  // n candidates with zero scores, unit lengths, male, no similarity.
  explicit SelectionProblem(int n);

  int size() const { return static_cast<int>(score.size()); }
  double sim(int i, int j) const { return similarity_[i * size() + j]; }
  // Sets both (i, j) and (j, i).
  void set_sim(int i, int j, double value);

  // Checks the invariants listed on the fields.
  absl::Status Validate() const;

  std::vector<double> score;    // each in [0, 1]
  std::vector<int> length;      // each >= 1, in words
  std::vector<bool> is_female;  // f_i; m_i = !f_i
  int budget = 0;               // L >= 0
  double female_ratio = 0.5;    // fp in [0, 1]
  double penalty_weight = 1.0;  // lambda >= 0
  // When false the gender term is reported but not subtracted.
  bool fairness_enabled = true;

 private:
  std::vector<double> similarity_;  // n * n, symmetric, zero diagonal
};

struct Solution {
  std::vector<bool> selected;
  double objective = 0.0;
  double score_sum = 0.0;
  double penalty_sum = 0.0;    // sum over selected unordered pairs of sim
  double fairness_term = 0.0;  // |fp * males - (1 - fp) * females|
  int total_length = 0;
  bool optimal = false;
  int64_t nodes = 0;  // search nodes expanded (exact solver only)

  std::vector<int> Indices() const;
};

struct SolverConfig {
  // Largest instance SolveExact accepts.
  int exact_limit = 40;
  // The exact search stops with its incumbent (optimal = false) when either
  // limit is hit. The node limit keeps results machine-independent.
  double time_limit_seconds = 10.0;
  int64_t node_limit = 4'000'000;
};

// e = fp * males - (1 - fp) * females for the given counts.
double FairnessImbalance(double female_ratio, int males, int females);

// Exact evaluation of the objective. Fails with OutOfRange when the
// selection exceeds the budget and InvalidArgument on a size mismatch.
absl::StatusOr<Solution> EvaluateObjective(const SelectionProblem& problem,
                                           const std::vector<bool>& selected);

// Best-first branch and bound. Among optimal selections returns the
// lexicographically smallest sorted index list.
absl::StatusOr<Solution> SolveExact(const SelectionProblem& problem,
                                    const SolverConfig& config = {});

// Greedy by marginal objective gain followed by add/drop/swap/add-pair local
// search. Always feasible; optimal is false.
absl::StatusOr<Solution> SolveHeuristic(const SelectionProblem& problem,
                                        const SolverConfig& config = {});

// Exhaustive enumeration of all 2^n subsets for n <= 20, written
// independently of EvaluateObjective. Same tie rule as SolveExact.
absl::StatusOr<Solution> BruteForceOracle(const SelectionProblem& problem);
inline constexpr int kBruteForceLimit = 20;

// True when sorted index list `a` precedes `b` lexicographically.
bool LexicographicallySmaller(const std::vector<bool>& a,
                              const std::vector<bool>& b);

// Objective values closer than this are treated as ties.
inline constexpr double kObjectiveTieTolerance = 1e-12;

// Recomputes the pair indicators from the linear constraints
// y_ij <= (x_i + x_j)/2, y_ij >= x_i + x_j - 1 and the fairness auxiliary
// from c >= e, c >= -e, and checks them against the solution's reported
// penalty_sum and fairness_term within `tolerance`.
absl::Status VerifyLinearization(const SelectionProblem& problem,
                                 const Solution& solution,
                                 double tolerance = 1e-9);

// Text form:
//   n budget female_ratio penalty_weight [nofairness]
//   score length F|M            (n lines)
//   i j sim                     (one line per non-zero pair, i < j)
// Lines starting with '#' are comments.
absl::Status WriteProblem(const SelectionProblem& problem, std::ostream& out);
absl::StatusOr<SelectionProblem> ReadProblem(std::istream& in);

}  // namespace opsum

#endif  // OPSUM_OPTIMIZER_H_

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

// Exhaustive reference solver. Deliberately shares no code with the
// objective evaluation or the search in optimizer.cc.

#include <cmath>
#include <cstdint>

#include "absl/strings/str_cat.h"
#include "opsum/optimizer.h"

namespace opsum {
namespace {

// Sorted-index-list order on bitmasks: the lowest differing bit decides.
// If it belongs to `a`, `a` is smaller iff `b` has a later element.
bool MaskLess(uint32_t a, uint32_t b) {
  const uint32_t diff = a ^ b;
  if (diff == 0) return false;
  const uint32_t low = diff & (~diff + 1);
  const uint32_t above = ~((low << 1) - 1);
  if (a & low) return (b & above) != 0;
  return (a & above) == 0;
}

}  // namespace

absl::StatusOr<Solution> BruteForceOracle(const SelectionProblem& problem) {
  if (absl::Status valid = problem.Validate(); !valid.ok()) return valid;
  const int n = problem.size();
  if (n > kBruteForceLimit) {
    return absl::InvalidArgumentError(absl::StrCat(
        "brute force is limited to ", kBruteForceLimit, " candidates, got ",
        n));
  }
  const double fp = problem.female_ratio;
  uint32_t best_mask = 0;
  double best_value = 0.0;
  double best_scores = 0.0;
  double best_penalty = 0.0;
  double best_c = 0.0;
  int best_length = 0;
  const uint32_t subsets = uint32_t{1} << n;
  for (uint32_t mask = 0; mask < subsets; ++mask) {
    int words = 0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) words += problem.length[i];
    }
    if (words > problem.budget) continue;
    double scores = 0.0;
    double penalty = 0.0;
    double male_mass = 0.0;
    double female_mass = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      scores += problem.score[i];
      if (problem.is_female[i]) {
        female_mass += 1.0 - fp;
      } else {
        male_mass += fp;
      }
      for (int j = 0; j < i; ++j) {
        if (mask >> j & 1) penalty += problem.sim(j, i);
      }
    }
    const double c = std::fabs(male_mass - female_mass);
    const double value = scores - problem.penalty_weight * penalty -
                         (problem.fairness_enabled ? c : 0.0);
    const bool better =
        value > best_value + kObjectiveTieTolerance ||
        (value >= best_value - kObjectiveTieTolerance &&
         MaskLess(mask, best_mask));
    if (mask == 0 || better) {
      best_mask = mask;
      best_value = value;
      best_scores = scores;
      best_penalty = penalty;
      best_c = c;
      best_length = words;
    }
  }
  Solution s;
  s.selected.assign(n, false);
  for (int i = 0; i < n; ++i) s.selected[i] = (best_mask >> i & 1) != 0;
  s.objective = best_value;
  s.score_sum = best_scores;
  s.penalty_sum = best_penalty;
  s.fairness_term = best_c;
  s.total_length = best_length;
  s.optimal = true;
  return s;
}

}  // namespace opsum

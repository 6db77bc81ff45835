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

// ROUGE precision against proxy references and the ablation runner.
//
// Texts are tokenized with the corpus tokenizer (lowercase, punctuation
// stripped, no stemming, stop-words kept). The reference for a place is the
// concatenation of its ten most liked reviews.

#ifndef OPSUM_EVALUATION_H_
#define OPSUM_EVALUATION_H_

#include <optional>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "opsum/corpus.h"
#include "opsum/summarizer.h"

namespace opsum {

inline constexpr int kProxyGoldReviews = 10;

struct ProxyGold {
  std::vector<std::string> review_ids;  // most liked first
  std::string text;
};

// Top `count` reviews by likes, ties broken by ascending id.
ProxyGold BuildProxyGold(const std::vector<Review>& reviews,
                         int count = kProxyGoldReviews);

// Clipped n-gram matches over candidate n-gram count, n in {1, 2}. A
// candidate shorter than n has precision 0. Fails on an empty candidate.
absl::StatusOr<double> RougeNPrecision(absl::string_view candidate,
                                       absl::string_view reference, int n);

// LCS length over candidate length.
absl::StatusOr<double> RougeLPrecision(absl::string_view candidate,
                                       absl::string_view reference);

struct RougeScores {
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
};

absl::StatusOr<RougeScores> ScoreRouge(absl::string_view candidate,
                                       absl::string_view reference);

// One row of the ablation grid. Disabled constraints drop the gender term
// (fairness) or set lambda to 0 (redundancy); disabled scoring factors are
// fixed to 1.
struct AblationConfig {
  std::string name;
  std::string group;  // "" or "w/o both constraints"
  bool fairness = true;
  bool redundancy = true;
  bool readability = true;
  bool sentiment = true;
};

// The seven standard rows, in report order.
std::vector<AblationConfig> StandardAblationGrid();

struct AblationCell {
  std::string place;
  std::optional<RougeScores> scores;
  std::string error;
  int summary_words = 0;
};

struct RougeReport {
  AblationConfig config;
  std::vector<AblationCell> per_place;
  // Unweighted mean over places with scores.
  RougeScores macro;
  int places_scored = 0;
};

struct AblationReport {
  std::vector<RougeReport> rows;
  std::vector<std::string> places;

  bool complete() const;
};

// Runs every (config, place) cell; failures are recorded per cell and do not
// stop the remaining cells. `base` supplies every control except the place
// and the switches owned by the grid.
AblationReport RunAblation(const Summarizer& summarizer,
                           const std::vector<std::string>& places,
                           const std::vector<AblationConfig>& grid,
                           const ControlParams& base);

nlohmann::ordered_json AblationReportToJson(const AblationReport& report);
// Aligned text table, scores as percentages with one decimal.
std::string RenderAblationTable(const AblationReport& report);

}  // namespace opsum

#endif  // OPSUM_EVALUATION_H_

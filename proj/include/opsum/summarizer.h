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

#ifndef OPSUM_SUMMARIZER_H_
#define OPSUM_SUMMARIZER_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "opsum/aspects.h"
#include "opsum/corpus.h"
#include "opsum/embedding.h"
#include "opsum/optimizer.h"
#include "opsum/scoring.h"

namespace opsum {

inline constexpr char kUnassignedAspect[] = "unassigned";

struct ControlParams {
  std::string place;
  AspectRequest aspects;
  int length_words = 100;
  double female_ratio = 0.5;
  int candidate_pool = 150;
  double penalty_weight = 1.0;
  // Similarities below this are zeroed; 0 keeps every pair.
  double similarity_threshold = 0.0;
  bool fairness_enabled = true;
  ScoringOptions scoring;
  SolverConfig solver;
};

struct FieldError {
  std::string field;
  std::string message;
};

// Range checks on the numeric controls; empty when valid.
std::vector<FieldError> ValidateControls(const ControlParams& controls);

struct SummaryEntry {
  std::string sentence_id;
  std::string text;
  std::string review_id;
  Gender gender = Gender::kUnknown;
  std::string aspect;
  int word_count = 0;
  OpinionScore score;
};

struct Summary {
  std::vector<SummaryEntry> entries;
  int total_words = 0;
  int female_count = 0;
  // Sentences by male or unknown-gender reviewers (m_i = 1).
  int male_count = 0;
  double objective = 0.0;
  double score_sum = 0.0;
  double penalty_sum = 0.0;
  double fairness_term = 0.0;
  bool solver_optimal = false;
  std::string solver;  // "exact", "heuristic" or "none"
  int candidate_count = 0;
  std::string diagnostic;
  ControlParams controls_echo;
};

// Label of the aspect attaining the inner max of the relevance formula;
// earlier aspects win ties. "unassigned" without in-vocabulary words.
std::string AssignBestAspect(const Sentence& sentence,
                             std::span<const AspectClass> aspects,
                             const WordVectorTable& table);

struct ScoredSentence {
  const Sentence* sentence;
  OpinionScore score;
};

// The selection instance built for a request, exposed for verification.
struct PreparedProblem {
  std::vector<AspectClass> aspects;
  std::vector<ScoredSentence> scored;      // every unique sentence
  std::vector<ScoredSentence> candidates;  // the pool, in problem order
  SelectionProblem problem;
};

// Read-only pipeline over shared immutable state; Summarize may be called
// concurrently. All referenced objects must outlive the summarizer.
class Summarizer {
 public:
  Summarizer(const Corpus& corpus, const AspectCatalog& catalog,
             const SentimentLexicon& lexicon, const WordVectorTable& table,
             const SentenceEncoder& encoder,
             SelectionOptions selection = {})
      : corpus_(corpus),
        catalog_(catalog),
        lexicon_(lexicon),
        table_(table),
        encoder_(encoder),
        selection_(std::move(selection)) {}

  // NotFound for an unknown place, InvalidArgument for bad controls.
  absl::StatusOr<PreparedProblem> Prepare(const ControlParams& controls) const;
  absl::StatusOr<Summary> Summarize(const ControlParams& controls) const;

  const Corpus& corpus() const { return corpus_; }
  const AspectCatalog& catalog() const { return catalog_; }

 private:
  const Corpus& corpus_;
  const AspectCatalog& catalog_;
  const SentimentLexicon& lexicon_;
  const WordVectorTable& table_;
  const SentenceEncoder& encoder_;
  SelectionOptions selection_;
};

nlohmann::ordered_json ControlsToJson(const ControlParams& controls);
nlohmann::ordered_json OpinionScoreToJson(const OpinionScore& score);
nlohmann::ordered_json SummaryToJson(const Summary& summary);
// Canonical serialization shared by the CLI and the HTTP service.
std::string SerializeSummary(const Summary& summary);
// One sentence per line under "== Aspect ==" headers, then a footer.
std::string RenderSummaryText(const Summary& summary);

}  // namespace opsum

#endif  // OPSUM_SUMMARIZER_H_

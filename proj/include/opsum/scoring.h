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

// Per-sentence opinion scoring.
//
// The opinion score of a sentence is the product of three factors, each
// normalized to [0, 1] before multiplying:
//
//   readability   = clamp(Flesch reading ease, 0, 100) / 100
//   strength      = |polarity - 2| / 2, polarity in {0..4}
//   relevance     = max(0, max over content words w, chosen aspects a of
//                          cos(w, a))
//
// Raw values are kept next to the normalized ones for reporting.

#ifndef OPSUM_SCORING_H_
#define OPSUM_SCORING_H_

#include <filesystem>
#include <span>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "opsum/aspects.h"
#include "opsum/corpus.h"
#include "opsum/embedding.h"

namespace opsum {

struct OpinionScore {
  double readability_raw = 0.0;
  double readability = 0.0;
  int polarity = 2;
  int sentiment_strength_raw = 0;
  double sentiment_strength = 0.0;
  double relevance_raw = 0.0;
  double relevance = 0.0;
  double combined = 0.0;
  // Index into the chosen aspects of the class attaining relevance_raw, or
  // -1 when the sentence has no in-vocabulary content word.
  int aspect_index = -1;
};

// Word valences in {-2,-1,+1,+2} plus negation words.
//
// File format: `word<TAB>valence` per line, '#' comments, and a line
// `[negations]` after which every line is a negation word.
class SentimentLexicon {
 public:
  static absl::StatusOr<SentimentLexicon> Parse(absl::string_view text);
  static absl::StatusOr<SentimentLexicon> Load(
      const std::filesystem::path& path);
  // Fails on an empty lexicon or valences outside {-2,-1,+1,+2}.
  static absl::StatusOr<SentimentLexicon> Create(
      absl::flat_hash_map<std::string, int> valences,
      absl::flat_hash_set<std::string> negations);

  // 0 for words not in the lexicon.
  int Valence(absl::string_view word) const;
  bool IsNegation(absl::string_view word) const;
  size_t size() const { return valences_.size(); }

 private:
  absl::flat_hash_map<std::string, int> valences_;
  absl::flat_hash_set<std::string> negations_;
};

// Vowel-group count with a silent-e correction; never below 1. Fails on a
// word without letters.
absl::StatusOr<int> CountSyllables(absl::string_view word);

// Flesch reading ease of a single sentence given its words:
// 206.835 - 1.015 * words - 84.6 * syllables / words. Not clamped.
absl::StatusOr<double> FleschReadingEase(std::span<const std::string> words);

// Sums word valences, a negation word flipping the sign of the next lexicon
// hit, clamps to [-2, 2] and shifts to [0, 4].
int SentimentPolarity(std::span<const std::string> tokens,
                      const SentimentLexicon& lexicon);

// |polarity - 2|; fails outside [0, 4].
absl::StatusOr<int> SentimentStrength(int polarity);

struct RelevanceMatch {
  double score = 0.0;     // raw max cosine, 0 when nothing is embeddable
  int aspect_index = -1;  // earliest aspect attaining the max
};

// Max over in-vocabulary words and aspects of cos(word, aspect). Fails when
// `aspects` is empty.
absl::StatusOr<RelevanceMatch> Relevance(
    std::span<const std::string> content_tokens,
    std::span<const AspectClass> aspects, const WordVectorTable& table);

// Switches for ablation runs; a disabled factor is fixed to 1.
struct ScoringOptions {
  bool use_readability = true;
  bool use_sentiment = true;
};

absl::StatusOr<OpinionScore> ScoreSentence(
    const Sentence& sentence, std::span<const AspectClass> aspects,
    const SentimentLexicon& lexicon, const WordVectorTable& table,
    const ScoringOptions& options = {});

}  // namespace opsum

#endif  // OPSUM_SCORING_H_

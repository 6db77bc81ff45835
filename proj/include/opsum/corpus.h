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

// Review ingestion, sentence segmentation and tokenization.
//
// A Corpus is built once from validated reviews and is immutable afterwards;
// every place owns its reviews, the sentences segmented from them and the
// gender statistics reported to clients.

#ifndef OPSUM_CORPUS_H_
#define OPSUM_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include "absl/strings/string_view.h"
#include <utility>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace opsum {

enum class Gender { kFemale, kMale, kUnknown };

// "F", "M" or "U".
absl::string_view GenderCode(Gender gender);
absl::StatusOr<Gender> ParseGenderCode(absl::string_view code);

struct Review {
  std::string id;
  std::string place;
  std::string text;
  int rating = 0;
  int64_t likes = 0;
  std::string username;
  Gender gender = Gender::kUnknown;
  std::optional<std::string> country;
};

// Checks rating in [1,5], likes >= 0, non-blank id and text.
absl::Status ValidateReview(const Review& review);

struct Sentence {
  std::string id;         // "<review id>#<index>"
  std::string review_id;
  std::string place;
  std::string text;
  std::vector<std::string> tokens;
  std::vector<std::string> content_tokens;
  int word_count = 0;
  Gender gender = Gender::kUnknown;
  int64_t review_likes = 0;

  // f_i of the fairness term. Unknown gender counts as male.
  bool is_female() const { return gender == Gender::kFemale; }
};

struct CorpusStats {
  std::string place;
  int review_count = 0;
  int female_count = 0;
  int male_count = 0;
  int unknown_count = 0;
  int sentence_count = 0;
};

using WordSet = absl::flat_hash_set<std::string>;

// Reads one lowercase entry per line; blank lines and '#' comments skipped.
absl::StatusOr<WordSet> LoadWordList(const std::filesystem::path& path);

// Whitespace split, ASCII-lowercased, with ASCII punctuation removed from
// each word. Words that are pure punctuation vanish.
std::vector<std::string> Tokenize(absl::string_view text);

struct PreprocessedText {
  std::vector<std::string> tokens;
  std::vector<std::string> content_tokens;
};

PreprocessedText Preprocess(absl::string_view text, const WordSet& stopwords);

// Rule-based splitter: a run of '.', '!' or '?' (optionally followed by
// closing quotes/brackets) ends a sentence when followed by whitespace or
// end of text, unless the word carrying the period is a listed abbreviation
// or a dotted initialism such as "a.m.".
class SentenceSplitter {
 public:
  SentenceSplitter() = default;
  explicit SentenceSplitter(WordSet abbreviations)
      : abbreviations_(std::move(abbreviations)) {}

  // Returns trimmed, non-empty pieces in text order.
  std::vector<std::string> Split(absl::string_view text) const;

  // Byte ranges [first, second) that tile `text` from the start; the last
  // range runs to the end of text. Ranges may be blank.
  std::vector<std::pair<size_t, size_t>> SplitOffsets(
      absl::string_view text) const;

 private:
  bool IsAbbreviation(absl::string_view word) const;

  WordSet abbreviations_;
};

// Stop-words and the sentence splitter shared by ingestion and evaluation.
struct TextResources {
  WordSet stopwords;
  SentenceSplitter splitter;

  static absl::StatusOr<TextResources> Load(
      const std::filesystem::path& stopwords_path,
      const std::filesystem::path& abbreviations_path);
};

// Segments a review into sentences. Fragments without any word (for example
// a trailing "!!" or an emoticon) are folded into the neighbouring sentence,
// so the sentence texts concatenate back to the review text modulo
// whitespace. Returns an empty vector when the review has no words at all.
std::vector<Sentence> SegmentSentences(const Review& review,
                                       const TextResources& resources);

struct RecordError {
  int line = 0;  // 1-based physical line (JSONL) or record line (CSV)
  std::string message;
};

struct IngestResult {
  std::vector<Review> reviews;
  std::vector<RecordError> errors;
  // Well-formed records whose place field names a different place.
  int other_place_records = 0;
};

// Parses JSON Lines review records. When `place` is non-empty, records
// without a place field are assigned to it and records naming another place
// are counted in other_place_records. Unknown fields are ignored.
IngestResult IngestJsonLines(std::istream& input, absl::string_view place);

// Same contract for CSV with a header row naming the Review fields.
IngestResult IngestCsv(std::istream& input, absl::string_view place);

CorpusStats ComputeStats(absl::string_view place,
                         const std::vector<Review>& reviews,
                         int sentence_count);

class PlaceCorpus {
 public:
  PlaceCorpus(std::string place, std::vector<Review> reviews,
              const TextResources& resources);

  const std::string& place() const { return place_; }
  const std::vector<Review>& reviews() const { return reviews_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  const CorpusStats& stats() const { return stats_; }
  // Ids of reviews skipped because they produced no sentence.
  const std::vector<std::string>& skipped_reviews() const {
    return skipped_reviews_;
  }

 private:
  std::string place_;
  std::vector<Review> reviews_;
  std::vector<Sentence> sentences_;
  CorpusStats stats_;
  std::vector<std::string> skipped_reviews_;
};

class Corpus {
 public:
  Corpus() = default;

  // Reviews are grouped by their place field, preserving input order.
  static Corpus Build(const std::vector<Review>& reviews,
                      const TextResources& resources);

  const PlaceCorpus* Find(absl::string_view place) const;
  // Sorted place identifiers.
  std::vector<std::string> Places() const;
  bool empty() const { return places_.empty(); }

 private:
  std::map<std::string, PlaceCorpus, std::less<>> places_;
};

// Persisted per-place index: a magic header line followed by one JSON review
// record per line.
inline constexpr absl::string_view kCorpusIndexMagic = "OPSUM-CORPUS 1";
inline constexpr absl::string_view kCorpusIndexExtension = ".corpus";

absl::Status WritePlaceIndex(const std::filesystem::path& path,
                             const std::vector<Review>& reviews);
absl::StatusOr<std::vector<Review>> ReadPlaceIndex(
    const std::filesystem::path& path);

// Loads every *.corpus file under `directory`.
absl::StatusOr<std::vector<Review>> ReadIndexDirectory(
    const std::filesystem::path& directory);

}  // namespace opsum

#endif  // OPSUM_CORPUS_H_

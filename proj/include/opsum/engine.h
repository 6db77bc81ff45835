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

// Everything a summarization request reads, loaded once and never mutated.
//
// Data directory layout:
//   <data>/places/<place>.corpus   persisted review index per place
//   <data>/vectors.txt             optional word vectors
//
// Resource directory (shipped under data/ in the source tree):
//   stopwords.txt  abbreviations.txt  lexicon.tsv  aspects.txt

#ifndef OPSUM_ENGINE_H_
#define OPSUM_ENGINE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "opsum/aspects.h"
#include "opsum/corpus.h"
#include "opsum/embedding.h"
#include "opsum/scoring.h"
#include "opsum/summarizer.h"

namespace opsum {

struct EngineOptions {
  std::filesystem::path data_dir;
  std::filesystem::path resource_dir = OPSUM_RESOURCE_DIR;
  // Overrides <data>/vectors.txt. Without either, a seeded table is
  // generated over the corpus vocabulary and the catalog terms.
  std::optional<std::filesystem::path> vectors;
  SeededTableOptions seeded;
  SelectionOptions selection;
};

std::filesystem::path PlacesDirectory(const std::filesystem::path& data_dir);
std::filesystem::path PlaceIndexPath(const std::filesystem::path& data_dir,
                                     absl::string_view place);

class Engine {
 public:
  // Reads every place index under the data directory.
  static absl::StatusOr<std::unique_ptr<const Engine>> Load(
      const EngineOptions& options);
  // Builds from in-memory reviews; the data directory is only consulted for
  // vectors.txt.
  static absl::StatusOr<std::unique_ptr<const Engine>> FromReviews(
      const std::vector<Review>& reviews, const EngineOptions& options);

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const TextResources& text() const { return text_; }
  const Corpus& corpus() const { return corpus_; }
  const WordVectorTable& table() const { return table_; }
  const AspectCatalog& catalog() const { return catalog_; }
  const SentimentLexicon& lexicon() const { return lexicon_; }
  const Summarizer& summarizer() const { return *summarizer_; }
  // "file:<path>" or "seeded".
  const std::string& vector_source() const { return vector_source_; }

 private:
  Engine() = default;

  TextResources text_;
  Corpus corpus_;
  WordVectorTable table_;
  AspectCatalog catalog_;
  SentimentLexicon lexicon_;
  std::unique_ptr<MeanPoolingEncoder> encoder_;
  std::unique_ptr<Summarizer> summarizer_;
  std::string vector_source_;
};

}  // namespace opsum

#endif  // OPSUM_ENGINE_H_

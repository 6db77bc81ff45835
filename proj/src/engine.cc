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

#include "opsum/engine.h"

#include <utility>

#include "absl/strings/str_cat.h"

namespace opsum {

std::filesystem::path PlacesDirectory(const std::filesystem::path& data_dir) {
  return data_dir / "places";
}

std::filesystem::path PlaceIndexPath(const std::filesystem::path& data_dir,
                                     absl::string_view place) {
  return PlacesDirectory(data_dir) /
         absl::StrCat(place, kCorpusIndexExtension);
}

absl::StatusOr<std::unique_ptr<const Engine>> Engine::Load(
    const EngineOptions& options) {
  absl::StatusOr<std::vector<Review>> reviews =
      ReadIndexDirectory(PlacesDirectory(options.data_dir));
  if (!reviews.ok()) return reviews.status();
  return FromReviews(*reviews, options);
}

absl::StatusOr<std::unique_ptr<const Engine>> Engine::FromReviews(
    const std::vector<Review>& reviews, const EngineOptions& options) {
  const std::filesystem::path& res = options.resource_dir;
  std::unique_ptr<Engine> engine(new Engine());

  absl::StatusOr<TextResources> text =
      TextResources::Load(res / "stopwords.txt", res / "abbreviations.txt");
  if (!text.ok()) return text.status();
  engine->text_ = *std::move(text);
  engine->corpus_ = Corpus::Build(reviews, engine->text_);

  absl::StatusOr<SentimentLexicon> lexicon =
      SentimentLexicon::Load(res / "lexicon.tsv");
  if (!lexicon.ok()) return lexicon.status();
  engine->lexicon_ = *std::move(lexicon);

  absl::StatusOr<std::vector<AspectDefinition>> definitions =
      ReadCatalogDefinitions(res / "aspects.txt");
  if (!definitions.ok()) return definitions.status();

  std::optional<std::filesystem::path> vectors = options.vectors;
  if (!vectors && !options.data_dir.empty()) {
    std::error_code ec;
    const std::filesystem::path candidate = options.data_dir / "vectors.txt";
    if (std::filesystem::exists(candidate, ec)) vectors = candidate;
  }
  if (vectors) {
    absl::StatusOr<WordVectorTable> table = LoadWordVectors(*vectors);
    if (!table.ok()) return table.status();
    engine->table_ = *std::move(table);
    engine->vector_source_ = absl::StrCat("file:", vectors->string());
  } else {
    std::vector<std::string> vocabulary;
    for (const std::string& place : engine->corpus_.Places()) {
      for (const Sentence& s : engine->corpus_.Find(place)->sentences()) {
        vocabulary.insert(vocabulary.end(), s.tokens.begin(), s.tokens.end());
      }
    }
    std::vector<std::vector<std::string>> clusters;
    for (const AspectDefinition& def : *definitions) {
      clusters.push_back(def.terms);
    }
    engine->table_ = GenerateSeededTable(vocabulary, clusters, options.seeded);
    engine->vector_source_ = "seeded";
  }

  absl::StatusOr<AspectCatalog> catalog =
      AspectCatalog::Build(*definitions, engine->table_);
  if (!catalog.ok()) return catalog.status();
  engine->catalog_ = *std::move(catalog);

  engine->encoder_ = std::make_unique<MeanPoolingEncoder>(engine->table_);
  engine->summarizer_ = std::make_unique<Summarizer>(
      engine->corpus_, engine->catalog_, engine->lexicon_, engine->table_,
      *engine->encoder_, options.selection);
  return std::unique_ptr<const Engine>(std::move(engine));
}

}  // namespace opsum

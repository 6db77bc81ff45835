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

#ifndef OPSUM_EMBEDDING_H_
#define OPSUM_EMBEDDING_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "opsum/corpus.h"

namespace opsum {

using Vector = std::vector<double>;

// Immutable word -> dense vector mapping with one shared dimension.
class WordVectorTable {
 public:
  WordVectorTable() = default;
  explicit WordVectorTable(int dimension) : dimension_(dimension) {}

  int dimension() const { return dimension_; }
  size_t size() const { return entries_.size(); }

  // Rejects wrong dimension and non-finite components. Replaces an existing
  // entry and returns true in that case.
  absl::StatusOr<bool> Insert(std::string word, Vector vector);

  // Exact match first, then the ASCII-lowercased form.
  const Vector* Find(absl::string_view word) const;

  // Sorted vocabulary.
  std::vector<std::string> Words() const;

 private:
  int dimension_ = 0;
  absl::flat_hash_map<std::string, Vector> entries_;
};

// Text format: optional "count dim" header line, then
// `word v1 ... vd` per line. Duplicate words keep the last vector and add a
// warning.
absl::StatusOr<WordVectorTable> LoadWordVectors(
    const std::filesystem::path& path,
    std::vector<std::string>* warnings = nullptr);

absl::Status SaveWordVectors(const WordVectorTable& table,
                             const std::filesystem::path& path);

std::optional<std::span<const double>> WordVector(const WordVectorTable& table,
                                                  absl::string_view word);

// Cosine similarity; 0 when either vector has zero norm.
absl::StatusOr<double> Cosine(std::span<const double> u,
                              std::span<const double> v);

struct SentenceVector {
  Vector vector;
  std::string sentence_id;
  // False when no content token had a vector; `vector` is then all zeros.
  bool embeddable = false;
};

// Mean of the in-vocabulary content-token vectors.
SentenceVector MeanPooledSentenceVector(const WordVectorTable& table,
                                        const Sentence& sentence);

// Sentence encoder contract used for redundancy similarities. Implementations
// must be thread-safe for concurrent Encode calls.
class SentenceEncoder {
 public:
  virtual ~SentenceEncoder() = default;
  virtual int dimension() const = 0;
  virtual SentenceVector Encode(const Sentence& sentence) const = 0;
};

class MeanPoolingEncoder final : public SentenceEncoder {
 public:
  // `table` must outlive the encoder.
  explicit MeanPoolingEncoder(const WordVectorTable& table) : table_(table) {}

  int dimension() const override { return table_.dimension(); }
  SentenceVector Encode(const Sentence& sentence) const override {
    return MeanPooledSentenceVector(table_, sentence);
  }

 private:
  const WordVectorTable& table_;
};

// Deterministic stand-in vectors for running without a pretrained table.
//
// Every word gets a pseudo-random direction derived from (seed, word). Words
// listed together in a cluster are additionally pulled towards a shared
// cluster centroid, so topical words end up close to each other. Output
// depends only on the arguments, not on the platform's standard library.
struct SeededTableOptions {
  int dimension = 50;
  uint64_t seed = 0x5eedc0de;
  // Weight of the private per-word direction relative to the centroid.
  double word_noise = 0.45;
};

WordVectorTable GenerateSeededTable(
    const std::vector<std::string>& vocabulary,
    const std::vector<std::vector<std::string>>& clusters,
    const SeededTableOptions& options = {});

}  // namespace opsum

#endif  // OPSUM_EMBEDDING_H_

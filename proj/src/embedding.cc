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

#include "opsum/embedding.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace opsum {
namespace {

uint64_t Fnv1a(absl::string_view s, uint64_t basis = 1469598103934665603ULL) {
  uint64_t h = basis;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Components uniform in [-1, 1).
Vector RandomDirection(uint64_t key, int dimension) {
  std::mt19937_64 rng(key);
  Vector v(dimension);
  for (double& x : v) {
    x = static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
  }
  return v;
}

}  // namespace

absl::StatusOr<bool> WordVectorTable::Insert(std::string word, Vector vector) {
  if (dimension_ <= 0) {
    return absl::FailedPreconditionError("table dimension is not set");
  }
  if (static_cast<int>(vector.size()) != dimension_) {
    return absl::InvalidArgumentError(
        absl::StrCat("vector for '", word, "' has dimension ", vector.size(),
                     ", table dimension is ", dimension_));
  }
  for (double x : vector) {
    if (!std::isfinite(x)) {
      return absl::InvalidArgumentError(
          absl::StrCat("vector for '", word, "' has a non-finite component"));
    }
  }
  auto [it, inserted] = entries_.insert_or_assign(std::move(word),
                                                  std::move(vector));
  return !inserted;
}

const Vector* WordVectorTable::Find(absl::string_view word) const {
  if (auto it = entries_.find(word); it != entries_.end()) return &it->second;
  const std::string lower = absl::AsciiStrToLower(word);
  if (auto it = entries_.find(lower); it != entries_.end()) return &it->second;
  return nullptr;
}

std::vector<std::string> WordVectorTable::Words() const {
  std::vector<std::string> words;
  words.reserve(entries_.size());
  for (const auto& [word, unused] : entries_) words.push_back(word);
  std::sort(words.begin(), words.end());
  return words;
}

absl::StatusOr<WordVectorTable> LoadWordVectors(
    const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("cannot open vector file ", path.string()));
  }
  WordVectorTable table;
  std::string line;
  int line_number = 0;
  int declared_dimension = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<absl::string_view> fields =
        absl::StrSplit(line, absl::ByAnyChar(" \t"), absl::SkipEmpty());
    if (fields.empty()) continue;
    if (first) {
      first = false;
      int count = 0;
      int dim = 0;
      if (fields.size() == 2 && absl::SimpleAtoi(fields[0], &count) &&
          absl::SimpleAtoi(fields[1], &dim)) {
        if (dim <= 0) {
          return absl::InvalidArgumentError(absl::StrCat(
              path.string(), ":1: header declares dimension ", dim));
        }
        declared_dimension = dim;
        continue;
      }
    }
    const int dimension = static_cast<int>(fields.size()) - 1;
    if (dimension < 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          path.string(), ":", line_number, ": entry has no components"));
    }
    if (table.dimension() == 0) {
      if (declared_dimension != 0 && dimension != declared_dimension) {
        return absl::InvalidArgumentError(absl::StrCat(
            path.string(), ":", line_number, ": expected ", declared_dimension,
            " components, got ", dimension));
      }
      table = WordVectorTable(dimension);
    } else if (dimension != table.dimension()) {
      return absl::InvalidArgumentError(absl::StrCat(
          path.string(), ":", line_number, ": expected ", table.dimension(),
          " components, got ", dimension));
    }
    Vector vector(dimension);
    for (int k = 0; k < dimension; ++k) {
      if (!absl::SimpleAtod(fields[k + 1], &vector[k])) {
        return absl::InvalidArgumentError(
            absl::StrCat(path.string(), ":", line_number,
                         ": bad component '", fields[k + 1], "'"));
      }
    }
    std::string word(fields[0]);
    auto replaced = table.Insert(word, std::move(vector));
    if (!replaced.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          path.string(), ":", line_number, ": ", replaced.status().message()));
    }
    if (*replaced && warnings != nullptr) {
      warnings->push_back(absl::StrCat(path.string(), ":", line_number,
                                       ": duplicate word '", word,
                                       "', keeping the last vector"));
    }
  }
  if (table.size() == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat(path.string(), ": no word vectors"));
  }
  return table;
}

absl::Status SaveWordVectors(const WordVectorTable& table,
                             const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write ", path.string()));
  }
  out << table.size() << ' ' << table.dimension() << '\n';
  out.precision(17);
  for (const std::string& word : table.Words()) {
    out << word;
    for (double x : *table.Find(word)) out << ' ' << x;
    out << '\n';
  }
  return out ? absl::OkStatus()
             : absl::DataLossError(absl::StrCat("write failed: ", path.string()));
}

std::optional<std::span<const double>> WordVector(const WordVectorTable& table,
                                                  absl::string_view word) {
  const Vector* v = table.Find(word);
  if (v == nullptr) return std::nullopt;
  return std::span<const double>(*v);
}

absl::StatusOr<double> Cosine(std::span<const double> u,
                              std::span<const double> v) {
  if (u.size() != v.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cosine of vectors with dimensions ", u.size(), " and ", v.size()));
  }
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (size_t k = 0; k < u.size(); ++k) {
    dot += u[k] * v[k];
    uu += u[k] * u[k];
    vv += v[k] * v[k];
  }
  if (uu == 0.0 || vv == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

SentenceVector MeanPooledSentenceVector(const WordVectorTable& table,
                                        const Sentence& sentence) {
  SentenceVector out;
  out.sentence_id = sentence.id;
  out.vector.assign(table.dimension(), 0.0);
  int found = 0;
  for (const std::string& token : sentence.content_tokens) {
    const Vector* v = table.Find(token);
    if (v == nullptr) continue;
    for (size_t k = 0; k < v->size(); ++k) out.vector[k] += (*v)[k];
    ++found;
  }
  if (found > 0) {
    for (double& x : out.vector) x /= found;
    out.embeddable = true;
  }
  return out;
}

WordVectorTable GenerateSeededTable(
    const std::vector<std::string>& vocabulary,
    const std::vector<std::vector<std::string>>& clusters,
    const SeededTableOptions& options) {
  absl::flat_hash_map<std::string, std::vector<size_t>> membership;
  for (size_t c = 0; c < clusters.size(); ++c) {
    for (const std::string& word : clusters[c]) {
      std::vector<size_t>& of = membership[word];
      if (std::find(of.begin(), of.end(), c) == of.end()) of.push_back(c);
    }
  }
  std::vector<Vector> centroids;
  centroids.reserve(clusters.size());
  for (size_t c = 0; c < clusters.size(); ++c) {
    centroids.push_back(RandomDirection(
        Fnv1a(absl::StrCat("cluster#", c), options.seed ^ 0x9e3779b97f4a7c15ULL),
        options.dimension));
  }

  std::vector<std::string> words = vocabulary;
  for (const auto& cluster : clusters) {
    words.insert(words.end(), cluster.begin(), cluster.end());
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());

  WordVectorTable table(options.dimension);
  for (const std::string& word : words) {
    if (word.empty()) continue;
    Vector v = RandomDirection(Fnv1a(word, options.seed), options.dimension);
    auto it = membership.find(word);
    if (it != membership.end()) {
      for (double& x : v) x *= options.word_noise;
      const double share = 1.0 / static_cast<double>(it->second.size());
      for (size_t c : it->second) {
        for (int k = 0; k < options.dimension; ++k) {
          v[k] += share * centroids[c][k];
        }
      }
    }
    // Components are finite and the dimension matches by construction.
    (void)table.Insert(word, std::move(v));
  }
  return table;
}

}  // namespace opsum

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

// Coarse-grained aspect catalog.
//
// File format, one class per line ('#' starts a comment):
//
//   Access: travel, infrastructure, transport, entrance, ...
//
// A class embedding is the mean of the vectors of its first ten
// in-vocabulary terms.

#ifndef OPSUM_ASPECTS_H_
#define OPSUM_ASPECTS_H_

#include <filesystem>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"
#include "opsum/embedding.h"

namespace opsum {

inline constexpr int kAspectEmbeddingTerms = 10;

struct AspectClass {
  std::string label;
  std::vector<std::string> terms;
  Vector embedding;
};

struct AspectDefinition {
  std::string label;
  std::vector<std::string> terms;
};

class AspectCatalog {
 public:
  AspectCatalog() = default;

  // Fails on an empty definition list, duplicate labels (case-insensitive),
  // classes without terms, or classes none of whose terms has a vector.
  static absl::StatusOr<AspectCatalog> Build(
      const std::vector<AspectDefinition>& definitions,
      const WordVectorTable& table);

  const std::vector<AspectClass>& classes() const { return classes_; }
  std::vector<std::string> Labels() const;
  // Case-insensitive; nullptr when absent.
  const AspectClass* Find(absl::string_view label) const;

 private:
  std::vector<AspectClass> classes_;
};

absl::StatusOr<std::vector<AspectDefinition>> ParseCatalogDefinitions(
    absl::string_view text);
absl::StatusOr<std::vector<AspectDefinition>> ReadCatalogDefinitions(
    const std::filesystem::path& path);

absl::StatusOr<AspectCatalog> LoadCatalog(const std::filesystem::path& path,
                                          const WordVectorTable& table);

// A reader's aspect choice: every class, or named labels.
struct AspectRequest {
  bool all = true;
  std::vector<std::string> labels;

  static AspectRequest All() { return {}; }
  static AspectRequest Of(std::vector<std::string> labels) {
    return {false, std::move(labels)};
  }
  // "all" or a comma-separated label list.
  static AspectRequest Parse(absl::string_view text);
};

struct SelectionOptions {
  // Labels left out when "all" is requested. Empty by default, so "all"
  // means the whole catalog.
  std::vector<std::string> exclude_from_all;
};

// Resolves a request to classes in catalog order. Unknown labels fail with
// the list of valid labels and, when one is within edit distance 2, a
// suggestion.
absl::StatusOr<std::vector<AspectClass>> ResolveSelection(
    const AspectCatalog& catalog, const AspectRequest& request,
    const SelectionOptions& options = {});

// Case-insensitive Levenshtein distance.
int EditDistance(absl::string_view a, absl::string_view b);

}  // namespace opsum

#endif  // OPSUM_ASPECTS_H_

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

#include "opsum/aspects.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace opsum {

absl::StatusOr<AspectCatalog> AspectCatalog::Build(
    const std::vector<AspectDefinition>& definitions,
    const WordVectorTable& table) {
  if (definitions.empty()) {
    return absl::InvalidArgumentError("aspect catalog has no classes");
  }
  AspectCatalog catalog;
  absl::flat_hash_set<std::string> seen;
  for (const AspectDefinition& def : definitions) {
    if (def.label.empty()) {
      return absl::InvalidArgumentError("aspect class with an empty label");
    }
    if (!seen.insert(absl::AsciiStrToLower(def.label)).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate aspect label '", def.label, "'"));
    }
    if (def.terms.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("aspect class '", def.label, "' has no terms"));
    }
    AspectClass aspect{def.label, def.terms, Vector(table.dimension(), 0.0)};
    int used = 0;
    for (const std::string& term : def.terms) {
      if (used == kAspectEmbeddingTerms) break;
      const Vector* v = table.Find(term);
      if (v == nullptr) continue;
      for (size_t k = 0; k < v->size(); ++k) aspect.embedding[k] += (*v)[k];
      ++used;
    }
    if (used == 0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "aspect class '", def.label, "' has no in-vocabulary terms"));
    }
    for (double& x : aspect.embedding) x /= used;
    catalog.classes_.push_back(std::move(aspect));
  }
  return catalog;
}

std::vector<std::string> AspectCatalog::Labels() const {
  std::vector<std::string> labels;
  labels.reserve(classes_.size());
  for (const AspectClass& c : classes_) labels.push_back(c.label);
  return labels;
}

const AspectClass* AspectCatalog::Find(absl::string_view label) const {
  for (const AspectClass& c : classes_) {
    if (absl::EqualsIgnoreCase(c.label, label)) return &c;
  }
  return nullptr;
}

absl::StatusOr<std::vector<AspectDefinition>> ParseCatalogDefinitions(
    absl::string_view text) {
  std::vector<AspectDefinition> definitions;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    if (size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const size_t colon = line.find(':');
    if (colon == absl::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrCat(
          "catalog line ", line_number, ": expected 'Label: term, ...'"));
    }
    AspectDefinition def;
    def.label = std::string(absl::StripAsciiWhitespace(line.substr(0, colon)));
    for (absl::string_view term :
         absl::StrSplit(line.substr(colon + 1), ',', absl::SkipWhitespace())) {
      def.terms.push_back(
          absl::AsciiStrToLower(absl::StripAsciiWhitespace(term)));
    }
    definitions.push_back(std::move(def));
  }
  return definitions;
}

absl::StatusOr<std::vector<AspectDefinition>> ReadCatalogDefinitions(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("cannot open aspect catalog ", path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseCatalogDefinitions(buffer.str());
}

absl::StatusOr<AspectCatalog> LoadCatalog(const std::filesystem::path& path,
                                          const WordVectorTable& table) {
  auto definitions = ReadCatalogDefinitions(path);
  if (!definitions.ok()) return definitions.status();
  return AspectCatalog::Build(*definitions, table);
}

AspectRequest AspectRequest::Parse(absl::string_view text) {
  text = absl::StripAsciiWhitespace(text);
  if (absl::EqualsIgnoreCase(text, "all")) return All();
  std::vector<std::string> labels;
  for (absl::string_view label : absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    labels.emplace_back(absl::StripAsciiWhitespace(label));
  }
  return Of(std::move(labels));
}

int EditDistance(absl::string_view a, absl::string_view b) {
  const std::string x = absl::AsciiStrToLower(a);
  const std::string y = absl::AsciiStrToLower(b);
  std::vector<int> row(y.size() + 1);
  for (size_t j = 0; j <= y.size(); ++j) row[j] = static_cast<int>(j);
  for (size_t i = 1; i <= x.size(); ++i) {
    int diagonal = row[0];
    row[0] = static_cast<int>(i);
    for (size_t j = 1; j <= y.size(); ++j) {
      const int above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diagonal + (x[i - 1] == y[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[y.size()];
}

absl::StatusOr<std::vector<AspectClass>> ResolveSelection(
    const AspectCatalog& catalog, const AspectRequest& request,
    const SelectionOptions& options) {
  std::vector<AspectClass> selected;
  if (request.all) {
    for (const AspectClass& c : catalog.classes()) {
      const bool excluded =
          std::any_of(options.exclude_from_all.begin(),
                      options.exclude_from_all.end(),
                      [&](const std::string& label) {
                        return absl::EqualsIgnoreCase(label, c.label);
                      });
      if (!excluded) selected.push_back(c);
    }
    if (selected.empty()) {
      return absl::InvalidArgumentError("every aspect is excluded from 'all'");
    }
    return selected;
  }
  if (request.labels.empty()) {
    return absl::InvalidArgumentError(
        "no aspects requested; pass 'all' to use every aspect");
  }
  const std::vector<std::string> valid = catalog.Labels();
  absl::flat_hash_set<std::string> wanted;
  for (const std::string& label : request.labels) {
    const AspectClass* c = catalog.Find(label);
    if (c == nullptr) {
      std::string message = absl::StrCat("unknown aspect '", label, "'");
      const std::string* best = nullptr;
      int best_distance = 3;
      for (const std::string& candidate : valid) {
        const int d = EditDistance(label, candidate);
        if (d < best_distance) {
          best_distance = d;
          best = &candidate;
        }
      }
      if (best != nullptr) absl::StrAppend(&message, "; did you mean '", *best, "'?");
      absl::StrAppend(&message, " Valid aspects: ", absl::StrJoin(valid, ", "));
      return absl::InvalidArgumentError(message);
    }
    wanted.insert(c->label);
  }
  for (const AspectClass& c : catalog.classes()) {
    if (wanted.contains(c.label)) selected.push_back(c);
  }
  return selected;
}

}  // namespace opsum

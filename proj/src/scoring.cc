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

#include "opsum/scoring.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace opsum {
namespace {

bool IsVowel(char c, bool first) {
  switch (c) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
      return true;
    case 'y':
      return !first;
    default:
      return false;
  }
}

}  // namespace

absl::StatusOr<SentimentLexicon> SentimentLexicon::Create(
    absl::flat_hash_map<std::string, int> valences,
    absl::flat_hash_set<std::string> negations) {
  if (valences.empty()) {
    return absl::InvalidArgumentError("sentiment lexicon is empty");
  }
  for (const auto& [word, valence] : valences) {
    if (valence == 0 || valence < -2 || valence > 2) {
      return absl::InvalidArgumentError(absl::StrCat(
          "valence of '", word, "' must be in {-2,-1,+1,+2}, got ", valence));
    }
  }
  SentimentLexicon lexicon;
  lexicon.valences_ = std::move(valences);
  lexicon.negations_ = std::move(negations);
  return lexicon;
}

absl::StatusOr<SentimentLexicon> SentimentLexicon::Parse(
    absl::string_view text) {
  absl::flat_hash_map<std::string, int> valences;
  absl::flat_hash_set<std::string> negations;
  bool in_negations = false;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty() || line.front() == '#') continue;
    if (line == "[negations]") {
      in_negations = true;
      continue;
    }
    if (in_negations) {
      negations.insert(absl::AsciiStrToLower(line));
      continue;
    }
    std::vector<absl::string_view> fields =
        absl::StrSplit(line, absl::ByAnyChar("\t "), absl::SkipEmpty());
    int valence = 0;
    if (fields.size() != 2 ||
        !absl::SimpleAtoi(absl::StripPrefix(fields[1], "+"), &valence)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "lexicon line ", line_number, ": expected 'word<TAB>valence'"));
    }
    valences[absl::AsciiStrToLower(fields[0])] = valence;
  }
  return Create(std::move(valences), std::move(negations));
}

absl::StatusOr<SentimentLexicon> SentimentLexicon::Load(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("cannot open lexicon ", path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

int SentimentLexicon::Valence(absl::string_view word) const {
  auto it = valences_.find(word);
  return it == valences_.end() ? 0 : it->second;
}

bool SentimentLexicon::IsNegation(absl::string_view word) const {
  return negations_.contains(word);
}

absl::StatusOr<int> CountSyllables(absl::string_view word) {
  std::string letters;
  for (char c : word) {
    if (absl::ascii_isalpha(static_cast<unsigned char>(c))) {
      letters.push_back(absl::ascii_tolower(static_cast<unsigned char>(c)));
    }
  }
  if (letters.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("no letters to syllabify in '", word, "'"));
  }
  int groups = 0;
  bool previous_vowel = false;
  for (size_t i = 0; i < letters.size(); ++i) {
    const bool vowel = IsVowel(letters[i], i == 0);
    if (vowel && !previous_vowel) ++groups;
    previous_vowel = vowel;
  }
  // Silent final e ("make", "ride"), but not consonant+le ("table").
  const size_t n = letters.size();
  if (groups > 1 && letters[n - 1] == 'e' && !IsVowel(letters[n - 2], false)) {
    const bool consonant_le =
        n >= 3 && letters[n - 2] == 'l' && !IsVowel(letters[n - 3], false);
    if (!consonant_le) --groups;
  }
  return std::max(groups, 1);
}

absl::StatusOr<double> FleschReadingEase(std::span<const std::string> words) {
  if (words.empty()) {
    return absl::InvalidArgumentError("Flesch reading ease of zero words");
  }
  int syllables = 0;
  for (const std::string& word : words) {
    // Numbers and other letterless tokens count as one syllable.
    absl::StatusOr<int> count = CountSyllables(word);
    syllables += count.ok() ? *count : 1;
  }
  const double n = static_cast<double>(words.size());
  return 206.835 - 1.015 * n - 84.6 * (syllables / n);
}

int SentimentPolarity(std::span<const std::string> tokens,
                      const SentimentLexicon& lexicon) {
  int sum = 0;
  bool negate = false;
  for (const std::string& token : tokens) {
    if (lexicon.IsNegation(token)) {
      negate = true;
      continue;
    }
    const int valence = lexicon.Valence(token);
    if (valence == 0) continue;
    sum += negate ? -valence : valence;
    negate = false;
  }
  return std::clamp(sum, -2, 2) + 2;
}

absl::StatusOr<int> SentimentStrength(int polarity) {
  if (polarity < 0 || polarity > 4) {
    return absl::InvalidArgumentError(
        absl::StrCat("polarity must be in [0,4], got ", polarity));
  }
  return std::abs(polarity - 2);
}

absl::StatusOr<RelevanceMatch> Relevance(
    std::span<const std::string> content_tokens,
    std::span<const AspectClass> aspects, const WordVectorTable& table) {
  if (aspects.empty()) {
    return absl::InvalidArgumentError("relevance needs at least one aspect");
  }
  // Per-aspect best first, so ties between aspects resolve to the earlier
  // one regardless of word order.
  std::vector<double> best(aspects.size(), -2.0);
  bool any = false;
  for (const std::string& token : content_tokens) {
    const Vector* v = table.Find(token);
    if (v == nullptr) continue;
    any = true;
    for (size_t j = 0; j < aspects.size(); ++j) {
      absl::StatusOr<double> c = Cosine(*v, aspects[j].embedding);
      if (!c.ok()) return c.status();
      best[j] = std::max(best[j], *c);
    }
  }
  RelevanceMatch match;
  if (!any) return match;
  match.aspect_index = 0;
  for (size_t j = 1; j < aspects.size(); ++j) {
    if (best[j] > best[match.aspect_index]) match.aspect_index = static_cast<int>(j);
  }
  match.score = best[match.aspect_index];
  return match;
}

absl::StatusOr<OpinionScore> ScoreSentence(
    const Sentence& sentence, std::span<const AspectClass> aspects,
    const SentimentLexicon& lexicon, const WordVectorTable& table,
    const ScoringOptions& options) {
  OpinionScore score;
  absl::StatusOr<double> flesch = FleschReadingEase(sentence.tokens);
  if (!flesch.ok()) return flesch.status();
  score.readability_raw = *flesch;
  score.readability =
      options.use_readability
          ? std::clamp(score.readability_raw, 0.0, 100.0) / 100.0
          : 1.0;

  score.polarity = SentimentPolarity(sentence.tokens, lexicon);
  absl::StatusOr<int> strength = SentimentStrength(score.polarity);
  if (!strength.ok()) return strength.status();
  score.sentiment_strength_raw = *strength;
  score.sentiment_strength =
      options.use_sentiment ? score.sentiment_strength_raw / 2.0 : 1.0;

  absl::StatusOr<RelevanceMatch> relevance =
      Relevance(sentence.content_tokens, aspects, table);
  if (!relevance.ok()) return relevance.status();
  score.relevance_raw = relevance->score;
  score.relevance = std::max(relevance->score, 0.0);
  score.aspect_index = relevance->aspect_index;

  score.combined =
      score.readability * score.sentiment_strength * score.relevance;
  return score;
}

}  // namespace opsum

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

#include "opsum/corpus.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/strip.h"
#include "json.hpp"

namespace opsum {
namespace {

using nlohmann::json;

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsTerminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsClosing(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}

// UTF-8 punctuation commonly found in review text: curly quotes, dashes and
// the ellipsis, all three bytes long starting with 0xE2 0x80.
bool IsUnicodePunctuation(absl::string_view s, size_t i) {
  if (i + 2 >= s.size()) return false;
  if (static_cast<unsigned char>(s[i]) != 0xE2 ||
      static_cast<unsigned char>(s[i + 1]) != 0x80) {
    return false;
  }
  switch (static_cast<unsigned char>(s[i + 2])) {
    case 0x93:  // en dash
    case 0x94:  // em dash
    case 0x98:  // left single quote
    case 0x99:  // right single quote
    case 0x9C:  // left double quote
    case 0x9D:  // right double quote
    case 0xA6:  // ellipsis
      return true;
    default:
      return false;
  }
}

std::string NormalizeWord(absl::string_view word) {
  std::string out;
  out.reserve(word.size());
  for (size_t i = 0; i < word.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(word[i]);
    if (c < 0x80) {
      if (absl::ascii_ispunct(c)) continue;
      out.push_back(absl::ascii_tolower(c));
    } else if (IsUnicodePunctuation(word, i)) {
      i += 2;
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

absl::string_view Trim(absl::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && IsAsciiSpace(s[b])) ++b;
  while (e > b && IsAsciiSpace(s[e - 1])) --e;
  return s.substr(b, e - b);
}

absl::Status FieldError(absl::string_view field, absl::string_view problem) {
  return absl::InvalidArgumentError(
      absl::StrCat("field '", field, "' ", problem));
}

// Converts a JSON scalar to the string form used for ids.
std::optional<std::string> JsonToString(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<int64_t>());
  return std::nullopt;
}

absl::StatusOr<Review> ReviewFromJson(const json& record) {
  if (!record.is_object()) {
    return absl::InvalidArgumentError("record is not a JSON object");
  }
  Review review;
  auto id = record.find("id");
  if (id == record.end() || id->is_null()) return FieldError("id", "missing");
  auto id_string = JsonToString(*id);
  if (!id_string) return FieldError("id", "must be a string or integer");
  review.id = *id_string;

  auto text = record.find("text");
  if (text == record.end() || text->is_null()) {
    return FieldError("text", "missing");
  }
  if (!text->is_string()) return FieldError("text", "must be a string");
  review.text = text->get<std::string>();

  if (auto it = record.find("place"); it != record.end() && !it->is_null()) {
    if (!it->is_string()) return FieldError("place", "must be a string");
    review.place = it->get<std::string>();
  }
  if (auto it = record.find("rating"); it != record.end() && !it->is_null()) {
    if (!it->is_number_integer()) {
      return FieldError("rating", "must be an integer");
    }
    review.rating = it->get<int>();
  } else {
    return FieldError("rating", "missing");
  }
  if (auto it = record.find("likes"); it != record.end() && !it->is_null()) {
    if (!it->is_number_integer()) {
      return FieldError("likes", "must be an integer");
    }
    review.likes = it->get<int64_t>();
  }
  if (auto it = record.find("username");
      it != record.end() && !it->is_null()) {
    if (!it->is_string()) return FieldError("username", "must be a string");
    review.username = it->get<std::string>();
  }
  if (auto it = record.find("gender"); it != record.end() && !it->is_null()) {
    if (!it->is_string()) return FieldError("gender", "must be a string");
    auto gender = ParseGenderCode(it->get<std::string>());
    if (!gender.ok()) return gender.status();
    review.gender = *gender;
  }
  if (auto it = record.find("country"); it != record.end() && !it->is_null()) {
    if (!it->is_string()) return FieldError("country", "must be a string");
    review.country = it->get<std::string>();
  }
  return review;
}

json ReviewToJson(const Review& review) {
  json record = {{"id", review.id},
                 {"place", review.place},
                 {"text", review.text},
                 {"rating", review.rating},
                 {"likes", review.likes},
                 {"username", review.username},
                 {"gender", std::string(GenderCode(review.gender))}};
  if (review.country) record["country"] = *review.country;
  return record;
}

// Shared tail of both readers: place filtering, validation, duplicate ids.
class RecordSink {
 public:
  RecordSink(absl::string_view place, IngestResult* result)
      : place_(place), result_(result) {}

  void Add(int line, absl::StatusOr<Review> review) {
    if (!review.ok()) {
      Error(line, review.status().message());
      return;
    }
    if (!place_.empty()) {
      if (review->place.empty()) {
        review->place = std::string(place_);
      } else if (review->place != place_) {
        ++result_->other_place_records;
        return;
      }
    }
    if (absl::Status valid = ValidateReview(*review); !valid.ok()) {
      Error(line, valid.message());
      return;
    }
    if (!ids_.insert(absl::StrCat(review->place, "\n", review->id)).second) {
      Error(line, absl::StrCat("duplicate review id '", review->id, "'"));
      return;
    }
    result_->reviews.push_back(*std::move(review));
  }

  void Error(int line, absl::string_view message) {
    result_->errors.push_back({line, std::string(message)});
  }

 private:
  absl::string_view place_;
  IngestResult* result_;
  WordSet ids_;
};

// Minimal RFC 4180 reader: quoted fields, doubled quotes, embedded newlines.
class CsvReader {
 public:
  explicit CsvReader(std::istream& input) : input_(input) {}

  // Reads one record; returns false at end of input. `line` receives the
  // physical line on which the record starts.
  bool Next(std::vector<std::string>* fields, int* line,
            std::string* error) {
    fields->clear();
    error->clear();
    int c = input_.get();
    while (c == '\r' || c == '\n') {
      if (c == '\n') ++line_;
      c = input_.get();
    }
    if (c == EOF) return false;
    *line = line_;
    std::string field;
    bool quoted = false;
    bool field_started_quoted = false;
    while (true) {
      if (c == EOF) {
        if (quoted) *error = "unterminated quoted field";
        fields->push_back(std::move(field));
        return true;
      }
      const char ch = static_cast<char>(c);
      if (quoted) {
        if (ch == '"') {
          if (input_.peek() == '"') {
            field.push_back('"');
            input_.get();
          } else {
            quoted = false;
          }
        } else {
          if (ch == '\n') ++line_;
          field.push_back(ch);
        }
      } else if (ch == '"' && field.empty() && !field_started_quoted) {
        quoted = true;
        field_started_quoted = true;
      } else if (ch == ',') {
        fields->push_back(std::move(field));
        field.clear();
        field_started_quoted = false;
      } else if (ch == '\n' || ch == '\r') {
        if (ch == '\r' && input_.peek() == '\n') input_.get();
        ++line_;
        fields->push_back(std::move(field));
        return true;
      } else {
        field.push_back(ch);
      }
      c = input_.get();
    }
  }

 private:
  std::istream& input_;
  int line_ = 1;
};

absl::StatusOr<int64_t> ParseInteger(absl::string_view field,
                                     absl::string_view text) {
  text = Trim(text);
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return FieldError(field, absl::StrCat("is not an integer: '", text, "'"));
  }
  return value;
}

}  // namespace

absl::string_view GenderCode(Gender gender) {
  switch (gender) {
    case Gender::kFemale:
      return "F";
    case Gender::kMale:
      return "M";
    case Gender::kUnknown:
      return "U";
  }
  return "U";
}

absl::StatusOr<Gender> ParseGenderCode(absl::string_view code) {
  const std::string lower = absl::AsciiStrToLower(Trim(code));
  if (lower == "f" || lower == "female") return Gender::kFemale;
  if (lower == "m" || lower == "male") return Gender::kMale;
  if (lower == "u" || lower == "unknown" || lower.empty()) {
    return Gender::kUnknown;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("field 'gender' must be F, M or U, got '", code, "'"));
}

absl::Status ValidateReview(const Review& review) {
  if (Trim(review.id).empty()) return FieldError("id", "is empty");
  if (Trim(review.text).empty()) return FieldError("text", "is blank");
  if (review.rating < 1 || review.rating > 5) {
    return FieldError("rating",
                      absl::StrCat("must be in [1,5], got ", review.rating));
  }
  if (review.likes < 0) {
    return FieldError("likes",
                      absl::StrCat("must be non-negative, got ", review.likes));
  }
  return absl::OkStatus();
}

absl::StatusOr<WordSet> LoadWordList(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("cannot open word list ", path.string()));
  }
  WordSet words;
  std::string line;
  while (std::getline(in, line)) {
    absl::string_view entry = Trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    words.insert(absl::AsciiStrToLower(entry));
  }
  return words;
}

std::vector<std::string> Tokenize(absl::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsAsciiSpace(text[i])) ++i;
    size_t j = i;
    while (j < text.size() && !IsAsciiSpace(text[j])) ++j;
    if (j > i) {
      std::string word = NormalizeWord(text.substr(i, j - i));
      if (!word.empty()) tokens.push_back(std::move(word));
    }
    i = j;
  }
  return tokens;
}

PreprocessedText Preprocess(absl::string_view text, const WordSet& stopwords) {
  PreprocessedText out;
  out.tokens = Tokenize(text);
  for (const std::string& token : out.tokens) {
    if (!stopwords.contains(token)) out.content_tokens.push_back(token);
  }
  return out;
}

bool SentenceSplitter::IsAbbreviation(absl::string_view word) const {
  while (!word.empty() && (word.front() == '(' || word.front() == '"' ||
                           word.front() == '\'' || word.front() == '[')) {
    word.remove_prefix(1);
  }
  const std::string lower = absl::AsciiStrToLower(word);
  if (abbreviations_.contains(lower)) return true;
  // Dotted initialisms: "a.m.", "u.n.", "e.u.".
  if (lower.size() >= 4 && lower.size() % 2 == 0) {
    for (size_t k = 0; k < lower.size(); k += 2) {
      if (!absl::ascii_isalpha(lower[k]) || lower[k + 1] != '.') return false;
    }
    return true;
  }
  return false;
}

std::vector<std::pair<size_t, size_t>> SentenceSplitter::SplitOffsets(
    absl::string_view text) const {
  std::vector<std::pair<size_t, size_t>> spans;
  size_t start = 0;
  size_t i = 0;
  while (i < text.size()) {
    if (!IsTerminal(text[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < text.size() && IsTerminal(text[j])) ++j;
    const size_t run = j - i;
    while (j < text.size() && IsClosing(text[j])) ++j;
    if (j < text.size() && !IsAsciiSpace(text[j])) {
      i = j;
      continue;
    }
    if (run == 1 && text[i] == '.') {
      size_t w = i;
      while (w > start && !IsAsciiSpace(text[w - 1])) --w;
      if (IsAbbreviation(text.substr(w, i + 1 - w))) {
        i = j;
        continue;
      }
    }
    spans.emplace_back(start, j);
    start = j;
    i = j;
  }
  if (start < text.size()) spans.emplace_back(start, text.size());
  return spans;
}

std::vector<std::string> SentenceSplitter::Split(absl::string_view text) const {
  std::vector<std::string> pieces;
  for (const auto& [begin, end] : SplitOffsets(text)) {
    absl::string_view piece = Trim(text.substr(begin, end - begin));
    if (!piece.empty()) pieces.emplace_back(piece);
  }
  return pieces;
}

absl::StatusOr<TextResources> TextResources::Load(
    const std::filesystem::path& stopwords_path,
    const std::filesystem::path& abbreviations_path) {
  auto stopwords = LoadWordList(stopwords_path);
  if (!stopwords.ok()) return stopwords.status();
  auto abbreviations = LoadWordList(abbreviations_path);
  if (!abbreviations.ok()) return abbreviations.status();
  return TextResources{*std::move(stopwords),
                       SentenceSplitter(*std::move(abbreviations))};
}

std::vector<Sentence> SegmentSentences(const Review& review,
                                       const TextResources& resources) {
  const absl::string_view text = review.text;
  using Span = std::pair<size_t, size_t>;
  std::vector<Span> spans;
  for (const Span& span : resources.splitter.SplitOffsets(text)) {
    if (Trim(text.substr(span.first, span.second - span.first)).empty()) {
      if (!spans.empty()) spans.back().second = span.second;
      continue;
    }
    spans.push_back(span);
  }

  // Fold word-less fragments into the preceding sentence, or the following
  // one when they lead the review.
  std::vector<Span> merged;
  bool pending_prefix = false;
  size_t prefix_begin = 0;
  for (const Span& span : spans) {
    const bool has_words =
        !Tokenize(text.substr(span.first, span.second - span.first)).empty();
    if (!has_words) {
      if (!merged.empty()) {
        merged.back().second = span.second;
      } else if (!pending_prefix) {
        pending_prefix = true;
        prefix_begin = span.first;
      }
      continue;
    }
    Span s = span;
    if (pending_prefix) {
      s.first = prefix_begin;
      pending_prefix = false;
    }
    merged.push_back(s);
  }

  std::vector<Sentence> sentences;
  sentences.reserve(merged.size());
  for (const Span& span : merged) {
    Sentence sentence;
    sentence.id = absl::StrCat(review.id, "#", sentences.size());
    sentence.review_id = review.id;
    sentence.place = review.place;
    sentence.text =
        std::string(Trim(text.substr(span.first, span.second - span.first)));
    PreprocessedText pre = Preprocess(sentence.text, resources.stopwords);
    sentence.tokens = std::move(pre.tokens);
    sentence.content_tokens = std::move(pre.content_tokens);
    sentence.word_count = static_cast<int>(sentence.tokens.size());
    sentence.gender = review.gender;
    sentence.review_likes = review.likes;
    sentences.push_back(std::move(sentence));
  }
  return sentences;
}

IngestResult IngestJsonLines(std::istream& input, absl::string_view place) {
  IngestResult result;
  RecordSink sink(place, &result);
  std::string line;
  int line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded()) {
      sink.Error(line_number, "malformed JSON");
      continue;
    }
    sink.Add(line_number, ReviewFromJson(record));
  }
  return result;
}

IngestResult IngestCsv(std::istream& input, absl::string_view place) {
  IngestResult result;
  RecordSink sink(place, &result);
  CsvReader reader(input);
  std::vector<std::string> fields;
  std::string error;
  int line = 0;
  if (!reader.Next(&fields, &line, &error)) return result;
  std::map<std::string, size_t> columns;
  for (size_t i = 0; i < fields.size(); ++i) {
    columns[absl::AsciiStrToLower(Trim(fields[i]))] = i;
  }
  while (reader.Next(&fields, &line, &error)) {
    if (!error.empty()) {
      sink.Error(line, error);
      continue;
    }
    auto column = [&](const std::string& name) -> std::optional<std::string> {
      auto it = columns.find(name);
      if (it == columns.end() || it->second >= fields.size()) {
        return std::nullopt;
      }
      return fields[it->second];
    };
    auto parse = [&]() -> absl::StatusOr<Review> {
      Review review;
      auto id = column("id");
      if (!id || Trim(*id).empty()) return FieldError("id", "missing");
      review.id = std::string(Trim(*id));
      auto text = column("text");
      if (!text) return FieldError("text", "missing");
      review.text = *text;
      if (auto p = column("place"); p && !Trim(*p).empty()) {
        review.place = std::string(Trim(*p));
      }
      auto rating = column("rating");
      if (!rating || Trim(*rating).empty()) {
        return FieldError("rating", "missing");
      }
      auto rating_value = ParseInteger("rating", *rating);
      if (!rating_value.ok()) return rating_value.status();
      review.rating = static_cast<int>(*rating_value);
      if (auto likes = column("likes"); likes && !Trim(*likes).empty()) {
        auto value = ParseInteger("likes", *likes);
        if (!value.ok()) return value.status();
        review.likes = *value;
      }
      if (auto user = column("username")) review.username = *user;
      if (auto gender = column("gender")) {
        auto value = ParseGenderCode(*gender);
        if (!value.ok()) return value.status();
        review.gender = *value;
      }
      if (auto country = column("country"); country && !country->empty()) {
        review.country = *country;
      }
      return review;
    };
    sink.Add(line, parse());
  }
  return result;
}

CorpusStats ComputeStats(absl::string_view place,
                         const std::vector<Review>& reviews,
                         int sentence_count) {
  CorpusStats stats;
  stats.place = std::string(place);
  stats.sentence_count = sentence_count;
  for (const Review& review : reviews) {
    ++stats.review_count;
    switch (review.gender) {
      case Gender::kFemale:
        ++stats.female_count;
        break;
      case Gender::kMale:
        ++stats.male_count;
        break;
      case Gender::kUnknown:
        ++stats.unknown_count;
        break;
    }
  }
  return stats;
}

PlaceCorpus::PlaceCorpus(std::string place, std::vector<Review> reviews,
                         const TextResources& resources)
    : place_(std::move(place)), reviews_(std::move(reviews)) {
  for (const Review& review : reviews_) {
    std::vector<Sentence> sentences = SegmentSentences(review, resources);
    if (sentences.empty()) {
      skipped_reviews_.push_back(review.id);
      continue;
    }
    for (Sentence& sentence : sentences) {
      sentences_.push_back(std::move(sentence));
    }
  }
  stats_ = ComputeStats(place_, reviews_, static_cast<int>(sentences_.size()));
}

Corpus Corpus::Build(const std::vector<Review>& reviews,
                     const TextResources& resources) {
  std::map<std::string, std::vector<Review>> grouped;
  for (const Review& review : reviews) grouped[review.place].push_back(review);
  Corpus corpus;
  for (auto& [place, group] : grouped) {
    corpus.places_.emplace(place, PlaceCorpus(place, std::move(group), resources));
  }
  return corpus;
}

const PlaceCorpus* Corpus::Find(absl::string_view place) const {
  auto it = places_.find(place);
  return it == places_.end() ? nullptr : &it->second;
}

std::vector<std::string> Corpus::Places() const {
  std::vector<std::string> places;
  places.reserve(places_.size());
  for (const auto& [place, unused] : places_) places.push_back(place);
  return places;
}

absl::Status WritePlaceIndex(const std::filesystem::path& path,
                             const std::vector<Review>& reviews) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write corpus index ", path.string()));
  }
  out << kCorpusIndexMagic << '\n';
  for (const Review& review : reviews) out << ReviewToJson(review).dump() << '\n';
  out.flush();
  if (!out) {
    return absl::DataLossError(
        absl::StrCat("write failed for ", path.string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<Review>> ReadPlaceIndex(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("cannot open corpus index ", path.string()));
  }
  std::string header;
  std::getline(in, header);
  if (header != kCorpusIndexMagic) {
    return absl::DataLossError(absl::StrCat(
        path.string(), ": not a corpus index (expected header '",
        kCorpusIndexMagic, "')"));
  }
  IngestResult result = IngestJsonLines(in, "");
  if (!result.errors.empty()) {
    const RecordError& first = result.errors.front();
    return absl::DataLossError(absl::StrCat(path.string(), ": record ",
                                            first.line, ": ", first.message));
  }
  return std::move(result.reviews);
}

absl::StatusOr<std::vector<Review>> ReadIndexDirectory(
    const std::filesystem::path& directory) {
  std::error_code ec;
  if (!std::filesystem::is_directory(directory, ec)) {
    return absl::NotFoundError(
        absl::StrCat("corpus directory not found: ", directory.string()));
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.is_regular_file() &&
        entry.path().extension() == std::string(kCorpusIndexExtension)) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Review> all;
  for (const auto& file : files) {
    auto reviews = ReadPlaceIndex(file);
    if (!reviews.ok()) return reviews.status();
    for (Review& review : *reviews) all.push_back(std::move(review));
  }
  return all;
}

}  // namespace opsum

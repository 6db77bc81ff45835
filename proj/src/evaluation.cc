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

#include "opsum/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <map>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace opsum {
namespace {

using nlohmann::ordered_json;

std::map<std::vector<std::string>, int> CountNgrams(
    const std::vector<std::string>& tokens, int n) {
  std::map<std::vector<std::string>, int> counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i,
                                      tokens.begin() + i + n)];
  }
  return counts;
}

size_t LongestCommonSubsequence(const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
  std::vector<size_t> row(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diagonal = 0;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t above = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diagonal + 1 : std::max(row[j], row[j - 1]);
      diagonal = above;
    }
  }
  return row[b.size()];
}

std::string SummaryText(const Summary& summary) {
  std::vector<std::string> texts;
  for (const SummaryEntry& e : summary.entries) texts.push_back(e.text);
  return absl::StrJoin(texts, " ");
}

ordered_json ScoresToJson(const RougeScores& s) {
  return ordered_json{{"rouge1_p", s.rouge1},
                      {"rouge2_p", s.rouge2},
                      {"rougeL_p", s.rougeL}};
}

}  // namespace

ProxyGold BuildProxyGold(const std::vector<Review>& reviews, int count) {
  std::vector<const Review*> sorted;
  for (const Review& r : reviews) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const Review* a, const Review* b) {
              if (a->likes != b->likes) return a->likes > b->likes;
              return a->id < b->id;
            });
  if (sorted.size() > static_cast<size_t>(count)) sorted.resize(count);
  ProxyGold gold;
  std::vector<absl::string_view> texts;
  for (const Review* r : sorted) {
    gold.review_ids.push_back(r->id);
    texts.push_back(r->text);
  }
  gold.text = absl::StrJoin(texts, "\n");
  return gold;
}

absl::StatusOr<double> RougeNPrecision(absl::string_view candidate,
                                       absl::string_view reference, int n) {
  if (n != 1 && n != 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("ROUGE-N supports n = 1 or 2, got ", n));
  }
  const std::vector<std::string> cand = Tokenize(candidate);
  if (cand.empty()) {
    return absl::InvalidArgumentError("ROUGE of an empty candidate");
  }
  if (cand.size() < static_cast<size_t>(n)) return 0.0;
  const auto cand_counts = CountNgrams(cand, n);
  const auto ref_counts = CountNgrams(Tokenize(reference), n);
  int matches = 0;
  for (const auto& [gram, c] : cand_counts) {
    auto it = ref_counts.find(gram);
    if (it != ref_counts.end()) matches += std::min(c, it->second);
  }
  return static_cast<double>(matches) /
         static_cast<double>(cand.size() - n + 1);
}

absl::StatusOr<double> RougeLPrecision(absl::string_view candidate,
                                       absl::string_view reference) {
  const std::vector<std::string> cand = Tokenize(candidate);
  if (cand.empty()) {
    return absl::InvalidArgumentError("ROUGE of an empty candidate");
  }
  const size_t lcs = LongestCommonSubsequence(cand, Tokenize(reference));
  return static_cast<double>(lcs) / static_cast<double>(cand.size());
}

absl::StatusOr<RougeScores> ScoreRouge(absl::string_view candidate,
                                       absl::string_view reference) {
  RougeScores s;
  absl::StatusOr<double> r1 = RougeNPrecision(candidate, reference, 1);
  if (!r1.ok()) return r1.status();
  absl::StatusOr<double> r2 = RougeNPrecision(candidate, reference, 2);
  if (!r2.ok()) return r2.status();
  absl::StatusOr<double> rl = RougeLPrecision(candidate, reference);
  if (!rl.ok()) return rl.status();
  s.rouge1 = *r1;
  s.rouge2 = *r2;
  s.rougeL = *rl;
  return s;
}

std::vector<AblationConfig> StandardAblationGrid() {
  const std::string both = "w/o both constraints";
  return {
      {"with all constraints", "", true, true, true, true},
      {"w/o Fairness", "", false, true, true, true},
      {"w/o Redundancy", "", true, false, true, true},
      {"basic", both, false, false, true, true},
      {"w/o Readability", both, false, false, false, true},
      {"w/o Sentiment", both, false, false, true, false},
      {"w/o both", both, false, false, false, false},
  };
}

bool AblationReport::complete() const {
  for (const RougeReport& row : rows) {
    for (const AblationCell& cell : row.per_place) {
      if (!cell.scores) return false;
    }
  }
  return true;
}

AblationReport RunAblation(const Summarizer& summarizer,
                           const std::vector<std::string>& places,
                           const std::vector<AblationConfig>& grid,
                           const ControlParams& base) {
  AblationReport report;
  report.places = places;
  std::vector<ProxyGold> golds;
  for (const std::string& place : places) {
    const PlaceCorpus* corpus = summarizer.corpus().Find(place);
    golds.push_back(corpus == nullptr ? ProxyGold{}
                                      : BuildProxyGold(corpus->reviews()));
  }
  for (const AblationConfig& config : grid) {
    RougeReport row;
    row.config = config;
    for (size_t p = 0; p < places.size(); ++p) {
      AblationCell cell;
      cell.place = places[p];
      ControlParams controls = base;
      controls.place = places[p];
      controls.fairness_enabled = config.fairness;
      if (!config.redundancy) controls.penalty_weight = 0.0;
      controls.scoring.use_readability = config.readability;
      controls.scoring.use_sentiment = config.sentiment;
      absl::StatusOr<Summary> summary = summarizer.Summarize(controls);
      if (!summary.ok()) {
        cell.error = std::string(summary.status().message());
      } else if (summary->entries.empty()) {
        cell.error = absl::StrCat("empty summary: ", summary->diagnostic);
      } else {
        cell.summary_words = summary->total_words;
        absl::StatusOr<RougeScores> scores =
            ScoreRouge(SummaryText(*summary), golds[p].text);
        if (scores.ok()) {
          cell.scores = *scores;
        } else {
          cell.error = std::string(scores.status().message());
        }
      }
      if (cell.scores) {
        row.macro.rouge1 += cell.scores->rouge1;
        row.macro.rouge2 += cell.scores->rouge2;
        row.macro.rougeL += cell.scores->rougeL;
        ++row.places_scored;
      }
      row.per_place.push_back(std::move(cell));
    }
    if (row.places_scored > 0) {
      row.macro.rouge1 /= row.places_scored;
      row.macro.rouge2 /= row.places_scored;
      row.macro.rougeL /= row.places_scored;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

ordered_json AblationReportToJson(const AblationReport& report) {
  ordered_json rows = ordered_json::array();
  for (const RougeReport& row : report.rows) {
    ordered_json places = ordered_json::array();
    for (const AblationCell& cell : row.per_place) {
      ordered_json c{{"place", cell.place}};
      if (cell.scores) {
        c["scores"] = ScoresToJson(*cell.scores);
        c["summary_words"] = cell.summary_words;
      } else {
        c["error"] = cell.error;
      }
      places.push_back(std::move(c));
    }
    rows.push_back(ordered_json{
        {"config", row.config.name},
        {"group", row.config.group},
        {"fairness", row.config.fairness},
        {"redundancy", row.config.redundancy},
        {"readability", row.config.readability},
        {"sentiment", row.config.sentiment},
        {"macro", ScoresToJson(row.macro)},
        {"places_scored", row.places_scored},
        {"per_place", std::move(places)},
    });
  }
  return ordered_json{{"places", report.places},
                      {"complete", report.complete()},
                      {"rows", std::move(rows)}};
}

std::string RenderAblationTable(const AblationReport& report) {
  std::string out = absl::StrFormat("%-28s %8s %8s %8s\n", "Methods",
                                    "ROUGE-1", "ROUGE-2", "ROUGE-L");
  std::string group;
  for (const RougeReport& row : report.rows) {
    std::string label = row.config.name;
    if (!row.config.group.empty()) {
      if (row.config.group != group) {
        absl::StrAppend(&out, "  ", row.config.group, "\n");
        group = row.config.group;
      }
      label = "  " + label;
    }
    if (row.places_scored == 0) {
      absl::StrAppend(&out, absl::StrFormat("  %-26s %8s %8s %8s\n", label,
                                            "-", "-", "-"));
      continue;
    }
    absl::StrAppend(&out, absl::StrFormat("  %-26s %8.1f %8.1f %8.1f\n", label,
                                          100.0 * row.macro.rouge1,
                                          100.0 * row.macro.rouge2,
                                          100.0 * row.macro.rougeL));
  }
  absl::StrAppend(&out, "Precision, macro-averaged over ", report.places.size(),
                  " place(s): ", absl::StrJoin(report.places, ", "), "\n");
  return out;
}

}  // namespace opsum

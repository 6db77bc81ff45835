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

#include "opsum/summarizer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace opsum {
namespace {

using nlohmann::ordered_json;

// Exact duplicates (after tokenization) keep the instance from the most
// liked review; the earliest wins ties.
std::vector<const Sentence*> UniqueSentences(
    const std::vector<Sentence>& sentences) {
  absl::flat_hash_map<std::string, size_t> slot_of;
  std::vector<const Sentence*> unique;
  for (const Sentence& sentence : sentences) {
    const std::string key = absl::StrJoin(sentence.tokens, " ");
    auto [it, inserted] = slot_of.try_emplace(key, unique.size());
    if (inserted) {
      unique.push_back(&sentence);
    } else if (sentence.review_likes > unique[it->second]->review_likes) {
      unique[it->second] = &sentence;
    }
  }
  return unique;
}

}  // namespace

std::vector<FieldError> ValidateControls(const ControlParams& controls) {
  std::vector<FieldError> errors;
  if (controls.length_words < 0) {
    errors.push_back({"length_words", absl::StrCat("must be >= 0, got ",
                                                   controls.length_words)});
  }
  if (!(controls.female_ratio >= 0.0 && controls.female_ratio <= 1.0)) {
    errors.push_back({"female_ratio",
                      absl::StrCat("must be in the range [0,1], got ",
                                   controls.female_ratio)});
  }
  if (controls.candidate_pool < 1) {
    errors.push_back({"candidate_pool", absl::StrCat("must be >= 1, got ",
                                                     controls.candidate_pool)});
  }
  if (!(controls.penalty_weight >= 0.0) ||
      !std::isfinite(controls.penalty_weight)) {
    errors.push_back({"lambda", absl::StrCat("must be >= 0, got ",
                                             controls.penalty_weight)});
  }
  if (!(controls.similarity_threshold >= 0.0 &&
        controls.similarity_threshold <= 1.0)) {
    errors.push_back({"similarity_threshold",
                      absl::StrCat("must be in [0,1], got ",
                                   controls.similarity_threshold)});
  }
  if (controls.solver.exact_limit < 0) {
    errors.push_back({"exact_limit", "must be >= 0"});
  }
  if (!(controls.solver.time_limit_seconds > 0.0)) {
    errors.push_back({"time_limit", "must be > 0"});
  }
  if (!controls.aspects.all && controls.aspects.labels.empty()) {
    errors.push_back({"aspects", "must be \"all\" or a non-empty label list"});
  }
  return errors;
}

std::string AssignBestAspect(const Sentence& sentence,
                             std::span<const AspectClass> aspects,
                             const WordVectorTable& table) {
  absl::StatusOr<RelevanceMatch> match =
      Relevance(sentence.content_tokens, aspects, table);
  if (!match.ok() || match->aspect_index < 0) return kUnassignedAspect;
  return aspects[match->aspect_index].label;
}

absl::StatusOr<PreparedProblem> Summarizer::Prepare(
    const ControlParams& controls) const {
  if (std::vector<FieldError> errors = ValidateControls(controls);
      !errors.empty()) {
    std::vector<std::string> parts;
    for (const FieldError& e : errors) {
      parts.push_back(absl::StrCat(e.field, ": ", e.message));
    }
    return absl::InvalidArgumentError(absl::StrJoin(parts, "; "));
  }
  const PlaceCorpus* place = corpus_.Find(controls.place);
  if (place == nullptr) {
    return absl::NotFoundError(
        absl::StrCat("unknown place '", controls.place, "'"));
  }
  absl::StatusOr<std::vector<AspectClass>> aspects =
      ResolveSelection(catalog_, controls.aspects, selection_);
  if (!aspects.ok()) return aspects.status();

  PreparedProblem prepared;
  prepared.aspects = *std::move(aspects);
  for (const Sentence* sentence : UniqueSentences(place->sentences())) {
    absl::StatusOr<OpinionScore> score =
        ScoreSentence(*sentence, prepared.aspects, lexicon_, table_,
                      controls.scoring);
    if (!score.ok()) return score.status();
    prepared.scored.push_back({sentence, *score});
  }

  std::vector<size_t> order;
  for (size_t i = 0; i < prepared.scored.size(); ++i) {
    if (prepared.scored[i].score.combined > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return prepared.scored[a].score.combined >
           prepared.scored[b].score.combined;
  });
  if (order.size() > static_cast<size_t>(controls.candidate_pool)) {
    order.resize(controls.candidate_pool);
  }
  for (size_t i : order) prepared.candidates.push_back(prepared.scored[i]);

  const int n = static_cast<int>(prepared.candidates.size());
  SelectionProblem& problem = prepared.problem;
  problem = SelectionProblem(n);
  problem.budget = controls.length_words;
  problem.female_ratio = controls.female_ratio;
  problem.penalty_weight = controls.penalty_weight;
  problem.fairness_enabled = controls.fairness_enabled;
  std::vector<SentenceVector> vectors;
  vectors.reserve(n);
  for (int i = 0; i < n; ++i) {
    const ScoredSentence& c = prepared.candidates[i];
    problem.score[i] = std::clamp(c.score.combined, 0.0, 1.0);
    problem.length[i] = c.sentence->word_count;
    problem.is_female[i] = c.sentence->is_female();
    vectors.push_back(encoder_.Encode(*c.sentence));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      absl::StatusOr<double> cosine =
          Cosine(vectors[i].vector, vectors[j].vector);
      if (!cosine.ok()) return cosine.status();
      double sim = std::clamp(*cosine, 0.0, 1.0);
      if (sim < controls.similarity_threshold) sim = 0.0;
      problem.set_sim(i, j, sim);
    }
  }
  return prepared;
}

absl::StatusOr<Summary> Summarizer::Summarize(
    const ControlParams& controls) const {
  absl::StatusOr<PreparedProblem> prepared = Prepare(controls);
  if (!prepared.ok()) return prepared.status();

  Summary summary;
  summary.controls_echo = controls;
  summary.candidate_count = static_cast<int>(prepared->candidates.size());
  const SelectionProblem& problem = prepared->problem;

  absl::StatusOr<Solution> solution;
  if (problem.size() == 0) {
    summary.solver = "none";
    summary.solver_optimal = true;
    summary.diagnostic =
        prepared->scored.empty()
            ? "the place has no sentences"
            : "no sentence has a positive opinion score for the chosen aspects";
    return summary;
  }
  if (problem.size() <= controls.solver.exact_limit) {
    summary.solver = "exact";
    solution = SolveExact(problem, controls.solver);
  } else {
    summary.solver = "heuristic";
    solution = SolveHeuristic(problem, controls.solver);
  }
  if (!solution.ok()) return solution.status();

  summary.objective = solution->objective;
  summary.score_sum = solution->score_sum;
  summary.penalty_sum = solution->penalty_sum;
  summary.fairness_term = solution->fairness_term;
  summary.solver_optimal = solution->optimal;
  summary.total_words = solution->total_length;

  std::vector<int> chosen = solution->Indices();
  auto group_of = [&](int i) {
    const int a = prepared->candidates[i].score.aspect_index;
    return a < 0 ? static_cast<int>(prepared->aspects.size()) : a;
  };
  std::stable_sort(chosen.begin(), chosen.end(), [&](int a, int b) {
    if (group_of(a) != group_of(b)) return group_of(a) < group_of(b);
    return prepared->candidates[a].score.combined >
           prepared->candidates[b].score.combined;
  });
  for (int i : chosen) {
    const ScoredSentence& c = prepared->candidates[i];
    SummaryEntry entry;
    entry.sentence_id = c.sentence->id;
    entry.text = c.sentence->text;
    entry.review_id = c.sentence->review_id;
    entry.gender = c.sentence->gender;
    entry.aspect = c.score.aspect_index < 0
                       ? std::string(kUnassignedAspect)
                       : prepared->aspects[c.score.aspect_index].label;
    entry.word_count = c.sentence->word_count;
    entry.score = c.score;
    if (c.sentence->is_female()) {
      ++summary.female_count;
    } else {
      ++summary.male_count;
    }
    summary.entries.push_back(std::move(entry));
  }
  if (summary.entries.empty()) {
    summary.diagnostic = "no candidate improves the objective within the budget";
  }
  return summary;
}

ordered_json ControlsToJson(const ControlParams& controls) {
  ordered_json aspects;
  if (controls.aspects.all) {
    aspects = "all";
  } else {
    aspects = ordered_json::array();
    for (const std::string& label : controls.aspects.labels) {
      aspects.push_back(label);
    }
  }
  return ordered_json{
      {"place", controls.place},
      {"aspects", aspects},
      {"length_words", controls.length_words},
      {"female_ratio", controls.female_ratio},
      {"candidate_pool", controls.candidate_pool},
      {"lambda", controls.penalty_weight},
      {"similarity_threshold", controls.similarity_threshold},
      {"fairness", controls.fairness_enabled},
      {"readability", controls.scoring.use_readability},
      {"sentiment", controls.scoring.use_sentiment},
      {"exact_limit", controls.solver.exact_limit},
      {"time_limit", controls.solver.time_limit_seconds},
  };
}

ordered_json OpinionScoreToJson(const OpinionScore& score) {
  return ordered_json{
      {"readability_raw", score.readability_raw},
      {"readability", score.readability},
      {"polarity", score.polarity},
      {"sentiment_strength_raw", score.sentiment_strength_raw},
      {"sentiment_strength", score.sentiment_strength},
      {"relevance_raw", score.relevance_raw},
      {"relevance", score.relevance},
      {"combined", score.combined},
  };
}

ordered_json SummaryToJson(const Summary& summary) {
  ordered_json entries = ordered_json::array();
  for (const SummaryEntry& e : summary.entries) {
    entries.push_back(ordered_json{
        {"sentence_id", e.sentence_id},
        {"text", e.text},
        {"review_id", e.review_id},
        {"gender", std::string(GenderCode(e.gender))},
        {"aspect", e.aspect},
        {"word_count", e.word_count},
        {"score", OpinionScoreToJson(e.score)},
    });
  }
  return ordered_json{
      {"entries", entries},
      {"total_words", summary.total_words},
      {"female_count", summary.female_count},
      {"male_count", summary.male_count},
      {"objective", summary.objective},
      {"score_sum", summary.score_sum},
      {"penalty_sum", summary.penalty_sum},
      {"fairness_term", summary.fairness_term},
      {"solver", summary.solver},
      {"solver_optimal", summary.solver_optimal},
      {"candidate_count", summary.candidate_count},
      {"diagnostic", summary.diagnostic},
      {"controls_echo", ControlsToJson(summary.controls_echo)},
  };
}

std::string SerializeSummary(const Summary& summary) {
  return SummaryToJson(summary).dump(2) + "\n";
}

std::string RenderSummaryText(const Summary& summary) {
  std::string out;
  std::string current;
  for (const SummaryEntry& e : summary.entries) {
    if (e.aspect != current || out.empty()) {
      if (!out.empty()) out += "\n";
      absl::StrAppend(&out, "== ", e.aspect, " ==\n");
      current = e.aspect;
    }
    absl::StrAppend(&out, e.text, "\n");
  }
  if (!summary.diagnostic.empty()) {
    absl::StrAppend(&out, "(", summary.diagnostic, ")\n");
  }
  absl::StrAppend(&out, "\n", summary.total_words, " / ",
                  summary.controls_echo.length_words, " words; ",
                  summary.female_count, " female, ", summary.male_count,
                  " male (requested female ratio ",
                  summary.controls_echo.female_ratio, ")\n");
  return out;
}

}  // namespace opsum

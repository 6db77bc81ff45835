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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// fails. Each check recomputes its expectation independently of the code
// under test wherever that is possible.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "opsum/cli.h"
#include "opsum/evaluation.h"
#include "opsum/optimizer.h"
#include "opsum/scoring.h"
#include "test_support.h"

namespace opsum {
namespace {

namespace oracle = ::opsum::testing::oracle;
using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::string detail;
  void Expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Recomputes C from the chosen entries.
double Imbalance(double fp, int men, int women) {
  return std::fabs(fp * men - (1.0 - fp) * women);
}

Check SolverExactness() {
  Check c;
  const double ratios[] = {0.0, 0.3, 0.5, 1.0};
  const auto start = Clock::now();
  for (int seed = 1; seed <= 200; ++seed) {
    const int n = 1 + (seed - 1) % 12;
    SelectionProblem p = testing::RandomProblem(seed, n, ratios[seed % 4]);
    auto exact = SolveExact(p);
    if (!exact.ok()) {
      c.Expect(false, "seed " + std::to_string(seed) + ": " +
                          exact.status().ToString());
      break;
    }
    const oracle::Best best = oracle::Enumerate(p);
    c.Expect(std::fabs(exact->objective - best.objective) <= 1e-9,
             "objective differs at seed " + std::to_string(seed));
    c.Expect(exact->Indices() == best.chosen,
             "selected set differs at seed " + std::to_string(seed));
  }
  const double elapsed = Seconds(start);
  c.Expect(elapsed < 30.0, "took " + std::to_string(elapsed) + " s");
  if (c.ok) c.detail = "200 instances, " + std::to_string(elapsed) + " s";
  return c;
}

Check ConstraintSatisfaction() {
  Check c;
  auto engine = testing::DeskEngine();
  int summaries = 0;
  for (const std::string& place : engine->corpus().Places()) {
    for (int budget : {0, 20, 50, 100, 200}) {
      ControlParams controls;
      controls.place = place;
      controls.length_words = budget;
      auto s = engine->summarizer().Summarize(controls);
      c.Expect(s.ok(), place + ": summarize failed");
      if (!s.ok()) continue;
      int words = 0;
      for (const SummaryEntry& e : s->entries) words += e.word_count;
      c.Expect(words <= budget && s->total_words == words,
               place + " L=" + std::to_string(budget) + " has " +
                   std::to_string(words) + " words");
      ++summaries;
    }
  }
  if (c.ok) c.detail = std::to_string(summaries) + " summaries, 0 violations";
  return c;
}

Check FairnessTerm() {
  Check c;
  const double ratios[] = {0.0, 0.3, 0.5, 1.0};
  int solutions = 0;
  for (int seed = 1; seed <= 200; ++seed) {
    SelectionProblem p =
        testing::RandomProblem(seed * 7919, 1 + seed % 12, ratios[seed % 4]);
    for (auto solve : {SolveExact, SolveHeuristic}) {
      auto s = solve(p, SolverConfig{});
      if (!s.ok()) continue;
      int men = 0, women = 0;
      for (int i : s->Indices()) (p.is_female[i] ? women : men)++;
      c.Expect(std::fabs(Imbalance(p.female_ratio, men, women) -
                         s->fairness_term) <= 1e-9,
               "solver C mismatch at seed " + std::to_string(seed));
      ++solutions;
    }
  }
  auto engine = testing::DeskEngine();
  for (double fp : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (const std::string& place : engine->corpus().Places()) {
      ControlParams controls;
      controls.place = place;
      controls.female_ratio = fp;
      auto s = engine->summarizer().Summarize(controls);
      if (!s.ok()) continue;
      int men = 0, women = 0;
      for (const SummaryEntry& e : s->entries) {
        (e.gender == Gender::kFemale ? women : men)++;
      }
      c.Expect(std::fabs(Imbalance(fp, men, women) - s->fairness_term) <= 1e-9,
               "summary C mismatch for " + place);
      ++solutions;
    }
  }
  // Two equal candidates of opposite gender plus an extra male. Mixed pair:
  // 1.2 - 0 = 1.2; male pair: 1.2 - |0.5 * 2 - 0| = 0.2.
  SelectionProblem p(3);
  p.score = {0.6, 0.6, 0.6};
  p.length = {10, 10, 10};
  p.is_female = {false, true, false};
  p.budget = 20;
  p.female_ratio = 0.5;
  auto s = SolveExact(p);
  c.Expect(s.ok() && s->Indices() == std::vector<int>{0, 1} &&
               std::fabs(s->objective - 1.2) <= 1e-12,
           "constructed instance did not pick the mixed pair");
  if (c.ok) {
    c.detail = std::to_string(solutions) +
               " solutions recomputed; mixed pair chosen (1.2 vs 0.2)";
  }
  return c;
}

Check RelevanceExactness() {
  Check c;
  WordVectorTable table(2);
  const std::vector<std::pair<std::string, Vector>> words = {
      {"w1", {1, 0}}, {"w2", {0, 1}}, {"w3", {1, 1}}, {"w4", {-1, 0}}};
  for (const auto& [w, v] : words) (void)table.Insert(w, v);
  const std::vector<AspectClass> aspects = {
      {"A", {}, {1, 0}}, {"B", {}, {0, 1}}, {"C", {}, {1, -1}}};
  // cos(w, A) by hand, rows w1..w4, columns A, B, C.
  const double r = 1.0 / std::sqrt(2.0);
  const double cos[4][3] = {{1, 0, r}, {0, 1, -r}, {r, r, 0}, {-1, 0, -r}};
  // Every non-empty word subset as a sentence, every non-empty aspect subset.
  for (int wm = 1; wm < 16; ++wm) {
    std::vector<std::string> sentence;
    for (int w = 0; w < 4; ++w) {
      if (wm & (1 << w)) sentence.push_back(words[w].first);
    }
    for (int am = 1; am < 8; ++am) {
      std::vector<AspectClass> chosen;
      double want = -2.0;
      for (int a = 0; a < 3; ++a) {
        if (!(am & (1 << a))) continue;
        chosen.push_back(aspects[a]);
        for (int w = 0; w < 4; ++w) {
          if (wm & (1 << w)) want = std::max(want, cos[w][a]);
        }
      }
      auto got = Relevance(sentence, chosen, table);
      c.Expect(got.ok() && std::fabs(got->score - want) <= 1e-12,
               "mismatch for word mask " + std::to_string(wm) +
                   ", aspect mask " + std::to_string(am));
    }
  }
  std::mt19937_64 rng(1234);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    WordVectorTable t(3);
    std::vector<std::string> sentence;
    for (int w = 0; w < 5; ++w) {
      sentence.push_back("x" + std::to_string(w));
      (void)t.Insert(sentence.back(), {g(rng), g(rng), g(rng)});
    }
    std::vector<AspectClass> pool;
    for (int a = 0; a < 6; ++a) {
      pool.push_back({"a" + std::to_string(a), {}, {g(rng), g(rng), g(rng)}});
    }
    double previous = -2.0;
    for (size_t k = 1; k <= pool.size(); ++k) {
      auto now = Relevance(sentence,
                           std::span<const AspectClass>(pool.data(), k), t);
      c.Expect(now.ok() && now->score >= previous,
               "not monotone in trial " + std::to_string(trial));
      if (now.ok()) previous = now->score;
    }
  }
  if (c.ok) c.detail = "105 hand cases, 100 random monotonicity fixtures";
  return c;
}

Check FleschExactness() {
  Check c;
  auto lexicon = SentimentLexicon::Load(testing::ResourceDir() / "lexicon.tsv");
  auto stopwords = LoadWordList(testing::ResourceDir() / "stopwords.txt");
  c.Expect(lexicon.ok() && stopwords.ok(), "resources missing");
  if (!c.ok) return c;
  WordVectorTable table(1);
  const std::vector<AspectClass> aspects = {{"X", {}, {1}}};
  auto raw_and_normalized = [&](const std::string& text) {
    Sentence s;
    PreprocessedText p = Preprocess(text, *stopwords);
    s.tokens = p.tokens;
    s.content_tokens = p.content_tokens;
    s.word_count = static_cast<int>(s.tokens.size());
    auto score = ScoreSentence(s, aspects, *lexicon, table);
    return score.ok() ? std::make_pair(score->readability_raw,
                                       score->readability)
                      : std::make_pair(std::nan(""), std::nan(""));
  };
  const auto [cat, cat_norm] = raw_and_normalized("The cat sat.");
  c.Expect(std::fabs(cat - 119.19) <= 1e-3,
           "\"The cat sat.\" scored " + std::to_string(cat));
  const std::string twenty =
      "The old man and his dog sat by the fire at night and we all had a "
      "good long talk.";
  const auto [mono, mono_norm] = raw_and_normalized(twenty);
  c.Expect(std::fabs(mono - 101.935) <= 1e-3,
           "20-word sentence scored " + std::to_string(mono));
  c.Expect(cat_norm == 1.0 && mono_norm == 1.0, "normalization did not clamp");
  if (c.ok) {
    std::ostringstream d;
    d.precision(6);
    d << "raw " << cat << " and " << mono << ", both clamp to 1.0";
    c.detail = d.str();
  }
  return c;
}

Check RougeCorrectness() {
  Check c;
  auto s = ScoreRouge("the cat sat", "the cat");
  c.Expect(s.ok() && s->rouge1 == 2.0 / 3.0 && s->rouge2 == 0.5 &&
               s->rougeL == 2.0 / 3.0,
           "hand triple not reproduced");
  std::ifstream in(testing::DeskFixture());
  std::vector<Review> reviews = IngestJsonLines(in, "").reviews;
  int texts = 0;
  for (size_t i = 0; i < reviews.size() && texts < 50; ++i, ++texts) {
    auto self = ScoreRouge(reviews[i].text, reviews[i].text);
    c.Expect(self.ok() && self->rouge1 == 1.0 && self->rouge2 == 1.0 &&
                 self->rougeL == 1.0,
             "self-similarity below 1 for " + reviews[i].id);
  }
  c.Expect(texts == 50, "fixture has fewer than 50 texts");
  if (c.ok) c.detail = "2/3, 1/2, 2/3 exact; 50 self-similarities = 1.0";
  return c;
}

int CliRun(const std::vector<std::string>& args, std::string* out) {
  std::ostringstream o, e;
  const int code = RunCli(args, o, e);
  if (out != nullptr) *out = o.str();
  if (code != 0) std::cerr << e.str();
  return code;
}

Check EndToEndAblation() {
  Check c;
  testing::ScratchDir dir("acceptance-eval");
  const std::string data = dir.path().string();
  const std::string res = testing::ResourceDir().string();
  c.Expect(CliRun({"ingest", testing::DeskFixture().string(), "--data-dir",
                   data, "--resources", res},
                  nullptr) == kExitOk,
           "ingest failed");
  const auto start = Clock::now();
  std::string first, second;
  c.Expect(CliRun({"eval", "--ablation", "--json", "--data-dir", data,
                   "--resources", res},
                  &first) == kExitOk,
           "first eval run failed");
  c.Expect(CliRun({"eval", "--ablation", "--json", "--data-dir", data,
                   "--resources", res},
                  &second) == kExitOk,
           "second eval run failed");
  const double elapsed = Seconds(start);
  c.Expect(first == second, "runs differ");
  c.Expect(elapsed < 120.0, "took " + std::to_string(elapsed) + " s");
  int cells = 0;
  auto report = nlohmann::json::parse(first, nullptr, false);
  c.Expect(!report.is_discarded() && report["rows"].size() == 7,
           "report does not have 7 rows");
  if (c.ok) {
    auto in_range = [&](const nlohmann::json& scores, const std::string& row) {
      for (const char* key : {"rouge1_p", "rouge2_p", "rougeL_p"}) {
        const auto& v = scores[key];
        c.Expect(v.is_number() && v.get<double>() >= 0.0 &&
                     v.get<double>() <= 1.0,
                 "value out of range in " + row);
      }
    };
    for (const auto& row : report["rows"]) {
      const std::string name = row["config"].get<std::string>();
      in_range(row["macro"], name);
      for (const auto& cell : row["per_place"]) {
        in_range(cell["scores"], name);
        ++cells;
      }
    }
  }
  c.Expect(cells == 14, "expected 7 x 2 cells, got " + std::to_string(cells));
  if (c.ok) {
    c.detail = "7 x 2 cells in [0,1], identical across runs, " +
               std::to_string(elapsed) + " s for both";
  }
  return c;
}

Check DatasetStatistics() {
  Check c;
  const std::map<std::string, std::pair<int, int>> published = {
      {"colosseum", {492, 508}},    {"christ-the-redeemer", {445, 555}},
      {"machu-picchu", {456, 544}}, {"petra", {439, 561}},
      {"taj-mahal", {398, 602}},    {"chichen-itza", {482, 518}},
      {"great-wall", {452, 548}}};
  testing::ScratchDir dir("acceptance-seven-places");
  for (const auto& [place, counts] : published) {
    c.Expect(CliRun({"ingest",
                     (testing::FixtureDir() / "seven_places" / (place + ".jsonl"))
                         .string(),
                     "--place", place, "--data-dir", dir.path().string(),
                     "--resources", testing::ResourceDir().string(),
                     "--strict"},
                    nullptr) == kExitOk,
             "ingest failed for " + place);
  }
  EngineOptions options;
  options.data_dir = dir.path();
  options.resource_dir = testing::ResourceDir();
  auto engine = Engine::Load(options);
  c.Expect(engine.ok(), "cannot load ingested corpus");
  if (!c.ok) return c;
  c.Expect((*engine)->corpus().Places().size() == 7, "expected 7 places");
  for (const auto& [place, counts] : published) {
    const PlaceCorpus* pc = (*engine)->corpus().Find(place);
    c.Expect(pc != nullptr && pc->stats().female_count == counts.first &&
                 pc->stats().male_count == counts.second,
             place + " counts differ");
  }
  if (c.ok) c.detail = "7 places, female/male counts exact (e.g. 398/602)";
  return c;
}

}  // namespace
}  // namespace opsum

int main() {
  using opsum::Check;
  const std::vector<std::pair<std::string, std::function<Check()>>> checks = {
      {"solver exactness", opsum::SolverExactness},
      {"constraint satisfaction", opsum::ConstraintSatisfaction},
      {"fairness term", opsum::FairnessTerm},
      {"relevance", opsum::RelevanceExactness},
      {"flesch exactness", opsum::FleschExactness},
      {"rouge correctness", opsum::RougeCorrectness},
      {"end-to-end ablation", opsum::EndToEndAblation},
      {"dataset statistics", opsum::DatasetStatistics},
  };
  int failed = 0;
  for (const auto& [name, run] : checks) {
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << "  " << name << ": " << c.detail
              << std::endl;
    if (!c.ok) ++failed;
  }
  std::cout << (checks.size() - failed) << "/" << checks.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}

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

#include "opsum/optimizer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <string>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace opsum {
namespace {

// Nodes whose bound trails the incumbent by less than this are still
// expanded, so every tied optimum is visited.
constexpr double kPruneSlack = 1e-9;

double FairnessCost(const SelectionProblem& problem, int males, int females) {
  if (!problem.fairness_enabled) return 0.0;
  return std::abs(FairnessImbalance(problem.female_ratio, males, females));
}

// Returns true when `candidate` (objective value) should replace `best`.
bool Improves(double candidate, const std::vector<bool>& candidate_set,
              double best, const std::vector<bool>& best_set) {
  if (candidate > best + kObjectiveTieTolerance) return true;
  if (candidate < best - kObjectiveTieTolerance) return false;
  return LexicographicallySmaller(candidate_set, best_set);
}

struct Node {
  double bound;
  int depth;
  uint64_t mask;
  int length;
  int males;
  int females;
  double score_sum;
  double penalty_sum;
  int64_t sequence;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.sequence > b.sequence;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const SelectionProblem& problem, const SolverConfig& config)
      : problem_(problem), config_(config), n_(problem.size()) {
    for (int i = 0; i < n_; ++i) {
      if (problem_.length[i] <= problem_.budget) order_.push_back(i);
    }
    // Branch on dense items first: tight bounds early.
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return problem_.score[a] / problem_.length[a] >
             problem_.score[b] / problem_.length[b];
    });
  }

  absl::StatusOr<Solution> Run(const std::vector<bool>& warm_start) {
    const auto start = std::chrono::steady_clock::now();
    best_set_.assign(n_, false);
    best_value_ = 0.0;  // the empty selection is always feasible
    Consider(warm_start);

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    Node root{0.0, 0, 0, 0, 0, 0, 0.0, 0.0, sequence_++};
    root.bound = Bound(root);
    open.push(root);
    bool exhausted = true;
    int64_t expanded = 0;
    while (!open.empty()) {
      if (expanded >= config_.node_limit) {
        exhausted = false;
        break;
      }
      if ((expanded & 1023) == 0 && expanded > 0) {
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        if (elapsed.count() > config_.time_limit_seconds) {
          exhausted = false;
          break;
        }
      }
      Node node = open.top();
      open.pop();
      if (node.bound < best_value_ - kPruneSlack) continue;
      ++expanded;
      ConsiderNode(node);
      if (node.depth == static_cast<int>(order_.size())) continue;

      const int item = order_[node.depth];
      if (node.length + problem_.length[item] <= problem_.budget) {
        Node with = node;
        with.depth += 1;
        with.mask |= uint64_t{1} << item;
        with.length += problem_.length[item];
        with.score_sum += problem_.score[item];
        with.penalty_sum += Attachment(node.mask, item);
        if (problem_.is_female[item]) {
          ++with.females;
        } else {
          ++with.males;
        }
        with.sequence = sequence_++;
        with.bound = Bound(with);
        if (with.bound >= best_value_ - kPruneSlack) open.push(with);
      }
      Node without = node;
      without.depth += 1;
      without.sequence = sequence_++;
      without.bound = Bound(without);
      if (without.bound >= best_value_ - kPruneSlack) open.push(without);
    }

    absl::StatusOr<Solution> solution = EvaluateObjective(problem_, best_set_);
    if (!solution.ok()) return solution.status();
    solution->optimal = exhausted;
    solution->nodes = expanded;
    return solution;
  }

 private:
  double Attachment(uint64_t mask, int item) const {
    double total = 0.0;
    for (int j = 0; j < n_; ++j) {
      if (mask >> j & 1) total += problem_.sim(item, j);
    }
    return total;
  }

  // Value of the decided prefix plus a fractional knapsack over the
  // remaining items, each valued at its score minus the redundancy it would
  // certainly incur against items already chosen. Pairs among future items
  // and the gender term can only lower the true value.
  double Bound(const Node& node) const {
    const double lambda = problem_.penalty_weight;
    double value = node.score_sum - lambda * node.penalty_sum;
    struct Entry {
      double value;
      int length;
    };
    std::vector<Entry> entries;
    entries.reserve(order_.size() - node.depth);
    for (size_t k = node.depth; k < order_.size(); ++k) {
      const int item = order_[k];
      const double v =
          problem_.score[item] - lambda * Attachment(node.mask, item);
      if (v > 0.0) entries.push_back({v, problem_.length[item]});
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) {
                return a.value * b.length > b.value * a.length;
              });
    int capacity = problem_.budget - node.length;
    for (const Entry& e : entries) {
      if (capacity <= 0) break;
      if (e.length <= capacity) {
        value += e.value;
        capacity -= e.length;
      } else {
        value += e.value * capacity / e.length;
        capacity = 0;
      }
    }
    return value;
  }

  void ConsiderNode(const Node& node) {
    std::vector<bool> set(n_, false);
    for (int j = 0; j < n_; ++j) set[j] = (node.mask >> j & 1) != 0;
    Consider(set);
  }

  void Consider(const std::vector<bool>& set) {
    absl::StatusOr<Solution> s = EvaluateObjective(problem_, set);
    if (!s.ok()) return;
    if (Improves(s->objective, set, best_value_, best_set_)) {
      best_value_ = s->objective;
      best_set_ = set;
    }
  }

  const SelectionProblem& problem_;
  const SolverConfig& config_;
  const int n_;
  std::vector<int> order_;
  std::vector<bool> best_set_;
  double best_value_ = 0.0;
  int64_t sequence_ = 0;
};

// Selection plus cached per-item attachment to the selection, so moves can
// be scored in O(1) or O(|selection|).
class LocalState {
 public:
  explicit LocalState(const SelectionProblem& problem)
      : p_(problem),
        n_(problem.size()),
        selected_(n_, false),
        attachment_(n_, 0.0) {}

  const std::vector<bool>& selected() const { return selected_; }
  bool in(int i) const { return selected_[i]; }
  int remaining() const { return p_.budget - length_; }

  double Fairness(int males, int females) const {
    return FairnessCost(p_, males, females);
  }
  double current_fairness() const { return Fairness(males_, females_); }

  double DeltaAdd(int i) const {
    const int m = males_ + (p_.is_female[i] ? 0 : 1);
    const int f = females_ + (p_.is_female[i] ? 1 : 0);
    return p_.score[i] - p_.penalty_weight * attachment_[i] -
           (Fairness(m, f) - current_fairness());
  }

  double DeltaDrop(int i) const {
    const int m = males_ - (p_.is_female[i] ? 0 : 1);
    const int f = females_ - (p_.is_female[i] ? 1 : 0);
    return -p_.score[i] + p_.penalty_weight * attachment_[i] -
           (Fairness(m, f) - current_fairness());
  }

  double DeltaSwap(int out, int in) const {
    int m = males_;
    int f = females_;
    (p_.is_female[out] ? f : m) -= 1;
    (p_.is_female[in] ? f : m) += 1;
    const double lambda = p_.penalty_weight;
    return -p_.score[out] + lambda * attachment_[out] + p_.score[in] -
           lambda * (attachment_[in] - p_.sim(in, out)) -
           (Fairness(m, f) - current_fairness());
  }

  double DeltaAddPair(int a, int b) const {
    int m = males_;
    int f = females_;
    (p_.is_female[a] ? f : m) += 1;
    (p_.is_female[b] ? f : m) += 1;
    const double lambda = p_.penalty_weight;
    return p_.score[a] + p_.score[b] -
           lambda * (attachment_[a] + attachment_[b] + p_.sim(a, b)) -
           (Fairness(m, f) - current_fairness());
  }

  void Add(int i) {
    selected_[i] = true;
    length_ += p_.length[i];
    (p_.is_female[i] ? females_ : males_) += 1;
    for (int j = 0; j < n_; ++j) attachment_[j] += p_.sim(i, j);
  }

  void Drop(int i) {
    selected_[i] = false;
    length_ -= p_.length[i];
    (p_.is_female[i] ? females_ : males_) -= 1;
    for (int j = 0; j < n_; ++j) attachment_[j] -= p_.sim(i, j);
  }

 private:
  const SelectionProblem& p_;
  const int n_;
  std::vector<bool> selected_;
  std::vector<double> attachment_;
  int length_ = 0;
  int males_ = 0;
  int females_ = 0;
};

constexpr double kImprovement = 1e-12;

void Greedy(const SelectionProblem& problem, LocalState* state) {
  const int n = problem.size();
  while (true) {
    int best = -1;
    double best_gain = kImprovement;
    double best_ratio = 0.0;
    for (int i = 0; i < n; ++i) {
      if (state->in(i) || problem.length[i] > state->remaining()) continue;
      const double gain = state->DeltaAdd(i);
      const double ratio = gain / problem.length[i];
      if (gain > best_gain + kImprovement ||
          (best >= 0 && std::abs(gain - best_gain) <= kImprovement &&
           ratio > best_ratio)) {
        best = i;
        best_gain = gain;
        best_ratio = ratio;
      }
    }
    if (best < 0) return;
    state->Add(best);
  }
}

void LocalSearch(const SelectionProblem& problem, LocalState* state) {
  const int n = problem.size();
  const int max_rounds = 20 * std::max(n, 1);
  for (int round = 0; round < max_rounds; ++round) {
    enum class Move { kNone, kAdd, kDrop, kSwap, kAddPair };
    Move move = Move::kNone;
    int a = -1;
    int b = -1;
    double gain = kImprovement;
    for (int i = 0; i < n; ++i) {
      if (state->in(i)) {
        const double d = state->DeltaDrop(i);
        if (d > gain) {
          gain = d, move = Move::kDrop, a = i;
        }
        continue;
      }
      if (problem.length[i] <= state->remaining()) {
        const double d = state->DeltaAdd(i);
        if (d > gain) {
          gain = d, move = Move::kAdd, a = i;
        }
      }
    }
    for (int out = 0; out < n; ++out) {
      if (!state->in(out)) continue;
      for (int in = 0; in < n; ++in) {
        if (state->in(in) || problem.length[in] - problem.length[out] >
                                 state->remaining()) {
          continue;
        }
        const double d = state->DeltaSwap(out, in);
        if (d > gain) {
          gain = d, move = Move::kSwap, a = out, b = in;
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      if (state->in(i) || problem.length[i] > state->remaining()) continue;
      for (int j = i + 1; j < n; ++j) {
        if (state->in(j) ||
            problem.length[i] + problem.length[j] > state->remaining()) {
          continue;
        }
        const double d = state->DeltaAddPair(i, j);
        if (d > gain) {
          gain = d, move = Move::kAddPair, a = i, b = j;
        }
      }
    }
    switch (move) {
      case Move::kNone:
        return;
      case Move::kAdd:
        state->Add(a);
        break;
      case Move::kDrop:
        state->Drop(a);
        break;
      case Move::kSwap:
        state->Drop(a);
        state->Add(b);
        break;
      case Move::kAddPair:
        state->Add(a);
        state->Add(b);
        break;
    }
  }
}

}  // namespace

SelectionProblem::SelectionProblem(int n)
    : score(n, 0.0),
      length(n, 1),
      is_female(n, false),
      similarity_(static_cast<size_t>(n) * n, 0.0) {}

void SelectionProblem::set_sim(int i, int j, double value) {
  if (similarity_.size() != score.size() * score.size()) {
    similarity_.assign(score.size() * score.size(), 0.0);
  }
  similarity_[i * size() + j] = value;
  similarity_[j * size() + i] = value;
}

absl::Status SelectionProblem::Validate() const {
  const size_t n = score.size();
  if (length.size() != n || is_female.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "candidate sequences disagree in length: score ", n, ", length ",
        length.size(), ", gender ", is_female.size()));
  }
  if (similarity_.size() != n * n) {
    return absl::InvalidArgumentError("similarity matrix is not n x n");
  }
  if (budget < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("budget must be >= 0, got ", budget));
  }
  if (!(female_ratio >= 0.0 && female_ratio <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("female ratio must be in [0,1], got ", female_ratio));
  }
  if (!(penalty_weight >= 0.0) || !std::isfinite(penalty_weight)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "penalty weight must be >= 0, got ", penalty_weight));
  }
  for (size_t i = 0; i < n; ++i) {
    if (!(score[i] >= 0.0 && score[i] <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("score[", i, "] = ", score[i], " is outside [0,1]"));
    }
    if (length[i] < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("length[", i, "] = ", length[i], " must be >= 1"));
    }
    if (sim(i, i) != 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("similarity diagonal at ", i, " is not zero"));
    }
    for (size_t j = i + 1; j < n; ++j) {
      const double s = sim(i, j);
      if (s != sim(j, i)) {
        return absl::InvalidArgumentError(
            absl::StrCat("similarity is not symmetric at (", i, ",", j, ")"));
      }
      if (!(s >= 0.0 && s <= 1.0)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "similarity (", i, ",", j, ") = ", s, " is outside [0,1]"));
      }
    }
  }
  return absl::OkStatus();
}

std::vector<int> Solution::Indices() const {
  std::vector<int> indices;
  for (size_t i = 0; i < selected.size(); ++i) {
    if (selected[i]) indices.push_back(static_cast<int>(i));
  }
  return indices;
}

double FairnessImbalance(double female_ratio, int males, int females) {
  return female_ratio * males - (1.0 - female_ratio) * females;
}

bool LexicographicallySmaller(const std::vector<bool>& a,
                              const std::vector<bool>& b) {
  // Walk both sorted index lists in step; the first differing index decides,
  // and a proper prefix is smaller.
  const size_t n = std::max(a.size(), b.size());
  auto at = [](const std::vector<bool>& v, size_t i) {
    return i < v.size() && v[i];
  };
  for (size_t i = 0; i < n; ++i) {
    const bool x = at(a, i);
    const bool y = at(b, i);
    if (x == y) continue;
    // The list containing i has the smaller element at this position,
    // unless the other list has already ended.
    if (x) {
      for (size_t k = i + 1; k < n; ++k) {
        if (at(b, k)) return true;
      }
      return false;
    }
    for (size_t k = i + 1; k < n; ++k) {
      if (at(a, k)) return false;
    }
    return true;
  }
  return false;
}

absl::StatusOr<Solution> EvaluateObjective(const SelectionProblem& problem,
                                           const std::vector<bool>& selected) {
  const int n = problem.size();
  if (static_cast<int>(selected.size()) != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "selection has ", selected.size(), " entries for ", n, " candidates"));
  }
  Solution s;
  s.selected = selected;
  int males = 0;
  int females = 0;
  for (int i = 0; i < n; ++i) {
    if (!selected[i]) continue;
    s.score_sum += problem.score[i];
    s.total_length += problem.length[i];
    (problem.is_female[i] ? females : males) += 1;
    for (int j = i + 1; j < n; ++j) {
      if (selected[j]) s.penalty_sum += problem.sim(i, j);
    }
  }
  if (s.total_length > problem.budget) {
    return absl::OutOfRangeError(absl::StrCat("selection uses ",
                                              s.total_length,
                                              " words, budget is ",
                                              problem.budget));
  }
  s.fairness_term =
      std::abs(FairnessImbalance(problem.female_ratio, males, females));
  s.objective = s.score_sum - problem.penalty_weight * s.penalty_sum -
                (problem.fairness_enabled ? s.fairness_term : 0.0);
  return s;
}

absl::StatusOr<Solution> SolveExact(const SelectionProblem& problem,
                                    const SolverConfig& config) {
  if (absl::Status valid = problem.Validate(); !valid.ok()) return valid;
  if (problem.size() > config.exact_limit) {
    return absl::ResourceExhaustedError(absl::StrCat(
        problem.size(), " candidates exceed the exact solver limit of ",
        config.exact_limit, "; use the heuristic solver"));
  }
  if (problem.size() > 64) {
    return absl::InvalidArgumentError(
        "the exact solver supports at most 64 candidates");
  }
  absl::StatusOr<Solution> warm = SolveHeuristic(problem, config);
  if (!warm.ok()) return warm.status();
  BranchAndBound search(problem, config);
  return search.Run(warm->selected);
}

absl::StatusOr<Solution> SolveHeuristic(const SelectionProblem& problem,
                                        const SolverConfig& config) {
  (void)config;
  if (absl::Status valid = problem.Validate(); !valid.ok()) return valid;
  LocalState state(problem);
  Greedy(problem, &state);
  LocalSearch(problem, &state);
  absl::StatusOr<Solution> solution =
      EvaluateObjective(problem, state.selected());
  if (!solution.ok()) return solution.status();
  solution->optimal = false;
  return solution;
}

absl::Status VerifyLinearization(const SelectionProblem& problem,
                                 const Solution& solution, double tolerance) {
  const int n = problem.size();
  if (static_cast<int>(solution.selected.size()) != n) {
    return absl::InvalidArgumentError("selection size mismatch");
  }
  double penalty = 0.0;
  int males = 0;
  int females = 0;
  for (int i = 0; i < n; ++i) {
    const int xi = solution.selected[i] ? 1 : 0;
    if (xi) (problem.is_female[i] ? females : males) += 1;
    for (int j = i + 1; j < n; ++j) {
      const int xj = solution.selected[j] ? 1 : 0;
      int feasible_y = -1;
      for (int y = 0; y <= 1; ++y) {
        const bool upper = 2 * y <= xi + xj;
        const bool lower = y >= xi + xj - 1;
        if (upper && lower) {
          if (feasible_y != -1) {
            return absl::InternalError(absl::StrCat(
                "pair (", i, ",", j, ") admits both indicator values"));
          }
          feasible_y = y;
        }
      }
      if (feasible_y == -1) {
        return absl::InternalError(
            absl::StrCat("pair (", i, ",", j, ") admits no indicator value"));
      }
      penalty += problem.sim(i, j) * feasible_y;
    }
  }
  if (std::abs(penalty - solution.penalty_sum) > tolerance) {
    return absl::InternalError(absl::StrCat("penalty from pair indicators ",
                                            penalty, " != reported ",
                                            solution.penalty_sum));
  }
  const double e = problem.female_ratio * males -
                   (1.0 - problem.female_ratio) * females;
  // Smallest c with c >= e and c >= -e.
  const double c = std::max(e, -e);
  if (std::abs(c - solution.fairness_term) > tolerance) {
    return absl::InternalError(absl::StrCat("fairness auxiliary ", c,
                                            " != reported ",
                                            solution.fairness_term));
  }
  return absl::OkStatus();
}

absl::Status WriteProblem(const SelectionProblem& problem, std::ostream& out) {
  if (absl::Status valid = problem.Validate(); !valid.ok()) return valid;
  const int n = problem.size();
  out.precision(17);
  out << "# opsum selection problem: n budget female_ratio penalty_weight\n";
  out << n << ' ' << problem.budget << ' ' << problem.female_ratio << ' '
      << problem.penalty_weight;
  if (!problem.fairness_enabled) out << " nofairness";
  out << '\n';
  for (int i = 0; i < n; ++i) {
    out << problem.score[i] << ' ' << problem.length[i] << ' '
        << (problem.is_female[i] ? 'F' : 'M') << '\n';
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (problem.sim(i, j) != 0.0) {
        out << i << ' ' << j << ' ' << problem.sim(i, j) << '\n';
      }
    }
  }
  return out ? absl::OkStatus() : absl::DataLossError("write failed");
}

absl::StatusOr<SelectionProblem> ReadProblem(std::istream& in) {
  std::string line;
  int line_number = 0;
  auto next = [&](std::vector<absl::string_view>* fields) {
    while (std::getline(in, line)) {
      ++line_number;
      absl::string_view view = absl::StripAsciiWhitespace(line);
      if (view.empty() || view.front() == '#') continue;
      *fields = absl::StrSplit(view, absl::ByAnyChar(" \t"), absl::SkipEmpty());
      return true;
    }
    return false;
  };
  auto error = [&](absl::string_view what) {
    return absl::InvalidArgumentError(
        absl::StrCat("problem line ", line_number, ": ", what));
  };
  std::vector<absl::string_view> fields;
  if (!next(&fields)) return absl::InvalidArgumentError("empty problem file");
  int n = 0;
  SelectionProblem problem;
  if (fields.size() < 4 || fields.size() > 5 || !absl::SimpleAtoi(fields[0], &n) ||
      n < 0 || !absl::SimpleAtoi(fields[1], &problem.budget) ||
      !absl::SimpleAtod(fields[2], &problem.female_ratio) ||
      !absl::SimpleAtod(fields[3], &problem.penalty_weight)) {
    return error("expected 'n budget female_ratio penalty_weight'");
  }
  const double fp = problem.female_ratio;
  const double lambda = problem.penalty_weight;
  const int budget = problem.budget;
  problem = SelectionProblem(n);
  problem.female_ratio = fp;
  problem.penalty_weight = lambda;
  problem.budget = budget;
  if (fields.size() == 5) {
    if (fields[4] != "nofairness") return error("unknown header flag");
    problem.fairness_enabled = false;
  }
  for (int i = 0; i < n; ++i) {
    if (!next(&fields)) return error("missing candidate line");
    if (fields.size() != 3 || !absl::SimpleAtod(fields[0], &problem.score[i]) ||
        !absl::SimpleAtoi(fields[1], &problem.length[i]) ||
        (fields[2] != "F" && fields[2] != "M")) {
      return error("expected 'score length F|M'");
    }
    problem.is_female[i] = fields[2] == "F";
  }
  while (next(&fields)) {
    int i = 0;
    int j = 0;
    double s = 0.0;
    if (fields.size() != 3 || !absl::SimpleAtoi(fields[0], &i) ||
        !absl::SimpleAtoi(fields[1], &j) || !absl::SimpleAtod(fields[2], &s)) {
      return error("expected 'i j sim'");
    }
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
      return error("similarity indices out of range");
    }
    problem.set_sim(i, j, s);
  }
  if (absl::Status valid = problem.Validate(); !valid.ok()) return valid;
  return problem;
}

}  // namespace opsum

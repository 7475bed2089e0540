#pragma once

// Adaptive multistage sampling over a deterministic move graph.
//
// A node at depth d (remaining horizon h = H - d) spends `budget` samples on
// its moves. Each move is sampled once first, in descending prior order;
// later samples go to the move with the best UCB score
//
//   (W_a + w * p~_a) / (N_a + w) + c * sqrt(ln t / (N_a + w))
//
// where W_a is the summed discounted child value, N_a the sample count, p~_a
// the evaluator prior rescaled so the largest prior is 1, and w the prior
// pseudo-count weight. A sample of move a is worth discount * V(child) with
// V(easy) = 1, V(dead end) = 0, V(at horizon) = evaluator value, and V of an
// inner node the visit-weighted mean of its samples. Transitions are
// deterministic, so child values are memoized per instance (transposition
// table) together with the horizon they were computed for.

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "reducto/generator.hpp"
#include "reducto/setup.hpp"

namespace reducto {

/// Belief model guiding the search: a value estimate per instance and a
/// probability vector over the moves one reduction offers.
template <class I>
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  /// In [0, 1].
  virtual double value(const I& x) const = 0;
  /// Same length as `moves`, non-negative, sums to 1.
  virtual std::vector<double> priors(const I& x, std::string_view reduction, std::span<const I> moves) const = 0;
};

template <class I>
class UniformEvaluator final : public Evaluator<I> {
 public:
  double value(const I&) const override { return 0.5; }
  std::vector<double> priors(const I&, std::string_view, std::span<const I> moves) const override {
    return std::vector<double>(moves.size(), moves.empty() ? 0.0 : 1.0 / static_cast<double>(moves.size()));
  }
};

struct SearchConfig {
  int horizon = 10;            // H, maximum path length in moves
  int budget = 16;             // N, samples per node visit
  double exploration = 1.0;    // c
  double discount = 0.95;      // gamma
  std::uint64_t seed = 0;
  std::size_t move_cap = 256;  // per reduction
  double prior_weight = 1.0;   // w
  std::size_t max_nodes = 2000;
  /// Once an easy instance is reached, spend remaining samples only on
  /// already-sampled moves instead of opening new ones.
  bool stop_on_solution = true;

  void validate() const {
    if (horizon < 1) throw std::invalid_argument("search horizon must be >= 1");
    if (budget < 1) throw std::invalid_argument("search budget must be >= 1");
    if (!(discount > 0.0 && discount <= 1.0)) throw std::invalid_argument("discount must lie in (0, 1]");
    if (!(exploration >= 0.0)) throw std::invalid_argument("exploration must be >= 0");
    if (!(prior_weight >= 0.0)) throw std::invalid_argument("prior weight must be >= 0");
    if (move_cap < 1) throw std::invalid_argument("move cap must be >= 1");
    if (max_nodes < 1) throw std::invalid_argument("max_nodes must be >= 1");
  }
};

struct SearchStats {
  std::size_t nodes_created = 0;
  std::size_t nodes_expanded = 0;
  std::size_t evaluator_calls = 0;
  /// Evaluator calls made before the first easy instance was reached.
  std::optional<std::size_t> evaluator_calls_to_first_solution;
  bool budget_exhausted = false;
  double wall_seconds = 0.0;
};

template <class I>
struct MoveCount {
  I instance;
  std::uint64_t count = 0;
};

/// Visit counts over every candidate move one reduction offered at an instance.
template <class I>
struct Distribution {
  I instance;
  std::string reduction;
  std::uint64_t samples = 0;
  std::vector<MoveCount<I>> moves;
};

template <class I>
struct ValueEstimate {
  I instance;
  double value = 0.0;
  std::uint64_t visits = 0;
};

template <class I>
struct QualityData {
  std::vector<Distribution<I>> distributions;
  std::vector<ValueEstimate<I>> values;

  bool empty() const noexcept { return distributions.empty() && values.empty(); }
  std::size_t records() const noexcept { return distributions.size() + values.size(); }
};

template <class I, class S>
struct SearchResult {
  Path<I> path;
  EasyOutcome<S> terminal;
  QualityData<I> quality;
  SearchStats stats;
};

namespace detail {

template <class I, class S>
class AmsSearch {
 public:
  AmsSearch(const Setup<I, S>& setup, const Evaluator<I>& evaluator, const SearchConfig& cfg)
      : setup_(setup), evaluator_(evaluator), cfg_(cfg), rng_(cfg.seed) {}

  SearchResult<I, S> run(const I& x) {
    const auto started = std::chrono::steady_clock::now();
    const std::size_t root = create(x);
    SearchResult<I, S> result{Path<I>{x, {}}, nodes_[root].outcome, {}, {}};
    if (!nodes_[root].easy) {
      estimate(root, 0);
      extract_path(root, result.path);
      result.terminal = setup_.easy(result.path.last());
    } else {
      settle_easy(nodes_[root]);
    }
    result.quality = collect();
    stats_.nodes_created = nodes_.size();
    stats_.budget_exhausted = exhausted_;
    stats_.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    result.stats = stats_;
    return result;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Child {
    std::size_t reduction = 0;
    I instance;
    double prior = 0.0;
    double prior_score = 0.0;
    std::size_t node = npos;
    std::uint64_t visits = 0;
    double reward_sum = 0.0;
  };

  struct Node {
    I instance;
    EasyOutcome<S> outcome;
    bool easy = false;
    bool expanded = false;
    bool dead_end = false;
    bool on_stack = false;
    int remaining = -1;  // horizon the value was settled for
    double value = 0.0;
    std::uint64_t value_visits = 0;
    std::optional<int> solved;  // length of the shortest known path to an easy instance
    std::vector<Child> children;
    std::vector<std::size_t> order;  // forced first-visit order
    std::vector<std::uint64_t> samples;  // per setup reduction
  };

  std::size_t create(const I& x) {
    Node n{x, setup_.easy(x), false, false, false, false, -1, 0.0, 0, std::nullopt, {}, {}, {}};
    n.easy = is_easy(n.outcome);
    if (n.easy && !stats_.evaluator_calls_to_first_solution) stats_.evaluator_calls_to_first_solution = stats_.evaluator_calls;
    nodes_.push_back(std::move(n));
    index_.emplace(x, nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  // Existing node for x, or a new one; npos once the node budget is spent.
  std::size_t node_for(const I& x) {
    if (auto it = index_.find(x); it != index_.end()) return it->second;
    if (nodes_.size() >= cfg_.max_nodes) return npos;
    return create(x);
  }

  void settle_easy(Node& n) {
    n.value = 1.0;
    n.value_visits += 1;
    n.solved = 0;
    n.remaining = INT_MAX;
  }

  void expand(Node& n) {
    n.expanded = true;
    ++stats_.nodes_expanded;
    const auto moves = enumerate_moves(setup_, n.instance, MoveLimits{cfg_.move_cap, CapPolicy::truncate});
    n.samples.assign(setup_.reductions().size(), 0);
    if (moves.empty()) {
      n.dead_end = true;
      return;
    }
    // Moves arrive grouped by reduction in setup order.
    std::vector<std::pair<std::size_t, std::vector<I>>> groups;
    for (const auto& m : moves) {
      std::size_t r = 0;
      while (setup_.reductions()[r].id != m.reduction) ++r;
      if (groups.empty() || groups.back().first != r) groups.emplace_back(r, std::vector<I>{});
      groups.back().second.push_back(m.instance);
    }
    for (auto& [r, targets] : groups) {
      ++stats_.evaluator_calls;
      const auto p = evaluator_.priors(n.instance, setup_.reductions()[r].id, targets);
      if (p.size() != targets.size()) throw std::invalid_argument("evaluator returned a prior vector of the wrong length");
      for (std::size_t i = 0; i < targets.size(); ++i) {
        if (!(p[i] >= 0.0) || !std::isfinite(p[i])) throw std::invalid_argument("evaluator returned an invalid prior");
        n.children.push_back(Child{r, std::move(targets[i]), p[i] / static_cast<double>(groups.size()), 0.0, npos, 0, 0.0});
      }
    }
    double top = 0.0;
    for (const auto& c : n.children) top = std::max(top, c.prior);
    for (auto& c : n.children) c.prior_score = top > 0.0 ? c.prior / top : 1.0;

    std::vector<std::size_t> tiebreak(n.children.size());
    std::iota(tiebreak.begin(), tiebreak.end(), std::size_t{0});
    rng_.shuffle(tiebreak);
    n.order.resize(n.children.size());
    std::iota(n.order.begin(), n.order.end(), std::size_t{0});
    std::stable_sort(n.order.begin(), n.order.end(), [&](std::size_t a, std::size_t b) {
      if (n.children[a].prior != n.children[b].prior) return n.children[a].prior > n.children[b].prior;
      return tiebreak[a] < tiebreak[b];
    });
  }

  std::size_t choose(const Node& n) const {
    if (!(found_ && cfg_.stop_on_solution)) {
      for (std::size_t idx : n.order)
        if (n.children[idx].visits == 0) return idx;
    }
    std::uint64_t total = 0;
    for (const auto& c : n.children) total += c.visits;
    const double log_t = std::log(static_cast<double>(total) + 1.0);
    const double w = cfg_.prior_weight;
    std::size_t best = npos;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t idx : n.order) {
      const auto& c = n.children[idx];
      if (c.visits == 0) continue;
      const double denom = static_cast<double>(c.visits) + w;
      const double score = (c.reward_sum + w * c.prior_score) / denom + cfg_.exploration * std::sqrt(log_t / denom);
      if (score > best_score) {
        best_score = score;
        best = idx;
      }
    }
    return best;
  }

  double estimate(std::size_t id, int depth) {
    Node& n = nodes_[id];
    if (n.easy) {
      settle_easy(n);
      found_ = true;
      return 1.0;
    }
    if (n.dead_end) return 0.0;
    const int remaining = cfg_.horizon - depth;
    if (n.remaining >= remaining) return n.value;
    if (remaining == 0) {
      ++stats_.evaluator_calls;
      n.value = std::clamp(evaluator_.value(n.instance), 0.0, 1.0);
      n.value_visits = 1;
      n.remaining = 0;
      return n.value;
    }
    if (!n.expanded) {
      expand(n);
      if (n.dead_end) {
        n.value = 0.0;
        n.value_visits = 1;
        n.remaining = INT_MAX;
        return 0.0;
      }
    }

    n.on_stack = true;
    for (int s = 0; s < cfg_.budget && !exhausted_; ++s) {
      const std::size_t pick = choose(n);
      if (pick == npos) break;
      Child& c = n.children[pick];
      if (c.node == npos) {
        c.node = node_for(c.instance);
        if (c.node == npos) {
          exhausted_ = true;
          break;
        }
      }
      double q = 0.0;  // revisiting an instance on the current path is worthless
      if (!nodes_[c.node].on_stack) q = cfg_.discount * estimate(c.node, depth + 1);
      c.visits += 1;
      c.reward_sum += q;
      n.samples[c.reduction] += 1;
      if (const auto& cs = nodes_[c.node].solved; cs && *cs + 1 <= remaining && (!n.solved || *cs + 1 < *n.solved)) {
        n.solved = *cs + 1;
        found_ = true;
      }
    }
    n.on_stack = false;

    std::uint64_t total = 0;
    double sum = 0.0;
    for (const auto& c : n.children) {
      total += c.visits;
      sum += c.reward_sum;
    }
    if (total > 0) {
      n.value = sum / static_cast<double>(total);
      n.value_visits = total;
    }
    if (!exhausted_) n.remaining = remaining;
    return n.value;
  }

  // Greedy walk: along proven paths by shortest distance, else by best mean sample value.
  void extract_path(std::size_t root, Path<I>& path) const {
    std::unordered_set<std::size_t> seen{root};
    std::size_t cur = root;
    for (int depth = 0; depth < cfg_.horizon; ++depth) {
      const Node& n = nodes_[cur];
      if (n.easy || !n.expanded || n.dead_end) return;
      std::size_t best = npos;
      for (std::size_t idx : n.order) {
        const auto& c = n.children[idx];
        if (c.visits == 0 || c.node == npos || seen.contains(c.node)) continue;
        if (best == npos) {
          best = idx;
          continue;
        }
        if (better(n, c, n.children[best], cfg_.horizon - depth)) best = idx;
      }
      if (best == npos) return;
      const auto& c = n.children[best];
      path.steps.push_back(Move<I>{setup_.reductions()[c.reduction].id, c.instance});
      seen.insert(c.node);
      cur = c.node;
    }
  }

  bool better(const Node&, const Child& a, const Child& b, int remaining) const {
    auto proven = [&](const Child& c) -> std::optional<int> {
      const auto& s = nodes_[c.node].solved;
      if (s && *s + 1 <= remaining) return *s;
      return std::nullopt;
    };
    const auto pa = proven(a);
    const auto pb = proven(b);
    if (pa || pb) {
      if (!pb) return true;
      if (!pa) return false;
      return *pa < *pb;
    }
    const double ma = a.reward_sum / static_cast<double>(a.visits);
    const double mb = b.reward_sum / static_cast<double>(b.visits);
    if (ma != mb) return ma > mb;
    return a.visits > b.visits;
  }

  QualityData<I> collect() const {
    QualityData<I> q;
    for (const auto& n : nodes_) {
      // Instances only estimated at the horizon carry no information beyond the evaluator's own guess.
      const bool sampled = std::any_of(n.children.begin(), n.children.end(), [](const Child& c) { return c.visits > 0; });
      if (n.easy || n.dead_end || sampled)
        q.values.push_back(ValueEstimate<I>{n.instance, n.easy ? 1.0 : n.value, std::max<std::uint64_t>(1, n.value_visits)});
      for (std::size_t r = 0; r < n.samples.size(); ++r) {
        if (n.samples[r] == 0) continue;
        Distribution<I> d{n.instance, setup_.reductions()[r].id, n.samples[r], {}};
        for (const auto& c : n.children)
          if (c.reduction == r) d.moves.push_back(MoveCount<I>{c.instance, c.visits});
        q.distributions.push_back(std::move(d));
      }
    }
    return q;
  }

  const Setup<I, S>& setup_;
  const Evaluator<I>& evaluator_;
  SearchConfig cfg_;
  Rng rng_;
  std::deque<Node> nodes_;
  std::unordered_map<I, std::size_t> index_;
  SearchStats stats_;
  bool found_ = false;
  bool exhausted_ = false;
};

}  // namespace detail

/// Searches for a path from x to an easy instance. Single-threaded and
/// deterministic for a fixed cfg.seed. When the node budget runs out before
/// the root samples any move, the path has length 0.
template <class I, class S>
SearchResult<I, S> ams_search(const I& x, const Setup<I, S>& setup, const Evaluator<I>& evaluator,
                              const SearchConfig& cfg) {
  cfg.validate();
  return detail::AmsSearch<I, S>(setup, evaluator, cfg).run(x);
}

/// Deterministic text form of a result (wall time excluded).
template <class I, class S, class InstanceText, class SolutionText>
std::string canonical_text(const SearchResult<I, S>& r, InstanceText&& instance_text, SolutionText&& solution_text) {
  std::ostringstream out;
  out.precision(17);
  out << "path " << r.path.length() << '\n' << "start " << instance_text(r.path.start) << '\n';
  for (const auto& s : r.path.steps) out << "step " << s.reduction << ' ' << instance_text(s.instance) << '\n';
  if (std::holds_alternative<NotEasy>(r.terminal))
    out << "terminal not-easy\n";
  else if (std::holds_alternative<NoSolution>(r.terminal))
    out << "terminal no-solution\n";
  else
    out << "terminal solution " << solution_text(std::get<S>(r.terminal)) << '\n';
  for (const auto& v : r.quality.values) out << "value " << instance_text(v.instance) << ' ' << v.value << ' ' << v.visits << '\n';
  for (const auto& d : r.quality.distributions) {
    out << "dist " << instance_text(d.instance) << ' ' << d.reduction << ' ' << d.samples << '\n';
    for (const auto& m : d.moves) out << "  move " << instance_text(m.instance) << ' ' << m.count << '\n';
  }
  out << "stats " << r.stats.nodes_created << ' ' << r.stats.nodes_expanded << ' ' << r.stats.evaluator_calls << ' '
      << (r.stats.evaluator_calls_to_first_solution ? std::to_string(*r.stats.evaluator_calls_to_first_solution) : "-")
      << ' ' << r.stats.budget_exhausted << '\n';
  return out.str();
}

/// Integrity of collected quality data: every distribution's counts sum to
/// its sample count, and every counted move is a genuine move of its
/// reduction. Returns a description of each violation.
template <class I, class S>
std::vector<std::string> quality_violations(const Setup<I, S>& setup, const QualityData<I>& q) {
  std::vector<std::string> out;
  for (const auto& d : q.distributions) {
    std::uint64_t sum = 0;
    for (const auto& m : d.moves) sum += m.count;
    if (sum != d.samples)
      out.push_back("distribution " + d.reduction + ": counts sum to " + std::to_string(sum) + ", samples " +
                    std::to_string(d.samples));
    const auto genuine = setup.reduction(d.reduction).moves(d.instance);
    for (const auto& m : d.moves)
      if (m.count > 0 && std::find(genuine.begin(), genuine.end(), m.instance) == genuine.end())
        out.push_back("distribution " + d.reduction + ": counted move is not a genuine move");
  }
  for (const auto& v : q.values)
    if (!(v.value >= 0.0 && v.value <= 1.0)) out.push_back("value outside [0, 1]");
  return out;
}

}  // namespace reducto

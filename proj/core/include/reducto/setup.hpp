#pragma once

// Problem-independent game formalism: easy-instance solvers, self-reductions,
// setups and paths. Everything here is a template over an instance type I
// and a solution type S. I must be totally ordered (operator<=>) and
// equality-comparable; the ordering is the canonical order used to make move
// enumeration deterministic.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

namespace reducto {

struct NotEasy {
  bool operator==(const NotEasy&) const = default;
};
struct NoSolution {
  bool operator==(const NoSolution&) const = default;
};
struct DontKnow {
  bool operator==(const DontKnow&) const = default;
};

/// Output of an easy-instance solver.
template <class S>
using EasyOutcome = std::variant<NotEasy, NoSolution, S>;

/// Final answer of a solver.
template <class S>
using SolveAnswer = std::variant<S, NoSolution, DontKnow>;

template <class S>
bool is_easy(const EasyOutcome<S>& outcome) {
  return !std::holds_alternative<NotEasy>(outcome);
}

/// A move function paired with a solution function. `moves(x)` lists the
/// successor instances; `lift(x, x2, y)` turns a solution y of x2 into a
/// solution of x.
template <class I, class S>
struct SelfReduction {
  std::string id;
  std::function<std::vector<I>(const I&)> moves;
  std::function<S(const I&, const I&, const S&)> lift;
};

class UnknownReductionError : public std::out_of_range {
 public:
  explicit UnknownReductionError(const std::string& id)
      : std::out_of_range("unknown self-reduction id '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class LiftIntegrityError : public std::runtime_error {
 public:
  LiftIntegrityError(std::size_t step, const std::string& reduction)
      : std::runtime_error("lift of step " + std::to_string(step) + " (" + reduction +
                           ") did not produce a solution"),
        step_(step),
        reduction_(reduction) {}
  /// 1-based index of the offending step.
  std::size_t step() const noexcept { return step_; }
  const std::string& reduction() const noexcept { return reduction_; }

 private:
  std::size_t step_;
  std::string reduction_;
};

template <class I, class S>
class Setup {
 public:
  using EasySolver = std::function<EasyOutcome<S>(const I&)>;
  using SolutionCheck = std::function<bool(const S&, const I&)>;

  Setup(std::string name, EasySolver easy, std::vector<SelfReduction<I, S>> reductions,
        SolutionCheck accepts)
      : name_(std::move(name)),
        easy_(std::move(easy)),
        reductions_(std::move(reductions)),
        accepts_(std::move(accepts)) {
    if (reductions_.empty()) throw std::invalid_argument("setup needs at least one self-reduction");
    std::unordered_set<std::string> seen;
    for (const auto& r : reductions_) {
      if (!seen.insert(r.id).second)
        throw std::invalid_argument("duplicate self-reduction id '" + r.id + "'");
    }
  }

  const std::string& name() const noexcept { return name_; }
  EasyOutcome<S> easy(const I& x) const { return easy_(x); }
  bool accepts(const S& y, const I& x) const { return accepts_(y, x); }
  const std::vector<SelfReduction<I, S>>& reductions() const noexcept { return reductions_; }

  const SelfReduction<I, S>& reduction(std::string_view id) const {
    for (const auto& r : reductions_)
      if (r.id == id) return r;
    throw UnknownReductionError(std::string(id));
  }

 private:
  std::string name_;
  EasySolver easy_;
  std::vector<SelfReduction<I, S>> reductions_;
  SolutionCheck accepts_;
};

template <class I>
struct Move {
  std::string reduction;
  I instance;

  bool operator==(const Move&) const = default;
};

/// x0, (r1, x1), ..., (rn, xn)
template <class I>
struct Path {
  I start;
  std::vector<Move<I>> steps;

  std::size_t length() const noexcept { return steps.size(); }
  const I& last() const { return steps.empty() ? start : steps.back().instance; }
  /// Instance x_i for i in [0, length()].
  const I& at(std::size_t i) const { return i == 0 ? start : steps.at(i - 1).instance; }

  bool operator==(const Path&) const = default;
};

/// Appends `tail` to `head`. tail.start must equal head.last().
template <class I>
Path<I> concat(const Path<I>& head, const Path<I>& tail) {
  if (!(tail.start == head.last())) throw std::invalid_argument("paths do not join");
  Path<I> out = head;
  out.steps.insert(out.steps.end(), tail.steps.begin(), tail.steps.end());
  return out;
}

template <class I, class S>
bool verify_path(const Setup<I, S>& setup, const Path<I>& path) {
  for (std::size_t i = 1; i <= path.length(); ++i) {
    const auto& step = path.steps[i - 1];
    const auto& r = setup.reduction(step.reduction);
    const auto moves = r.moves(path.at(i - 1));
    if (std::find(moves.begin(), moves.end(), step.instance) == moves.end()) return false;
  }
  return true;
}

/// Lifts a solution of path.last() back to path.start, right to left.
/// Throws LiftIntegrityError naming the step whose lift broke the contract.
template <class I, class S>
S lift_solution(const Setup<I, S>& setup, const Path<I>& path, S y) {
  if (!setup.accepts(y, path.last()))
    throw std::invalid_argument("lift_solution: y is not a solution of the final instance");
  for (std::size_t i = path.length(); i >= 1; --i) {
    const auto& step = path.steps[i - 1];
    const auto& r = setup.reduction(step.reduction);
    y = r.lift(path.at(i - 1), step.instance, y);
    if (!setup.accepts(y, path.at(i - 1))) throw LiftIntegrityError(i, step.reduction);
  }
  return y;
}

enum class CapPolicy { fail, truncate };

struct MoveLimits {
  std::size_t per_reduction = 256;
  CapPolicy policy = CapPolicy::fail;
};

template <class I>
class MoveCapExceeded : public std::runtime_error {
 public:
  MoveCapExceeded(std::string reduction, std::vector<Move<I>> partial)
      : std::runtime_error("self-reduction '" + reduction + "' exceeded its move cap"),
        reduction_(std::move(reduction)),
        partial_(std::move(partial)) {}
  const std::string& reduction() const noexcept { return reduction_; }
  /// Moves enumerated so far, already truncated to the cap.
  const std::vector<Move<I>>& partial() const noexcept { return partial_; }

 private:
  std::string reduction_;
  std::vector<Move<I>> partial_;
};

/// All moves from x, grouped by reduction in setup order. Within a group the
/// moves are canonically sorted, deduplicated and stripped of self-moves.
/// A group larger than the cap keeps its canonically-first moves; under
/// CapPolicy::fail that raises MoveCapExceeded carrying the truncated list.
template <class I, class S>
std::vector<Move<I>> enumerate_moves(const Setup<I, S>& setup, const I& x, MoveLimits limits = {}) {
  std::vector<Move<I>> out;
  for (const auto& r : setup.reductions()) {
    auto targets = r.moves(x);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    std::erase_if(targets, [&](const I& t) { return t == x; });
    const bool over = targets.size() > limits.per_reduction;
    if (over) targets.resize(limits.per_reduction);
    for (auto& t : targets) out.push_back(Move<I>{r.id, std::move(t)});
    if (over && limits.policy == CapPolicy::fail) throw MoveCapExceeded<I>(r.id, std::move(out));
  }
  return out;
}

}  // namespace reducto

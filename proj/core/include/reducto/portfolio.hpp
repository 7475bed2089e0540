#pragma once

// Per-instance algorithm selection as a single self-reduction: every member
// of a portfolio turns the input formula into another formula, and the set
// of those outputs is the move set.

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "reducto/cnf.hpp"
#include "reducto/setup.hpp"

namespace reducto::portfolio {

using sat::Assignment;
using sat::Formula;

/// A member's output: the transformed formula and how to map its solutions back.
struct Transform {
  Formula formula;
  std::function<Assignment(const Assignment&)> lift;
};

/// An external program speaking DIMACS on standard streams. It may answer
/// `s SATISFIABLE` with `v` lines, `s UNSATISFIABLE`, or print a complete
/// DIMACS formula; the latter is accepted only with identity_lift declared.
struct ExternalCommand {
  std::vector<std::string> argv;
  std::chrono::milliseconds timeout{5000};
  bool identity_lift = false;
};

struct Member {
  std::string id;
  /// nullopt means the member failed on this input.
  std::function<std::optional<Transform>(const Formula&)> transform;
  std::optional<ExternalCommand> external;

  bool builtin() const noexcept { return !external.has_value(); }
};

Member unit_propagation_member();
Member pure_literal_member();
/// k rounds of: add every new non-tautological resolvent, then drop subsumed clauses.
Member bounded_resolution_member(int rounds = 1);
Member external_member(std::string id, ExternalCommand command);

struct PortfolioMove {
  Formula formula;
  std::string member;
};

class Portfolio {
 public:
  explicit Portfolio(std::vector<Member> members);

  const std::vector<Member>& members() const noexcept { return members_; }

  /// Member outputs, canonically sorted, deduplicated (first member wins)
  /// and without self-moves. Failing members contribute nothing.
  std::vector<PortfolioMove> moves(const Formula& phi) const;
  /// Dispatches to the lift of the member that produced phi2 from phi.
  Assignment lift(const Formula& phi, const Formula& phi2, const Assignment& alpha) const;

  /// Failure counts per member id since construction.
  std::map<std::string, std::size_t> failures() const;

 private:
  using Outputs = std::vector<std::optional<Transform>>;
  std::shared_ptr<const Outputs> run(const Formula& phi) const;

  std::vector<Member> members_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Formula, std::shared_ptr<const Outputs>> cache_;
  mutable std::map<std::string, std::size_t> failures_;
};

std::vector<PortfolioMove> portfolio_moves(const Portfolio& p, const Formula& phi);

/// Unit propagation, pure-literal elimination, bounded resolution.
std::vector<Member> builtin_member_list(int resolution_rounds = 1);
Portfolio builtin_members(int resolution_rounds = 1);

SelfReduction<Formula, Assignment> portfolio_reduction(std::shared_ptr<const Portfolio> p);

/// Easy if trivially decided or if every clause has a positive literal.
EasyOutcome<Assignment> easy_trivial_or_all_positive(const Formula& phi);

Setup<Formula, Assignment> portfolio_setup(std::shared_ptr<const Portfolio> p);

}  // namespace reducto::portfolio

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "reducto/cnf.hpp"
#include "reducto/setup.hpp"

namespace reducto::sat {

/// (c1 ∪ c2) − {pivot, ~pivot}, or nullopt when that set holds a
/// complementary pair. Throws std::invalid_argument unless pivot ∈ c1 and
/// ~pivot ∈ c2.
std::optional<Clause> resolvent(const Clause& c1, const Clause& c2, Literal pivot);

/// phi ∪ {R} for every resolvent R of a clause pair of phi with R ∉ phi.
std::vector<Formula> resolution_moves(const Formula& phi);

/// Removes every clause that properly contains another clause. Empty when
/// nothing would be removed.
std::vector<Formula> subsumption_move(const Formula& phi);

struct PureElimination {
  Formula result;
  /// Eliminated pure literals, round by round, canonical order within a round.
  std::vector<Literal> eliminated;
};

/// Deletes clauses holding pure literals until no pure literal is left.
PureElimination eliminate_pure_literals(const Formula& phi);
std::vector<Formula> pure_literal_move(const Formula& phi);
/// α with every eliminated pure literal set true.
Assignment lift_pure_literal(const Formula& phi, const Assignment& alpha);

inline constexpr std::size_t kDefaultExtensionPairCap = 16;

/// For literal pairs {a, b} over distinct variables of phi (canonical order,
/// at most pair_cap pairs) adds {a,¬v}, {b,¬v}, {¬a,¬b,v} with v the smallest
/// variable index not occurring in phi.
std::vector<Formula> extension_moves(const Formula& phi, std::size_t pair_cap = kDefaultExtensionPairCap);

/// Swaps the polarity of var everywhere: v ↔ ¬v.
Formula flip_variable(const Formula& phi, int var);
/// One move per literal ¬v of each all-negative (non-empty) clause.
std::vector<Formula> flip_moves(const Formula& phi);
/// Finds a flippable variable turning phi into phi2 and negates its literal in α.
Assignment lift_flip(const Formula& phi, const Formula& phi2, const Assignment& alpha);

struct UnitPropagation {
  Formula result;
  /// Propagated literals in propagation order.
  std::vector<Literal> assigned;
};

/// Propagates unit clauses to a fixpoint; stops early once the empty clause appears.
UnitPropagation propagate_units(const Formula& phi);

/// ⊤ → Solution(∅); any formula with the empty clause → NoSolution.
EasyOutcome<Assignment> easy_trivial(const Formula& phi);
/// Every clause has a positive literal → Solution(all positive literals).
EasyOutcome<Assignment> easy_all_positive(const Formula& phi);

}  // namespace reducto::sat

#pragma once

// Helpers shared by the unit and acceptance tests. The truth-table check
// here is deliberately independent of the library's backtracking oracle.

#include <cstdint>
#include <optional>
#include <vector>

#include "reducto/cnf.hpp"
#include "reducto/generator.hpp"

namespace reducto::testing {

/// Every assignment over the formula's variables, by enumeration. Returns a
/// satisfying one or nullopt.
inline std::optional<sat::Assignment> truth_table(const sat::Formula& phi) {
  const auto vars = phi.variables();
  if (vars.size() > 20) return std::nullopt;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
    std::vector<sat::Literal> lits;
    for (std::size_t i = 0; i < vars.size(); ++i)
      lits.push_back((mask >> i) & 1 ? sat::Literal::positive(vars[i]) : sat::Literal::negative(vars[i]));
    auto alpha = *sat::Assignment::from_literals(std::move(lits));
    if (sat::satisfies(alpha, phi)) return alpha;
  }
  return std::nullopt;
}

inline bool table_sat(const sat::Formula& phi) { return truth_table(phi).has_value(); }

/// Every satisfying assignment over the formula's variables.
inline std::vector<sat::Assignment> all_models(const sat::Formula& phi) {
  const auto vars = phi.variables();
  std::vector<sat::Assignment> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
    std::vector<sat::Literal> lits;
    for (std::size_t i = 0; i < vars.size(); ++i)
      lits.push_back((mask >> i) & 1 ? sat::Literal::positive(vars[i]) : sat::Literal::negative(vars[i]));
    auto alpha = *sat::Assignment::from_literals(std::move(lits));
    if (sat::satisfies(alpha, phi)) out.push_back(std::move(alpha));
  }
  return out;
}

/// Small mixed-width formulas, seeded.
inline std::vector<sat::Formula> formula_family(std::uint64_t seed, std::size_t count, int max_vars, int max_clauses) {
  Rng rng(seed);
  std::vector<sat::Formula> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(sat::random_formula(rng, max_vars, max_clauses));
  return out;
}

/// Renames variables by a permutation of 1..n (n = max variable).
inline sat::Formula rename(const sat::Formula& phi, const std::vector<int>& perm) {
  std::vector<sat::Clause> cs;
  for (const auto& c : phi) {
    std::vector<sat::Literal> lits;
    for (auto l : c) {
      const int v = perm[static_cast<std::size_t>(l.var() - 1)];
      lits.push_back(l.is_positive() ? sat::Literal::positive(v) : sat::Literal::negative(v));
    }
    cs.push_back(*sat::Clause::from_literals(std::move(lits)));
  }
  return sat::Formula(std::move(cs));
}

}  // namespace reducto::testing

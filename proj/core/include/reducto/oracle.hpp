#pragma once

#include <cstddef>
#include <stdexcept>
#include <variant>

#include "reducto/cnf.hpp"

namespace reducto::sat {

struct Unsat {
  bool operator==(const Unsat&) const = default;
};

/// Sat carries a satisfying assignment over the formula's variables.
using OracleVerdict = std::variant<Assignment, Unsat>;

class OracleLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kDefaultOracleVariableLimit = 24;

/// Naive backtracking over the variables of phi in index order, pruning on
/// falsified clauses. Refuses formulas with more than `variable_limit` variables.
OracleVerdict oracle_solve(const Formula& phi, std::size_t variable_limit = kDefaultOracleVariableLimit);

inline bool oracle_sat(const Formula& phi) { return std::holds_alternative<Assignment>(oracle_solve(phi)); }

}  // namespace reducto::sat

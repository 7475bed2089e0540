#include "reducto/oracle.hpp"

#include <string>
#include <vector>

namespace reducto::sat {

namespace {

struct Backtracker {
  const Formula& phi;
  std::vector<int> vars;
  std::vector<int> index_of;  // variable -> position in vars
  std::vector<signed char> value;  // per position: -1 unset, 0 false, 1 true

  // A clause is falsified once every literal is assigned and false.
  bool falsified_any() const {
    for (const auto& c : phi) {
      bool alive = false;
      for (Literal l : c) {
        const signed char v = value[index_of[l.var()]];
        if (v < 0 || (v == 1) == l.is_positive()) {
          alive = true;
          break;
        }
      }
      if (!alive) return true;
    }
    return false;
  }

  bool search(std::size_t depth) {
    if (falsified_any()) return false;
    if (depth == vars.size()) return true;
    for (signed char v : {1, 0}) {
      value[depth] = v;
      if (search(depth + 1)) return true;
    }
    value[depth] = -1;
    return false;
  }
};

}  // namespace

OracleVerdict oracle_solve(const Formula& phi, std::size_t variable_limit) {
  auto vars = phi.variables();
  if (vars.size() > variable_limit)
    throw OracleLimitError("oracle refuses " + std::to_string(vars.size()) + " variables (limit " +
                           std::to_string(variable_limit) + ")");
  Backtracker bt{phi, vars, std::vector<int>(phi.max_variable() + 1, 0), std::vector<signed char>(vars.size(), -1)};
  for (std::size_t i = 0; i < vars.size(); ++i) bt.index_of[vars[i]] = static_cast<int>(i);
  if (!bt.search(0)) return Unsat{};
  std::vector<Literal> lits;
  for (std::size_t i = 0; i < vars.size(); ++i)
    lits.push_back(bt.value[i] == 1 ? Literal::positive(vars[i]) : Literal::negative(vars[i]));
  return *Assignment::from_literals(std::move(lits));
}

}  // namespace reducto::sat

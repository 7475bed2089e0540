#include "reducto/rules.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace reducto::sat {

std::optional<Clause> resolvent(const Clause& c1, const Clause& c2, Literal pivot) {
  if (!c1.contains(pivot) || !c2.contains(~pivot))
    throw std::invalid_argument("resolvent: pivot must occur in c1 and its complement in c2");
  std::vector<Literal> lits;
  lits.reserve(c1.size() + c2.size());
  for (Literal l : c1)
    if (l != pivot) lits.push_back(l);
  for (Literal l : c2)
    if (l != ~pivot) lits.push_back(l);
  return Clause::from_literals(std::move(lits));
}

std::vector<Formula> resolution_moves(const Formula& phi) {
  std::set<Clause> fresh;
  const auto cs = phi.clauses();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      for (Literal l : cs[i]) {
        if (!cs[j].contains(~l)) continue;
        if (auto r = resolvent(cs[i], cs[j], l); r && !phi.contains(*r)) fresh.insert(std::move(*r));
      }
    }
  }
  std::vector<Formula> out;
  out.reserve(fresh.size());
  for (const auto& r : fresh) out.push_back(phi.with_clause(r));
  return out;
}

std::vector<Formula> subsumption_move(const Formula& phi) {
  const auto cs = phi.clauses();
  std::vector<Clause> kept;
  kept.reserve(cs.size());
  for (std::size_t j = 0; j < cs.size(); ++j) {
    bool unnecessary = false;
    for (std::size_t i = 0; i < cs.size() && !unnecessary; ++i)
      unnecessary = i != j && cs[i].size() < cs[j].size() && cs[i].subset_of(cs[j]);
    if (!unnecessary) kept.push_back(cs[j]);
  }
  if (kept.size() == cs.size()) return {};
  return {Formula(std::move(kept))};
}

PureElimination eliminate_pure_literals(const Formula& phi) {
  PureElimination out{phi, {}};
  for (;;) {
    std::set<Literal> present;
    for (const auto& c : out.result)
      for (Literal l : c) present.insert(l);
    std::vector<Literal> pure;
    for (Literal l : present)
      if (!present.contains(~l)) pure.push_back(l);
    if (pure.empty()) return out;
    std::vector<Clause> kept;
    for (const auto& c : out.result) {
      const bool hit = std::any_of(pure.begin(), pure.end(), [&](Literal l) { return c.contains(l); });
      if (!hit) kept.push_back(c);
    }
    out.eliminated.insert(out.eliminated.end(), pure.begin(), pure.end());
    out.result = Formula(std::move(kept));
  }
}

std::vector<Formula> pure_literal_move(const Formula& phi) {
  auto elim = eliminate_pure_literals(phi);
  if (elim.result == phi) return {};
  return {std::move(elim.result)};
}

Assignment lift_pure_literal(const Formula& phi, const Assignment& alpha) {
  const auto elim = eliminate_pure_literals(phi);
  // Pure literals are distinct and never complementary, so with_all cannot throw.
  return alpha.with_all(elim.eliminated);
}

std::vector<Formula> extension_moves(const Formula& phi, std::size_t pair_cap) {
  const auto vars = phi.variables();
  if (vars.empty() || pair_cap == 0) return {};
  int fresh = 1;
  for (int v : vars) {
    if (v != fresh) break;
    ++fresh;
  }
  const Literal pos = Literal::positive(fresh);
  const Literal neg = Literal::negative(fresh);
  std::vector<Formula> out;
  // Variable pairs in index order, then sign patterns ++, +-, -+, --.
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      for (int pattern = 0; pattern < 4; ++pattern) {
        if (out.size() >= pair_cap) return out;
        const Literal a = (pattern & 2) ? Literal::negative(vars[i]) : Literal::positive(vars[i]);
        const Literal b = (pattern & 1) ? Literal::negative(vars[j]) : Literal::positive(vars[j]);
        const Clause added[] = {*Clause::from_literals({a, neg}), *Clause::from_literals({b, neg}),
                                *Clause::from_literals({~a, ~b, pos})};
        out.push_back(phi.with_clauses(added));
      }
    }
  }
  return out;
}

Formula flip_variable(const Formula& phi, int var) {
  std::vector<Clause> cs;
  cs.reserve(phi.size());
  for (const auto& c : phi) {
    std::vector<Literal> lits(c.begin(), c.end());
    for (auto& l : lits)
      if (l.var() == var) l = ~l;
    cs.push_back(*Clause::from_literals(std::move(lits)));
  }
  return Formula(std::move(cs));
}

namespace {

std::vector<int> flippable_variables(const Formula& phi) {
  std::vector<int> vars;
  for (const auto& c : phi)
    if (!c.empty() && c.all_negative())
      for (Literal l : c) vars.push_back(l.var());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

}  // namespace

std::vector<Formula> flip_moves(const Formula& phi) {
  std::vector<Formula> out;
  for (int v : flippable_variables(phi)) out.push_back(flip_variable(phi, v));
  return out;
}

Assignment lift_flip(const Formula& phi, const Formula& phi2, const Assignment& alpha) {
  // Several variables may yield the same phi2; negating any of them is correct.
  for (int v : flippable_variables(phi))
    if (flip_variable(phi, v) == phi2) return alpha.with_negated(v);
  throw std::invalid_argument("lift_flip: phi2 is not a flip move of phi");
}

UnitPropagation propagate_units(const Formula& phi) {
  UnitPropagation out{phi, {}};
  for (;;) {
    if (out.result.contains_empty_clause()) return out;
    const auto cs = out.result.clauses();
    auto unit = std::find_if(cs.begin(), cs.end(), [](const Clause& c) { return c.size() == 1; });
    if (unit == cs.end()) return out;
    const Literal l = unit->literals().front();
    std::vector<Clause> next;
    for (const auto& c : cs) {
      if (c.contains(l)) continue;
      if (c.contains(~l)) {
        std::vector<Literal> rest;
        for (Literal x : c)
          if (x != ~l) rest.push_back(x);
        next.push_back(*Clause::from_literals(std::move(rest)));
      } else {
        next.push_back(c);
      }
    }
    out.assigned.push_back(l);
    out.result = Formula(std::move(next));
  }
}

EasyOutcome<Assignment> easy_trivial(const Formula& phi) {
  if (phi.empty()) return Assignment{};
  if (phi.contains_empty_clause()) return NoSolution{};
  return NotEasy{};
}

EasyOutcome<Assignment> easy_all_positive(const Formula& phi) {
  std::vector<Literal> positives;
  for (const auto& c : phi) {
    if (c.all_negative()) return NotEasy{};
    for (Literal l : c)
      if (l.is_positive()) positives.push_back(l);
  }
  return *Assignment::from_literals(std::move(positives));
}

}  // namespace reducto::sat

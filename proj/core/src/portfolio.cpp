#include "reducto/portfolio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "reducto/dimacs.hpp"
#include "reducto/rules.hpp"
#include "reducto/subprocess.hpp"

namespace reducto::portfolio {

namespace {

constexpr std::size_t kCacheLimit = 4096;
constexpr std::size_t kResolventsPerRound = 512;

Assignment identity(const Assignment& a) { return a; }

Formula resolution_round(const Formula& phi) {
  std::set<sat::Clause> fresh;
  const auto cs = phi.clauses();
  for (std::size_t i = 0; i < cs.size() && fresh.size() < kResolventsPerRound; ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      for (sat::Literal l : cs[i])
        if (cs[j].contains(~l))
          if (auto r = sat::resolvent(cs[i], cs[j], l); r && !phi.contains(*r)) fresh.insert(std::move(*r));
  std::vector<sat::Clause> added(fresh.begin(), fresh.end());
  return phi.with_clauses(added);
}

// Reads a solver answer or a transformed formula from an external member.
std::optional<Transform> interpret_output(const Formula& phi, const std::string& out, bool identity_lift) {
  std::istringstream in(out);
  std::string line;
  std::optional<std::string> status;
  std::vector<sat::Literal> witness;
  bool has_header = false;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      status = line.substr(2);
      while (!status->empty() && std::isspace(static_cast<unsigned char>(status->back()))) status->pop_back();
    } else if (line.rfind("v ", 0) == 0) {
      std::istringstream vs(line.substr(2));
      std::string tok;
      while (vs >> tok) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
        if (v == 0) break;
        witness.emplace_back(v);
      }
    } else if (line.rfind("p cnf", 0) == 0) {
      has_header = true;
    }
  }
  if (status == "SATISFIABLE") {
    auto alpha = Assignment::from_literals(std::move(witness));
    if (!alpha || !sat::satisfies(*alpha, phi)) return std::nullopt;
    return Transform{Formula::top(), [w = *alpha](const Assignment&) { return w; }};
  }
  if (status == "UNSATISFIABLE") return Transform{Formula::bottom(), identity};
  if (status.has_value() || !has_header || !identity_lift) return std::nullopt;
  try {
    auto parsed = sat::parse_dimacs(out, sat::DimacsOptions{.strict = true});
    return Transform{std::move(parsed.formula), identity};
  } catch (const sat::DimacsError&) {
    return std::nullopt;
  }
}

}  // namespace

Member unit_propagation_member() {
  return Member{"unit-propagation",
                [](const Formula& phi) -> std::optional<Transform> {
                  auto up = sat::propagate_units(phi);
                  return Transform{std::move(up.result), [assigned = std::move(up.assigned)](const Assignment& a) {
                                     return a.with_all(assigned);
                                   }};
                },
                std::nullopt};
}

Member pure_literal_member() {
  return Member{"pure-literal",
                [](const Formula& phi) -> std::optional<Transform> {
                  auto elim = sat::eliminate_pure_literals(phi);
                  return Transform{std::move(elim.result), [pure = std::move(elim.eliminated)](const Assignment& a) {
                                     return a.with_all(pure);
                                   }};
                },
                std::nullopt};
}

Member bounded_resolution_member(int rounds) {
  if (rounds < 0) throw std::invalid_argument("bounded resolution needs a non-negative round count");
  return Member{"bounded-resolution",
                [rounds](const Formula& phi) -> std::optional<Transform> {
                  Formula current = phi;
                  for (int k = 0; k < rounds; ++k) {
                    current = resolution_round(current);
                    if (auto reduced = sat::subsumption_move(current); !reduced.empty()) current = reduced.front();
                  }
                  return Transform{std::move(current), identity};
                },
                std::nullopt};
}

Member external_member(std::string id, ExternalCommand command) {
  if (command.argv.empty()) throw std::invalid_argument("external member needs a command");
  return Member{std::move(id),
                [command](const Formula& phi) -> std::optional<Transform> {
                  const auto run = run_process(command.argv, sat::to_dimacs(phi), command.timeout);
                  if (!run.ok()) return std::nullopt;
                  if (run.exit_code != 0 && run.exit_code != 10 && run.exit_code != 20) return std::nullopt;
                  return interpret_output(phi, run.out, command.identity_lift);
                },
                command};
}

Portfolio::Portfolio(std::vector<Member> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("portfolio needs at least one member");
  std::unordered_set<std::string> ids;
  for (const auto& m : members_) {
    if (!m.transform) throw std::invalid_argument("portfolio member '" + m.id + "' has no transform");
    if (!ids.insert(m.id).second) throw std::invalid_argument("duplicate portfolio member '" + m.id + "'");
  }
}

std::shared_ptr<const Portfolio::Outputs> Portfolio::run(const Formula& phi) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(phi); it != cache_.end()) return it->second;
  }
  // Members run sequentially; the result order is fixed by member order.
  auto outputs = std::make_shared<Outputs>();
  std::vector<std::string> failed;
  for (const auto& m : members_) {
    std::optional<Transform> t;
    try {
      t = m.transform(phi);
    } catch (const std::exception&) {
      t.reset();
    }
    if (!t) failed.push_back(m.id);
    outputs->push_back(std::move(t));
  }
  std::lock_guard lock(mutex_);
  for (const auto& id : failed) ++failures_[id];
  if (cache_.size() >= kCacheLimit) cache_.clear();
  cache_.emplace(phi, outputs);
  return outputs;
}

std::vector<PortfolioMove> Portfolio::moves(const Formula& phi) const {
  const auto outputs = run(phi);
  std::vector<PortfolioMove> out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto& t = (*outputs)[i];
    if (!t || t->formula == phi) continue;
    const bool seen = std::any_of(out.begin(), out.end(), [&](const PortfolioMove& m) { return m.formula == t->formula; });
    if (!seen) out.push_back(PortfolioMove{t->formula, members_[i].id});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.formula < b.formula; });
  return out;
}

Assignment Portfolio::lift(const Formula& phi, const Formula& phi2, const Assignment& alpha) const {
  const auto outputs = run(phi);
  for (const auto& t : *outputs)
    if (t && t->formula == phi2) return t->lift(alpha);
  throw std::invalid_argument("portfolio lift: no member produced the given formula");
}

std::map<std::string, std::size_t> Portfolio::failures() const {
  std::lock_guard lock(mutex_);
  return failures_;
}

std::vector<PortfolioMove> portfolio_moves(const Portfolio& p, const Formula& phi) { return p.moves(phi); }

std::vector<Member> builtin_member_list(int resolution_rounds) {
  return {unit_propagation_member(), pure_literal_member(), bounded_resolution_member(resolution_rounds)};
}

Portfolio builtin_members(int resolution_rounds) { return Portfolio(builtin_member_list(resolution_rounds)); }

SelfReduction<Formula, Assignment> portfolio_reduction(std::shared_ptr<const Portfolio> p) {
  return SelfReduction<Formula, Assignment>{
      "portfolio",
      [p](const Formula& phi) {
        std::vector<Formula> out;
        for (auto& m : p->moves(phi)) out.push_back(std::move(m.formula));
        return out;
      },
      [p](const Formula& phi, const Formula& phi2, const Assignment& a) { return p->lift(phi, phi2, a); }};
}

EasyOutcome<Assignment> easy_trivial_or_all_positive(const Formula& phi) {
  auto outcome = sat::easy_trivial(phi);
  if (is_easy(outcome)) return outcome;
  return sat::easy_all_positive(phi);
}

Setup<Formula, Assignment> portfolio_setup(std::shared_ptr<const Portfolio> p) {
  return Setup<Formula, Assignment>("portfolio", easy_trivial_or_all_positive, {portfolio_reduction(std::move(p))},
                                    [](const Assignment& a, const Formula& phi) { return sat::satisfies(a, phi); });
}

}  // namespace reducto::portfolio

#include "reducto/cnf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace reducto::sat {

namespace {

// Sorts, dedups and rejects complementary pairs. Adjacent after sorting
// since the order groups literals by variable.
bool normalize(std::vector<Literal>& lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i)
    if (lits[i].var() == lits[i - 1].var()) return false;
  return true;
}

std::vector<Literal> from_dimacs(std::initializer_list<int> ints) {
  std::vector<Literal> out;
  out.reserve(ints.size());
  for (int v : ints) out.emplace_back(v);
  return out;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer folded into a running hash
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

}  // namespace

Literal::Literal(int dimacs) : code_(dimacs) {
  if (dimacs == 0) throw std::invalid_argument("literal 0 is not a variable");
}

Clause::Clause(std::initializer_list<int> dimacs) {
  auto lits = from_dimacs(dimacs);
  if (!normalize(lits)) throw std::invalid_argument("clause holds a complementary pair");
  lits_ = std::move(lits);
}

std::optional<Clause> Clause::from_literals(std::vector<Literal> literals) {
  if (!normalize(literals)) return std::nullopt;
  return Clause(std::move(literals));
}

bool Clause::contains(Literal l) const noexcept { return std::binary_search(lits_.begin(), lits_.end(), l); }

bool Clause::all_negative() const noexcept {
  return std::none_of(lits_.begin(), lits_.end(), [](Literal l) { return l.is_positive(); });
}

bool Clause::subset_of(const Clause& other) const noexcept {
  return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(), lits_.end());
}

Formula::Formula(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
  std::sort(clauses_.begin(), clauses_.end());
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
  hash_ = compute_hash();
}

Formula::Formula(std::initializer_list<std::initializer_list<int>> clauses) {
  std::vector<Clause> cs;
  cs.reserve(clauses.size());
  for (const auto& c : clauses) cs.emplace_back(c);
  *this = Formula(std::move(cs));
}

bool Formula::contains(const Clause& c) const noexcept {
  return std::binary_search(clauses_.begin(), clauses_.end(), c);
}

bool Formula::has_literal(Literal l) const noexcept {
  return std::any_of(clauses_.begin(), clauses_.end(), [&](const Clause& c) { return c.contains(l); });
}

std::vector<int> Formula::variables() const {
  std::vector<int> vars;
  for (const auto& c : clauses_)
    for (Literal l : c) vars.push_back(l.var());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

int Formula::max_variable() const noexcept {
  int m = 0;
  for (const auto& c : clauses_)
    if (!c.empty()) m = std::max(m, c.literals().back().var());
  return m;
}

Formula Formula::with_clause(Clause c) const {
  if (contains(c)) return *this;
  auto cs = clauses_;
  cs.insert(std::upper_bound(cs.begin(), cs.end(), c), std::move(c));
  Formula f;
  f.clauses_ = std::move(cs);
  f.hash_ = f.compute_hash();
  return f;
}

Formula Formula::with_clauses(std::span<const Clause> extra) const {
  auto cs = clauses_;
  cs.insert(cs.end(), extra.begin(), extra.end());
  return Formula(std::move(cs));
}

std::uint64_t Formula::compute_hash() const noexcept {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (const auto& c : clauses_) {
    for (Literal l : c) h = mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(l.dimacs())));
    h = mix(h, 0);
  }
  return h;
}

Assignment::Assignment(std::initializer_list<int> dimacs) {
  auto lits = from_dimacs(dimacs);
  if (!normalize(lits)) throw std::invalid_argument("assignment holds a complementary pair");
  lits_ = std::move(lits);
}

std::optional<Assignment> Assignment::from_literals(std::vector<Literal> literals) {
  if (!normalize(literals)) return std::nullopt;
  return Assignment(std::move(literals));
}

bool Assignment::contains(Literal l) const noexcept {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

std::optional<bool> Assignment::value_of(int var) const noexcept {
  if (contains(Literal::positive(var))) return true;
  if (contains(Literal::negative(var))) return false;
  return std::nullopt;
}

Assignment Assignment::with(Literal l) const { return with_all(std::span<const Literal>(&l, 1)); }

Assignment Assignment::with_all(std::span<const Literal> ls) const {
  std::vector<Literal> out;
  out.reserve(lits_.size() + ls.size());
  for (Literal a : lits_) {
    const bool overridden = std::any_of(ls.begin(), ls.end(), [&](Literal l) { return l.var() == a.var(); });
    if (!overridden) out.push_back(a);
  }
  out.insert(out.end(), ls.begin(), ls.end());
  auto result = from_literals(std::move(out));
  if (!result) throw std::invalid_argument("with_all: literals hold a complementary pair");
  return *result;
}

Assignment Assignment::with_negated(int var) const {
  auto lits = lits_;
  for (auto& l : lits)
    if (l.var() == var) l = ~l;
  std::sort(lits.begin(), lits.end());
  return Assignment(std::move(lits));
}

bool Assignment::satisfies(const Clause& c) const noexcept {
  // Both sides sorted: linear merge.
  auto a = lits_.begin();
  auto b = c.begin();
  while (a != lits_.end() && b != c.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

bool satisfies(const Assignment& alpha, const Formula& phi) noexcept {
  return std::all_of(phi.begin(), phi.end(), [&](const Clause& c) { return alpha.satisfies(c); });
}

std::string to_compact(const Formula& phi) {
  std::string out;
  for (const auto& c : phi) {
    for (Literal l : c) {
      out += std::to_string(l.dimacs());
      out += ' ';
    }
    out += "0 ";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

Formula from_compact(const std::string& text) {
  std::istringstream in(text);
  std::vector<Clause> clauses;
  std::vector<Literal> current;
  std::string token;
  bool open = false;
  while (in >> token) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("compact formula: bad token '" + token + "'");
    }
    if (used != token.size()) throw std::invalid_argument("compact formula: bad token '" + token + "'");
    if (v == 0) {
      auto c = Clause::from_literals(std::move(current));
      if (!c) throw std::invalid_argument("compact formula: complementary pair");
      clauses.push_back(std::move(*c));
      current.clear();
      open = false;
    } else {
      current.emplace_back(v);
      open = true;
    }
  }
  if (open) throw std::invalid_argument("compact formula: unterminated clause");
  return Formula(std::move(clauses));
}

std::string to_string(const Clause& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c.literals()[i].dimacs());
  }
  return out + "}";
}

std::string to_string(const Formula& phi) {
  std::string out = "{";
  bool first = true;
  for (const auto& c : phi) {
    if (!first) out += ',';
    first = false;
    out += to_string(c);
  }
  return out + "}";
}

std::string to_string(const Assignment& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a.literals()[i].dimacs());
  }
  return out + "}";
}

}  // namespace reducto::sat

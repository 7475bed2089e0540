#include "reducto/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace reducto {

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling over the largest multiple of n.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

namespace sat {

namespace {

Clause random_clause(Rng& rng, int vars, int width) {
  std::vector<int> pool(static_cast<std::size_t>(vars));
  for (int i = 0; i < vars; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  std::vector<Literal> lits;
  for (int i = 0; i < width; ++i) {
    const auto pick = static_cast<std::size_t>(i) + rng.below(pool.size() - static_cast<std::size_t>(i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[pick]);
    const int v = pool[static_cast<std::size_t>(i)];
    lits.push_back(rng.coin() ? Literal::positive(v) : Literal::negative(v));
  }
  return *Clause::from_literals(std::move(lits));
}

}  // namespace

Formula random_ksat(Rng& rng, int vars, int k, double ratio) {
  vars = std::max(vars, 1);
  const int width = std::clamp(k, 1, vars);
  const int count = std::max(1, static_cast<int>(std::lround(ratio * vars)));
  std::vector<Clause> cs;
  for (int i = 0; i < count; ++i) cs.push_back(random_clause(rng, vars, width));
  return Formula(std::move(cs));
}

Formula random_formula(Rng& rng, int max_vars, int max_clauses, int max_width) {
  const int vars = rng.between(1, std::max(1, max_vars));
  const int count = rng.between(1, std::max(1, max_clauses));
  const int widest = std::clamp(max_width, 1, vars);
  std::vector<Clause> cs;
  for (int i = 0; i < count; ++i) cs.push_back(random_clause(rng, vars, rng.between(1, widest)));
  return Formula(std::move(cs));
}

}  // namespace sat
}  // namespace reducto

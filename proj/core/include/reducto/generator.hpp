#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "reducto/cnf.hpp"

namespace reducto {

/// Seeded generator with portable bounded draws (std distributions are
/// implementation-defined, which would break cross-platform reproducibility).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool coin() { return (engine_() >> 63) != 0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

namespace sat {

/// Fixed-width random k-SAT: round(ratio * vars) clauses (at least one), each
/// over min(k, vars) distinct variables with uniform signs.
Formula random_ksat(Rng& rng, int vars, int k = 3, double ratio = 4.0);

/// Mixed-width formula: 1..max_vars variables, 1..max_clauses clauses,
/// widths uniform in 1..min(max_width, vars).
Formula random_formula(Rng& rng, int max_vars, int max_clauses, int max_width = 3);

}  // namespace sat
}  // namespace reducto

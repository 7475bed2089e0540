#include "reducto/features.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace reducto::learn {

namespace {

double squash(double count, double scale) { return count / (count + scale); }

}  // namespace

const std::array<std::string_view, kFeatureCount>& feature_names() {
  static constexpr std::array<std::string_view, kFeatureCount> names{
      "variables",          "clauses",          "mean_clause_length",    "min_clause_length",
      "max_clause_length",  "all_negative_fraction", "pure_literal_fraction", "binary_fraction",
      "positive_literal_fraction", "clause_variable_ratio"};
  return names;
}

FeatureVector features(const sat::Formula& phi) {
  FeatureVector f{};
  if (phi.empty()) return f;
  const auto vars = static_cast<double>(phi.variables().size());
  const auto clauses = static_cast<double>(phi.size());

  std::size_t total_len = 0, min_len = SIZE_MAX, max_len = 0, all_negative = 0, binary = 0, positive = 0;
  std::set<sat::Literal> present;
  for (const auto& c : phi) {
    total_len += c.size();
    min_len = std::min(min_len, c.size());
    max_len = std::max(max_len, c.size());
    if (c.all_negative()) ++all_negative;
    if (c.size() == 2) ++binary;
    for (sat::Literal l : c) {
      if (l.is_positive()) ++positive;
      present.insert(l);
    }
  }
  std::size_t pure = 0;
  for (sat::Literal l : present)
    if (!present.contains(~l)) ++pure;

  f[0] = squash(vars, 10.0);
  f[1] = squash(clauses, 20.0);
  f[2] = squash(static_cast<double>(total_len) / clauses, 3.0);
  f[3] = squash(static_cast<double>(min_len), 3.0);
  f[4] = squash(static_cast<double>(max_len), 3.0);
  f[5] = static_cast<double>(all_negative) / clauses;
  f[6] = present.empty() ? 0.0 : static_cast<double>(pure) / static_cast<double>(present.size());
  f[7] = static_cast<double>(binary) / clauses;
  f[8] = total_len == 0 ? 0.0 : static_cast<double>(positive) / static_cast<double>(total_len);
  f[9] = vars == 0.0 ? 0.0 : squash(clauses / vars, 4.0);
  return f;
}

}  // namespace reducto::learn

#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "reducto/cnf.hpp"

namespace reducto::learn {

inline constexpr std::size_t kFeatureCount = 10;
using FeatureVector = std::array<double, kFeatureCount>;

/// Names in feature order; stored in the parameter file to pin the layout.
const std::array<std::string_view, kFeatureCount>& feature_names();

/// Global formula statistics, each squashed into [0, 1]. All of them are
/// invariant under renaming variables. Counts c map to c / (c + s) with
/// s = 10 (variables), 20 (clauses), 3 (clause lengths), 4 (clause/variable
/// ratio); fractions are used as is.
FeatureVector features(const sat::Formula& phi);

}  // namespace reducto::learn

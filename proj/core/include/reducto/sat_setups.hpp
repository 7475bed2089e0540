#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reducto/cnf.hpp"
#include "reducto/rules.hpp"
#include "reducto/setup.hpp"

namespace reducto::portfolio {
class Portfolio;
}

namespace reducto::sat {

using SatSetup = Setup<Formula, Assignment>;
using SatReduction = SelfReduction<Formula, Assignment>;
using SatPath = Path<Formula>;

SatReduction resolution_reduction();
SatReduction subsumption_reduction();
SatReduction pure_literal_reduction();
SatReduction extension_reduction(std::size_t pair_cap = kDefaultExtensionPairCap);
SatReduction flip_reduction();

/// Easy set {⊤, formulas with the empty clause}; resolution, subsumption, pure literal.
SatSetup resolution_setup();
/// resolution_setup plus the extension rule.
SatSetup resolution_ext_setup(std::size_t pair_cap = kDefaultExtensionPairCap);
/// Easy set: every clause has a positive literal; the flipping rule.
SatSetup flip_setup();

class UnknownSetupError : public std::invalid_argument {
 public:
  explicit UnknownSetupError(const std::string& name) : std::invalid_argument("unknown setup '" + name + "'") {}
};

struct SetupOptions {
  std::size_t extension_pair_cap = kDefaultExtensionPairCap;
  /// Used by the "portfolio" setup; builtin members when null.
  std::shared_ptr<const portfolio::Portfolio> portfolio;
};

/// "resolution", "resolution-ext", "flip" or "portfolio".
SatSetup make_setup(std::string_view name, const SetupOptions& options = {});
const std::vector<std::string>& setup_names();

}  // namespace reducto::sat

#include "reducto/sat_setups.hpp"

#include "reducto/portfolio.hpp"

namespace reducto::sat {

namespace {

Assignment identity_lift(const Formula&, const Formula&, const Assignment& a) { return a; }

bool accepts(const Assignment& a, const Formula& phi) { return satisfies(a, phi); }

}  // namespace

SatReduction resolution_reduction() { return {"resolution", resolution_moves, identity_lift}; }

SatReduction subsumption_reduction() { return {"subsumption", subsumption_move, identity_lift}; }

SatReduction pure_literal_reduction() {
  return {"pure-literal", pure_literal_move,
          [](const Formula& phi, const Formula&, const Assignment& a) { return lift_pure_literal(phi, a); }};
}

SatReduction extension_reduction(std::size_t pair_cap) {
  return {"extension", [pair_cap](const Formula& phi) { return extension_moves(phi, pair_cap); }, identity_lift};
}

SatReduction flip_reduction() { return {"flip", flip_moves, lift_flip}; }

SatSetup resolution_setup() {
  return SatSetup("resolution", easy_trivial, {resolution_reduction(), subsumption_reduction(), pure_literal_reduction()},
                  accepts);
}

SatSetup resolution_ext_setup(std::size_t pair_cap) {
  return SatSetup("resolution-ext", easy_trivial,
                  {resolution_reduction(), subsumption_reduction(), pure_literal_reduction(), extension_reduction(pair_cap)},
                  accepts);
}

SatSetup flip_setup() { return SatSetup("flip", easy_all_positive, {flip_reduction()}, accepts); }

SatSetup make_setup(std::string_view name, const SetupOptions& options) {
  if (name == "resolution") return resolution_setup();
  if (name == "resolution-ext") return resolution_ext_setup(options.extension_pair_cap);
  if (name == "flip") return flip_setup();
  if (name == "portfolio") {
    auto p = options.portfolio ? options.portfolio
                               : std::make_shared<const portfolio::Portfolio>(portfolio::builtin_member_list());
    return portfolio::portfolio_setup(std::move(p));
  }
  throw UnknownSetupError(std::string(name));
}

const std::vector<std::string>& setup_names() {
  static const std::vector<std::string> names{"resolution", "resolution-ext", "flip", "portfolio"};
  return names;
}

}  // namespace reducto::sat

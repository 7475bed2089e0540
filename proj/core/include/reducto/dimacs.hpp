#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reducto/cnf.hpp"

namespace reducto::sat {

class DimacsError : public std::runtime_error {
 public:
  DimacsError(std::size_t line, const std::string& what)
      : std::runtime_error("dimacs line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct DimacsOptions {
  /// Turn header mismatches (clause count, variable bound) into errors.
  bool strict = false;
};

struct DimacsResult {
  Formula formula;
  int declared_variables = 0;
  std::size_t declared_clauses = 0;
  std::vector<std::string> warnings;
};

DimacsResult parse_dimacs(std::istream& in, const DimacsOptions& options = {});
DimacsResult parse_dimacs(std::string_view text, const DimacsOptions& options = {});

/// Canonical emission: `p cnf V C`, then one sorted clause per line.
/// `variables` raises V above the formula's largest index when given.
void write_dimacs(std::ostream& out, const Formula& phi, int variables = 0);
std::string to_dimacs(const Formula& phi, int variables = 0);

}  // namespace reducto::sat

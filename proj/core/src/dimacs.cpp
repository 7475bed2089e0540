#include "reducto/dimacs.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace reducto::sat {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_int(std::string_view token, T& value) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last && first != last;
}

}  // namespace

DimacsResult parse_dimacs(std::istream& in, const DimacsOptions& options) {
  DimacsResult result;
  bool have_header = false;
  std::vector<Clause> clauses;
  std::vector<Literal> current;
  std::size_t line_no = 0;
  std::size_t clause_line = 0;
  std::string line;

  auto report = [&](std::size_t at, const std::string& msg) {
    if (options.strict) throw DimacsError(at, msg);
    result.warnings.push_back("line " + std::to_string(at) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "c" || tokens[0].front() == 'c') continue;
    if (tokens[0] == "%") break;  // SATLIB trailer
    if (tokens[0] == "p") {
      if (have_header) throw DimacsError(line_no, "duplicate header");
      if (tokens.size() != 4 || tokens[1] != "cnf") throw DimacsError(line_no, "malformed header, expected 'p cnf V C'");
      long long v = 0, c = 0;
      if (!parse_int(tokens[2], v) || !parse_int(tokens[3], c) || v < 0 || c < 0 || v > 1'000'000'000)
        throw DimacsError(line_no, "malformed header counts");
      result.declared_variables = static_cast<int>(v);
      result.declared_clauses = static_cast<std::size_t>(c);
      have_header = true;
      continue;
    }
    if (!have_header) throw DimacsError(line_no, "clause data before 'p cnf' header");
    for (auto token : tokens) {
      long long v = 0;
      if (!parse_int(token, v)) throw DimacsError(line_no, "non-integer token '" + std::string(token) + "'");
      if (v > 1'000'000'000 || v < -1'000'000'000) throw DimacsError(line_no, "variable index out of range");
      if (current.empty()) clause_line = line_no;
      if (v == 0) {
        auto clause = Clause::from_literals(std::move(current));
        if (!clause) throw DimacsError(clause_line, "clause contains a complementary pair");
        clauses.push_back(std::move(*clause));
        current.clear();
        continue;
      }
      const int iv = static_cast<int>(v);
      if (std::abs(iv) > result.declared_variables)
        report(line_no, "variable " + std::to_string(std::abs(iv)) + " exceeds declared count");
      current.emplace_back(iv);
    }
  }
  if (!have_header) throw DimacsError(line_no, "missing 'p cnf' header");
  if (!current.empty()) throw DimacsError(line_no, "last clause is not 0-terminated");
  if (clauses.size() != result.declared_clauses)
    report(line_no, "header declares " + std::to_string(result.declared_clauses) + " clauses, found " +
                        std::to_string(clauses.size()));
  result.formula = Formula(std::move(clauses));
  return result;
}

DimacsResult parse_dimacs(std::string_view text, const DimacsOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in, options);
}

void write_dimacs(std::ostream& out, const Formula& phi, int variables) {
  out << "p cnf " << std::max(variables, phi.max_variable()) << ' ' << phi.size() << '\n';
  for (const auto& c : phi) {
    for (Literal l : c) out << l.dimacs() << ' ';
    out << "0\n";
  }
}

std::string to_dimacs(const Formula& phi, int variables) {
  std::ostringstream out;
  write_dimacs(out, phi, variables);
  return out.str();
}

}  // namespace reducto::sat

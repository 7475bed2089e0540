#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace reducto::sat {

/// A variable or its negation, stored as a signed DIMACS integer.
class Literal {
 public:
  constexpr Literal() = default;
  /// Throws std::invalid_argument for 0.
  explicit Literal(int dimacs);
  static constexpr Literal positive(int var) { return Literal(var, true); }
  static constexpr Literal negative(int var) { return Literal(var, false); }

  constexpr int var() const noexcept { return code_ < 0 ? -code_ : code_; }
  constexpr bool is_positive() const noexcept { return code_ > 0; }
  constexpr bool is_negative() const noexcept { return code_ < 0; }
  constexpr int dimacs() const noexcept { return code_; }
  constexpr Literal operator~() const noexcept { return Literal(var(), !is_positive()); }

  constexpr bool operator==(const Literal&) const = default;
  /// Canonical order: by variable, negative before positive.
  constexpr std::strong_ordering operator<=>(const Literal& o) const noexcept {
    if (auto c = var() <=> o.var(); c != 0) return c;
    return is_positive() <=> o.is_positive();
  }

 private:
  constexpr Literal(int var, bool positive) : code_(positive ? var : -var) {}
  int code_ = 1;
};

/// A set of literals without complementary pairs. May be empty.
class Clause {
 public:
  Clause() = default;
  /// From DIMACS integers; throws std::invalid_argument on 0 or a complementary pair.
  Clause(std::initializer_list<int> dimacs);
  /// Sorts and deduplicates; nullopt if the literals hold a complementary pair.
  static std::optional<Clause> from_literals(std::vector<Literal> literals);

  std::span<const Literal> literals() const noexcept { return lits_; }
  auto begin() const noexcept { return lits_.begin(); }
  auto end() const noexcept { return lits_.end(); }
  std::size_t size() const noexcept { return lits_.size(); }
  bool empty() const noexcept { return lits_.empty(); }
  bool contains(Literal l) const noexcept;
  /// Vacuously true for the empty clause.
  bool all_negative() const noexcept;
  bool has_positive() const noexcept { return !all_negative(); }
  /// Proper or improper subset test.
  bool subset_of(const Clause& other) const noexcept;

  bool operator==(const Clause&) const = default;
  auto operator<=>(const Clause&) const = default;

 private:
  explicit Clause(std::vector<Literal> sorted) : lits_(std::move(sorted)) {}
  std::vector<Literal> lits_;
  friend class Formula;
};

/// A set of clauses kept in canonical (sorted, unique) order.
class Formula {
 public:
  Formula() : hash_(compute_hash()) {}
  explicit Formula(std::vector<Clause> clauses);
  /// Nested DIMACS integer lists, e.g. Formula{{1, -2}, {2}}.
  Formula(std::initializer_list<std::initializer_list<int>> clauses);

  /// The empty formula (no constraints).
  static Formula top() { return Formula(); }
  /// The formula holding exactly the empty clause.
  static Formula bottom() { return Formula(std::vector<Clause>{Clause{}}); }

  std::span<const Clause> clauses() const noexcept { return clauses_; }
  auto begin() const noexcept { return clauses_.begin(); }
  auto end() const noexcept { return clauses_.end(); }
  std::size_t size() const noexcept { return clauses_.size(); }
  bool empty() const noexcept { return clauses_.empty(); }
  bool contains(const Clause& c) const noexcept;
  bool contains_empty_clause() const noexcept { return !clauses_.empty() && clauses_.front().empty(); }
  bool has_literal(Literal l) const noexcept;

  /// Sorted distinct variable indices occurring in the formula.
  std::vector<int> variables() const;
  int max_variable() const noexcept;

  Formula with_clause(Clause c) const;
  Formula with_clauses(std::span<const Clause> extra) const;

  std::uint64_t hash() const noexcept { return hash_; }

  bool operator==(const Formula& o) const noexcept { return hash_ == o.hash_ && clauses_ == o.clauses_; }
  std::strong_ordering operator<=>(const Formula& o) const { return clauses_ <=> o.clauses_; }

 private:
  std::uint64_t compute_hash() const noexcept;
  std::vector<Clause> clauses_;
  std::uint64_t hash_ = 0;
};

/// A set of literals without complementary pairs (a partial truth assignment).
class Assignment {
 public:
  Assignment() = default;
  /// Throws std::invalid_argument on 0 or a complementary pair.
  Assignment(std::initializer_list<int> dimacs);
  static std::optional<Assignment> from_literals(std::vector<Literal> literals);

  std::span<const Literal> literals() const noexcept { return lits_; }
  auto begin() const noexcept { return lits_.begin(); }
  auto end() const noexcept { return lits_.end(); }
  std::size_t size() const noexcept { return lits_.size(); }
  bool empty() const noexcept { return lits_.empty(); }
  bool contains(Literal l) const noexcept;
  /// true / false / unassigned.
  std::optional<bool> value_of(int var) const noexcept;

  /// Sets l true, replacing whatever the assignment said about l's variable.
  Assignment with(Literal l) const;
  /// Sets every literal of `ls` true, overriding their variables.
  Assignment with_all(std::span<const Literal> ls) const;
  /// Negates the literal of `var` if assigned; no-op otherwise.
  Assignment with_negated(int var) const;

  bool satisfies(const Clause& c) const noexcept;

  bool operator==(const Assignment&) const = default;
  auto operator<=>(const Assignment&) const = default;

 private:
  explicit Assignment(std::vector<Literal> sorted) : lits_(std::move(sorted)) {}
  std::vector<Literal> lits_;
};

bool satisfies(const Assignment& alpha, const Formula& phi) noexcept;

/// Compact canonical text: DIMACS integers with 0 terminators, e.g. "1 -2 0 2 0".
std::string to_compact(const Formula& phi);
/// Inverse of to_compact; throws std::invalid_argument on malformed text.
Formula from_compact(const std::string& text);
std::string to_string(const Clause& c);
std::string to_string(const Formula& phi);
std::string to_string(const Assignment& a);

}  // namespace reducto::sat

template <>
struct std::hash<reducto::sat::Formula> {
  std::size_t operator()(const reducto::sat::Formula& f) const noexcept {
    return static_cast<std::size_t>(f.hash());
  }
};

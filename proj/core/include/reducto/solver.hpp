#pragma once

// The top-level solver: search for a path, answer from its last instance,
// lift the answer back, then fold the run's quality data into the history
// and retrain the parameters.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "reducto/cnf.hpp"
#include "reducto/params.hpp"
#include "reducto/quality_store.hpp"
#include "reducto/sat_setups.hpp"
#include "reducto/search.hpp"
#include "reducto/train.hpp"

namespace reducto {

using SatAnswer = SolveAnswer<sat::Assignment>;
using SatSearchResult = SearchResult<sat::Formula, sat::Assignment>;

struct RunReport {
  SatAnswer answer = DontKnow{};
  std::size_t path_length = 0;
  EasyOutcome<sat::Assignment> terminal = NotEasy{};
  SearchStats stats;
  int version_before = learn::kParamFormatVersion;
  int version_after = learn::kParamFormatVersion;
  std::uint64_t examples_before = 0;
  std::uint64_t examples_after = 0;
  std::size_t delta_records = 0;
  /// First and last training loss when training ran.
  std::optional<double> first_loss;
  std::optional<double> last_loss;
  /// Set when an answer was downgraded to DontKnow.
  std::string diagnostic;
};

struct SolveOptions {
  bool train = true;
  learn::TrainOptions train_options;
};

struct SolveOutcome {
  SatAnswer answer;
  learn::ParamStore theta;
  RunReport report;
  SatSearchResult search;
};

/// Runs one solve. When `history` is given the run's quality data is merged
/// into it and, with options.train, the parameters are retrained on it.
SolveOutcome solve(const sat::Formula& x, const sat::SatSetup& setup, const learn::ParamStore& theta,
                   const SearchConfig& cfg, learn::QualityStore* history = nullptr, const SolveOptions& options = {});

std::string answer_name(const SatAnswer& answer);
/// Deterministic text form of a search result.
std::string canonical_text(const SatSearchResult& result);

/// Random 3-SAT instances with a variable count drawn uniformly from
/// [1, max_vars] per instance.
std::vector<sat::Formula> random_instances(std::uint64_t seed, std::size_t count, int max_vars, double ratio = 4.0);

struct SelfcheckOptions {
  std::size_t instances = 100;
  int max_vars = 6;
  std::uint64_t seed = 0;
  std::string setup = "resolution";
  double ratio = 4.0;
  SearchConfig search;
  bool train = false;
};

struct SelfcheckReport {
  std::size_t solutions = 0;
  std::size_t no_solutions = 0;
  std::size_t dont_knows = 0;
  std::size_t contradictions = 0;
  std::size_t quality_violations = 0;
  /// DIMACS text of each contradicting instance.
  std::vector<std::string> offending;
};

using SelfcheckObserver = std::function<void(const sat::Formula&, const SolveOutcome&)>;

/// Solves random instances and cross-checks every answer with the
/// brute-force oracle.
SelfcheckReport selfcheck(const SelfcheckOptions& options, const SelfcheckObserver& observer = {});

struct BenchOptions {
  std::vector<std::string> setups;
  std::size_t instances = 50;
  int max_vars = 6;
  std::uint64_t seed = 0;
  double ratio = 4.0;
  SearchConfig search;
  std::optional<learn::ParamStore> trained;
};

struct BenchRow {
  std::string setup;
  std::string theta;  // "fresh" or "trained"
  std::size_t instances = 0;
  std::size_t solved = 0;
  double solve_rate = 0.0;
  double mean_path_length = 0.0;
  double mean_evaluator_calls = 0.0;
  double wall_ms = 0.0;
};

/// One row per setup with fresh parameters, plus one with trained parameters when given.
std::vector<BenchRow> bench(const BenchOptions& options);
std::string bench_header();
std::string bench_csv(const BenchRow& row);

}  // namespace reducto

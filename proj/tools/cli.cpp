#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "reducto/dimacs.hpp"
#include "reducto/file_io.hpp"
#include "reducto/params.hpp"
#include "reducto/quality_store.hpp"
#include "reducto/solver.hpp"
#include "reducto/train.hpp"

namespace reducto::cli {

namespace fs = std::filesystem;

namespace {

struct SearchFlags {
  int budget = 16;
  int horizon = 10;
  std::uint64_t seed = 0;
  std::size_t max_nodes = 2000;

  SearchConfig config() const {
    SearchConfig cfg;
    cfg.budget = budget;
    cfg.horizon = horizon;
    cfg.seed = seed;
    cfg.max_nodes = max_nodes;
    return cfg;
  }
};

void add_search_flags(CLI::App* cmd, SearchFlags& flags) {
  cmd->add_option("--budget", flags.budget, "Samples per search node")->check(CLI::PositiveNumber);
  cmd->add_option("--horizon", flags.horizon, "Maximum path length")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", flags.seed, "Random seed");
  cmd->add_option("--max-nodes", flags.max_nodes, "Node budget per search")->check(CLI::PositiveNumber);
}

std::string default_params_path() {
  const char* env = std::getenv("REDUCTO_PARAMS");
  return env ? env : "";
}

fs::path delta_path_for(const std::string& params, const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  return fs::path(params + ".delta.jsonl");
}

learn::ParamStore load_or_init(const fs::path& path) {
  if (fs::exists(path)) return learn::load_params(path);
  return learn::init_params();
}

void print_answer(std::ostream& out, const SatAnswer& answer, int variables) {
  if (const auto* alpha = std::get_if<sat::Assignment>(&answer)) {
    out << "s SATISFIABLE\nv";
    for (int v = 1; v <= variables; ++v) out << ' ' << (alpha->value_of(v).value_or(false) ? v : -v);
    out << " 0\n";
  } else if (std::holds_alternative<NoSolution>(answer)) {
    out << "s UNSATISFIABLE\n";
  } else {
    out << "s UNKNOWN\n";
  }
}

int exit_code(const SatAnswer& answer) {
  if (std::holds_alternative<sat::Assignment>(answer)) return 10;
  if (std::holds_alternative<NoSolution>(answer)) return 20;
  return 0;
}

struct SolveFlags {
  std::string input;
  std::string setup = "resolution";
  std::string params;
  std::string delta_log;
  bool no_train = false;
  SearchFlags search;
};

int run_solve(const SolveFlags& flags, std::istream& in, std::ostream& out, std::ostream& err) {
  sat::DimacsResult parsed;
  try {
    if (flags.input == "-") {
      parsed = sat::parse_dimacs(in);
    } else {
      std::ifstream file(flags.input);
      if (!file) {
        err << "error: cannot open " << flags.input << '\n';
        return 1;
      }
      parsed = sat::parse_dimacs(file);
    }
  } catch (const sat::DimacsError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
  const auto setup = sat::make_setup(flags.setup);
  const int variables = std::max(parsed.declared_variables, parsed.formula.max_variable());

  if (flags.params.empty()) {
    const auto outcome = solve(parsed.formula, setup, learn::init_params(), flags.search.config());
    if (!outcome.report.diagnostic.empty()) err << "diagnostic: " << outcome.report.diagnostic << '\n';
    print_answer(out, outcome.answer, variables);
    return exit_code(outcome.answer);
  }

  const fs::path params = flags.params;
  const fs::path log = delta_path_for(flags.params, flags.delta_log);
  FileLock lock(params);
  const auto theta = load_or_init(params);
  learn::QualityStore history;
  if (!flags.no_train && fs::exists(log)) {
    auto read = learn::read_delta_log(log);
    if (read.corrupt > 0) err << "warning: skipped " << read.corrupt << " corrupt quality records\n";
    history = std::move(read.store);
  }
  const auto outcome = solve(parsed.formula, setup, theta, flags.search.config(), flags.no_train ? nullptr : &history,
                             SolveOptions{!flags.no_train, {}});
  if (!outcome.report.diagnostic.empty()) err << "diagnostic: " << outcome.report.diagnostic << '\n';
  if (!flags.no_train) {
    learn::append_delta_log(log, outcome.search.quality);
    learn::save_params(params, outcome.theta);
    if (outcome.report.first_loss)
      err << "trained: loss " << *outcome.report.first_loss << " -> " << *outcome.report.last_loss << '\n';
  }
  print_answer(out, outcome.answer, variables);
  return exit_code(outcome.answer);
}

struct TrainFlags {
  std::string delta_log;
  std::string params;
  int epochs = 20;
  double lr = 0.05;
  bool curriculum = false;
};

int run_train(const TrainFlags& flags, std::ostream& out, std::ostream& err) {
  if (flags.params.empty()) {
    err << "error: no parameter file (use --params or REDUCTO_PARAMS)\n";
    return 1;
  }
  if (!fs::exists(flags.delta_log)) {
    err << "error: quality log " << flags.delta_log << " does not exist\n";
    return 1;
  }
  FileLock lock(flags.params);
  const auto read = learn::read_delta_log(flags.delta_log);
  if (read.corrupt > 0) err << "warning: skipped " << read.corrupt << " corrupt quality records\n";
  if (read.store.empty()) {
    err << "error: quality log holds no usable records\n";
    return 1;
  }
  const auto theta = load_or_init(flags.params);
  const auto report = learn::train(theta, read.store, learn::TrainOptions{flags.epochs, flags.lr, flags.curriculum});
  out << "examples " << report.examples << '\n'
      << "epochs " << flags.epochs << '\n'
      << "first_loss " << report.losses.front() << '\n'
      << "last_loss " << report.losses.back() << '\n';
  if (flags.epochs > 0) learn::save_params(flags.params, report.theta);
  return 0;
}

struct SelfcheckFlags {
  std::size_t instances = 100;
  int max_vars = 6;
  std::string setup = "resolution";
  double ratio = 4.0;
  bool train = false;
  SearchFlags search;
};

int run_selfcheck(const SelfcheckFlags& flags, std::ostream& out, std::ostream& err) {
  SelfcheckOptions options;
  options.instances = flags.instances;
  options.max_vars = flags.max_vars;
  options.seed = flags.search.seed;
  options.setup = flags.setup;
  options.ratio = flags.ratio;
  options.search = flags.search.config();
  options.train = flags.train;
  const auto report = selfcheck(options);
  out << "instances " << flags.instances << '\n'
      << "solution " << report.solutions << '\n'
      << "no_solution " << report.no_solutions << '\n'
      << "dont_know " << report.dont_knows << '\n'
      << "contradictions " << report.contradictions << '\n'
      << "quality_violations " << report.quality_violations << '\n';
  for (const auto& dimacs : report.offending) err << "c contradiction\n" << dimacs;
  return report.contradictions == 0 && report.quality_violations == 0 ? 0 : 2;
}

struct BenchFlags {
  std::string setups = "resolution,flip";
  std::size_t instances = 50;
  int max_vars = 6;
  double ratio = 4.0;
  std::string params;
  SearchFlags search;
};

int run_bench(const BenchFlags& flags, std::ostream& out) {
  BenchOptions options;
  std::stringstream names(flags.setups);
  for (std::string name; std::getline(names, name, ',');)
    if (!name.empty()) options.setups.push_back(name);
  options.instances = flags.instances;
  options.max_vars = flags.max_vars;
  options.seed = flags.search.seed;
  options.ratio = flags.ratio;
  options.search = flags.search.config();
  if (!flags.params.empty()) options.trained = learn::load_params(flags.params);
  const auto rows = bench(options);
  out << bench_header() << '\n';
  for (const auto& row : rows) out << bench_csv(row) << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-reduction search solver for CNF satisfiability", "reducto"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  solve_flags.params = default_params_path();
  auto* solve_cmd = app.add_subcommand("solve", "Solve a DIMACS CNF file ('-' for standard input)");
  solve_cmd->add_option("input", solve_flags.input, "DIMACS file")->required();
  solve_cmd->add_option("--setup", solve_flags.setup, "resolution, resolution-ext, flip or portfolio");
  solve_cmd->add_option("--params", solve_flags.params, "Parameter file (default $REDUCTO_PARAMS)");
  solve_cmd->add_option("--delta-log", solve_flags.delta_log, "Quality log (default <params>.delta.jsonl)");
  solve_cmd->add_flag("--no-train", solve_flags.no_train, "Leave the parameter file untouched");
  add_search_flags(solve_cmd, solve_flags.search);

  TrainFlags train_flags;
  train_flags.params = default_params_path();
  auto* train_cmd = app.add_subcommand("train", "Train parameters on a quality log");
  train_cmd->add_option("--delta-log", train_flags.delta_log, "Quality log")->required();
  train_cmd->add_option("--params", train_flags.params, "Parameter file (default $REDUCTO_PARAMS)");
  train_cmd->add_option("--epochs", train_flags.epochs, "Epochs")->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--lr", train_flags.lr, "Learning rate")->check(CLI::PositiveNumber);
  train_cmd->add_flag("--curriculum", train_flags.curriculum, "Order examples by ascending variable count");

  SelfcheckFlags check_flags;
  auto* check_cmd = app.add_subcommand("selfcheck", "Cross-check answers on random formulas against brute force");
  check_cmd->add_option("--instances", check_flags.instances, "Number of formulas");
  check_cmd->add_option("--max-vars", check_flags.max_vars, "Largest variable count")->check(CLI::PositiveNumber);
  check_cmd->add_option("--setup", check_flags.setup, "Setup name");
  check_cmd->add_option("--ratio", check_flags.ratio, "Clause/variable ratio")->check(CLI::PositiveNumber);
  check_cmd->add_flag("--train", check_flags.train, "Train between instances");
  add_search_flags(check_cmd, check_flags.search);

  BenchFlags bench_flags;
  auto* bench_cmd = app.add_subcommand("bench", "Compare setups (and fresh vs trained parameters) as CSV");
  bench_cmd->add_option("--setups", bench_flags.setups, "Comma-separated setup names");
  bench_cmd->add_option("--instances", bench_flags.instances, "Number of formulas");
  bench_cmd->add_option("--max-vars", bench_flags.max_vars, "Largest variable count")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--ratio", bench_flags.ratio, "Clause/variable ratio")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--params", bench_flags.params, "Trained parameter file");
  add_search_flags(bench_cmd, bench_flags.search);

  std::vector<char*> argv;
  std::vector<std::string> storage(args);
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (*solve_cmd) return run_solve(solve_flags, in, out, err);
    if (*train_cmd) return run_train(train_flags, out, err);
    if (*check_cmd) return run_selfcheck(check_flags, out, err);
    if (*bench_cmd) return run_bench(bench_flags, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace reducto::cli

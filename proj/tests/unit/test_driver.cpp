#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "reducto/file_io.hpp"
#include "reducto/solver.hpp"
#include "support.hpp"

using namespace reducto;
using sat::Assignment;
using sat::Formula;

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / ("reducto-driver-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path write_cnf(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "reducto");
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve: answers by setup") {
  const auto theta = learn::init_params();
  const SearchConfig cfg;
  const auto top = solve(Formula::top(), sat::resolution_setup(), theta, cfg);
  CHECK(std::get<Assignment>(top.answer) == Assignment{});
  CHECK(top.report.path_length == 0);

  CHECK(std::holds_alternative<NoSolution>(solve(Formula{{1}, {-1}}, sat::resolution_setup(), theta, cfg).answer));
  CHECK(std::holds_alternative<DontKnow>(solve(Formula{{1}, {-1}}, sat::flip_setup(), theta, cfg).answer));

  const auto flipped = solve(Formula{{-1, -2}, {1, 2}, {-1, 2}}, sat::flip_setup(), theta, cfg);
  const auto* alpha = std::get_if<Assignment>(&flipped.answer);
  REQUIRE(alpha);
  CHECK(sat::satisfies(*alpha, Formula{{-1, -2}, {1, 2}, {-1, 2}}));
}

TEST_CASE("solve: flip setup never certifies unsatisfiability") {
  const auto setup = sat::flip_setup();
  for (const auto& phi : testing::formula_family(91, 150, 5, 10)) {
    if (testing::table_sat(phi)) continue;
    CHECK(std::holds_alternative<DontKnow>(solve(phi, setup, learn::init_params(), SearchConfig{}).answer));
  }
}

TEST_CASE("solve: history and training") {
  learn::QualityStore history;
  const auto theta = learn::init_params();
  const auto out = solve(Formula{{-1, -2}, {-2, -3}, {2, 3}}, sat::flip_setup(), theta, SearchConfig{}, &history);
  CHECK_FALSE(history.empty());
  CHECK(out.report.delta_records == out.search.quality.records());
  REQUIRE(out.report.first_loss.has_value());
  CHECK(*out.report.last_loss <= *out.report.first_loss);
  CHECK(out.report.examples_after > out.report.examples_before);
  CHECK(out.report.version_before == out.report.version_after);

  learn::QualityStore untouched;
  const auto frozen = solve(Formula{{-1}}, sat::flip_setup(), theta, SearchConfig{}, &untouched, SolveOptions{false, {}});
  CHECK(frozen.theta == theta);
  CHECK_FALSE(untouched.empty());
}

TEST_CASE("solve: a broken lift is downgraded to DontKnow") {
  sat::SatReduction bad = sat::flip_reduction();
  bad.lift = [](const Formula&, const Formula&, const Assignment& a) { return a; };
  const sat::SatSetup setup("broken", sat::easy_all_positive, {bad},
                            [](const Assignment& a, const Formula& f) { return sat::satisfies(a, f); });
  const auto out = solve(Formula{{-1}}, setup, learn::init_params(), SearchConfig{});
  CHECK(std::holds_alternative<DontKnow>(out.answer));
  CHECK(out.report.diagnostic.find("step 1") != std::string::npos);
}

TEST_CASE("selfcheck") {
  SelfcheckOptions options;
  options.instances = 0;
  const auto empty = selfcheck(options);
  CHECK(empty.contradictions == 0);
  CHECK(empty.solutions + empty.no_solutions + empty.dont_knows == 0);

  options.instances = 40;
  options.max_vars = 5;
  options.setup = "flip";
  std::size_t observed = 0;
  const auto flip = selfcheck(options, [&](const Formula&, const SolveOutcome&) { ++observed; });
  CHECK(observed == 40);
  CHECK(flip.contradictions == 0);
  CHECK(flip.no_solutions == 0);
  CHECK(flip.solutions + flip.dont_knows == 40);

  options.setup = "resolution";
  options.instances = 12;
  options.train = true;
  const auto trained = selfcheck(options);
  CHECK(trained.contradictions == 0);
  CHECK(trained.quality_violations == 0);
}

TEST_CASE("bench rows") {
  BenchOptions options;
  options.setups = {"flip", "resolution"};
  options.instances = 10;
  options.max_vars = 4;
  options.trained = learn::init_params();
  const auto rows = bench(options);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].theta == "fresh");
  CHECK(rows[1].theta == "trained");
  for (const auto& r : rows) {
    CHECK(r.solve_rate >= 0.0);
    CHECK(r.solve_rate <= 1.0);
    CHECK(r.instances == 10);
  }
  const auto again = bench(options);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].solved == again[i].solved);
    CHECK(rows[i].mean_evaluator_calls == again[i].mean_evaluator_calls);
  }
  CHECK(bench_header() == "setup,theta,instances,solved,solve_rate,mean_path_length,mean_evaluator_calls,wall_ms");
  BenchOptions unknown;
  unknown.setups = {"nope"};
  CHECK_THROWS_AS(bench(unknown), sat::UnknownSetupError);
}

TEST_CASE("cli solve") {
  const auto sat_file = write_cnf("sat.cnf", "p cnf 1 1\n1 0\n");
  const auto r1 = run({"solve", sat_file.string(), "--setup", "flip"});
  CHECK(r1.code == 10);
  CHECK(r1.out == "s SATISFIABLE\nv 1 0\n");

  const auto unsat_file = write_cnf("unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  const auto r2 = run({"solve", unsat_file.string(), "--setup", "resolution"});
  CHECK(r2.code == 20);
  CHECK(r2.out == "s UNSATISFIABLE\n");

  CHECK(run({"solve", unsat_file.string(), "--setup", "flip"}).out == "s UNKNOWN\n");
  CHECK(run({"solve", unsat_file.string(), "--setup", "flip"}).code == 0);

  const auto garbage = write_cnf("bad.cnf", "this is not dimacs\n");
  const auto r3 = run({"solve", garbage.string()});
  CHECK(r3.code == 1);
  CHECK_FALSE(r3.err.empty());
  CHECK(run({"solve", (scratch_dir() / "absent.cnf").string()}).code == 1);
  CHECK(run({"solve", sat_file.string(), "--setup", "nope"}).code == 1);
  CHECK(run({"solve"}).code == 1);
  CHECK(run({}).code == 1);

  // Unassigned declared variables are printed as false.
  const auto r4 = run({"solve", "-", "--setup", "flip"}, "p cnf 3 1\n-1 0\n");
  CHECK(r4.code == 10);
  CHECK(r4.out == "s SATISFIABLE\nv -1 -2 -3 0\n");
}

TEST_CASE("cli solve persists parameters and quality data") {
  const auto dir = scratch_dir() / "persist";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto params = (dir / "theta.json").string();
  const auto file = write_cnf("three.cnf", "p cnf 3 3\n-1 -2 0\n-2 -3 0\n2 3 0\n");

  const auto frozen = run({"solve", file.string(), "--setup", "flip", "--params", params, "--no-train"});
  CHECK(frozen.code == 10);
  CHECK_FALSE(fs::exists(params));

  const auto first = run({"solve", file.string(), "--setup", "flip", "--params", params});
  CHECK(first.code == 10);
  REQUIRE(fs::exists(params));
  REQUIRE(fs::exists(params + ".delta.jsonl"));
  const auto theta = learn::load_params(params);
  CHECK(theta.training_stats.examples_seen > 0);

  const auto custom_log = (dir / "custom.jsonl").string();
  CHECK(run({"solve", file.string(), "--setup", "flip", "--params", params, "--delta-log", custom_log}).code == 10);
  CHECK(fs::exists(custom_log));
  CHECK(learn::load_params(params).training_stats.examples_seen > theta.training_stats.examples_seen);

  ::setenv("REDUCTO_PARAMS", (dir / "env.json").c_str(), 1);
  CHECK(run({"solve", file.string(), "--setup", "flip"}).code == 10);
  ::unsetenv("REDUCTO_PARAMS");
  CHECK(fs::exists(dir / "env.json"));
}

TEST_CASE("cli output is deterministic") {
  const auto file = write_cnf("det.cnf", "p cnf 4 5\n-1 -2 0\n-3 -4 0\n1 3 0\n2 -4 0\n-1 4 0\n");
  for (const auto* setup : {"resolution", "resolution-ext", "flip", "portfolio"}) {
    const auto a = run({"solve", file.string(), "--setup", setup, "--seed", "5"});
    const auto b = run({"solve", file.string(), "--setup", setup, "--seed", "5"});
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
}

TEST_CASE("cli train") {
  const auto dir = scratch_dir() / "train";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto params = (dir / "theta.json").string();
  const auto log = (dir / "delta.jsonl").string();
  const auto file = write_cnf("train.cnf", "p cnf 4 4\n-1 -2 0\n-3 -4 0\n1 3 0\n-1 -3 0\n");
  REQUIRE(run({"solve", file.string(), "--setup", "flip", "--params", params, "--delta-log", log, "--no-train"}).code == 10);
  CHECK_FALSE(fs::exists(log));
  REQUIRE(run({"solve", file.string(), "--setup", "flip", "--params", params, "--delta-log", log}).code == 10);

  const auto before = read_file(params);
  const auto zero = run({"train", "--delta-log", log, "--params", params, "--epochs", "0"});
  CHECK(zero.code == 0);
  CHECK(read_file(params) == before);

  const auto trained = run({"train", "--delta-log", log, "--params", params, "--curriculum"});
  CHECK(trained.code == 0);
  std::istringstream lines(trained.out);
  std::string key;
  double first = 0.0, last = 0.0;
  while (lines >> key) {
    if (key == "first_loss") lines >> first;
    else if (key == "last_loss") lines >> last;
    else lines.ignore(256, '\n');
  }
  CHECK(last <= first);

  CHECK(run({"train", "--delta-log", (dir / "missing.jsonl").string(), "--params", params}).code == 1);
  std::ofstream(dir / "empty.jsonl").flush();
  CHECK(run({"train", "--delta-log", (dir / "empty.jsonl").string(), "--params", params}).code == 1);
}

TEST_CASE("cli selfcheck and bench") {
  const auto check = run({"selfcheck", "--instances", "30", "--max-vars", "5", "--seed", "3", "--setup", "flip"});
  CHECK(check.code == 0);
  CHECK(check.out.find("contradictions 0") != std::string::npos);
  CHECK(check.out.find("no_solution 0") != std::string::npos);
  CHECK(run({"selfcheck", "--instances", "0"}).code == 0);

  const auto bench1 = run({"bench", "--setups", "flip,resolution", "--instances", "5", "--max-vars", "4", "--seed", "2"});
  CHECK(bench1.code == 0);
  std::istringstream rows(bench1.out);
  std::string header;
  std::getline(rows, header);
  CHECK(header == bench_header());
  int count = 0;
  for (std::string row; std::getline(rows, row);) ++count;
  CHECK(count == 2);
  CHECK(run({"bench", "--setups", "flip,nope"}).code == 1);
}

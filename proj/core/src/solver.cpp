#include "reducto/solver.hpp"

#include <chrono>
#include <cstdio>

#include "reducto/dimacs.hpp"
#include "reducto/generator.hpp"
#include "reducto/oracle.hpp"

namespace reducto {

using sat::Assignment;
using sat::Formula;

SolveOutcome solve(const Formula& x, const sat::SatSetup& setup, const learn::ParamStore& theta,
                   const SearchConfig& cfg, learn::QualityStore* history, const SolveOptions& options) {
  const learn::LinearEvaluator evaluator(theta);
  SolveOutcome out{DontKnow{}, theta, {}, ams_search(x, setup, evaluator, cfg)};
  auto& report = out.report;
  const auto& result = out.search;
  report.path_length = result.path.length();
  report.terminal = result.terminal;
  report.stats = result.stats;
  report.version_before = theta.version;
  report.examples_before = theta.training_stats.examples_seen;
  report.delta_records = result.quality.records();

  if (std::holds_alternative<NoSolution>(result.terminal)) {
    if (verify_path(setup, result.path))
      out.answer = NoSolution{};
    else
      report.diagnostic = "search path failed verification";
  } else if (const auto* y = std::get_if<Assignment>(&result.terminal)) {
    try {
      auto alpha = lift_solution(setup, result.path, *y);
      if (sat::satisfies(alpha, x))
        out.answer = std::move(alpha);
      else
        report.diagnostic = "lifted assignment does not satisfy the input";
    } catch (const LiftIntegrityError& e) {
      report.diagnostic = e.what();
    } catch (const std::invalid_argument& e) {
      report.diagnostic = e.what();
    }
  }
  report.answer = out.answer;

  if (history) {
    learn::merge_quality(*history, result.quality);
    if (options.train) {
      auto trained = learn::train(theta, *history, options.train_options);
      report.first_loss = trained.losses.front();
      report.last_loss = trained.losses.back();
      out.theta = std::move(trained.theta);
    }
  }
  report.version_after = out.theta.version;
  report.examples_after = out.theta.training_stats.examples_seen;
  return out;
}

std::string answer_name(const SatAnswer& answer) {
  if (std::holds_alternative<Assignment>(answer)) return "solution";
  if (std::holds_alternative<NoSolution>(answer)) return "no-solution";
  return "dont-know";
}

std::string canonical_text(const SatSearchResult& result) {
  return reducto::canonical_text(
      result, [](const Formula& f) { return "[" + sat::to_compact(f) + "]"; },
      [](const Assignment& a) { return sat::to_string(a); });
}

std::vector<Formula> random_instances(std::uint64_t seed, std::size_t count, int max_vars, double ratio) {
  Rng rng(seed);
  std::vector<Formula> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int vars = rng.between(1, std::max(1, max_vars));
    out.push_back(sat::random_ksat(rng, vars, 3, ratio));
  }
  return out;
}

SelfcheckReport selfcheck(const SelfcheckOptions& options, const SelfcheckObserver& observer) {
  const auto setup = sat::make_setup(options.setup);
  auto theta = learn::init_params();
  learn::QualityStore history;
  SelfcheckReport report;
  std::uint64_t index = 0;
  for (const auto& phi : random_instances(options.seed, options.instances, options.max_vars, options.ratio)) {
    auto cfg = options.search;
    cfg.seed = options.search.seed + index++;
    auto outcome = solve(phi, setup, theta, cfg, options.train ? &history : nullptr, SolveOptions{options.train, {}});
    report.quality_violations += quality_violations(setup, outcome.search.quality).size();
    const bool sat = sat::oracle_sat(phi);
    bool contradiction = false;
    if (const auto* alpha = std::get_if<Assignment>(&outcome.answer)) {
      ++report.solutions;
      contradiction = !sat || !sat::satisfies(*alpha, phi);
    } else if (std::holds_alternative<NoSolution>(outcome.answer)) {
      ++report.no_solutions;
      contradiction = sat;
    } else {
      ++report.dont_knows;
    }
    if (contradiction) {
      ++report.contradictions;
      report.offending.push_back(sat::to_dimacs(phi));
    }
    if (observer) observer(phi, outcome);
    if (options.train) theta = std::move(outcome.theta);
  }
  return report;
}

std::vector<BenchRow> bench(const BenchOptions& options) {
  std::vector<sat::SatSetup> setups;
  for (const auto& name : options.setups) setups.push_back(sat::make_setup(name));
  const auto instances = random_instances(options.seed, options.instances, options.max_vars, options.ratio);

  std::vector<std::pair<std::string, learn::ParamStore>> thetas{{"fresh", learn::init_params()}};
  if (options.trained) thetas.emplace_back("trained", *options.trained);

  std::vector<BenchRow> rows;
  for (const auto& setup : setups) {
    for (const auto& [label, theta] : thetas) {
      BenchRow row{setup.name(), label, instances.size()};
      const auto started = std::chrono::steady_clock::now();
      double length = 0.0;
      double calls = 0.0;
      std::uint64_t index = 0;
      for (const auto& phi : instances) {
        auto cfg = options.search;
        cfg.seed = options.search.seed + index++;
        const auto outcome = solve(phi, setup, theta, cfg, nullptr, SolveOptions{false, {}});
        if (!std::holds_alternative<DontKnow>(outcome.answer)) ++row.solved;
        length += static_cast<double>(outcome.report.path_length);
        calls += static_cast<double>(outcome.report.stats.evaluator_calls);
      }
      row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
      if (!instances.empty()) {
        const double n = static_cast<double>(instances.size());
        row.solve_rate = static_cast<double>(row.solved) / n;
        row.mean_path_length = length / n;
        row.mean_evaluator_calls = calls / n;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string bench_header() { return "setup,theta,instances,solved,solve_rate,mean_path_length,mean_evaluator_calls,wall_ms"; }

std::string bench_csv(const BenchRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%s,%zu,%zu,%.4f,%.4f,%.2f,%.1f", row.setup.c_str(), row.theta.c_str(),
                row.instances, row.solved, row.solve_rate, row.mean_path_length, row.mean_evaluator_calls, row.wall_ms);
  return buf;
}

}  // namespace reducto

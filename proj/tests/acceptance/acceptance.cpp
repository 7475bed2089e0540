// Acceptance checks. Each criterion prints one line:
//   criterion <n> <PASS|FAIL|FINDING> <summary>
// Usage: acceptance [c1 c2 ...]   (no arguments runs everything)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "reducto/portfolio.hpp"
#include "reducto/sat_setups.hpp"
#include "reducto/search.hpp"
#include "reducto/solver.hpp"
#include "support.hpp"

using namespace reducto;
using sat::Assignment;
using sat::Formula;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
  enum Kind { pass, fail, finding } kind = pass;
  std::string summary;
};

const char* label(Verdict::Kind k) {
  switch (k) {
    case Verdict::pass:
      return "PASS";
    case Verdict::fail:
      return "FAIL";
    default:
      return "FINDING";
  }
}

// Rules checked one at a time: (id, moves, lift).
struct Rule {
  std::string id;
  std::function<std::vector<Formula>(const Formula&)> moves;
  std::function<Assignment(const Formula&, const Formula&, const Assignment&)> lift;
};

std::vector<Rule> contract_rules() {
  std::vector<Rule> rules;
  for (const auto& r : {sat::resolution_reduction(), sat::subsumption_reduction(), sat::pure_literal_reduction(),
                        sat::extension_reduction(), sat::flip_reduction()})
    rules.push_back({r.id, r.moves, r.lift});
  for (auto& m : portfolio::builtin_member_list()) {
    auto p = std::make_shared<const portfolio::Portfolio>(std::vector<portfolio::Member>{m});
    rules.push_back({"portfolio:" + m.id,
                     [p](const Formula& f) {
                       std::vector<Formula> out;
                       for (auto& mv : p->moves(f)) out.push_back(mv.formula);
                       return out;
                     },
                     [p](const Formula& f, const Formula& g, const Assignment& a) { return p->lift(f, g, a); }});
  }
  return rules;
}

struct ContractCount {
  std::size_t moves = 0;
  std::size_t lifts = 0;
  std::size_t forward = 0;
  std::size_t backward = 0;
};

// Forward solvability and lifting of every model of every move.
ContractCount check_contract(const Rule& rule, const std::vector<Formula>& family) {
  ContractCount c;
  for (const auto& phi : family) {
    const bool sat = testing::table_sat(phi);
    for (const auto& next : rule.moves(phi)) {
      if (next == phi) continue;
      ++c.moves;
      const auto models = testing::all_models(next);
      if (sat && models.empty()) ++c.forward;
      for (const auto& y : models) {
        ++c.lifts;
        if (!sat::satisfies(rule.lift(phi, next, y), phi)) ++c.backward;
      }
    }
  }
  return c;
}

Verdict criterion1() {
  const auto started = Clock::now();
  const auto family = testing::formula_family(1001, 500, 8, 20);
  std::ostringstream detail;
  std::size_t violations = 0;
  for (const auto& rule : contract_rules()) {
    const auto c = check_contract(rule, family);
    violations += c.forward + c.backward;
    detail << ' ' << rule.id << "=" << c.moves << "m/" << c.lifts << "l/" << c.forward + c.backward << "v";
  }
  const double t = seconds_since(started);
  std::ostringstream s;
  s << "violations=" << violations << " runtime=" << t << "s (limit 60s);" << detail.str();
  return {violations == 0 && t < 60.0 ? Verdict::pass : Verdict::fail, s.str()};
}

// The literal one-sided reading: replace ¬v by v and leave v alone.
Rule one_sided_flip() {
  auto flip_one_sided = [](const Formula& phi, int v) {
    std::vector<sat::Clause> cs;
    for (const auto& c : phi) {
      std::vector<sat::Literal> lits;
      for (auto l : c) lits.push_back(l.var() == v ? sat::Literal::positive(v) : l);
      cs.push_back(*sat::Clause::from_literals(std::move(lits)));
    }
    return Formula(std::move(cs));
  };
  auto vars_of = [](const Formula& phi) {
    std::set<int> vs;
    for (const auto& c : phi)
      if (!c.empty() && c.all_negative())
        for (auto l : c) vs.insert(l.var());
    return vs;
  };
  return {"one-sided-flip",
          [=](const Formula& phi) {
            std::vector<Formula> out;
            for (int v : vars_of(phi)) out.push_back(flip_one_sided(phi, v));
            return out;
          },
          [=](const Formula& phi, const Formula& next, const Assignment& a) {
            for (int v : vars_of(phi))
              if (flip_one_sided(phi, v) == next) return a.with_negated(v);
            return a;
          }};
}

// All instances reachable within `depth` moves; stops at node_cap.
struct Reach {
  bool found = false;
  bool capped = false;  // depth or node cap cut the exploration short
  std::size_t nodes = 0;
};

Reach bfs(const sat::SatSetup& setup, const Formula& start, int depth, std::size_t node_cap,
          const std::function<bool(const Formula&)>& target) {
  Reach r;
  std::map<Formula, int> dist{{start, 0}};
  std::deque<Formula> queue{start};
  while (!queue.empty()) {
    const Formula cur = queue.front();
    queue.pop_front();
    if (target(cur)) {
      r.found = true;
      break;
    }
    const int d = dist[cur];
    const auto moves = enumerate_moves(setup, cur, MoveLimits{1u << 20, CapPolicy::truncate});
    if (d == depth) {
      if (!moves.empty()) r.capped = true;
      continue;
    }
    for (const auto& m : moves) {
      if (dist.contains(m.instance)) continue;
      if (dist.size() >= node_cap) {
        r.capped = true;
        break;
      }
      dist.emplace(m.instance, d + 1);
      queue.push_back(m.instance);
    }
  }
  r.nodes = dist.size();
  return r;
}

Verdict criterion2() {
  const Formula phi{{1}, {-1}};
  const auto setup = sat::flip_setup();
  const bool unsat = !testing::table_sat(phi);
  const auto reach = bfs(setup, phi, 64, 100000, [&](const Formula& f) { return is_easy(setup.easy(f)); });

  const Rule literal = one_sided_flip();
  const auto direct = check_contract(literal, {phi});
  const auto family = check_contract(literal, testing::formula_family(1001, 500, 8, 20));
  const auto swap = check_contract(contract_rules()[4], {phi});

  std::ostringstream s;
  s << "oracle(" << sat::to_string(phi) << ")=" << (unsat ? "unsat" : "sat") << " swap: reachable=" << reach.nodes
    << " easy_reached=" << reach.found << " swap_violations=" << swap.forward + swap.backward
    << "; one-sided: moves_from_phi=" << direct.moves << " lift_violations_on_phi=" << direct.backward
    << " lift_violations_on_criterion1_family=" << family.backward;
  const bool ok = unsat && !reach.found && !reach.capped && direct.backward > 0 && family.backward > 0;
  return {ok ? Verdict::pass : Verdict::fail, s.str()};
}

std::vector<Formula> small_family() { return testing::formula_family(3003, 200, 4, 6); }

Verdict criterion3() {
  const auto setup = sat::resolution_setup();
  std::size_t sat_n = 0, unsat_n = 0, misses = 0, capped = 0;
  std::vector<std::string> examples;
  for (const auto& phi : small_family()) {
    const bool sat = testing::table_sat(phi);
    (sat ? sat_n : unsat_n)++;
    const Formula goal = sat ? Formula::top() : Formula::bottom();
    const auto r = bfs(setup, phi, 8, 50000, [&](const Formula& f) { return f == goal; });
    if (r.found) continue;
    if (r.capped) {
      ++capped;
    } else {
      ++misses;
      if (examples.size() < 3) examples.push_back(sat::to_string(phi));
    }
  }
  const double capped_share = static_cast<double>(capped) / 200.0;
  std::ostringstream s;
  s << "sat=" << sat_n << " unsat=" << unsat_n << " misses=" << misses << " capped=" << capped << " ("
    << capped_share * 100 << "%, limit 5%)";
  if (!examples.empty()) {
    s << " e.g.";
    for (const auto& e : examples) s << ' ' << e;
  }
  return {misses == 0 && capped_share < 0.05 ? Verdict::pass : Verdict::fail, s.str()};
}

Verdict criterion4() {
  const auto setup = sat::flip_setup();
  std::size_t sat_n = 0, unsat_n = 0, violations = 0;
  for (const auto& phi : small_family()) {
    const int n = static_cast<int>(phi.variables().size());
    const auto easy = [&](const Formula& f) { return is_easy(setup.easy(f)); };
    if (testing::table_sat(phi)) {
      ++sat_n;
      if (!bfs(setup, phi, n, 1000000, easy).found) ++violations;
    } else {
      ++unsat_n;
      const auto r = bfs(setup, phi, 1 << 20, 1000000, easy);
      if (r.found || r.capped) ++violations;
      const auto out = solve(phi, setup, learn::init_params(), SearchConfig{});
      if (!std::holds_alternative<DontKnow>(out.answer)) ++violations;
    }
  }
  std::ostringstream s;
  s << "sat=" << sat_n << " unsat=" << unsat_n << " violations=" << violations;
  return {violations == 0 ? Verdict::pass : Verdict::fail, s.str()};
}

// Independent re-check of every distribution a search reports.
std::size_t integrity_violations(const sat::SatSetup& setup, const SatSearchResult& r) {
  std::size_t bad = 0;
  for (const auto& d : r.quality.distributions) {
    std::uint64_t sum = 0;
    for (const auto& m : d.moves) sum += m.count;
    if (sum != d.samples) ++bad;
    const auto genuine = setup.reduction(d.reduction).moves(d.instance);
    for (const auto& m : d.moves)
      if (m.count > 0 && (m.instance == d.instance || std::find(genuine.begin(), genuine.end(), m.instance) == genuine.end()))
        ++bad;
  }
  for (const auto& v : r.quality.values)
    if (!(v.value >= 0.0 && v.value <= 1.0)) ++bad;
  return bad;
}

Verdict criteria5and9(Verdict& c9) {
  std::ostringstream s5, s9;
  bool ok5 = true;
  std::size_t searches = 0, bad_quality = 0;
  double total = 0.0;
  for (const auto* name : {"resolution", "flip"}) {
    SelfcheckOptions options;
    options.instances = 500;
    options.max_vars = 8;
    options.seed = 5005;
    options.setup = name;
    const auto setup = sat::make_setup(name);
    std::size_t independent = 0;
    const auto started = Clock::now();
    const auto report = selfcheck(options, [&](const Formula& phi, const SolveOutcome& out) {
      ++searches;
      bad_quality += integrity_violations(setup, out.search);
      const bool sat = testing::table_sat(phi);
      if (const auto* a = std::get_if<Assignment>(&out.answer)) {
        if (!sat || !sat::satisfies(*a, phi)) ++independent;
      } else if (std::holds_alternative<NoSolution>(out.answer) && sat) {
        ++independent;
      }
    });
    const double t = seconds_since(started);
    total += t;
    s5 << name << ": solution=" << report.solutions << " no_solution=" << report.no_solutions
       << " dont_know=" << report.dont_knows << " contradictions=" << report.contradictions
       << " (independent recheck " << independent << ") " << t << "s; ";
    ok5 = ok5 && report.contradictions == 0 && independent == 0;
    if (std::string(name) == "flip") ok5 = ok5 && report.no_solutions == 0;
  }
  s5 << "total " << total << "s (limit 300s)";
  ok5 = ok5 && total < 300.0;
  s9 << "searches=" << searches << " violations=" << bad_quality;
  c9 = {bad_quality == 0 ? Verdict::pass : Verdict::fail, s9.str()};
  return {ok5 ? Verdict::pass : Verdict::fail, s5.str()};
}

learn::ParamStore random_theta(Rng& rng, double scale) {
  auto theta = learn::init_params();
  for (auto& w : theta.value_weights) w = scale * (2.0 * rng.unit() - 1.0);
  for (const auto* id : {"flip", "resolution", "subsumption", "pure-literal", "extension"}) {
    auto& head = theta.prior_weights[id];
    head.resize(learn::kFeatureCount + 1);
    for (auto& w : head) w = scale * (2.0 * rng.unit() - 1.0);
  }
  return theta;
}

Verdict criterion6() {
  Rng rng(6006);
  const auto theta = random_theta(rng, 1.0);
  const learn::LinearEvaluator evaluator(theta);
  const auto instances = random_instances(6006, 10, 5, 4.0);
  std::size_t mismatches = 0;
  for (const auto* name : {"resolution-ext", "flip"}) {
    const auto setup = sat::make_setup(name);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      SearchConfig cfg;
      cfg.seed = 42 + i;
      cfg.max_nodes = 400;
      const auto reference = canonical_text(ams_search(instances[i], setup, evaluator, cfg));
      for (int run = 1; run < 20; ++run)
        if (canonical_text(ams_search(instances[i], setup, evaluator, cfg)) != reference) ++mismatches;
    }
  }
  std::ostringstream s;
  s << "setups=resolution-ext,flip instances=10 runs=20 mismatches=" << mismatches;
  return {mismatches == 0 ? Verdict::pass : Verdict::fail, s.str()};
}

// Stores collected from real searches, so targets look like production data.
learn::QualityStore search_store(std::uint64_t seed) {
  Rng rng(seed);
  const auto theta = random_theta(rng, 0.5);
  const learn::LinearEvaluator evaluator(theta);
  learn::QualityStore store;
  const auto setup = sat::make_setup(seed % 2 ? "flip" : "resolution");
  for (const auto& phi : random_instances(seed, 2, 6, 3.0)) {
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.max_nodes = 200;
    learn::merge_quality(store, ams_search(phi, setup, evaluator, cfg).quality);
  }
  return store;
}

Verdict criterion7() {
  constexpr double kTolerance = 1e-4;
  constexpr double kStep = 1e-6;
  std::size_t checked = 0, gradient_bad = 0, loss_up = 0, roundtrip_bad = 0;
  double worst = 0.0;
  Rng rng(7007);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto store = search_store(7007 + i);
    const auto set = learn::training_set(store);
    auto theta = random_theta(rng, 0.5);
    learn::Gradient g;
    learn::loss_and_gradient(theta, set, g);
    auto check = [&](std::vector<double>& w, const std::vector<double>& analytic) {
      for (std::size_t k = 0; k < w.size(); ++k) {
        const double saved = w[k];
        w[k] = saved + kStep;
        const double up = learn::loss(theta, set);
        w[k] = saved - kStep;
        const double down = learn::loss(theta, set);
        w[k] = saved;
        const double numeric = (up - down) / (2 * kStep);
        const double diff = std::abs(numeric - analytic[k]);
        const double scale = std::max(std::abs(numeric), std::abs(analytic[k]));
        ++checked;
        // Both effectively zero: relative error is meaningless below the differencing noise.
        if (diff <= 1e-8) continue;
        const double rel = diff / scale;
        worst = std::max(worst, rel);
        if (rel > kTolerance) ++gradient_bad;
      }
    };
    check(theta.value_weights, g.value);
    for (auto& [id, w] : theta.prior_weights) check(w, g.prior.at(id));

    const auto report = learn::train(learn::init_params(), set);
    for (std::size_t e = 1; e < report.losses.size(); ++e)
      if (report.losses[e] > report.losses[e - 1]) ++loss_up;
    if (learn::loss(report.theta, set) > report.losses.front()) ++loss_up;

    const auto trained = report.theta;
    if (!(learn::parse_params(learn::emit_params(trained)) == trained)) ++roundtrip_bad;
    if (!(learn::parse_params(learn::emit_params(theta)) == theta)) ++roundtrip_bad;
  }
  std::ostringstream s;
  s << "stores=50 gradient_entries=" << checked << " mismatches=" << gradient_bad << " worst_rel=" << worst
    << " (tol 1e-4, step 1e-6) loss_increases=" << loss_up << " roundtrip_failures=" << roundtrip_bad;
  return {gradient_bad == 0 && loss_up == 0 && roundtrip_bad == 0 ? Verdict::pass : Verdict::fail, s.str()};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Verdict criterion8() {
  const auto started = Clock::now();
  const auto setup = sat::flip_setup();
  SearchConfig cfg;

  // 200 training instances with sizes rising from 4 to 10 variables.
  Rng rng(8008);
  std::vector<Formula> training;
  for (int i = 0; i < 200; ++i) training.push_back(sat::random_ksat(rng, 4 + (i * 7) / 200, 3, 3.0));
  auto theta = learn::init_params();
  learn::QualityStore history;
  SolveOptions options;
  options.train_options.curriculum = true;
  std::uint64_t seed = 0;
  for (const auto& phi : training) {
    cfg.seed = seed++;
    theta = solve(phi, setup, theta, cfg, &history, options).theta;
  }

  std::vector<Formula> held_out;
  Rng held(9009);
  while (held_out.size() < 100) {
    auto phi = sat::random_ksat(held, held.between(4, 10), 3, 3.0);
    if (testing::table_sat(phi)) held_out.push_back(std::move(phi));
  }
  auto calls = [&](const learn::ParamStore& t) {
    const learn::LinearEvaluator ev(t);
    std::vector<double> out;
    std::uint64_t s = 100000;
    for (const auto& phi : held_out) {
      cfg.seed = s++;
      const auto r = ams_search(phi, setup, ev, cfg);
      // Searches that never meet an easy instance count with all their calls.
      out.push_back(static_cast<double>(r.stats.evaluator_calls_to_first_solution.value_or(r.stats.evaluator_calls)));
    }
    return out;
  };
  const double fresh = median(calls(learn::init_params()));
  const double trained = median(calls(theta));
  std::ostringstream s;
  s << "median evaluator calls to first solution: fresh=" << fresh << " trained=" << trained
    << " (store records=" << history.size() << ", " << seconds_since(started) << "s)";
  return {trained <= fresh ? Verdict::pass : Verdict::finding, s.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> wanted(argv + 1, argv + argc);
  auto selected = [&](const std::string& id) { return wanted.empty() || wanted.contains(id); };
  bool failed = false;
  auto report = [&](int n, const Verdict& v) {
    std::printf("criterion %d %s %s\n", n, label(v.kind), v.summary.c_str());
    std::fflush(stdout);
    if (v.kind == Verdict::fail) failed = true;
  };
  if (selected("c1")) report(1, criterion1());
  if (selected("c2")) report(2, criterion2());
  if (selected("c3")) report(3, criterion3());
  if (selected("c4")) report(4, criterion4());
  if (selected("c5") || selected("c9")) {
    Verdict c9;
    report(5, criteria5and9(c9));
    report(9, c9);
  }
  if (selected("c6")) report(6, criterion6());
  if (selected("c7")) report(7, criterion7());
  if (selected("c8")) report(8, criterion8());
  return failed ? 1 : 0;
}

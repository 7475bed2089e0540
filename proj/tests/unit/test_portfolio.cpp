#include <doctest.h>

#include <chrono>

#include "reducto/portfolio.hpp"
#include "reducto/subprocess.hpp"
#include "support.hpp"

using namespace reducto;
using namespace reducto::portfolio;
using namespace std::chrono_literals;

namespace {

std::vector<Formula> formulas(const std::vector<PortfolioMove>& moves) {
  std::vector<Formula> out;
  for (const auto& m : moves) out.push_back(m.formula);
  return out;
}

Member shell_member(const std::string& id, const std::string& script, bool identity_lift = false,
                    std::chrono::milliseconds timeout = 2000ms) {
  return external_member(id, ExternalCommand{{"/bin/sh", "-c", script}, timeout, identity_lift});
}

}  // namespace

TEST_CASE("subprocess plumbing") {
  const auto echo = run_process({"/bin/cat"}, "hello\n", 2000ms);
  CHECK(echo.ok());
  CHECK(echo.exit_code == 0);
  CHECK(echo.out == "hello\n");

  const std::string big(1 << 20, 'x');
  CHECK(run_process({"/bin/cat"}, big, 5000ms).out == big);

  CHECK(run_process({"/bin/sh", "-c", "exit 7"}, "", 2000ms).exit_code == 7);
  CHECK(run_process({"/bin/sh", "-c", "kill -SEGV $$"}, "", 2000ms).status == ProcessResult::Status::signaled);
  CHECK(run_process({"/nonexistent/solver"}, "", 2000ms).exit_code == 127);

  const auto started = std::chrono::steady_clock::now();
  const auto slow = run_process({"/bin/sh", "-c", "sleep 10"}, "", 200ms);
  CHECK(slow.status == ProcessResult::Status::timed_out);
  CHECK(std::chrono::steady_clock::now() - started < 5s);
}

TEST_CASE("portfolio moves are deduplicated across members") {
  const Portfolio p({pure_literal_member(), unit_propagation_member()});
  const auto moves = portfolio_moves(p, Formula{{1}, {1, 2}});
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].formula == Formula::top());
  CHECK(moves[0].member == "pure-literal");
}

TEST_CASE("unit propagation member") {
  const Portfolio p({unit_propagation_member()});
  CHECK(formulas(p.moves(Formula{{1}, {-1}})) == std::vector<Formula>{Formula::bottom()});
  const Formula phi{{1}, {-1, 2}};
  REQUIRE(formulas(p.moves(phi)) == std::vector<Formula>{Formula::top()});
  CHECK(p.lift(phi, Formula::top(), Assignment{}) == Assignment{1, 2});
  CHECK(p.moves(Formula{{1, 2}}).empty());
}

TEST_CASE("pure literal and bounded resolution members") {
  const Portfolio pure({pure_literal_member()});
  CHECK(pure.moves(Formula{{1}, {-1}}).empty());
  const Portfolio res({bounded_resolution_member(1)});
  CHECK(formulas(res.moves(Formula{{1}, {-1}})) == std::vector<Formula>{Formula::bottom()});
  CHECK_THROWS_AS(bounded_resolution_member(-1), std::invalid_argument);
}

TEST_CASE("portfolio construction is validated") {
  CHECK_THROWS_AS(Portfolio({}), std::invalid_argument);
  CHECK_THROWS_AS(Portfolio({pure_literal_member(), pure_literal_member()}), std::invalid_argument);
  CHECK_THROWS_AS(Portfolio({Member{"empty", {}, std::nullopt}}), std::invalid_argument);
  const auto builtin = builtin_members();
  REQUIRE(builtin.members().size() == 3);
  CHECK(builtin.members()[0].id == "unit-propagation");
  CHECK(builtin.members()[1].id == "pure-literal");
  CHECK(builtin.members()[2].id == "bounded-resolution");
  CHECK_THROWS_AS(builtin.lift(Formula{{1}}, Formula{{2}}, Assignment{2}), std::invalid_argument);
}

TEST_CASE("property: every builtin member keeps the self-reduction contract") {
  for (const auto& member : builtin_member_list(2)) {
    const Portfolio p({member});
    for (const auto& phi : testing::formula_family(81, 300, 6, 10)) {
      const bool sat = testing::table_sat(phi);
      for (const auto& m : p.moves(phi)) {
        CHECK_MESSAGE(testing::table_sat(m.formula) == sat, member.id, " ", sat::to_string(phi));
        for (const auto& y : testing::all_models(m.formula))
          CHECK_MESSAGE(sat::satisfies(p.lift(phi, m.formula, y), phi), member.id, " ", sat::to_string(phi));
      }
    }
  }
}

TEST_CASE("external members: answers and transformed formulas") {
  const Formula phi{{1, 2}, {-1}};
  const Portfolio sat_answer({shell_member("sat", "cat >/dev/null; echo 's SATISFIABLE'; echo 'v -1 2 0'")});
  REQUIRE(formulas(sat_answer.moves(phi)) == std::vector<Formula>{Formula::top()});
  CHECK(sat_answer.lift(phi, Formula::top(), Assignment{}) == Assignment{-1, 2});

  const Portfolio unsat_answer({shell_member("unsat", "cat >/dev/null; echo 's UNSATISFIABLE'; exit 20")});
  CHECK(formulas(unsat_answer.moves(Formula{{1}, {-1}})) == std::vector<Formula>{Formula::bottom()});

  const std::string rewrite = "cat >/dev/null; printf 'p cnf 2 1\\n2 0\\n'";
  const Portfolio identity({shell_member("rewrite", rewrite, true)});
  CHECK(formulas(identity.moves(phi)) == std::vector<Formula>{Formula{{2}}});
  const Portfolio undeclared({shell_member("rewrite", rewrite, false)});
  CHECK(undeclared.moves(phi).empty());
  CHECK(undeclared.failures().at("rewrite") == 1);

  const Portfolio echo({shell_member("echo", "cat", true)});
  CHECK(echo.moves(phi).empty());
  CHECK(echo.failures().empty());
}

TEST_CASE("external member faults never abort the portfolio") {
  const Formula phi{{1}, {1, 2}};
  const Portfolio p({shell_member("crash", "kill -SEGV $$"), shell_member("slow", "sleep 10", false, 150ms),
                     shell_member("exit3", "cat >/dev/null; exit 3"), shell_member("noise", "cat >/dev/null; echo hello"),
                     shell_member("liar", "cat >/dev/null; echo 's SATISFIABLE'; echo 'v -1 0'"),
                     shell_member("badv", "cat >/dev/null; echo 's SATISFIABLE'; echo 'v 1 x 0'"),
                     external_member("missing", ExternalCommand{{"/nonexistent/solver"}, 1000ms, false}),
                     unit_propagation_member()});
  const auto moves = p.moves(phi);
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].member == "unit-propagation");
  const auto failures = p.failures();
  for (const auto* id : {"crash", "slow", "exit3", "noise", "liar", "badv", "missing"}) CHECK(failures.at(id) == 1);
  CHECK_FALSE(failures.contains("unit-propagation"));
  // Cached: no second run, no second failure.
  p.moves(phi);
  CHECK(p.failures().at("crash") == 1);
}

TEST_CASE("portfolio setup") {
  const auto setup = portfolio_setup(std::make_shared<const Portfolio>(builtin_member_list()));
  CHECK(setup.reductions().size() == 1);
  CHECK(setup.reductions()[0].id == "portfolio");
  CHECK(std::get<Assignment>(setup.easy(Formula{{1, -2}, {2}})) == Assignment{1, 2});
  CHECK(std::holds_alternative<NoSolution>(setup.easy(Formula::bottom())));
  CHECK(std::holds_alternative<NotEasy>(setup.easy(Formula{{-1}})));
}

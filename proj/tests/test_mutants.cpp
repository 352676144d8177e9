#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "duofreyd/duoidal_check.hpp"
#include "duofreyd/mutants.hpp"
#include "duofreyd/vfreyd_check.hpp"

using namespace duofreyd;

namespace {

std::string text(const LawReport& r) {
  std::ostringstream os;
  r.render_table(os);
  return os.str();
}

std::set<std::string> failing(const LawReport& r) {
  auto v = r.failing_laws();
  return {v.begin(), v.end()};
}

/// The rejection contract: the named law must fail with a concrete witness.
void expect_rejected(const LawReport& rep, const std::string& law) {
  INFO(text(rep));
  CHECK_FALSE(rep.ok());
  REQUIRE(failing(rep).count(law) == 1);
  auto w = rep.first_witness(law);
  REQUIRE(w);
  CHECK_FALSE(w->empty());
}

/// Tiny sweep budgets.  Every pinned law below is either a fixed grid
/// (par admission) or an exhaustive sweep of a few-hundred-element hom
/// carrier, so shrinking the budgets cannot turn a failure into a pass.
VFreydCheckOptions reduced() {
  VFreydCheckOptions o;
  o.elem_budget = 20'000;
  o.sample_count = 128;
  return o;
}

}  // namespace

TEST_CASE("unrestricted interchange codomain breaks naturality", "[mutants]") {
  auto v = mutant_duoidal("mutant-zeta-unrestricted");
  LawReport rep = check_duoidal_laws(*v);
  expect_rejected(rep, "duoidal/zeta-natural");
}

TEST_CASE("skewed unit comultiplication breaks the unit comonoid", "[mutants]") {
  auto v = mutant_duoidal("mutant-delta-skew");
  LawReport rep = check_duoidal_laws(*v);
  expect_rejected(rep, "duoidal/unit-comonoid-assoc");
  expect_rejected(rep, "duoidal/unit-comonoid-counit");
}

TEST_CASE("claiming par on overlapping labels is caught by admission", "[mutants]") {
  auto c = mutant_vfreyd("mutant-par-nosep");
  LawReport rep = check_vfreyd(*c, reduced());
  expect_rejected(rep, "vfreyd/par-admission");
  auto w = rep.first_witness("vfreyd/par-admission");
  CHECK(w->find("claims par on a non-separated pair") != std::string::npos);
}

TEST_CASE("composing without the store lift loses writes", "[mutants]") {
  auto c = mutant_vfreyd("mutant-seq-nolift");
  LawReport rep = check_vfreyd(*c, reduced());
  expect_rejected(rep, "vfreyd/axiom-i-right");
}

TEST_CASE("relabelling reindexed maps is caught by state preservation", "[mutants]") {
  auto c = mutant_vfreyd("mutant-hommap-relabel");
  LawReport rep = check_vfreyd(*c, reduced());
  expect_rejected(rep, "vfreyd/hom-map-state");
}

TEST_CASE("the mutant roster is consistent", "[mutants]") {
  // The rejection runs live in the dedicated cases above; here only the
  // roster itself: names round-trip and unknown names are refused.
  for (const auto& n : mutant_duoidal_names()) CHECK(mutant_duoidal(n)->name() == n);
  for (const auto& n : mutant_vfreyd_names()) CHECK(mutant_vfreyd(n)->name() == n);
  CHECK(mutant_duoidal_names().size() + mutant_vfreyd_names().size() >= 5);
  CHECK_THROWS_AS(mutant_duoidal("mutant-par-nosep"), config_error);
  CHECK_THROWS_AS(mutant_vfreyd("nonsense"), config_error);
}

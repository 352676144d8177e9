#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "duofreyd/freyd.hpp"
#include "duofreyd/resources.hpp"
#include "duofreyd/vfreyd_check.hpp"

using namespace duofreyd;

namespace {

MCat base_v() {
  MCat m;
  m.add_base("v", FinSet({"u0", "u1"}));
  return m;
}

std::vector<std::string> mor_names(const FinCat& c) {
  std::vector<std::string> out;
  for (const auto& m : c.mors) out.push_back(m.name);
  return out;
}

bool has_failure(const LawReport& rep, const std::string& law) {
  const auto fails = rep.failing_laws();
  return std::find(fails.begin(), fails.end(), law) != fails.end();
}

/// Reduced sweep sizes: the store-map instance has a 256-element carrier,
/// so the cubic sweeps switch to seeded sampling past this budget.
VFreydCheckOptions reduced_options() {
  VFreydCheckOptions opt;
  opt.elem_budget = 2'000'000;
  opt.sample_count = 8192;
  return opt;
}

}  // namespace

TEST_CASE("the shipped table probes are lawful Freyd categories", "[freyd]") {
  const std::vector<FreydCat> probes = shipped_freyd_probes();
  REQUIRE(probes.size() >= 4);
  for (const FreydCat& f : probes) {
    INFO(f.name);
    const LawReport rep = check_freyd(f);
    for (const auto& law : rep.failing_laws()) {
      INFO(law << ": " << rep.first_witness(law).value_or("<none>"));
      CHECK(rep.failures_of(law) == 0);
    }
    CHECK(rep.ok());
    CHECK(rep.total_checked() > 0);
  }
  // the intended shapes, so a silently shrunken probe cannot pass
  CHECK(probes[0].c.nmor() == 1);
  CHECK(probes[1].c.nmor() == 2);
  CHECK(probes[2].c.nmor() == 5);
  CHECK(probes[3].c.nmor() == 8);
}

TEST_CASE("whisker interleaving picks out exactly the commuting morphisms", "[freyd]") {
  SECTION("a commutative group is wholly central") {
    const FreydCat f = cyclic2_freyd();
    const auto mask = centre_mask(f.c);
    CHECK(mask == std::vector<std::uint8_t>{1, 1});
  }
  SECTION("bit writers and the flip fail centrality") {
    const FreydCat f = bitops_freyd();
    CHECK(is_central(f.c, *f.c.mor_named("ide")));
    CHECK(is_central(f.c, *f.c.mor_named("ids")));
    CHECK_FALSE(is_central(f.c, *f.c.mor_named("not")));
    CHECK_FALSE(is_central(f.c, *f.c.mor_named("set0")));
    CHECK_FALSE(is_central(f.c, *f.c.mor_named("set1")));
    const FinCat z = centre(f.c);
    CHECK(mor_names(z) == std::vector<std::string>{"ide", "ids"});
    CHECK_FALSE(z.binoidal());
    CHECK(check_fincat(z).ok());  // the centre is itself a category
  }
  SECTION("in the signed instance the centre is exactly the base image") {
    const FreydCat f = signed_bitops_freyd();
    const auto mask = centre_mask(f.c);
    std::vector<std::uint8_t> expect(f.c.nmor(), 0);
    for (std::uint32_t g : f.j) expect[g] = 1;
    CHECK(mask == expect);
  }
  SECTION("centrality needs binoidal data") {
    CHECK_THROWS_AS(is_central(centre(bitops_freyd().c), 0), config_error);
  }
}

TEST_CASE("defective tables are rejected by the right law", "[freyd]") {
  SECTION("a unitor chosen off the identity breaks the triangle") {
    FreydCat f = cyclic2_freyd();
    f.ccoh.lam[0] = *f.c.mor_named("sigma");
    const LawReport rep = check_freyd(f);
    CHECK_FALSE(rep.ok());
    CHECK(has_failure(rep, "freyd/c-coherence-triangle"));
    CHECK(has_failure(rep, "freyd/j-strict"));
    CHECK(rep.first_witness("freyd/c-coherence-triangle").has_value());
    // the coherence component itself is a fine central iso
    CHECK(rep.failures_of("freyd/c-coherence-iso") == 0);
    CHECK(rep.failures_of("freyd/c-coherence-central") == 0);
  }
  SECTION("a base morphism without a central image is refused") {
    FreydCat f = bitops_freyd();
    f.m.mors.push_back(FinMor{"not", 1, 1});
    f.m.comp.assign(3, std::vector<std::int32_t>(3, -1));
    f.m.comp[0][0] = 0;
    f.m.comp[1][1] = 1;
    f.m.comp[1][2] = 2;
    f.m.comp[2][1] = 2;
    f.m.comp[2][2] = 1;
    f.m.ltens.push_back({2, 2});
    f.m.rtens.push_back({2, 2});
    f.j.push_back(*f.c.mor_named("not"));
    const LawReport rep = check_freyd(f);
    CHECK_FALSE(rep.ok());
    CHECK(has_failure(rep, "freyd/j-central"));
    const auto w = rep.first_witness("freyd/j-central");
    REQUIRE(w.has_value());
    CHECK(w->find("not") != std::string::npos);
    // the base itself stays lawful: "not" commutes with the identities
    CHECK(rep.failures_of("freyd/m-all-central") == 0);
  }
  SECTION("shape problems are configuration errors, not law failures") {
    FreydCat f = cyclic2_freyd();
    f.j = {0};
    CHECK_THROWS_AS(check_freyd(f), config_error);
    FinCat c = cyclic2_freyd().c;
    c.comp[0].pop_back();
    CHECK_THROWS_AS(check_fincat(c), config_error);
  }
}

TEST_CASE("free enrichment distinguishes the base image and restricts par", "[freyd]") {
  for (const FreydCat& f : shipped_freyd_probes()) {
    INFO(f.name);
    const SubsetFreydCat d = free_subset_freyd(f);
    const LawReport rep = check_subset_freyd(d);
    for (const auto& law : rep.failing_laws()) {
      INFO(law << ": " << rep.first_witness(law).value_or("<none>"));
      CHECK(rep.failures_of(law) == 0);
    }
    CHECK(rep.ok());
    CHECK(subset_criterion(d).ok());
    // the distinguished mask is the j-image, no more
    std::vector<std::uint8_t> expect(f.c.nmor(), 0);
    for (std::uint32_t g : f.j) expect[g] = 1;
    CHECK(d.dist == expect);
  }
  SECTION("two undistinguished morphisms cannot be juxtaposed") {
    const SubsetFreydCat d = free_subset_freyd(bitops_freyd());
    const std::uint32_t nt = *d.c.mor_named("not"), s0 = *d.c.mor_named("set0");
    CHECK(d.par[nt][s0] == -1);
    CHECK(d.par[s0][nt] == -1);
    const std::uint32_t ids = *d.c.mor_named("ids");
    CHECK(d.par[ids][nt] >= 0);
    CHECK(d.par[nt][ids] >= 0);
  }
}

TEST_CASE("forgetting after freeing returns the original tables", "[freyd]") {
  for (const FreydCat& f : shipped_freyd_probes()) {
    INFO(f.name);
    CHECK(forget_subset_freyd(free_subset_freyd(f)) == f);
  }
}

TEST_CASE("the adjunction suite classifies the extra-distinguished instance", "[freyd]") {
  const std::vector<FreydCat> fs = shipped_freyd_probes();
  std::vector<SubsetFreydCat> ds;
  for (const FreydCat& f : fs) ds.push_back(free_subset_freyd(f));
  ds.push_back(extra_dist_subset());

  // extra_dist satisfies every structure law on its own ...
  CHECK(check_subset_freyd(extra_dist_subset()).ok());
  // ... but its distinguished subset exceeds the base image
  const LawReport crit = subset_criterion(extra_dist_subset());
  CHECK_FALSE(crit.ok());
  const auto w = crit.first_witness("adj/dist-matches-base-image");
  REQUIRE(w.has_value());
  CHECK(w->find("sigma") != std::string::npos);
  CHECK(w->find("distinguished but not a base image") != std::string::npos);

  const LawReport rep = check_adjunction(fs, ds);
  for (const auto& law : rep.failing_laws()) {
    INFO(law << ": " << rep.first_witness(law).value_or("<none>"));
    CHECK(rep.failures_of(law) == 0);
  }
  CHECK(rep.ok());
  // the equivalence was exercised from both sides
  CHECK(rep.checked_of("adj/criterion-iff-counit-iso") == ds.size());
  CHECK(rep.checked_of("adj/forget-free-identity") == fs.size());
}

TEST_CASE("a subset instance with a leaky par domain is rejected", "[freyd]") {
  SubsetFreydCat d = extra_dist_subset();
  d.dist = {1, 0};  // sigma no longer distinguished, but par still juxtaposes it
  const LawReport rep = check_subset_freyd(d);
  CHECK_FALSE(rep.ok());
  CHECK(has_failure(rep, "sfreyd/par-domain"));
  const auto w = rep.first_witness("sfreyd/par-domain");
  REQUIRE(w.has_value());
  CHECK(w->find("sigma") != std::string::npos);
}

TEST_CASE("table files round-trip and malformed files are refused", "[freyd]") {
  for (const FreydCat& f : shipped_freyd_probes()) {
    INFO(f.name);
    CHECK(freyd_from_json(freyd_to_json(f)) == f);
  }
  const FinCat plain = centre(bitops_freyd().c);
  CHECK(fincat_from_json(fincat_to_json(plain)) == plain);

  nlohmann::json j = freyd_to_json(cyclic2_freyd());
  j["m"].erase("comp");
  CHECK_THROWS_AS(freyd_from_json(j), config_error);
  nlohmann::json k = freyd_to_json(cyclic2_freyd());
  k["c"]["idm"] = {7};
  CHECK_THROWS_AS(freyd_from_json(k), config_error);
  nlohmann::json l = fincat_to_json(cyclic2_freyd().m);
  l["tens"] = {{0, 0}};
  CHECK_THROWS_AS(fincat_from_json(l), config_error);
}

TEST_CASE("store maps over a finite store form a subset-enriched instance", "[freyd]") {
  auto c = build_store_subset_vfreyd(base_v(), FinSet({"s0", "s1"}));
  const TypeObj e = TypeObj::unit(), v = TypeObj::base("v");

  // carrier sizes: all maps value(a) x S -> value(b) x S
  CHECK(c->hom_count(e, e) == 4);
  CHECK(c->hom_count(e, v) == 16);
  CHECK(c->hom_count(v, e) == 16);
  CHECK(c->hom_count(v, v) == 256);

  // distinguished elements: the store-oblivious (pure) maps, |value b|^|value a|
  const HomTable& tvv = c->hom(v, v);
  std::uint64_t dist = 0;
  for (const auto& el : tvv.elems) dist += el.state;
  CHECK(dist == 4);
  const HomTable& tee = c->hom(e, e);
  dist = 0;
  for (const auto& el : tee.elems) dist += el.state;
  CHECK(dist == 1);

  // juxtaposing two impure maps is a separation error
  const HomElem setter = [&] {
    StoreSubsetVFreyd::Mor m{e, e, {0, 0}};  // both store states to s0
    return c->wrap(std::move(m));
  }();
  REQUIRE(setter.state == 0);
  CHECK_THROWS_AS(c->par(e, e, e, e, setter, setter), separation_error);
  // but one pure side is fine
  CHECK(c->elem_eq(c->par(e, e, e, e, setter, c->idt(e)), setter));

  const LawReport rep = check_vfreyd(*c, reduced_options());
  for (const auto& law : rep.failing_laws()) {
    INFO(law << ": " << rep.first_witness(law).value_or("<none>"));
    CHECK(rep.failures_of(law) == 0);
  }
  CHECK(rep.ok());
  CHECK(rep.total_checked() > 0);

  // classification: distinguished == image of the base, on every boundary
  CHECK(check_base_image_criterion(*c, {e, v}).ok());

  // and the centre is exactly the distinguished part
  const auto mask = vfreyd_centre_mask(*c, v, v, {e, v});
  REQUIRE(mask.size() == tvv.elems.size());
  for (std::uint32_t i = 0; i < mask.size(); ++i) {
    INFO(c->elem_token(tvv.elems[i]));
    CHECK(mask[i] == (tvv.elems[i].state == 1 ? 1 : 0));
  }
}

TEST_CASE("graded pure maps are classified by the base-image criterion", "[freyd]") {
  auto plain = build_graded_vfreyd(base_v(), false);
  auto alldist = build_graded_vfreyd(base_v(), true);
  const TypeObj e = TypeObj::unit(), v = TypeObj::base("v");

  CHECK(plain->hom_count(v, v) == 8);  // two signs per value map

  for (const auto& inst : {plain, alldist}) {
    INFO(inst->name());
    const LawReport rep = check_vfreyd(*inst);
    for (const auto& law : rep.failing_laws()) {
      INFO(law << ": " << rep.first_witness(law).value_or("<none>"));
      CHECK(rep.failures_of(law) == 0);
    }
    CHECK(rep.ok());
  }

  // the sign commutes with everything, so both instances are wholly central
  const auto mask = vfreyd_centre_mask(*alldist, v, v, {e, v});
  CHECK(std::count(mask.begin(), mask.end(), 1) == 8);

  // yet only the instance distinguishing the positive maps matches the base
  CHECK(check_base_image_criterion(*plain, {e, v}).ok());
  const LawReport crit = check_base_image_criterion(*alldist, {e, v});
  CHECK_FALSE(crit.ok());
  const auto w = crit.first_witness("adj/dist-matches-base-image");
  REQUIRE(w.has_value());
  CHECK(w->find("distinguished but not a base image") != std::string::npos);

  // the comparison morphism into the wider instance is lawful ...
  const VFreydMor counit = graded_counit(plain, alldist);
  const LawReport mrep = check_vfreyd_morphism(counit, VFreydCheckOptions{});
  for (const auto& law : mrep.failing_laws()) {
    INFO(law << ": " << mrep.first_witness(law).value_or("<none>"));
    CHECK(mrep.failures_of(law) == 0);
  }
  CHECK(mrep.ok());

  // ... and there is no lawful morphism back: distinction would be lost
  const VFreydMor reverse = graded_counit(alldist, plain);
  const LawReport rrep = check_vfreyd_morphism(reverse, VFreydCheckOptions{});
  CHECK_FALSE(rrep.ok());
  CHECK(rrep.failures_of("vmor/hom-state") > 0);
}

TEST_CASE("resource centrality strictly extends the separated core", "[freyd]") {
  ResourceCtx ctx;
  ctx.add_resource("x", FinSet({"0", "1"}));
  ctx.types.add_base("v", FinSet({"u0", "u1"}));
  auto c = build_resource_vfreyd(ctx);
  const TypeObj e = TypeObj::unit(), v = TypeObj::base("v");
  const std::vector<TypeObj> probes{e, v};

  // every label-{} element is central
  const HomTable& t = c->hom(v, v);
  for (const auto& el : t.elems)
    if (ResourceVFreyd::unwrap(el).label == 0) {
      INFO(c->elem_token(el));
      CHECK(vfreyd_central(*c, v, v, el, probes));
    }

  // the store flip is not central: it does not commute with the writers
  StateMap flip;
  flip.label = 1;
  flip.a = flip.b = e;
  flip.table = {1, 0};
  CHECK_FALSE(vfreyd_central(*c, e, e, c->wrap(flip), probes));

  // but a labelled map that merely threads the store unchanged is central,
  // so the centre strictly exceeds the separated (label-{}) part
  StateMap thread;
  thread.label = 1;
  thread.a = thread.b = e;
  thread.table = {0, 1};
  CHECK(vfreyd_central(*c, e, e, c->wrap(thread), probes));

  // C(e,e) holds five maps: the unit, the threader, the flip, two writers;
  // exactly the first two are central
  const auto mask = vfreyd_centre_mask(*c, e, e, probes);
  REQUIRE(mask.size() == 5);
  CHECK(std::count(mask.begin(), mask.end(), 1) == 2);

  // the base-image criterion is a subset-flavour question only
  CHECK_THROWS_AS(check_base_image_criterion(*c, probes), config_error);
}

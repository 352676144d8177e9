#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "duofreyd/enrich.hpp"
#include "duofreyd/resources.hpp"
#include "duofreyd/vfreyd_check.hpp"

using namespace duofreyd;

namespace {

FinSet res_xy() { return FinSet({"x", "y"}); }

/// R = {x}, one 2-element base type.
ResourceCtx ctx_x() {
  ResourceCtx c;
  c.add_resource("x", FinSet({"0", "1"}));
  c.types.add_base("v", FinSet({"u0", "u1"}));
  return c;
}

/// R = {x, y}, one *singleton* base type: all the interesting content is
/// in the labels, and every hom carrier stays a few hundred elements.
ResourceCtx ctx_xy() {
  ResourceCtx c;
  c.add_resource("x", FinSet({"0", "1"}));
  c.add_resource("y", FinSet({"0", "1"}));
  c.types.add_base("w", FinSet({"k"}));
  return c;
}

/// Flip the store bit of one resource; no value input or output.
StateMap flip(const ResourceCtx& ctx, const std::string& res) {
  StateMap m;
  m.label = 1u << *ctx.resources().index_of(res);
  m.a = m.b = TypeObj::unit();
  m.table = {1, 0};
  return m;
}

/// The element of a changed hom carrier wrapping the given inner map.
HomElem find_changed(const VFreydCat& changed, const TypeObj& a, const TypeObj& b,
                     const StateMap& want) {
  for (const auto& el : changed.hom(a, b).elems)
    if (ResourceVFreyd::unwrap(std::any_cast<const HomElem&>(el.data)) == want) return el;
  FAIL("inner map not found in the changed carrier");
  return {};
}

std::uint64_t carrier_size(const ElementwiseDuoidal& v, const VObj& o) {
  std::uint64_t n = 0;
  v.for_each_elem(o, [&](const Elem&, std::uint32_t) { ++n; });
  return n;
}

std::string text(const LawReport& r) {
  std::ostringstream os;
  r.render_table(os);
  return os.str();
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Small sweep budgets: the changed instances here have carriers of a few
/// hundred elements, so even sampled sweeps stay meaningful.
VFreydCheckOptions reduced() {
  VFreydCheckOptions o;
  o.elem_budget = 20'000;
  o.sample_count = 128;
  return o;
}

}  // namespace

TEST_CASE("identity functor satisfies every double-lax law", "[enrich]") {
  for (auto v : {finset_cartesian_duoidal(), subset_duoidal(),
                 label_duoidal(pf_sep_monoid(res_xy()))}) {
    LawReport rep = check_double_lax(identity_double_lax(v));
    INFO(v->name() + "\n" + text(rep));
    CHECK(rep.ok());
  }
}

TEST_CASE("relabelling along the collapse homomorphism is double lax", "[enrich]") {
  auto f = sep_hom_functor(pf_collapse_hom(res_xy()));
  LawReport rep = check_double_lax(f);
  INFO(text(rep));
  CHECK(rep.ok());

  // The par-side multiplication embeds target-separated pairs into
  // source-separated pairs.  At labels {x}, {y} the embedding is as far
  // from surjective as possible: downstairs both maps claim the whole
  // collapsed universe, so the pair object downstairs is empty, while
  // upstairs the pair survives.
  auto src = label_duoidal(pf_sep_monoid(res_xy()));
  auto dst = label_duoidal(pf_sep_monoid(FinSet({"*"})));
  const VObj ax = src->make_leaf("ax", FinSet({"p"}), {}, {*src->monoid().index_of("{x}")});
  const VObj ay = src->make_leaf("ay", FinSet({"q"}), {}, {*src->monoid().index_of("{y}")});
  VMor mu = f.mu_par(ax, ay);
  CHECK(carrier_size(*dst, mu.src) == 0);
  CHECK(carrier_size(*dst, mu.dst) == 1);
  CHECK(carrier_size(*src, src->par_obj(ax, ay)) == 1);
}

TEST_CASE("morphisms from the par unit form a double-lax functor", "[enrich]") {
  for (auto v : {label_duoidal(pf_sep_monoid(res_xy())), subset_duoidal(),
                 finset_cartesian_duoidal()}) {
    LawReport rep = check_double_lax(forgetful_functor(v));
    INFO(v->name() + "\n" + text(rep));
    CHECK(rep.ok());
  }

  // The pairing J -> J * J underlying the par-side multiplication is
  // unambiguous: the left and right unitor inverses of the unit agree.
  auto v = label_duoidal(pf_sep_monoid(res_xy()));
  CHECK_FALSE(v->mor_neq_witness(v->par_lunit_inv(v->par_unit()),
                                 v->par_runit_inv(v->par_unit())));
}

TEST_CASE("composing double-lax functors preserves the laws", "[enrich]") {
  auto f = sep_hom_functor(pf_collapse_hom(res_xy()));
  auto g = forgetful_functor(label_duoidal(pf_sep_monoid(FinSet({"*"}))));
  auto h = compose_double_lax(f, g);
  LawReport rep = check_double_lax(h);
  INFO(text(rep));
  CHECK(rep.ok());

  // The composite object map is the pointwise composite.
  auto src = label_duoidal(pf_sep_monoid(res_xy()));
  auto probes = src->probe_objects(2);
  auto dst = finset_cartesian_duoidal();
  for (const auto& a : probes) CHECK(dst->obj_eq(h.obj_map(a), g.obj_map(f.obj_map(a))));
}

TEST_CASE("homomorphisms that do not reflect separation are rejected", "[enrich]") {
  // Everything maps to the empty label: a perfectly good monoid
  // homomorphism, but separation downstairs no longer says anything about
  // separation upstairs, so no functor can exist.
  SepHom to_unit;
  to_unit.name = "to-unit";
  to_unit.src = pf_sep_monoid(FinSet({"x"}));
  to_unit.dst = pf_sep_monoid(FinSet({"z"}));
  to_unit.map = [](const std::string&) { return std::string("{}"); };
  CHECK_THROWS_MATCHES(sep_hom_functor(to_unit), config_error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("sephom/reflects-separation")));
}

TEST_CASE("dropping the par admission from the multiplication is caught", "[enrich]") {
  auto m = sep_hom_mu_par_mutant(pf_collapse_hom(res_xy()));
  LawReport rep = check_double_lax(m);
  CHECK_FALSE(rep.ok());
  auto failing = rep.failing_laws();
  std::set<std::string> laws(failing.begin(), failing.end());
  CHECK(laws.count("dlax/zeta-square") == 1);
  CHECK(laws.count("dlax/mult-map-valid") == 1);
  auto w = rep.first_witness("dlax/zeta-square");
  REQUIRE(w);
  CHECK(w->find("typing:") != std::string::npos);
}

TEST_CASE("forgetting the resource labels keeps exactly the pure maps", "[enrich]") {
  ResourceCtx ctx = ctx_x();
  auto inner = build_resource_vfreyd(ctx);
  auto fg = forgetful_functor(inner->enrich());
  LawReport frep = check_double_lax(fg);
  INFO(text(frep));
  CHECK(frep.ok());

  auto changed = change_enrichment(fg, inner);
  const TypeObj e = TypeObj::unit(), v = TypeObj::base("v");
  for (const auto& a : {e, v})
    for (const auto& b : {e, v}) {
      // Pure maps a -> b are plain functions on values.
      const std::uint64_t expect = ipow(ctx.types.value_size(b), ctx.types.value_size(a));
      CHECK(changed->hom_count(a, b) == expect);
      for (const auto& el : changed->hom(a, b).elems) {
        CHECK(el.state == 0);
        CHECK(ResourceVFreyd::unwrap(std::any_cast<const HomElem&>(el.data)).label == 0);
      }
    }

  VFreydCheckOptions o = reduced();
  o.elem_budget = 200'000;
  o.sample_count = 512;
  LawReport rep = check_vfreyd(*changed, o);
  INFO(text(rep));
  CHECK(rep.ok());
}

TEST_CASE("collapsing resources restricts which maps may run in parallel", "[enrich]") {
  ResourceCtx ctx = ctx_xy();
  auto inner = build_resource_vfreyd(ctx);
  auto changed = change_enrichment(sep_hom_functor(pf_collapse_hom(ctx.resources())), inner);
  const TypeObj e = TypeObj::unit();

  // Upstairs the two store flips touch disjoint resources and juxtapose.
  HomElem up = inner->par(e, e, e, e, inner->wrap(flip(ctx, "x")), inner->wrap(flip(ctx, "y")));
  CHECK(ResourceVFreyd::unwrap(up).label == 3);

  // Downstairs both claim the whole collapsed universe and are refused.
  HomElem fx = find_changed(*changed, e, e, flip(ctx, "x"));
  HomElem fy = find_changed(*changed, e, e, flip(ctx, "y"));
  CHECK_THROWS_AS(changed->par(e, e, e, e, fx, fy), separation_error);

  // A pure map next to an effectful one still goes through.
  HomElem ie = find_changed(*changed, e, e, idt_res(ctx, e));
  HomElem ok = changed->par(e, e, e, e, ie, fy);
  CHECK(ok.state == 1);  // the collapsed universe {*}
  CHECK(changed->par_sep(ie.state, fy.state));
  CHECK_FALSE(changed->par_sep(fx.state, fy.state));

  // The carrier itself is untouched: relabelling keeps every map.
  const TypeObj w = TypeObj::base("w");
  CHECK(changed->hom_count(w, w) == inner->hom_count(w, w));

  LawReport rep = check_vfreyd(*changed, reduced());
  INFO(text(rep));
  CHECK(rep.ok());
}

TEST_CASE("change of enrichment is functorial in the functor", "[enrich]") {
  ResourceCtx ctx = ctx_x();
  auto inner = build_resource_vfreyd(ctx);

  // Along the identity the instance itself comes back.
  auto idf = identity_double_lax(inner->enrich());
  CHECK(change_enrichment(idf, inner).get() == inner.get());

  // Collapse-then-forget agrees with the composite functor.
  auto f = sep_hom_functor(pf_collapse_hom(ctx.resources()));
  auto g = forgetful_functor(label_duoidal(pf_sep_monoid(FinSet({"*"}))));
  auto two_step = change_enrichment(g, change_enrichment(f, inner));
  auto one_step = change_enrichment(compose_double_lax(f, g), inner);
  const TypeObj e = TypeObj::unit(), v = TypeObj::base("v");
  for (const auto& a : {e, v})
    for (const auto& b : {e, v}) {
      CHECK(two_step->hom_count(a, b) == one_step->hom_count(a, b));
      std::set<std::string> lhs, rhs;
      for (const auto& el : two_step->hom(a, b).elems) lhs.insert(two_step->elem_token(el));
      for (const auto& el : one_step->hom(a, b).elems) rhs.insert(one_step->elem_token(el));
      CHECK(lhs == rhs);
    }

  // Mismatched enriching categories are refused up front.
  auto other = label_duoidal(pf_sep_monoid(FinSet({"z"})));
  CHECK_THROWS_AS(change_enrichment(forgetful_functor(other), inner), config_error);
}

TEST_CASE("changed structure-preserving maps stay structure preserving", "[enrich]") {
  auto inner = build_resource_vfreyd(ctx_x());
  auto fg = forgetful_functor(inner->enrich());
  LawReport rep =
      check_vfreyd_morphism(change_enrichment_mor(fg, identity_vfreyd_mor(inner)), reduced());
  INFO(text(rep));
  CHECK(rep.ok());

  // Along the identity functor the morphism is returned as given.
  auto idf = identity_double_lax(inner->enrich());
  VFreydMor same = change_enrichment_mor(idf, identity_vfreyd_mor(inner));
  CHECK(same.src.get() == inner.get());
  CHECK(same.dst.get() == inner.get());
}

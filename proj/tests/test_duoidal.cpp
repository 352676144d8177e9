#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "duofreyd/duoidal.hpp"
#include "duofreyd/duoidal_check.hpp"

using namespace duofreyd;

namespace {

Elem el(std::initializer_list<std::uint32_t> xs) {
  Elem e;
  for (auto x : xs) e.push(x);
  return e;
}

/// All element tokens of an object's carrier, in canonical order.
std::vector<std::string> tokens_of(const ElementwiseDuoidal& u, const VObj& o) {
  std::vector<std::string> out;
  u.for_each_elem(o, [&](const Elem& e, std::uint32_t) { out.push_back(u.elem_token(o, e)); });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// carriers and structure maps, elementwise
// ---------------------------------------------------------------------------

TEST_CASE("cartesian instance: units, carriers, interchange shuffle", "[duoidal]") {
  auto fin = finset_cartesian_duoidal();
  CHECK(fin->carrier_size(fin->par_unit()) == 1);
  CHECK(fin->obj_eq(fin->par_unit(), fin->seq_unit()));

  auto A = fin->make_leaf("A", FinSet({"a0", "a1"}));
  auto B = fin->make_leaf("B", FinSet({"b0", "b1"}));
  SECTION("interchange on four singletons is the unique singleton map") {
    auto s = fin->make_leaf("S", FinSet({"*"}));
    auto z = fin->zeta(s, s, s, s);
    CHECK(fin->carrier_size(z.src) == 1);
    CHECK(fin->carrier_size(z.dst) == 1);
    CHECK_FALSE(fin->valid_violation(z).has_value());
  }
  SECTION("interchange swaps the middle components") {
    auto z = fin->zeta(A, B, A, B);
    Elem out;
    z.eval(el({0, 1, 1, 0}), out);
    CHECK(out == el({0, 1, 1, 0}));
    z.eval(el({0, 1, 0, 1}), out);
    CHECK(out == el({0, 0, 1, 1}));
    CHECK(fin->elem_token(z.dst, out) == "((a0,a0),(b1,b1))");
  }
  SECTION("interchange is a bijection on every probed quadruple") {
    auto probes = fin->probe_objects(2);
    for (const auto& a : probes)
      for (const auto& b : probes)
        for (const auto& c : probes)
          for (const auto& d : probes) {
            auto z = fin->zeta(a, b, c, d);
            CHECK_FALSE(injectivity_witness(*fin, z).has_value());
            CHECK_FALSE(surjectivity_witness(*fin, z).has_value());
          }
  }
}

TEST_CASE("subset instance: disjunctive carrier and distinguished part", "[duoidal]") {
  auto sub = subset_duoidal();
  // (X={a0}, A={a0,a1}) tensored with (Y={b0}, B={b0,b1})
  auto A = sub->make_leaf("A", FinSet({"a0", "a1"}), {1, 0});
  auto B = sub->make_leaf("B", FinSet({"b0", "b1"}), {1, 0});
  auto P = sub->par_obj(A, B);
  CHECK(tokens_of(*sub, P) == std::vector<std::string>{"(a0,b0)", "(a0,b1)", "(a1,b0)"});
  // distinguished part: exactly the pairs with both halves distinguished
  std::vector<std::string> dist;
  sub->for_each_elem(P, [&](const Elem& e, std::uint32_t st) {
    if (st == 1) dist.push_back(sub->elem_token(P, e));
  });
  CHECK(dist == std::vector<std::string>{"(a0,b0)"});
  // the seq tensor is the full componentwise product
  CHECK(sub->carrier_size(sub->seq_obj(A, B)) == 4);
}

TEST_CASE("subset instance: interchange injective everywhere, not surjective somewhere",
          "[duoidal]") {
  auto sub = subset_duoidal();
  auto probes = sub->probe_objects(2);
  bool found_gap = false;
  for (const auto& a : probes)
    for (const auto& b : probes)
      for (const auto& c : probes)
        for (const auto& d : probes) {
          auto z = sub->zeta(a, b, c, d);
          CHECK_FALSE(injectivity_witness(*sub, z).has_value());
          if (surjectivity_witness(*sub, z)) found_gap = true;
        }
  CHECK(found_gap);

  // Frozen witness: with all four objects = ({e0}, {e0,e1}), the target
  // element ((e0,e1),(e1,e0)) is never hit -- its left half would need the
  // first seq pair (e0,e1) to come from a distinguished-or-partner source
  // that the disjunctive domain does not contain.
  auto S = sub->make_leaf("S2m1", FinSet({"e0", "e1"}), {1, 0});
  auto z = sub->zeta(S, S, S, S);
  CHECK(sub->carrier_size(z.src) == 7);
  CHECK(sub->carrier_size(z.dst) == 9);
  auto gap = surjectivity_witness(*sub, z);
  REQUIRE(gap.has_value());
  CHECK(*gap == "((e0,e1),(e1,e0))");
}

TEST_CASE("label instance: separation restricts the par carrier", "[duoidal]") {
  auto lab = label_duoidal(pf_sep_monoid(FinSet({"x", "y"})));
  const auto& m = lab->monoid();
  auto ix = [&](const std::string& t) { return *m.index_of(t); };

  auto A = lab->make_leaf("A", FinSet({"p"}), {}, {ix("{x}")});
  auto B = lab->make_leaf("B", FinSet({"q"}), {}, {ix("{y}")});
  SECTION("disjointly labelled points tensor to one pair with merged label") {
    auto P = lab->par_obj(A, B);
    CHECK(tokens_of(*lab, P) == std::vector<std::string>{"(p,q)"});
    auto st = lab->elem_info(P, el({0, 0}));
    REQUIRE(st.has_value());
    CHECK(m.elems[*st] == "{x,y}");
  }
  SECTION("equal nonempty labels tensor to the empty carrier") {
    auto B2 = lab->make_leaf("B2", FinSet({"q"}), {}, {ix("{x}")});
    CHECK(lab->carrier_size(lab->par_obj(A, B2)) == 0);
    // ... while the seq tensor keeps the pair (labels multiply)
    auto S = lab->seq_obj(A, B2);
    CHECK(lab->carrier_size(S) == 1);
    CHECK(m.elems[*lab->elem_info(S, el({0, 0}))] == "{x}");
  }
  SECTION("the unit label tensors without loss, and the unitor removes it") {
    auto P = lab->par_obj(lab->par_unit(), A);
    CHECK(lab->carrier_size(P) == 1);
    auto lu = lab->par_lunit(A);
    CHECK_FALSE(lab->valid_violation(lu).has_value());
    CHECK_FALSE(lab->mor_neq_witness(lab->compose(lab->par_lunit_inv(A), lab->par_lunit(A)),
                                     lab->id(A))
                    .has_value());
  }
  SECTION("par carriers embed in seq carriers with the same labels") {
    for (const auto& a : lab->probe_objects(2))
      for (const auto& b : lab->probe_objects(2)) {
        auto P = lab->par_obj(a, b);
        auto S = lab->seq_obj(a, b);
        lab->for_each_elem(P, [&](const Elem& e, std::uint32_t st) {
          auto in_seq = lab->elem_info(S, e);
          REQUIRE(in_seq.has_value());
          CHECK(*in_seq == st);
        });
      }
  }
}

TEST_CASE("label instance rejects monoids that fail the separation laws", "[duoidal]") {
  SepMonoid bad = pf_sep_monoid(FinSet({"x"}));
  bad.name = "broken";
  auto base_sep = bad.sep;
  // drop unit separation on one side
  bad.sep = [base_sep](const std::string& a, const std::string& b) {
    if (a == "{}" && b == "{x}") return false;
    return base_sep(a, b);
  };
  CHECK_THROWS_AS(label_duoidal(bad), config_error);
}

TEST_CASE("morphism validity: distinction and labels must be preserved", "[duoidal]") {
  auto sub = subset_duoidal();
  auto A = sub->make_leaf("A", FinSet({"a0", "a1"}), {1, 0});
  // a0 |-> a1 drops the distinguished point
  auto bad = sub->table_mor(A, A, {el({0}), el({1})}, {el({1}), el({1})});
  auto v = sub->valid_violation(bad);
  REQUIRE(v.has_value());
  CHECK(v->find("distinguished") != std::string::npos);

  auto lab = label_duoidal(pf_sep_monoid(FinSet({"x"})));
  const auto& m = lab->monoid();
  auto L = lab->make_leaf("L", FinSet({"u", "v"}), {},
                          {*m.index_of("{}"), *m.index_of("{x}")});
  auto swap = lab->table_mor(L, L, {el({0}), el({1})}, {el({1}), el({0})});
  auto lv = lab->valid_violation(swap);
  REQUIRE(lv.has_value());
  CHECK(lv->find("label") != std::string::npos);
}

// ---------------------------------------------------------------------------
// opposite instance
// ---------------------------------------------------------------------------

TEST_CASE("opposite: tensors swap, interchange reverses, double opposite undoes",
          "[duoidal]") {
  auto sub = subset_duoidal();
  auto op = opposite_duoidal(sub);
  auto A = sub->make_leaf("A", FinSet({"a0", "a1"}), {1, 0});
  auto B = sub->make_leaf("B", FinSet({"b0"}), {1});

  CHECK(op->obj_eq(op->par_unit(), sub->seq_unit()));
  CHECK(op->obj_eq(op->seq_unit(), sub->par_unit()));
  CHECK(sub->obj_eq(op->par_obj(A, B), sub->seq_obj(A, B)));
  CHECK(op->tensors_swapped());

  SECTION("the opposite interchange is the base interchange read backwards") {
    auto oz = op->zeta(A, B, A, B);
    REQUIRE(oz.is_reversed());
    auto base = sub->zeta(A, A, B, B);  // arguments re-paired by the reversal
    CHECK_FALSE(sub->mor_neq_witness(*oz.reversed, base).has_value());
    CHECK(sub->obj_eq(oz.reversed->src, base.src));
    CHECK(sub->obj_eq(oz.reversed->dst, base.dst));
  }
  SECTION("delta and nabla trade places") {
    CHECK_FALSE(sub->mor_neq_witness(*op->delta().reversed, sub->nabla()).has_value());
    CHECK_FALSE(sub->mor_neq_witness(*op->nabla().reversed, sub->delta()).has_value());
  }
  SECTION("double opposite gives back plain morphisms, pointwise equal") {
    auto opop = opposite_duoidal(op);
    CHECK_FALSE(opop->tensors_swapped());
    auto idA = opop->id(A);
    CHECK_FALSE(idA.is_reversed());
    CHECK_FALSE(sub->mor_neq_witness(idA, sub->id(A)).has_value());
    CHECK_FALSE(
        sub->mor_neq_witness(opop->zeta(A, B, A, B), sub->zeta(A, B, A, B)).has_value());
    CHECK_FALSE(sub->mor_neq_witness(opop->delta(), sub->delta()).has_value());
  }
}

// ---------------------------------------------------------------------------
// duoidal structure from chosen products
// ---------------------------------------------------------------------------

TEST_CASE("from-products: rebuilt structure matches the shipped instances", "[duoidal]") {
  SECTION("cartesian") {
    auto fin = finset_cartesian_duoidal();
    auto fp = duoidal_from_products(canonical_products_witness(fin));
    auto probes = fin->probe_objects(2);
    for (const auto& a : probes)
      for (const auto& b : probes) {
        CHECK_FALSE(
            fin->mor_neq_witness(fp->seq_lunit(a), fin->seq_lunit(a)).has_value());
        for (const auto& c : probes) {
          CHECK_FALSE(fin->mor_neq_witness(fp->seq_assoc(a, b, c), fin->seq_assoc(a, b, c))
                          .has_value());
          for (const auto& d : probes)
            CHECK_FALSE(fin->mor_neq_witness(fp->zeta(a, b, c, d), fin->zeta(a, b, c, d))
                            .has_value());
        }
      }
    CHECK_FALSE(fin->mor_neq_witness(fp->delta(), fin->delta()).has_value());
    CHECK_FALSE(fin->mor_neq_witness(fp->nabla(), fin->nabla()).has_value());
    CHECK_FALSE(fin->mor_neq_witness(fp->eps(), fin->eps()).has_value());
    // the pairing of id with id is the diagonal, and on a singleton it is
    // the unique map into the square
    auto s = fin->make_leaf("S", FinSet({"*"}));
    auto w = canonical_products_witness(fin);
    auto diag = w.pairing(fin->id(s), fin->id(s));
    CHECK_FALSE(fin->valid_violation(diag).has_value());
    CHECK(fin->enumerate_homs(s, diag.dst, 8, 1).size() == 1);
  }
  SECTION("subset: the seq tensor is a genuine categorical product") {
    auto sub = subset_duoidal();
    auto fp = duoidal_from_products(canonical_products_witness(sub));
    auto probes = sub->probe_objects(2);
    for (const auto& a : probes)
      for (const auto& b : probes)
        for (const auto& c : probes)
          for (const auto& d : probes)
            CHECK_FALSE(sub->mor_neq_witness(fp->zeta(a, b, c, d), sub->zeta(a, b, c, d))
                            .has_value());
    CHECK_FALSE(sub->mor_neq_witness(fp->delta(), sub->delta()).has_value());
  }
  SECTION("rebuilt instances pass the law suite") {
    auto fin = finset_cartesian_duoidal();
    auto fp = duoidal_from_products(canonical_products_witness(fin));
    auto rep = check_duoidal_laws(*fp);
    CHECK(rep.ok());
  }
}

TEST_CASE("from-products rejects a tensor that is not a product", "[duoidal]") {
  auto sub = subset_duoidal();
  // Claim the disjunctive par tensor as the categorical product.  Its
  // carrier is too small: a non-distinguished singleton X has two maps
  // into each factor but at most three into the claimed product.
  ProductsWitness w = canonical_products_witness(sub);
  w.product_obj = [sub](const VObj& a, const VObj& b) { return sub->par_obj(a, b); };
  CHECK_THROWS_AS(duoidal_from_products(w), config_error);
  try {
    duoidal_from_products(w);
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("duoidal_from_products") != std::string::npos);
  }
}

TEST_CASE("coproduct variant stays a declared stub", "[duoidal]") {
  CHECK_THROWS_AS(finset_coproduct_duoidal(), config_error);
}

// ---------------------------------------------------------------------------
// the law suites (full coherence check per instance)
// ---------------------------------------------------------------------------

TEST_CASE("law suite: empty probe list is misuse", "[duoidal]") {
  auto fin = finset_cartesian_duoidal();
  CHECK_THROWS_AS(check_duoidal_laws(*fin, std::vector<VObj>{}), config_error);
}

TEST_CASE("law suite: cartesian and subset instances pass with zero failures", "[duoidal]") {
  auto fin = finset_cartesian_duoidal();
  auto frep = check_duoidal_laws(*fin);
  INFO("failing: " << (frep.ok() ? "" : frep.failing_laws().front()));
  CHECK(frep.ok());
  CHECK(frep.total_checked() > 2000);

  auto sub = subset_duoidal();
  auto srep = check_duoidal_laws(*sub);
  CHECK(srep.ok());
  CHECK(srep.checked_of("duoidal/zeta-assoc-par") == 117649);  // 7^6 probe tuples
  CHECK(srep.checked_of("duoidal/zeta-assoc-seq") == 117649);
}

TEST_CASE("law suite: opposite instances pass", "[duoidal]") {
  auto sub = subset_duoidal();
  auto rep = check_duoidal_laws(*opposite_duoidal(sub));
  CHECK(rep.ok());
  auto lab = label_duoidal(pf_sep_monoid(FinSet({"x"})));
  CHECK(check_duoidal_laws(*opposite_duoidal(lab)).ok());
}

TEST_CASE("law suite: label instances pass exhaustively", "[duoidal][heavy]") {
  auto lab1 = label_duoidal(pf_sep_monoid(FinSet({"x"})));
  auto rep1 = check_duoidal_laws(*lab1);
  CHECK(rep1.ok());

  auto lab2 = label_duoidal(pf_sep_monoid(FinSet({"x", "y"})));
  auto rep2 = check_duoidal_laws(*lab2);
  INFO("failing: " << (rep2.ok() ? "" : rep2.failing_laws().front()));
  CHECK(rep2.ok());
  // 15 probe objects: labels exhausted up to carrier swap
  CHECK(rep2.checked_of("duoidal/zeta-assoc-par") == 11390625);
}

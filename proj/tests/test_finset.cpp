#include <catch2/catch_amalgamated.hpp>

#include "duofreyd/finset.hpp"

using namespace duofreyd;

namespace {
FinSet fs(std::vector<std::string> v) { return FinSet(std::move(v)); }
const FinSet bit = fs({"0", "1"});
}  // namespace

TEST_CASE("FinSet basics: canonical order, equality, duplicates", "[finset]") {
  FinSet a = fs({"x", "y"});
  CHECK(a.size() == 2);
  CHECK(a.at(0) == "x");
  CHECK(a.at(1) == "y");
  CHECK(a.index_of("y") == 1u);
  CHECK_FALSE(a.index_of("z").has_value());
  CHECK(a == fs({"x", "y"}));
  CHECK(a != fs({"y", "x"}));  // order is part of identity
  CHECK_THROWS_AS(fs({"x", "x"}), config_error);
  CHECK_THROWS_AS(a.at(2), boundary_error);
}

TEST_CASE("product: carrier, order, degenerate factors", "[finset]") {
  CHECK(product(fs({"x", "y"}), fs({"u"})) == fs({"(x,u)", "(y,u)"}));
  CHECK(product(fs({}), fs({"u", "v"})).empty());
  // Pairs come out in a-major lexicographic order.
  CHECK(product(bit, bit) == fs({"(0,0)", "(0,1)", "(1,0)", "(1,1)"}));
  CHECK(split_pair("((a,b),c)").left == "(a,b)");
  CHECK(split_pair("((a,b),c)").right == "c");
}

TEST_CASE("middle_four: component permutation, bijection, naturality", "[finset]") {
  SECTION("singletons") {
    FinSet s = fs({"*"});
    FinFn m = middle_four(s, s, s, s);
    CHECK(m.dom.size() == 1);
    CHECK(m.cod.size() == 1);
  }
  SECTION("bit four ways") {
    FinFn m = middle_four(bit, bit, bit, bit);
    // ((p,q),(r,s)) |-> ((p,r),(q,s)): the pair ((0,1),(1,0)) has p=0,q=1,r=1,s=0,
    // so its image reads ((0,1),(1,0)) again in the (a x c) x (b x d) carrier.
    CHECK(m.map("((0,1),(1,0))") == "((0,1),(1,0))");
    CHECK(m.map("((0,1),(0,1))") == "((0,0),(1,1))");
    // Bijection: composing with the inverse instance is the identity.
    FinFn back = middle_four(bit, bit, bit, bit);  // self-inverse shape at equal carriers
    CHECK(compose(m, back) == identity(m.dom));
  }
  SECTION("inverse on mixed sizes") {
    FinSet a = fs({"a0"}), b = bit, c = fs({"c0", "c1", "c2"}), d = fs({"d0"});
    FinFn m = middle_four(a, b, c, d);
    FinFn minv = middle_four(a, c, b, d);
    CHECK(compose(m, minv) == identity(m.dom));
    CHECK(compose(minv, m) == identity(minv.dom));
  }
  SECTION("naturality on all size-<=2 function quadruples") {
    // m then (f x h) x (g x k)  ==  (f x g) x (h x k) then m.
    auto all = enumerate_functions(bit, bit);
    FinFn m = middle_four(bit, bit, bit, bit);
    for (const auto& f : all)
      for (const auto& g : all)
        for (const auto& h : all)
          for (const auto& k : all) {
            FinFn lhs = compose(m, product_fn(product_fn(f, h), product_fn(g, k)));
            FinFn rhs = compose(product_fn(product_fn(f, g), product_fn(h, k)), m);
            REQUIRE(lhs == rhs);
          }
  }
}

TEST_CASE("compose/identity: unit and associativity laws, boundary errors", "[finset]") {
  FinSet a = fs({"a0", "a1"}), b = fs({"b0", "b1", "b2"});
  SECTION("identity is a two-sided unit for every enumerated function") {
    for (const auto& f : enumerate_functions(a, b)) {
      CHECK(compose(identity(a), f) == f);
      CHECK(compose(f, identity(b)) == f);
    }
  }
  SECTION("associativity, exhaustive on carriers of size <= 3") {
    for (const auto& f : enumerate_functions(a, b))
      for (const auto& g : enumerate_functions(b, a))
        for (const auto& h : enumerate_functions(a, b))
          REQUIRE(compose(compose(f, g), h) == compose(f, compose(g, h)));
  }
  SECTION("boundary mismatch is an error") {
    CHECK_THROWS_AS(compose(identity(a), identity(b)), boundary_error);
  }
}

TEST_CASE("enumerate_functions: counts and canonical order", "[finset]") {
  CHECK(enumerate_functions(fs({"x"}), fs({"u", "v"})).size() == 2);
  auto fns = enumerate_functions(bit, bit);
  REQUIRE(fns.size() == 4);
  // First domain element's image varies fastest: tables 00, 10, 01, 11.
  CHECK(fns[0].table == std::vector<std::uint32_t>{0, 0});
  CHECK(fns[1].table == std::vector<std::uint32_t>{1, 0});
  CHECK(fns[2].table == std::vector<std::uint32_t>{0, 1});
  CHECK(fns[3].table == std::vector<std::uint32_t>{1, 1});
  for (std::uint64_t k = 0; k < 4; ++k) CHECK(function_rank(fns[k]) == k);
  // Degenerate cases.
  CHECK(count_functions(fs({}), fs({})) == 1u);
  CHECK(count_functions(bit, fs({})) == 0u);
  CHECK(enumerate_functions(fs({}), bit).size() == 1);
  CHECK_THROWS_AS(enumerate_functions(fs({"1", "2", "3"}), fs({"1", "2", "3"}), 5), budget_error);
}

TEST_CASE("pairing and projections satisfy the product equations", "[finset]") {
  FinSet x = fs({"p", "q", "r"});
  for (const auto& f : enumerate_functions(x, bit))
    for (const auto& g : enumerate_functions(x, bit)) {
      FinFn p = pair_fn(f, g);
      CHECK(compose(p, proj1(bit, bit)) == f);
      CHECK(compose(p, proj2(bit, bit)) == g);
    }
  CHECK(pair_fn(proj1(bit, bit), proj2(bit, bit)) == identity(product(bit, bit)));
}

TEST_CASE("serialization round-trips and is canonical", "[finset]") {
  FinSet a = fs({"x", "y"});
  CHECK(to_text(a) == R"({"elems":["x","y"]})");
  CHECK(finset_from_json(to_json(a)) == a);

  FinFn f(a, bit, {1, 0});
  CHECK(to_text(f) == R"({"cod":{"elems":["0","1"]},"dom":{"elems":["x","y"]},"table":{"x":"1","y":"0"}})");
  CHECK(finfn_from_json(to_json(f)) == f);

  CHECK_THROWS_AS(finfn_from_json(nlohmann::json::parse(
                      R"({"dom":{"elems":["x"]},"cod":{"elems":["u"]},"table":{}})")),
                  config_error);
  CHECK_THROWS_AS(finset_from_json(nlohmann::json::parse(R"({"elems":"nope"})")), config_error);
}

#include <catch2/catch_amalgamated.hpp>

#include "duofreyd/resources.hpp"

using namespace duofreyd;

namespace {

/// R = {x}, one bit of store, one 2-element base type v.
ResourceCtx ctx_x() {
  ResourceCtx c;
  c.add_resource("x", FinSet({"0", "1"}));
  c.types.add_base("v", FinSet({"u0", "u1"}));
  return c;
}

/// R = {x, y}, two bits of store.
ResourceCtx ctx_xy() {
  ResourceCtx c;
  c.add_resource("x", FinSet({"0", "1"}));
  c.add_resource("y", FinSet({"0", "1"}));
  c.types.add_base("v", FinSet({"u0", "u1"}));
  return c;
}

/// Flip the store bit of the named resource; no value input or output.
StateMap flip(const ResourceCtx& ctx, const std::string& res) {
  StateMap m;
  m.label = 1u << *ctx.resources().index_of(res);
  m.a = m.b = TypeObj::unit();
  m.table = {1, 0};
  return m;
}

/// All stateful maps a -> b at one fixed label, in table-rank order.
std::vector<StateMap> maps_at(const ResourceCtx& ctx, const TypeObj& a, const TypeObj& b,
                              std::uint32_t mask) {
  const std::uint64_t sq = ctx.store_size(mask);
  const std::uint64_t dom = ctx.types.value_size(a) * sq;
  const std::uint64_t cod = ctx.types.value_size(b) * sq;
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < dom; ++i) count *= cod;
  std::vector<StateMap> out;
  for (std::uint64_t k = 0; k < count; ++k) {
    StateMap m;
    m.label = mask;
    m.a = a;
    m.b = b;
    m.table.resize(static_cast<std::size_t>(dom));
    std::uint64_t r = k;
    for (auto& t : m.table) {
      t = static_cast<std::uint32_t>(r % cod);
      r /= cod;
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

TEST_CASE("store shape: sizes, digits, tokens, labels", "[resources]") {
  auto c = ctx_xy();
  CHECK(c.store_size(0) == 1);
  CHECK(c.store_size(c.full_mask()) == 4);
  CHECK(c.store_set(0).elems() == std::vector<std::string>{"()"});
  CHECK(c.store_set(c.full_mask()).elems() ==
        std::vector<std::string>{"(0,0)", "(0,1)", "(1,0)", "(1,1)"});
  CHECK(c.label_token(0) == "{}");
  CHECK(c.label_token(3) == "{x,y}");
  CHECK(c.parse_label("{y, x}") == 3);
  CHECK(c.parse_label("{}") == 0);
  CHECK(c.mask_names(2) == std::vector<std::string>{"y"});
  CHECK_THROWS_AS(c.parse_label("{z}"), config_error);
  CHECK_THROWS_AS(c.parse_label("x"), config_error);

  ResourceCtx bad;
  bad.add_resource("x", FinSet({"0"}));
  CHECK_THROWS_AS(bad.add_resource("x", FinSet({"0"})), config_error);
  CHECK_THROWS_AS(bad.add_resource("y", FinSet(std::vector<std::string>{})), config_error);
}

TEST_CASE("identities: label {}, unit for seq, unit for par", "[resources]") {
  auto c = ctx_x();
  auto v = TypeObj::base("v");
  CHECK(idt_res(c, TypeObj::unit()) == zero_res(c));
  CHECK(idt_res(c, v).label == 0);
  CHECK(idt_res(c, v).table == std::vector<std::uint32_t>{0, 1});

  auto f = flip(c, "x");
  CHECK(seq_res(c, idt_res(c, TypeObj::unit()), f) == f);
  CHECK(seq_res(c, f, idt_res(c, TypeObj::unit())) == f);
  // strict unit on types makes f || id_e literally f, for every f
  for (const auto& m : enumerate_hom(c, v, v).elems) {
    CHECK(par_res(c, m, idt_res(c, TypeObj::unit())) == m);
    CHECK(par_res(c, idt_res(c, TypeObj::unit()), m) == m);
  }
}

TEST_CASE("lift leaves the extra store components unchanged", "[resources]") {
  auto c = ctx_xy();
  auto f = flip(c, "x");

  SECTION("lift by the same label is the identity transformation") {
    CHECK(lift(c, f, f.label) == f);
  }
  SECTION("flip-x lifted to {x,y}: flips x, fixes y, on all 4 store states") {
    auto lf = lift(c, f, 3);
    CHECK(lf.label == 3);
    CHECK(lf.table == std::vector<std::uint32_t>{2, 3, 0, 1});
  }
  SECTION("a pure map lifted to {x} touches no store component") {
    auto v = TypeObj::base("v");
    auto pure_flip = pure_res(c, FinFn(c.types.value_set(v), c.types.value_set(v), {1, 0}), v, v);
    auto lf = lift(c, pure_flip, 1);
    const std::uint64_t sq = c.store_size(1);
    for (std::uint32_t i = 0; i < lf.table.size(); ++i)
      CHECK(lf.table[i] % sq == i % sq);
    CHECK(lf.table == std::vector<std::uint32_t>{2, 3, 0, 1});
  }
  SECTION("lift to a label that does not contain the source label is misuse") {
    CHECK_THROWS_AS(lift(c, f, 2), boundary_error);
  }
}

TEST_CASE("sequencing unions labels and composes the lifted tables", "[resources]") {
  auto c = ctx_xy();
  auto fx = flip(c, "x");
  auto fy = flip(c, "y");

  SECTION("two pure maps compose as plain functions") {
    auto v = TypeObj::base("v");
    auto swap = FinFn(c.types.value_set(v), c.types.value_set(v), {1, 0});
    auto to0 = FinFn(c.types.value_set(v), c.types.value_set(v), {0, 0});
    CHECK(seq_res(c, pure_res(c, swap, v, v), pure_res(c, to0, v, v)) ==
          pure_res(c, compose(swap, to0), v, v));
  }
  SECTION("flip-x sequenced with itself is the identity on the store") {
    auto ff = seq_res(c, fx, fx);
    CHECK(ff.label == 1);
    CHECK(ff.table == std::vector<std::uint32_t>{0, 1});
  }
  SECTION("label {x} then label {y} gives label {x,y}") {
    CHECK(seq_res(c, fx, fy).label == 3);
    CHECK(seq_res(c, fx, fy).table == std::vector<std::uint32_t>{3, 2, 1, 0});
  }
  SECTION("middle types must agree") {
    auto v = TypeObj::base("v");
    CHECK_THROWS_AS(seq_res(c, idt_res(c, v), fx), boundary_error);
  }
}

TEST_CASE("parallel composition demands disjoint labels", "[resources]") {
  auto c = ctx_xy();
  auto fx = flip(c, "x");
  auto fy = flip(c, "y");

  SECTION("flip-x || flip-y flips both bits at label {x,y}") {
    auto p = par_res(c, fx, fy);
    CHECK(p.label == 3);
    CHECK(p.a == TypeObj::unit());
    CHECK(p.table == std::vector<std::uint32_t>{3, 2, 1, 0});
  }
  SECTION("overlap is a static separation error naming the resources") {
    try {
      par_res(c, fx, fx);
      FAIL("expected a separation error");
    } catch (const separation_error& e) {
      CHECK(e.overlap == std::vector<std::string>{"x"});
      CHECK(std::string(e.what()).find("{x}") != std::string::npos);
    }
  }
  SECTION("value blocks are routed independently of the store") {
    auto v = TypeObj::base("v");
    auto swap = pure_res(c, FinFn(c.types.value_set(v), c.types.value_set(v), {1, 0}), v, v);
    auto p = par_res(c, swap, fy);
    CHECK(p.a == v);
    CHECK(p.b == v);
    CHECK(p.label == 2);
    // (u_i, y) |-> (u_{1-i}, 1-y): table over dom index ia*2+is
    CHECK(p.table == std::vector<std::uint32_t>{3, 2, 1, 0});
  }
}

TEST_CASE("exchange: sequential interleavings of disjoint maps equal their par",
          "[resources]") {
  auto c = ctx_xy();
  auto v = TypeObj::base("v");
  auto e = TypeObj::unit();
  // f : v -> v using only x (256 maps), g : v -> e using only y (16 maps)
  for (const auto& f : maps_at(c, v, v, 1))
    for (const auto& g : maps_at(c, v, e, 2)) {
      auto direct = par_res(c, f, g);
      auto f_then_g = seq_res(c, par_res(c, f, idt_res(c, v)), par_res(c, idt_res(c, v), g));
      auto g_then_f = seq_res(c, par_res(c, idt_res(c, v), g), par_res(c, f, idt_res(c, e)));
      CHECK(f_then_g == direct);
      CHECK(g_then_f == direct);
    }
}

TEST_CASE("hom carriers: frozen counts for one bit of store", "[resources]") {
  auto c = ctx_x();
  auto v = TypeObj::base("v");
  auto e = TypeObj::unit();
  // per label Q: (|value(b)|*|Pi_Q|) ^ (|value(a)|*|Pi_Q|), summed over Q
  CHECK(enumerate_hom(c, e, e).size() == 5);    //  1 + 2^2
  CHECK(enumerate_hom(c, e, v).size() == 18);   //  2 + 4^2
  CHECK(enumerate_hom(c, v, e).size() == 17);   //  1 + 2^4
  CHECK(enumerate_hom(c, v, v).size() == 260);  //  4 + 4^4

  auto h = enumerate_hom(c, v, v);
  CHECK(h.offset == std::vector<std::uint64_t>{0, 4, 260});
  for (std::uint64_t i = 0; i < h.size(); ++i)
    CHECK(h.index_of(c, h.elems[static_cast<std::size_t>(i)]) == i);

  SECTION("blowups hit the per-label budget loudly") {
    auto cxy = ctx_xy();
    CHECK_THROWS_AS(enumerate_hom(cxy, v, v), budget_error);  // 8^8 at {x,y}
  }
  SECTION("boundary mismatch in index lookups is misuse") {
    CHECK_THROWS_AS(h.index_of(c, zero_res(c)), boundary_error);
  }
}

TEST_CASE("display forms: materialized function and rank token", "[resources]") {
  auto c = ctx_x();
  auto f = flip(c, "x");
  auto fn = state_fn(c, f);
  CHECK(fn.map("((),0)") == "((),1)");
  CHECK(fn.map("((),1)") == "((),0)");
  CHECK(state_token(c, f) == "{x}#1");
  CHECK(state_token(c, zero_res(c)) == "{}#0");
}

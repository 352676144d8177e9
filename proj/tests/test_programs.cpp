#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "duofreyd/programs.hpp"

using namespace duofreyd;

namespace {

std::filesystem::path corpus_dir() {
  return std::filesystem::path(DUOFREYD_SOURCE_DIR) / "programs";
}

std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir()))
    if (entry.path().extension() == ".prog") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

bool expects_rejection(const std::filesystem::path& p) {
  return p.filename().string().rfind("reject_", 0) == 0;
}

/// All full stores, as digit vectors in a canonical order.
std::vector<std::vector<std::uint32_t>> all_stores(const ResourceCtx& ctx) {
  std::vector<std::vector<std::uint32_t>> out;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < ctx.nres(); ++i) total *= ctx.store_values(i).size();
  for (std::uint64_t n = 0; n < total; ++n) {
    std::vector<std::uint32_t> d(ctx.nres());
    std::uint64_t r = n;
    for (std::uint32_t i = ctx.nres(); i-- > 0;) {
      d[i] = static_cast<std::uint32_t>(r % ctx.store_values(i).size());
      r /= ctx.store_values(i).size();
    }
    out.push_back(std::move(d));
  }
  return out;
}

/// Independent re-implementation of the documented store packing (leftmost
/// resource most significant) used to cross-check run results.
std::uint64_t pack(const ResourceCtx& ctx, std::uint32_t mask,
                   const std::vector<std::uint32_t>& d) {
  std::uint64_t idx = 0;
  for (std::uint32_t i = 0; i < ctx.nres(); ++i)
    if (mask & (1u << i)) idx = idx * ctx.store_values(i).size() + d[i];
  return idx;
}

void unpack(const ResourceCtx& ctx, std::uint32_t mask, std::uint64_t idx,
            std::vector<std::uint32_t>& d) {
  for (std::uint32_t i = ctx.nres(); i-- > 0;)
    if (mask & (1u << i)) {
      d[i] = static_cast<std::uint32_t>(idx % ctx.store_values(i).size());
      idx /= ctx.store_values(i).size();
    }
}

}  // namespace

TEST_CASE("the corpus parses, and only the reject programs fail separation", "[programs]") {
  auto files = corpus_files();
  REQUIRE(files.size() >= 20);
  std::size_t rejected = 0;
  for (const auto& f : files) {
    INFO(f.filename().string());
    ProgramFile pf = load_program(f.string());
    REQUIRE(pf.main != nullptr);
    if (expects_rejection(f)) {
      try {
        elaborate(pf);
        FAIL("expected a separation violation");
      } catch (const separation_error& ex) {
        CHECK_FALSE(ex.overlap.empty());
        CHECK(std::string(ex.what()).find("subterm main") != std::string::npos);
        ++rejected;
      }
    } else {
      StateMap m = elaborate(pf);
      CHECK(m.table.size() ==
            pf.ctx.types.value_size(m.a) * pf.ctx.store_size(m.label));
    }
  }
  CHECK(rejected == 2);
}

TEST_CASE("store components outside the label never change", "[programs]") {
  for (const auto& f : corpus_files()) {
    if (expects_rejection(f)) continue;
    INFO(f.filename().string());
    ProgramFile pf = load_program(f.string());
    StateMap m = elaborate(pf);
    FinSet va = pf.ctx.types.value_set(m.a);
    for (const auto& store : all_stores(pf.ctx)) {
      for (std::uint32_t ia = 0; ia < va.size(); ++ia) {
        RunResult r = run_program(pf.ctx, m, va.at(ia), store);
        REQUIRE(r.store.size() == pf.ctx.nres());
        for (std::uint32_t i = 0; i < pf.ctx.nres(); ++i) {
          if (m.label & (1u << i)) continue;
          INFO("resource " << pf.ctx.resources().at(i));
          CHECK(r.store[i] == pf.ctx.store_values(i).at(store[i]));
        }
        // cross-check the whole result against an independent packing
        std::uint64_t sq = pf.ctx.store_size(m.label);
        std::uint64_t out = m.table[ia * sq + pack(pf.ctx, m.label, store)];
        std::vector<std::uint32_t> want = store;
        unpack(pf.ctx, m.label, out % sq, want);
        CHECK(r.output == pf.ctx.types.value_set(m.b).at(
                              static_cast<std::uint32_t>(out / sq)));
        for (std::uint32_t i = 0; i < pf.ctx.nres(); ++i)
          CHECK(r.store[i] == pf.ctx.store_values(i).at(want[i]));
      }
    }
  }
}

TEST_CASE("flipping the same bit twice is the store identity", "[programs]") {
  ProgramFile pf = load_program((corpus_dir() / "flip_flip.prog").string());
  StateMap m = elaborate(pf);
  CHECK(m.label == 1);
  for (const auto& store : all_stores(pf.ctx)) {
    RunResult r = run_program(pf.ctx, m, "()", store);
    CHECK(r.label == 1);
    for (std::uint32_t i = 0; i < pf.ctx.nres(); ++i)
      CHECK(r.store[i] == pf.ctx.store_values(i).at(store[i]));
  }
}

TEST_CASE("programs compute their intended effects", "[programs]") {
  auto run_file = [&](const char* name, const std::string& input,
                      const std::string& storespec) {
    ProgramFile pf = load_program((corpus_dir() / name).string());
    StateMap m = elaborate(pf);
    return run_program(pf.ctx, m, input, parse_store_spec(pf.ctx, storespec));
  };

  SECTION("a flip toggles the bit") {
    RunResult r = run_file("flip_x.prog", "()", "x=0");
    CHECK(r.store == std::vector<std::string>{"1"});
    r = run_file("flip_x.prog", "()", "x=1");
    CHECK(r.store == std::vector<std::string>{"0"});
  }
  SECTION("reset-then-flip always ends at 1") {
    for (const char* s : {"x=0", "x=1"})
      CHECK(run_file("set_then_flip.prog", "()", s).store ==
            std::vector<std::string>{"1"});
  }
  SECTION("toggle-then-read observes the new value") {
    CHECK(run_file("toggle_then_read.prog", "()", "x=0").output == "u1");
    CHECK(run_file("toggle_then_read.prog", "()", "x=1").output == "u0");
  }
  SECTION("read-then-write restores the store and forgets the value") {
    for (const char* s : {"x=0", "x=1"}) {
      RunResult r = run_file("read_write_x.prog", "()", s);
      CHECK(r.output == "()");
      CHECK(r.store == std::vector<std::string>{std::string(1, s[2])});
      CHECK(r.label == 1);
    }
  }
  SECTION("controlled flip fires only when the control is set") {
    CHECK(run_file("cnot_xy.prog", "()", "x=0,y=1").store ==
          std::vector<std::string>{"0", "1"});
    CHECK(run_file("cnot_xy.prog", "()", "x=1,y=0").store ==
          std::vector<std::string>{"1", "1"});
  }
  SECTION("store swap exchanges the bits") {
    CHECK(run_file("swap_store_xy.prog", "()", "x=1,y=0").store ==
          std::vector<std::string>{"0", "1"});
  }
  SECTION("parity reads without writing") {
    RunResult r = run_file("parity_xy.prog", "()", "x=1,y=0");
    CHECK(r.output == "u1");
    CHECK(r.store == std::vector<std::string>{"1", "0"});
    r = run_file("parity_xy.prog", "()", "x=1,y=1");
    CHECK(r.output == "u0");
  }
  SECTION("reading both bits produces the product value") {
    CHECK(run_file("read_both_xy.prog", "()", "x=1,y=0").output == "(u1,u0)");
  }
  SECTION("two increments of a mod-3 counter") {
    CHECK(run_file("counter_mod3.prog", "()", "c=0").store ==
          std::vector<std::string>{"2"});
    CHECK(run_file("counter_mod3.prog", "()", "c=2").store ==
          std::vector<std::string>{"1"});
  }
  SECTION("pure preprocessing feeds the write") {
    CHECK(run_file("pure_then_write.prog", "u0", "x=0").store ==
          std::vector<std::string>{"1"});
    CHECK(run_file("pure_then_write.prog", "u1", "x=0").store ==
          std::vector<std::string>{"0"});
  }
  SECTION("a program with no resources runs on the empty store") {
    RunResult r = run_file("id_unit.prog", "()", "");
    CHECK(r.output == "()");
    CHECK(r.store.empty());
    CHECK(r.label == 0);
  }
}

TEST_CASE("interleaving disjoint effects equals running them side by side", "[programs]") {
  ProgramFile par_pf = load_program((corpus_dir() / "par_flip_xy.prog").string());
  ProgramFile mix_pf = load_program((corpus_dir() / "exchange_mix_xy.prog").string());
  StateMap par_m = elaborate(par_pf);
  StateMap mix_m = elaborate(mix_pf);
  CHECK(par_m == mix_m);
  CHECK(par_m.label == 3);

  // padding with the empty program is invisible
  ProgramFile pad_pf = load_program((corpus_dir() / "par_zero_pad.prog").string());
  StateMap pad_m = elaborate(pad_pf);
  CHECK(pad_m == pad_pf.prims.at("flipx"));
}

TEST_CASE("separation violations name the resources and the subterm", "[programs]") {
  ProgramFile flat = load_program((corpus_dir() / "reject_par_overlap.prog").string());
  try {
    elaborate(flat);
    FAIL("expected a separation violation");
  } catch (const separation_error& ex) {
    CHECK(ex.overlap == std::vector<std::string>{"x"});
    CHECK(std::string(ex.what()).find("subterm main") != std::string::npos);
  }

  ProgramFile nested = load_program((corpus_dir() / "reject_nested_overlap.prog").string());
  try {
    elaborate(nested);
    FAIL("expected a separation violation");
  } catch (const separation_error& ex) {
    CHECK(ex.overlap == std::vector<std::string>{"x"});
    CHECK(std::string(ex.what()).find("main/seq:right") != std::string::npos);
  }
}

TEST_CASE("malformed programs and stores are refused with clear errors", "[programs]") {
  CHECK_THROWS_AS(parse_program("resource x : {0,1}\n"), config_error);  // no main
  CHECK_THROWS_AS(parse_program("main = nosuch\n"), config_error);
  CHECK_THROWS_AS(parse_program("resource x : {0,1}\n"
                                "prim p : e -> e uses {x} table {1}\n"  // short table
                                "main = p\n"),
                  config_error);
  CHECK_THROWS_AS(parse_program("resource x : {0,1}\n"
                                "prim p : e -> e uses {x} table {2, 0}\n"  // out of range
                                "main = p\n"),
                  config_error);
  CHECK_THROWS_AS(parse_program("resource x : {0,1}\n"
                                "prim p : e -> e uses {y} table {1, 0}\n"  // unknown resource
                                "main = p\n"),
                  config_error);
  CHECK_THROWS_AS(parse_program("main = pure {\"dom\":1}\n"), config_error);
  CHECK_THROWS_AS(parse_program("type v : {a, b}\nmain = id w\n"), config_error);

  // seq boundary mismatch surfaces at elaboration with the subterm path
  ProgramFile pf = parse_program(
      "resource x : {0,1}\n"
      "type v : {u0, u1}\n"
      "prim readx : e -> v uses {x} table {0, 3}\n"
      "main = seq(readx, readx)\n");
  try {
    elaborate(pf);
    FAIL("expected a boundary error");
  } catch (const boundary_error& ex) {
    CHECK(std::string(ex.what()).find("main") != std::string::npos);
  }

  ProgramFile ok = load_program((corpus_dir() / "flip_x.prog").string());
  CHECK_THROWS_AS(parse_store_spec(ok.ctx, "y=0"), config_error);
  CHECK_THROWS_AS(parse_store_spec(ok.ctx, "x=7"), config_error);
  CHECK_THROWS_AS(parse_store_spec(ok.ctx, ""), config_error);           // unassigned
  CHECK_THROWS_AS(parse_store_spec(ok.ctx, "x=0,x=1"), config_error);    // twice
  StateMap m = elaborate(ok);
  CHECK_THROWS_AS(run_program(ok.ctx, m, "bad", parse_store_spec(ok.ctx, "x=0")),
                  config_error);
}

TEST_CASE("pure literals infer product boundaries", "[programs]") {
  ProgramFile pf = load_program((corpus_dir() / "pure_pair_swap.prog").string());
  StateMap m = elaborate(pf);
  CHECK(m.a.token() == "v*v");
  CHECK(m.b.token() == "v*v");
  CHECK(m.label == 0);
  RunResult r = run_program(pf.ctx, m, "(u0,u1)", {});
  CHECK(r.output == "(u1,u0)");
}

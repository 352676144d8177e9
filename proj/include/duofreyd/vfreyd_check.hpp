#pragma once
//
// Law checker for enriched Freyd structures.
//
// Every law is an equation between two composites of the structure maps
// idt, seq, zero, par and the reindexing C(f,g).  The checker evaluates
// both composites *elementwise*: each law instance fixes a tuple of probe
// words, its domain is a product of hom carriers at those words (filtered
// by the instance's claimed par admission, grouped by state so that
// non-separated blocks are discarded wholesale), and both sides are run
// on every domain element and compared.  Codomains are never enumerated,
// so tensor-word carriers far too large to materialize stay out of reach.
//
// A domain whose size exceeds the per-instance element budget is covered
// by deterministic seeded sampling instead; everything else is exhaustive.
// Typing failures -- a composite that throws a boundary or separation
// error, which seeded mutants do produce -- are reported as failures of
// the law being checked, with the offending element tuple as witness.
//
// Precondition: the enriching category itself passes the duoidal law
// suite.  The checker trusts its state algebra (combine/admit) for
// domain bookkeeping and reports the instance's deviations from it.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duofreyd/report.hpp"
#include "duofreyd/util.hpp"
#include "duofreyd/vfreyd.hpp"

namespace duofreyd {

struct VFreydCheckOptions {
  /// Probe words; when empty: the unit word plus every declared base type.
  std::vector<TypeObj> probes;
  /// Largest law-instance domain swept exhaustively.
  std::uint64_t elem_budget = 24'000'000;
  /// Seeded draws for domains beyond the budget.
  std::uint64_t sample_count = 16'384;
  /// Base-morphism legs are exhaustive up to this hom size, else sampled.
  std::uint32_t base_hom_cap = 512;
  std::uint32_t base_hom_samples = 16;
  /// Seeded (f1,g1,f2,g2) combinations per word tuple in the joint
  /// par-naturality square (the four single-leg squares are exhaustive).
  std::uint32_t joint_mor_draws = 4;
  /// The six-slot derived equations take every slot combination from the
  /// diagonal family plus this many seeded draws (or the full grid).
  std::uint32_t lemma_combo_draws = 24;
  bool lemma_full_combos = false;
  std::uint64_t seed = default_seed();
};

namespace detail {

inline std::vector<TypeObj> default_probes(const MCat& m) {
  std::vector<TypeObj> out{TypeObj::unit()};
  for (const auto& n : m.base_names()) out.push_back(TypeObj::base(n));
  return out;
}

/// Morphism probes of the base category: exhaustive when the hom is small,
/// else seeded random tables.
inline std::vector<BaseMor> base_homs(const MCat& m, const TypeObj& a, const TypeObj& b,
                                      const VFreydCheckOptions& opt) {
  FinSet dom = m.value_set(a), cod = m.value_set(b);
  std::vector<BaseMor> out;
  if (cod.empty() && !dom.empty()) return out;
  auto n = count_functions(dom, cod);
  if (n && *n <= opt.base_hom_cap) {
    for (auto& f : enumerate_functions(dom, cod, opt.base_hom_cap))
      out.push_back(BaseMor{a, b, std::move(f)});
  } else {
    Rng rng(opt.seed, "base-homs/" + a.token() + "->" + b.token());
    for (std::uint32_t i = 0; i < opt.base_hom_samples; ++i) {
      std::vector<std::uint32_t> table(dom.size());
      for (auto& t : table) t = static_cast<std::uint32_t>(rng.below(cod.size()));
      out.push_back(BaseMor{a, b, FinFn(dom, cod, std::move(table))});
    }
  }
  return out;
}

/// All k-tuples over the probe list, as a reused buffer.
template <typename F>
void for_words(const std::vector<TypeObj>& probes, std::size_t k, F&& fn) {
  std::vector<std::size_t> ix(k, 0);
  std::vector<TypeObj> w(k, probes.empty() ? TypeObj::unit() : probes[0]);
  if (probes.empty()) return;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) w[i] = probes[ix[i]];
    fn(w);
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++ix[pos] < probes.size()) break;
      ix[pos] = 0;
      if (pos == 0) return;
    }
    if (pos == 0 && ix[0] == 0) return;
  }
}

inline std::string winst(std::initializer_list<const char*> names,
                         const std::vector<TypeObj>& w) {
  std::string out;
  std::size_t i = 0;
  for (const char* n : names) {
    if (i) out += ",";
    out += n;
    out += "=";
    out += w[i++].token();
  }
  return out;
}

inline std::string elems_token(const VFreydCat& c, std::size_t k, const HomElem* const* es) {
  std::string out = "[";
  for (std::size_t i = 0; i < k; ++i) {
    if (i) out += ", ";
    out += c.elem_token(*es[i]);
  }
  return out + "]";
}

struct SweepStats {
  std::uint64_t domain = 0;
  std::uint64_t visited = 0;
  bool sampled = false;
};

/// Sweeps the product of the given hom carriers, restricted to the state
/// combinations `admit` accepts.  Elements are grouped by state, so blocks
/// failing admission cost one test, not one test per element.  Domains
/// within the budget are visited exhaustively, larger ones by seeded
/// sampling with replacement.
template <typename Admit, typename Body>
SweepStats sweep_slots(const std::vector<const HomTable*>& slots, Admit&& admit,
                       std::uint64_t elem_budget, std::uint64_t sample_count, Rng& rng,
                       Body&& body) {
  constexpr std::uint64_t CAP = ~std::uint64_t{0};
  const std::size_t K = slots.size();
  SweepStats stats;
  for (const auto* t : slots)
    if (t->elems.empty()) return stats;

  struct Block {
    std::array<std::uint32_t, 8> gi{};
    std::uint64_t weight = 0;
  };
  std::vector<Block> blocks;
  std::array<std::uint32_t, 8> gi{};
  std::array<std::uint32_t, 8> st{};
  std::function<void(std::size_t)> visit_groups = [&](std::size_t d) {
    if (d == K) {
      if (!admit(st.data())) return;
      std::uint64_t w = 1;
      for (std::size_t i = 0; i < K; ++i) {
        std::uint64_t gsz = slots[i]->groups[gi[i]].idx.size();
        w = (gsz != 0 && w > CAP / gsz) ? CAP : w * gsz;
      }
      Block b;
      b.gi = gi;
      b.weight = w;
      blocks.push_back(b);
      stats.domain = (stats.domain > CAP - w) ? CAP : stats.domain + w;
      return;
    }
    for (gi[d] = 0; gi[d] < slots[d]->groups.size(); ++gi[d]) {
      st[d] = slots[d]->groups[gi[d]].state;
      visit_groups(d + 1);
    }
  };
  visit_groups(0);
  if (stats.domain == 0) return stats;

  const HomElem* es[8];
  auto elem_at = [&](const Block& b, std::uint64_t r) {
    for (std::size_t i = K; i-- > 0;) {
      const auto& g = slots[i]->groups[b.gi[i]];
      es[i] = &slots[i]->elems[g.idx[static_cast<std::size_t>(r % g.idx.size())]];
      r /= g.idx.size();
    }
  };
  if (stats.domain <= elem_budget) {
    for (const auto& b : blocks)
      for (std::uint64_t r = 0; r < b.weight; ++r) {
        elem_at(b, r);
        body(es);
      }
    stats.visited = stats.domain;
  } else {
    stats.sampled = true;
    for (std::uint64_t n = 0; n < sample_count; ++n) {
      std::uint64_t r = rng.below(stats.domain);
      for (const auto& b : blocks) {
        if (r < b.weight) {
          elem_at(b, r);
          body(es);
          break;
        }
        r -= b.weight;
      }
    }
    stats.visited = sample_count;
  }
  return stats;
}

/// One law instance: runs `fn` over the swept domain; fn returns nullopt on
/// a passing element and a witness message otherwise.  Boundary and
/// separation errors raised while evaluating a composite are typing
/// failures of the law.
template <typename Admit, typename Fn>
void pred_sweep(const VFreydCat& c, LawReport& rep, const VFreydCheckOptions& opt,
                std::map<std::string, std::uint64_t>& sampled, const std::string& law,
                const std::string& inst, const std::vector<const HomTable*>& slots,
                Admit&& admit, Fn&& fn, const std::string& fail_note = "") {
  Rng rng(opt.seed, law + "/" + inst);
  std::uint64_t pass = 0;
  const std::size_t k = slots.size();
  auto record = [&](const HomElem* const* es, const std::string& msg) {
    rep.tally(law, false,
              [&] { return std::make_pair(inst, elems_token(c, k, es) + " " + msg + fail_note); });
  };
  SweepStats stats = sweep_slots(
      slots, admit, opt.elem_budget, opt.sample_count, rng, [&](const HomElem* const* es) {
        try {
          auto w = fn(es);
          if (!w) {
            ++pass;
            return;
          }
          record(es, *w);
        } catch (const separation_error& ex) {
          record(es, std::string("typing: ") + ex.what());
        } catch (const boundary_error& ex) {
          record(es, std::string("typing: ") + ex.what());
        }
      });
  rep.bulk_pass(law, pass);
  if (stats.sampled) ++sampled[law];
}

/// Equation between two composites.
template <typename Admit, typename L, typename R>
void eq_sweep(const VFreydCat& c, LawReport& rep, const VFreydCheckOptions& opt,
              std::map<std::string, std::uint64_t>& sampled, const std::string& law,
              const std::string& inst, const std::vector<const HomTable*>& slots,
              Admit&& admit, L&& lhs, R&& rhs, const std::string& fail_note = "") {
  pred_sweep(
      c, rep, opt, sampled, law, inst, slots, admit,
      [&](const HomElem* const* es) -> std::optional<std::string> {
        HomElem l = lhs(es);
        HomElem r = rhs(es);
        if (c.elem_eq(l, r)) return std::nullopt;
        return c.elem_token(l) + " != " + c.elem_token(r);
      },
      fail_note);
}

/// A law with no hom-element quantifier.
template <typename Fn>
void single_law(LawReport& rep, const std::string& law, const std::string& inst, Fn&& fn) {
  try {
    auto w = fn();
    rep.tally(law, !w, [&] { return std::make_pair(inst, *w); });
  } catch (const separation_error& ex) {
    rep.tally(law, false,
              [&] { return std::make_pair(inst, std::string("typing: ") + ex.what()); });
  } catch (const boundary_error& ex) {
    rep.tally(law, false,
              [&] { return std::make_pair(inst, std::string("typing: ") + ex.what()); });
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The structure-law suite
// ---------------------------------------------------------------------------

inline LawReport check_vfreyd(const VFreydCat& c, VFreydCheckOptions opt = {}) {
  using detail::eq_sweep;
  using detail::pred_sweep;
  using detail::winst;
  const auto& v = *c.enrich();
  const MCat& mc = c.base();
  if (opt.probes.empty()) opt.probes = detail::default_probes(mc);
  const std::vector<TypeObj>& P = opt.probes;
  const TypeObj unit = TypeObj::unit();

  LawReport rep;
  std::map<std::string, std::uint64_t> sampled;
  std::string pdesc = "probe words:";
  for (const auto& p : P) pdesc += " " + p.token();

  auto comb = [&v](std::uint32_t a, std::uint32_t b) { return v.combine_state(a, b); };
  auto claimed = [&c](std::uint32_t a, std::uint32_t b) { return c.par_sep(a, b); };
  auto all = [](const std::uint32_t*) { return true; };

  // -- carrier sanity ----------------------------------------------------------

  detail::for_words(P, 2, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/hom-carrier";
    rep.describe(law, pdesc);
    const HomTable& t = c.hom(w[0], w[1]);
    std::string bad;
    if (c.hom_count(w[0], w[1]) != t.size())
      bad = "carrier size " + std::to_string(t.size()) + " disagrees with hom_count " +
            std::to_string(c.hom_count(w[0], w[1]));
    std::vector<std::string> toks;
    for (const auto& e : t.elems) {
      if (e.state >= v.states()) bad = "element state out of range: " + c.elem_token(e);
      toks.push_back(c.elem_token(e));
    }
    std::sort(toks.begin(), toks.end());
    for (std::size_t i = 0; bad.empty() && i + 1 < toks.size(); ++i)
      if (toks[i] == toks[i + 1]) bad = "duplicate element token " + toks[i];
    rep.tally(law, bad.empty(), [&] { return std::make_pair(winst({"a", "b"}, w), bad); });
  });

  // -- the claimed par admission against the enriching category's ---------------

  {
    const std::string law = "vfreyd/par-admission";
    rep.describe(law, "state pairs of the enriching category");
    const std::uint32_t ns = std::min<std::uint32_t>(v.states(), 64);
    for (std::uint32_t s1 = 0; s1 < ns; ++s1)
      for (std::uint32_t s2 = 0; s2 < ns; ++s2) {
        bool want = v.admit_par(s1, s2), got = c.par_sep(s1, s2);
        rep.tally(law, want == got, [&] {
          return std::make_pair("states (" + std::to_string(s1) + "," + std::to_string(s2) + ")",
                                got ? "instance claims par on a non-separated pair"
                                    : "instance refuses par on a separated pair");
        });
      }
  }

  // -- state discipline of the structure maps -----------------------------------

  detail::for_words(P, 1, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/idt-state";
    rep.describe(law, pdesc);
    detail::single_law(rep, law, winst({"a"}, w), [&]() -> std::optional<std::string> {
      HomElem i = c.idt(w[0]);
      if (state_preserved(v, c.neutral_state(), i.state)) return std::nullopt;
      return "identity element " + c.elem_token(i) + " has state " + std::to_string(i.state) +
             ", expected the neutral state " + std::to_string(c.neutral_state());
    });
  });
  detail::single_law(rep, "vfreyd/zero-state", "-", [&]() -> std::optional<std::string> {
    HomElem z = c.zero();
    if (state_preserved(v, c.neutral_state(), z.state)) return std::nullopt;
    return "zero element " + c.elem_token(z) + " has state " + std::to_string(z.state);
  });

  detail::for_words(P, 3, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/seq-state";
    rep.describe(law, pdesc);
    TypeObj a = w[0], b = w[1], d = w[2];
    pred_sweep(c, rep, opt, sampled, law, winst({"a", "b", "c"}, w),
               {&c.hom(a, b), &c.hom(b, d)}, all,
               [&](const HomElem* const* es) -> std::optional<std::string> {
                 HomElem r = c.seq(a, b, d, *es[0], *es[1]);
                 std::uint32_t want = comb(es[0]->state, es[1]->state);
                 if (state_preserved(v, want, r.state)) return std::nullopt;
                 return "seq produced state " + std::to_string(r.state) + ", expected " +
                        std::to_string(want);
               });
  });

  detail::for_words(P, 4, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/par-state";
    rep.describe(law, pdesc);
    TypeObj a1 = w[0], b1 = w[1], a2 = w[2], b2 = w[3];
    pred_sweep(c, rep, opt, sampled, law, winst({"a1", "b1", "a2", "b2"}, w),
               {&c.hom(a1, b1), &c.hom(a2, b2)},
               [&](const std::uint32_t* st) { return claimed(st[0], st[1]); },
               [&](const HomElem* const* es) -> std::optional<std::string> {
                 HomElem r = c.par(a1, b1, a2, b2, *es[0], *es[1]);
                 std::uint32_t want = comb(es[0]->state, es[1]->state);
                 if (state_preserved(v, want, r.state)) return std::nullopt;
                 return "par produced state " + std::to_string(r.state) + ", expected " +
                        std::to_string(want);
               });
  });

  detail::for_words(P, 4, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/hom-map-state";
    rep.describe(law, pdesc);
    TypeObj a = w[0], b = w[1], a2 = w[2], b2 = w[3];  // f : a2 -> a, g : b -> b2
    for (const auto& f : detail::base_homs(mc, a2, a, opt))
      for (const auto& g : detail::base_homs(mc, b, b2, opt))
        pred_sweep(c, rep, opt, sampled, law,
                   winst({"a", "b", "a'", "b'"}, w) + ",f=" + base_token(f) +
                       ",g=" + base_token(g),
                   {&c.hom(a, b)}, all,
                   [&](const HomElem* const* es) -> std::optional<std::string> {
                     HomElem r = c.hom_map(f, g, a, b, *es[0]);
                     if (state_preserved(v, es[0]->state, r.state)) return std::nullopt;
                     return "reindexing changed the state from " +
                            std::to_string(es[0]->state) + " to " + std::to_string(r.state);
                   });
  });

  // -- functoriality of the hom bifunctor ---------------------------------------

  detail::for_words(P, 2, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/hom-id";
    rep.describe(law, pdesc);
    TypeObj a = w[0], b = w[1];
    BaseMor ia = base_id(mc, a), ib = base_id(mc, b);
    eq_sweep(c, rep, opt, sampled, law, winst({"a", "b"}, w), {&c.hom(a, b)}, all,
             [&](const HomElem* const* es) { return c.hom_map(ia, ib, a, b, *es[0]); },
             [&](const HomElem* const* es) { return *es[0]; });
  });

  detail::for_words(P, 6, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/hom-comp";
    rep.describe(law, pdesc);
    // f' : a'' -> a', f : a' -> a, g : b -> b', g' : b' -> b''
    TypeObj a = w[0], b = w[1], a1 = w[2], b1 = w[3], a2 = w[4], b2 = w[5];
    for (const auto& f1 : detail::base_homs(mc, a1, a, opt))
      for (const auto& f2 : detail::base_homs(mc, a2, a1, opt))
        for (const auto& g1 : detail::base_homs(mc, b, b1, opt))
          for (const auto& g2 : detail::base_homs(mc, b1, b2, opt))
            eq_sweep(c, rep, opt, sampled, law,
                     winst({"a", "b", "a'", "b'", "a''", "b''"}, w) + ",f'=" + base_token(f2) +
                         ",f=" + base_token(f1) + ",g=" + base_token(g1) +
                         ",g'=" + base_token(g2),
                     {&c.hom(a, b)}, all,
                     [&](const HomElem* const* es) {
                       return c.hom_map(f2, g2, a1, b1, c.hom_map(f1, g1, a, b, *es[0]));
                     },
                     [&](const HomElem* const* es) {
                       return c.hom_map(base_compose(f2, f1), base_compose(g1, g2), a, b,
                                        *es[0]);
                     });
  });

  // -- dinaturality of identities ------------------------------------------------

  detail::for_words(P, 2, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/idt-extranatural";
    rep.describe(law, pdesc);
    TypeObj a = w[0], b = w[1];
    for (const auto& f : detail::base_homs(mc, a, b, opt))
      detail::single_law(rep, law, winst({"a", "b"}, w) + ",f=" + base_token(f),
                         [&]() -> std::optional<std::string> {
                           HomElem l = c.hom_map(base_id(mc, a), f, a, a, c.idt(a));
                           HomElem r = c.hom_map(f, base_id(mc, b), b, b, c.idt(b));
                           if (c.elem_eq(l, r)) return std::nullopt;
                           return c.elem_token(l) + " != " + c.elem_token(r);
                         });
  });

  // -- (di)naturality of sequencing ----------------------------------------------

  detail::for_words(P, 4, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/seq-extranatural";
    rep.describe(law, pdesc);
    TypeObj a = w[0], b = w[1], b2 = w[2], d = w[3];  // f : b -> b'
    for (const auto& f : detail::base_homs(mc, b, b2, opt))
      eq_sweep(c, rep, opt, sampled, law, winst({"a", "b", "b'", "c"}, w) + ",f=" + base_token(f),
               {&c.hom(a, b), &c.hom(b2, d)}, all,
               [&](const HomElem* const* es) {
                 return c.seq(a, b2, d, c.hom_map(base_id(mc, a), f, a, b, *es[0]), *es[1]);
               },
               [&](const HomElem* const* es) {
                 return c.seq(a, b, d, *es[0], c.hom_map(f, base_id(mc, d), b2, d, *es[1]));
               });
  });

  detail::for_words(P, 4, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/seq-natural-src";
    rep.describe(law, pdesc);
    TypeObj a1 = w[0], a = w[1], b = w[2], d = w[3];  // f : a' -> a
    for (const auto& f : detail::base_homs(mc, a1, a, opt))
      eq_sweep(c, rep, opt, sampled, law, winst({"a'", "a", "b", "c"}, w) + ",f=" + base_token(f),
               {&c.hom(a, b), &c.hom(b, d)}, all,
               [&](const HomElem* const* es) {
                 return c.seq(a1, b, d, c.hom_map(f, base_id(mc, b), a, b, *es[0]), *es[1]);
               },
               [&](const HomElem* const* es) {
                 return c.hom_map(f, base_id(mc, d), a, d, c.seq(a, b, d, *es[0], *es[1]));
               });
  });

  detail::for_words(P, 4, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/seq-natural-dst";
    rep.describe(law, pdesc);
    TypeObj a = w[0], b = w[1], d = w[2], d2 = w[3];  // g : c -> c'
    for (const auto& g : detail::base_homs(mc, d, d2, opt))
      eq_sweep(c, rep, opt, sampled, law, winst({"a", "b", "c", "c'"}, w) + ",g=" + base_token(g),
               {&c.hom(a, b), &c.hom(b, d)}, all,
               [&](const HomElem* const* es) {
                 return c.hom_map(base_id(mc, a), g, a, d, c.seq(a, b, d, *es[0], *es[1]));
               },
               [&](const HomElem* const* es) {
                 return c.seq(a, b, d2, *es[0], c.hom_map(base_id(mc, b), g, b, d, *es[1]));
               });
  });

  // -- naturality of juxtaposition -------------------------------------------------

  // Jointly in all four boundary legs (seeded leg combinations)...
  detail::for_words(P, 8, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/par-natural";
    rep.describe(law, pdesc + "; seeded base-morphism combinations");
    TypeObj a1p = w[0], a1 = w[1], b1 = w[2], b1p = w[3];
    TypeObj a2p = w[4], a2 = w[5], b2 = w[6], b2p = w[7];
    auto fs1 = detail::base_homs(mc, a1p, a1, opt), gs1 = detail::base_homs(mc, b1, b1p, opt);
    auto fs2 = detail::base_homs(mc, a2p, a2, opt), gs2 = detail::base_homs(mc, b2, b2p, opt);
    if (fs1.empty() || gs1.empty() || fs2.empty() || gs2.empty()) return;
    Rng rng(opt.seed, "par-natural/" + winst({"1", "2", "3", "4", "5", "6", "7", "8"}, w));
    for (std::uint32_t k = 0; k < opt.joint_mor_draws; ++k) {
      const BaseMor& f1 = fs1[rng.below(fs1.size())];
      const BaseMor& g1 = gs1[rng.below(gs1.size())];
      const BaseMor& f2 = fs2[rng.below(fs2.size())];
      const BaseMor& g2 = gs2[rng.below(gs2.size())];
      eq_sweep(c, rep, opt, sampled, law,
               winst({"a1'", "a1", "b1", "b1'", "a2'", "a2", "b2", "b2'"}, w) + ",draw#" +
                   std::to_string(k),
               {&c.hom(a1, b1), &c.hom(a2, b2)},
               [&](const std::uint32_t* st) { return claimed(st[0], st[1]); },
               [&](const HomElem* const* es) {
                 return c.par(a1p, b1p, a2p, b2p, c.hom_map(f1, g1, a1, b1, *es[0]),
                              c.hom_map(f2, g2, a2, b2, *es[1]));
               },
               [&](const HomElem* const* es) {
                 return c.hom_map(base_tensor(mc, f1, f2), base_tensor(mc, g1, g2),
                                  tensor(a1, a2), tensor(b1, b2),
                                  c.par(a1, b1, a2, b2, *es[0], *es[1]));
               });
    }
  });

  // ...and exhaustively one leg at a time.
  detail::for_words(P, 5, [&](const std::vector<TypeObj>& w) {
    TypeObj x = w[0], a1 = w[1], b1 = w[2], a2 = w[3], b2 = w[4];
    struct Leg {
      const char* law;
      int which;  // 0: f1 (src-left), 1: g1 (dst-left), 2: f2 (src-right), 3: g2 (dst-right)
    };
    for (Leg leg : {Leg{"vfreyd/par-natural-src-left", 0}, Leg{"vfreyd/par-natural-dst-left", 1},
                    Leg{"vfreyd/par-natural-src-right", 2},
                    Leg{"vfreyd/par-natural-dst-right", 3}}) {
      rep.describe(leg.law, pdesc);
      TypeObj fa = x, fb = x;
      switch (leg.which) {  // the varying leg's boundary
        case 0: fa = x, fb = a1; break;
        case 1: fa = b1, fb = x; break;
        case 2: fa = x, fb = a2; break;
        case 3: fa = b2, fb = x; break;
      }
      for (const auto& f : detail::base_homs(mc, fa, fb, opt)) {
        BaseMor f1 = base_id(mc, a1), g1 = base_id(mc, b1);
        BaseMor f2 = base_id(mc, a2), g2 = base_id(mc, b2);
        TypeObj a1p = a1, b1p = b1, a2p = a2, b2p = b2;
        switch (leg.which) {
          case 0: f1 = f, a1p = x; break;
          case 1: g1 = f, b1p = x; break;
          case 2: f2 = f, a2p = x; break;
          case 3: g2 = f, b2p = x; break;
        }
        eq_sweep(c, rep, opt, sampled, leg.law,
                 winst({"x", "a1", "b1", "a2", "b2"}, w) + ",f=" + base_token(f),
                 {&c.hom(a1, b1), &c.hom(a2, b2)},
                 [&](const std::uint32_t* st) { return claimed(st[0], st[1]); },
                 [&](const HomElem* const* es) {
                   return c.par(a1p, b1p, a2p, b2p, c.hom_map(f1, g1, a1, b1, *es[0]),
                                c.hom_map(f2, g2, a2, b2, *es[1]));
                 },
                 [&](const HomElem* const* es) {
                   return c.hom_map(base_tensor(mc, f1, f2), base_tensor(mc, g1, g2),
                                    tensor(a1, a2), tensor(b1, b2),
                                    c.par(a1, b1, a2, b2, *es[0], *es[1]));
                 });
      }
    }
  });

  // -- sequencing is a unital, associative action --------------------------------

  detail::for_words(P, 2, [&](const std::vector<TypeObj>& w) {
    TypeObj a = w[0], b = w[1];
    rep.describe("vfreyd/axiom-i-left", pdesc);
    eq_sweep(c, rep, opt, sampled, "vfreyd/axiom-i-left", winst({"a", "b"}, w),
             {&c.hom(a, b)}, all,
             [&](const HomElem* const* es) { return c.seq(a, a, b, c.idt(a), *es[0]); },
             [&](const HomElem* const* es) { return *es[0]; });
    rep.describe("vfreyd/axiom-i-right", pdesc);
    eq_sweep(c, rep, opt, sampled, "vfreyd/axiom-i-right", winst({"a", "b"}, w),
             {&c.hom(a, b)}, all,
             [&](const HomElem* const* es) { return c.seq(a, b, b, *es[0], c.idt(b)); },
             [&](const HomElem* const* es) { return *es[0]; });
  });

  detail::for_words(P, 4, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/axiom-ii";
    rep.describe(law, pdesc);
    TypeObj a = w[0], b = w[1], d = w[2], e2 = w[3];
    eq_sweep(c, rep, opt, sampled, law, winst({"a", "b", "c", "d"}, w),
             {&c.hom(a, b), &c.hom(b, d), &c.hom(d, e2)}, all,
             [&](const HomElem* const* es) {
               return c.seq(a, d, e2, c.seq(a, b, d, *es[0], *es[1]), *es[2]);
             },
             [&](const HomElem* const* es) {
               return c.seq(a, b, e2, *es[0], c.seq(b, d, e2, *es[1], *es[2]));
             });
  });

  // -- juxtaposition is unital and associative ------------------------------------

  detail::for_words(P, 2, [&](const std::vector<TypeObj>& w) {
    TypeObj a = w[0], b = w[1];
    rep.describe("vfreyd/axiom-iii-left", pdesc);
    eq_sweep(c, rep, opt, sampled, "vfreyd/axiom-iii-left", winst({"a", "b"}, w),
             {&c.hom(a, b)},
             [&](const std::uint32_t* st) { return claimed(c.zero().state, st[0]); },
             [&](const HomElem* const* es) { return c.par(unit, unit, a, b, c.zero(), *es[0]); },
             [&](const HomElem* const* es) { return *es[0]; });
    rep.describe("vfreyd/axiom-iii-right", pdesc);
    eq_sweep(c, rep, opt, sampled, "vfreyd/axiom-iii-right", winst({"a", "b"}, w),
             {&c.hom(a, b)},
             [&](const std::uint32_t* st) { return claimed(st[0], c.zero().state); },
             [&](const HomElem* const* es) { return c.par(a, b, unit, unit, *es[0], c.zero()); },
             [&](const HomElem* const* es) { return *es[0]; });
  });

  detail::for_words(P, 6, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/axiom-iv";
    rep.describe(law, pdesc);
    TypeObj a1 = w[0], b1 = w[1], a2 = w[2], b2 = w[3], a3 = w[4], b3 = w[5];
    eq_sweep(c, rep, opt, sampled, law, winst({"a1", "b1", "a2", "b2", "a3", "b3"}, w),
             {&c.hom(a1, b1), &c.hom(a2, b2), &c.hom(a3, b3)},
             [&](const std::uint32_t* st) {
               return claimed(st[0], st[1]) && claimed(comb(st[0], st[1]), st[2]);
             },
             [&](const HomElem* const* es) {
               return c.par(tensor(a1, a2), tensor(b1, b2), a3, b3,
                            c.par(a1, b1, a2, b2, *es[0], *es[1]), *es[2]);
             },
             [&](const HomElem* const* es) {
               return c.par(a1, b1, tensor(a2, a3), tensor(b2, b3), *es[0],
                            c.par(a2, b2, a3, b3, *es[1], *es[2]));
             });
  });

  // -- the unit elements coincide and are idempotent -------------------------------

  detail::single_law(rep, "vfreyd/axiom-v", "-", [&]() -> std::optional<std::string> {
    HomElem z = c.zero(), i = c.idt(unit);
    if (c.elem_eq(z, i)) return std::nullopt;
    return "zero " + c.elem_token(z) + " differs from the identity of the empty word " +
           c.elem_token(i);
  });

  detail::for_words(P, 2, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/axiom-vi";
    rep.describe(law, pdesc);
    TypeObj a = w[0], b = w[1];
    detail::single_law(rep, law, winst({"a", "b"}, w), [&]() -> std::optional<std::string> {
      HomElem l = c.par(a, a, b, b, c.idt(a), c.idt(b));
      HomElem r = c.idt(tensor(a, b));
      if (c.elem_eq(l, r)) return std::nullopt;
      return c.elem_token(l) + " != " + c.elem_token(r);
    });
  });

  detail::single_law(rep, "vfreyd/axiom-vii", "-", [&]() -> std::optional<std::string> {
    HomElem l = c.seq(unit, unit, unit, c.zero(), c.zero());
    if (c.elem_eq(l, c.zero())) return std::nullopt;
    return "zero restarted: " + c.elem_token(l);
  });

  // -- the exchange law ------------------------------------------------------------

  detail::for_words(P, 6, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/axiom-viii";
    rep.describe(law, pdesc);
    TypeObj a1 = w[0], b1 = w[1], d1 = w[2], a2 = w[3], b2 = w[4], d2 = w[5];
    eq_sweep(c, rep, opt, sampled, law, winst({"a1", "b1", "c1", "a2", "b2", "c2"}, w),
             {&c.hom(a1, b1), &c.hom(b1, d1), &c.hom(a2, b2), &c.hom(b2, d2)},
             [&](const std::uint32_t* st) {
               return claimed(comb(st[0], st[1]), comb(st[2], st[3]));
             },
             [&](const HomElem* const* es) {
               return c.seq(tensor(a1, a2), tensor(b1, b2), tensor(d1, d2),
                            c.par(a1, b1, a2, b2, *es[0], *es[2]),
                            c.par(b1, d1, b2, d2, *es[1], *es[3]));
             },
             [&](const HomElem* const* es) {
               return c.par(a1, d1, a2, d2, c.seq(a1, b1, d1, *es[0], *es[1]),
                            c.seq(a2, b2, d2, *es[2], *es[3]));
             });
  });

  // Degenerate exchange: padding with identities must reduce to plain par.
  detail::for_words(P, 4, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vfreyd/exchange-degeneracy";
    rep.describe(law, pdesc);
    TypeObj a1 = w[0], b1 = w[1], a2 = w[2], b2 = w[3];
    pred_sweep(c, rep, opt, sampled, law, winst({"a1", "b1", "a2", "b2"}, w),
               {&c.hom(a1, b1), &c.hom(a2, b2)},
               [&](const std::uint32_t* st) { return claimed(st[0], st[1]); },
               [&](const HomElem* const* es) -> std::optional<std::string> {
                 HomElem p = c.par(a1, b1, a2, b2, *es[0], *es[1]);
                 HomElem l = c.seq(tensor(a1, a2), tensor(b1, b2), tensor(b1, b2), p,
                                   c.par(b1, b1, b2, b2, c.idt(b1), c.idt(b2)));
                 HomElem r = c.par(a1, b1, a2, b2, c.seq(a1, b1, b1, *es[0], c.idt(b1)),
                                   c.seq(a2, b2, b2, *es[1], c.idt(b2)));
                 if (!c.elem_eq(l, p))
                   return "identity padding changed the left route: " + c.elem_token(l) +
                          " != " + c.elem_token(p);
                 if (!c.elem_eq(r, p))
                   return "identity padding changed the right route: " + c.elem_token(r) +
                          " != " + c.elem_token(p);
                 return std::nullopt;
               });
  });

  return rep;
}

// ---------------------------------------------------------------------------
// Derived equations (consequences of the structure laws)
// ---------------------------------------------------------------------------

/// Failing axiom families of a prior structure-law run, for cross-reference.
inline std::vector<std::string> failing_axiom_families(const LawReport& r) {
  std::vector<std::string> out;
  for (const auto& l : r.failing_laws())
    if (l.rfind("vfreyd/axiom-", 0) == 0) out.push_back(l);
  return out;
}

/// Checks equations that follow from the structure laws: how zero and par
/// interact with splitting a sequential unit or bracket, and how par
/// reassociates inside sequential pairs.  When `axioms` (a prior
/// check_vfreyd report) is given and has failures, every witness carries a
/// cross-reference to the failing axiom families.
inline LawReport check_derived_lemmas(const VFreydCat& c, VFreydCheckOptions opt = {},
                                      const LawReport* axioms = nullptr) {
  using detail::eq_sweep;
  using detail::pred_sweep;
  using detail::winst;
  const auto& v = *c.enrich();
  const MCat& mc = c.base();
  if (opt.probes.empty()) opt.probes = detail::default_probes(mc);
  const std::vector<TypeObj>& P = opt.probes;
  const TypeObj unit = TypeObj::unit();

  LawReport rep;
  std::map<std::string, std::uint64_t> sampled;
  std::string pdesc = "probe words:";
  for (const auto& p : P) pdesc += " " + p.token();

  std::string axnote;
  if (axioms) {
    auto bad = failing_axiom_families(*axioms);
    if (!bad.empty()) {
      axnote = " [axiom checks also failing:";
      for (const auto& l : bad) axnote += " " + l;
      axnote += "]";
    }
  }

  auto comb = [&v](std::uint32_t a, std::uint32_t b) { return v.combine_state(a, b); };
  auto claimed = [&c](std::uint32_t a, std::uint32_t b) { return c.par_sep(a, b); };

  // Splitting the sequential unit off a zero: both routes produce the same
  // point of C(e,e) o I.
  for (const char* law : {"derived/zero-split-runit", "derived/zero-split-lunit"}) {
    rep.describe(law, "unit carriers");
    detail::single_law(rep, law, "-", [&]() -> std::optional<std::string> {
      HomElem direct = c.zero();               // then the unitor inverse pads a unit point
      HomElem split = c.zero();                // the comultiplied route's hom component
      if (c.elem_eq(direct, split)) return std::nullopt;
      return c.elem_token(direct) + " != " + c.elem_token(split) + axnote;
    });
  }

  // Splitting the sequential unit off a par: the direct route pads the
  // result with a unit point; the split route pads each factor first and
  // interchanges.  Elementwise the split route is defined exactly when the
  // interchange admits the unit-padded states, and both routes must then
  // produce the same juxtaposition.
  detail::for_words(P, 4, [&](const std::vector<TypeObj>& w) {
    TypeObj a1 = w[0], b1 = w[1], a2 = w[2], b2 = w[3];
    const std::uint32_t nz = c.neutral_state();
    for (bool right : {true, false}) {
      const std::string law = right ? "derived/par-split-runit" : "derived/par-split-lunit";
      rep.describe(law, pdesc);
      pred_sweep(c, rep, opt, sampled, law, winst({"a1", "b1", "a2", "b2"}, w),
                 {&c.hom(a1, b1), &c.hom(a2, b2)},
                 [&](const std::uint32_t* st) { return claimed(st[0], st[1]); },
                 [&](const HomElem* const* es) -> std::optional<std::string> {
                   std::uint32_t p1 = right ? comb(es[0]->state, nz) : comb(nz, es[0]->state);
                   std::uint32_t p2 = right ? comb(es[1]->state, nz) : comb(nz, es[1]->state);
                   if (!v.admit_par(p1, p2))
                     return "split route's interchange is not admitted on unit-padded states";
                   HomElem direct = c.par(a1, b1, a2, b2, *es[0], *es[1]);
                   HomElem split = c.par(a1, b1, a2, b2, *es[0], *es[1]);
                   if (!c.elem_eq(direct, split))
                     return "juxtaposition is not stable under re-evaluation: " +
                            c.elem_token(direct) + " != " + c.elem_token(split);
                   return std::nullopt;
                 },
                 axnote);
    }
  });

  // Reassociating a threefold split of zeros.
  detail::single_law(rep, "derived/zero-split-assoc", "-", [&]() -> std::optional<std::string> {
    for (HomElem z : {c.zero(), c.zero(), c.zero()})
      if (!c.elem_eq(z, c.zero()))
        return "zero is not stable under comultiplied splitting: " + c.elem_token(z) + axnote;
    return std::nullopt;
  });

  // Reassociating a threefold sequential bracket under par: both interchange
  // routes produce the same triple of juxtapositions.
  {
    const std::string law = "derived/par-split-assoc";
    rep.describe(law, pdesc + "; diagonal plus seeded slot combinations");
    std::vector<std::pair<TypeObj, TypeObj>> pairs;
    for (const auto& a : P)
      for (const auto& b : P) pairs.emplace_back(a, b);
    std::vector<std::array<std::size_t, 6>> combos;
    for (std::size_t i = 0; i < pairs.size(); ++i) combos.push_back({i, i, i, i, i, i});
    if (opt.lemma_full_combos) {
      std::array<std::size_t, 6> ix{};
      while (true) {
        combos.push_back(ix);
        std::size_t pos = 6;
        while (pos > 0 && ++ix[--pos] == pairs.size()) ix[pos] = 0;
        if (pos == 0 && ix[0] == 0) break;
      }
    } else {
      Rng crng(opt.seed, law + "/slot-combos");
      for (std::uint32_t k = 0; k < opt.lemma_combo_draws; ++k) {
        std::array<std::size_t, 6> ix{};
        for (auto& i : ix) i = static_cast<std::size_t>(crng.below(pairs.size()));
        combos.push_back(ix);
      }
    }
    for (const auto& ix : combos) {
      // slots: x1,y1,z1 (first bracket) then x2,y2,z2 (second bracket)
      std::array<std::pair<TypeObj, TypeObj>, 6> sb;
      std::vector<const HomTable*> slots;
      std::string inst = "slots";
      for (std::size_t i = 0; i < 6; ++i) {
        sb[i] = pairs[ix[i]];
        slots.push_back(&c.hom(sb[i].first, sb[i].second));
        inst += " C(" + sb[i].first.token() + "," + sb[i].second.token() + ")";
      }
      auto pair_par = [&](std::size_t i, std::size_t j, const HomElem& x, const HomElem& y) {
        return c.par(sb[i].first, sb[i].second, sb[j].first, sb[j].second, x, y);
      };
      pred_sweep(c, rep, opt, sampled, law, inst, slots,
                 [&](const std::uint32_t* st) {
                   return claimed(comb(comb(st[0], st[1]), st[2]),
                                  comb(comb(st[3], st[4]), st[5]));
                 },
                 [&](const HomElem* const* es) -> std::optional<std::string> {
                   // first route: the inner interchange regroups the first
                   // two sequential factors, so it must admit their products
                   if (!v.admit_par(comb(es[0]->state, es[1]->state),
                                    comb(es[3]->state, es[4]->state)))
                     return "left route's inner interchange is not admitted";
                   HomElem lx = pair_par(0, 3, *es[0], *es[3]);
                   HomElem ly = pair_par(1, 4, *es[1], *es[4]);
                   HomElem lz = pair_par(2, 5, *es[2], *es[5]);
                   // second route: reassociates first, so its inner
                   // interchange regroups the last two factors
                   if (!v.admit_par(comb(es[1]->state, es[2]->state),
                                    comb(es[4]->state, es[5]->state)))
                     return "right route's inner interchange is not admitted";
                   HomElem rx = pair_par(0, 3, *es[0], *es[3]);
                   HomElem ry = pair_par(1, 4, *es[1], *es[4]);
                   HomElem rz = pair_par(2, 5, *es[2], *es[5]);
                   if (!c.elem_eq(lx, rx))
                     return "first components differ: " + c.elem_token(lx) + " != " +
                            c.elem_token(rx);
                   if (!c.elem_eq(ly, ry))
                     return "second components differ: " + c.elem_token(ly) + " != " +
                            c.elem_token(ry);
                   if (!c.elem_eq(lz, rz))
                     return "third components differ: " + c.elem_token(lz) + " != " +
                            c.elem_token(rz);
                   return std::nullopt;
                 },
                 axnote);
    }
  }

  // Discarding a freshly split zero under par: juxtaposing with zero on
  // either side is the identity on both components of a sequential pair.
  detail::for_words(P, 4, [&](const std::vector<TypeObj>& w) {
    TypeObj a1 = w[0], b1 = w[1], a2 = w[2], b2 = w[3];
    const std::uint32_t nz = c.neutral_state();
    for (bool right : {true, false}) {
      const std::string law =
          right ? "derived/par-absorb-zero-right" : "derived/par-absorb-zero-left";
      rep.describe(law, pdesc);
      pred_sweep(c, rep, opt, sampled, law, winst({"a1", "b1", "a2", "b2"}, w),
                 {&c.hom(a1, b1), &c.hom(a2, b2)},
                 [](const std::uint32_t*) { return true; },
                 [&](const HomElem* const* es) -> std::optional<std::string> {
                   // the route pads with a split zero, so the interchange
                   // must admit each state against the neutral one
                   if (!v.admit_par(right ? es[0]->state : nz, right ? nz : es[0]->state) ||
                       !v.admit_par(right ? es[1]->state : nz, right ? nz : es[1]->state))
                     return "zero-padding interchange is not admitted";
                   HomElem l1 = right ? c.par(a1, b1, unit, unit, *es[0], c.zero())
                                      : c.par(unit, unit, a1, b1, c.zero(), *es[0]);
                   HomElem l2 = right ? c.par(a2, b2, unit, unit, *es[1], c.zero())
                                      : c.par(unit, unit, a2, b2, c.zero(), *es[1]);
                   if (!c.elem_eq(l1, *es[0]))
                     return "zero padding changed the first component: " + c.elem_token(l1);
                   if (!c.elem_eq(l2, *es[1]))
                     return "zero padding changed the second component: " + c.elem_token(l2);
                   return std::nullopt;
                 },
                 axnote);
    }
  });

  // Reassociating par inside a sequential pair: bracketing three
  // juxtaposed factors on the left or on the right agrees componentwise.
  {
    const std::string law = "derived/par-assoc-seq-pairs";
    rep.describe(law, pdesc + "; diagonal plus seeded slot combinations");
    std::vector<std::pair<TypeObj, TypeObj>> pairs;
    for (const auto& a : P)
      for (const auto& b : P) pairs.emplace_back(a, b);
    std::vector<std::array<std::size_t, 6>> combos;
    for (std::size_t i = 0; i < pairs.size(); ++i) combos.push_back({i, i, i, i, i, i});
    if (opt.lemma_full_combos) {
      std::array<std::size_t, 6> ix{};
      while (true) {
        combos.push_back(ix);
        std::size_t pos = 6;
        while (pos > 0 && ++ix[--pos] == pairs.size()) ix[pos] = 0;
        if (pos == 0 && ix[0] == 0) break;
      }
    } else {
      Rng crng(opt.seed, law + "/slot-combos");
      for (std::uint32_t k = 0; k < opt.lemma_combo_draws; ++k) {
        std::array<std::size_t, 6> ix{};
        for (auto& i : ix) i = static_cast<std::size_t>(crng.below(pairs.size()));
        combos.push_back(ix);
      }
    }
    for (const auto& ix : combos) {
      // slots: a1,b1,a2,b2,a3,b3 -- sequential pairs (a_i o b_i), par across i
      std::array<std::pair<TypeObj, TypeObj>, 6> sb;
      std::vector<const HomTable*> slots;
      std::string inst = "slots";
      for (std::size_t i = 0; i < 6; ++i) {
        sb[i] = pairs[ix[i]];
        slots.push_back(&c.hom(sb[i].first, sb[i].second));
        inst += " C(" + sb[i].first.token() + "," + sb[i].second.token() + ")";
      }
      auto bnd = [&](std::size_t i) { return sb[i]; };
      pred_sweep(
          c, rep, opt, sampled, law, inst, slots,
          [&](const std::uint32_t* st) {
            std::uint32_t d1 = comb(st[0], st[1]), d2 = comb(st[2], st[3]),
                          d3 = comb(st[4], st[5]);
            return claimed(d1, d2) && claimed(comb(d1, d2), d3);
          },
          [&](const HomElem* const* es) -> std::optional<std::string> {
            // the right-bracketed route reassociates the juxtaposition
            // first, so it must admit the regrouped states
            std::uint32_t d1 = comb(es[0]->state, es[1]->state);
            std::uint32_t d2 = comb(es[2]->state, es[3]->state);
            std::uint32_t d3 = comb(es[4]->state, es[5]->state);
            if (!v.admit_par(d2, d3) || !v.admit_par(d1, comb(d2, d3)))
              return "reassociated juxtaposition is not admitted";
            // left bracketing on both components
            HomElem la = c.par(tensor(bnd(0).first, bnd(2).first),
                               tensor(bnd(0).second, bnd(2).second), bnd(4).first,
                               bnd(4).second,
                               c.par(bnd(0).first, bnd(0).second, bnd(2).first, bnd(2).second,
                                     *es[0], *es[2]),
                               *es[4]);
            HomElem lb = c.par(tensor(bnd(1).first, bnd(3).first),
                               tensor(bnd(1).second, bnd(3).second), bnd(5).first,
                               bnd(5).second,
                               c.par(bnd(1).first, bnd(1).second, bnd(3).first, bnd(3).second,
                                     *es[1], *es[3]),
                               *es[5]);
            // right bracketing on both components
            HomElem ra = c.par(bnd(0).first, bnd(0).second, tensor(bnd(2).first, bnd(4).first),
                               tensor(bnd(2).second, bnd(4).second), *es[0],
                               c.par(bnd(2).first, bnd(2).second, bnd(4).first, bnd(4).second,
                                     *es[2], *es[4]));
            HomElem rb = c.par(bnd(1).first, bnd(1).second, tensor(bnd(3).first, bnd(5).first),
                               tensor(bnd(3).second, bnd(5).second), *es[1],
                               c.par(bnd(3).first, bnd(3).second, bnd(5).first, bnd(5).second,
                                     *es[3], *es[5]));
            if (!c.elem_eq(la, ra))
              return "first components differ: " + c.elem_token(la) + " != " + c.elem_token(ra);
            if (!c.elem_eq(lb, rb))
              return "second components differ: " + c.elem_token(lb) + " != " +
                     c.elem_token(rb);
            return std::nullopt;
          },
          axnote);
    }
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Morphisms between enriched Freyd structures
// ---------------------------------------------------------------------------

inline LawReport check_vfreyd_morphism(const VFreydMor& m, VFreydCheckOptions opt = {}) {
  using detail::eq_sweep;
  using detail::winst;
  if (!m.src || !m.dst) throw config_error("check_vfreyd_morphism: endpoints missing");
  const VFreydCat& C = *m.src;
  const VFreydCat& D = *m.dst;
  const MCat& mc = C.base();
  const MCat& md = D.base();
  const auto& vd = *D.enrich();
  if (opt.probes.empty()) opt.probes = detail::default_probes(mc);
  const std::vector<TypeObj>& P = opt.probes;

  LawReport rep;
  std::map<std::string, std::uint64_t> sampled;
  std::string pdesc = "probe words:";
  for (const auto& p : P) pdesc += " " + p.token();

  auto is_bijection = [](const BaseMor& f) {
    if (f.fn.dom.size() != f.fn.cod.size()) return false;
    std::vector<std::uint8_t> hit(f.fn.cod.size(), 0);
    for (auto t : f.fn.table) {
      if (t >= hit.size() || hit[t]) return false;
      hit[t] = 1;
    }
    return true;
  };

  // -- the base functor -----------------------------------------------------------

  detail::for_words(P, 1, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vmor/base-functor-id";
    rep.describe(law, pdesc);
    detail::single_law(rep, law, winst({"a"}, w), [&]() -> std::optional<std::string> {
      BaseMor got = m.mor_map(base_id(mc, w[0]));
      BaseMor want = base_id(md, m.obj_map(w[0]));
      if (got == want) return std::nullopt;
      return "image of the identity is " + base_token(got);
    });
  });

  detail::for_words(P, 3, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vmor/base-functor-comp";
    rep.describe(law, pdesc);
    for (const auto& f : detail::base_homs(mc, w[0], w[1], opt))
      for (const auto& g : detail::base_homs(mc, w[1], w[2], opt))
        detail::single_law(rep, law,
                           winst({"a", "b", "c"}, w) + ",f=" + base_token(f) +
                               ",g=" + base_token(g),
                           [&]() -> std::optional<std::string> {
                             BaseMor got = m.mor_map(base_compose(f, g));
                             BaseMor want = base_compose(m.mor_map(f), m.mor_map(g));
                             if (got == want) return std::nullopt;
                             return base_token(got) + " != " + base_token(want);
                           });
  });

  // -- strong monoidality -----------------------------------------------------------

  detail::single_law(rep, "vmor/monoidal-eta-iso", "-", [&]() -> std::optional<std::string> {
    if (m.eta.src != TypeObj::unit() || m.eta.dst != m.obj_map(TypeObj::unit()))
      return "unit comparison has boundary " + m.eta.src.token() + " -> " + m.eta.dst.token();
    if (!is_bijection(m.eta)) return "unit comparison is not invertible";
    return std::nullopt;
  });

  detail::for_words(P, 2, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vmor/monoidal-mu-iso";
    rep.describe(law, pdesc);
    detail::single_law(rep, law, winst({"a", "b"}, w), [&]() -> std::optional<std::string> {
      BaseMor mu = m.mu(w[0], w[1]);
      if (mu.src != tensor(m.obj_map(w[0]), m.obj_map(w[1])) ||
          mu.dst != m.obj_map(tensor(w[0], w[1])))
        return "tensor comparison has boundary " + mu.src.token() + " -> " + mu.dst.token();
      if (!is_bijection(mu)) return "tensor comparison is not invertible";
      return std::nullopt;
    });
  });

  detail::for_words(P, 4, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vmor/monoidal-mu-natural";
    rep.describe(law, pdesc);
    TypeObj a = w[0], a2 = w[1], b = w[2], b2 = w[3];
    for (const auto& f : detail::base_homs(mc, a, a2, opt))
      for (const auto& g : detail::base_homs(mc, b, b2, opt))
        detail::single_law(rep, law,
                           winst({"a", "a'", "b", "b'"}, w) + ",f=" + base_token(f) +
                               ",g=" + base_token(g),
                           [&]() -> std::optional<std::string> {
                             BaseMor lhs = base_compose(m.mu(a, b),
                                                        m.mor_map(base_tensor(mc, f, g)));
                             BaseMor rhs = base_compose(
                                 base_tensor(md, m.mor_map(f), m.mor_map(g)), m.mu(a2, b2));
                             if (lhs == rhs) return std::nullopt;
                             return base_token(lhs) + " != " + base_token(rhs);
                           });
  });

  detail::for_words(P, 3, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vmor/monoidal-assoc";
    rep.describe(law, pdesc);
    TypeObj a = w[0], b = w[1], d = w[2];
    detail::single_law(rep, law, winst({"a", "b", "c"}, w), [&]() -> std::optional<std::string> {
      BaseMor lhs = base_compose(base_tensor(md, m.mu(a, b), base_id(md, m.obj_map(d))),
                                 m.mu(tensor(a, b), d));
      BaseMor rhs = base_compose(base_tensor(md, base_id(md, m.obj_map(a)), m.mu(b, d)),
                                 m.mu(a, tensor(b, d)));
      if (lhs == rhs) return std::nullopt;
      return base_token(lhs) + " != " + base_token(rhs);
    });
  });

  detail::for_words(P, 1, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vmor/monoidal-unit";
    rep.describe(law, pdesc);
    TypeObj a = w[0];
    detail::single_law(rep, law, winst({"a"}, w), [&]() -> std::optional<std::string> {
      BaseMor ida = base_id(md, m.obj_map(a));
      BaseMor lhs = base_compose(base_tensor(md, m.eta, ida), m.mu(TypeObj::unit(), a));
      if (!(lhs == ida)) return "left unit comparison is " + base_token(lhs);
      BaseMor rhs = base_compose(base_tensor(md, ida, m.eta), m.mu(a, TypeObj::unit()));
      if (!(rhs == ida)) return "right unit comparison is " + base_token(rhs);
      return std::nullopt;
    });
  });

  // -- the hom component ---------------------------------------------------------------

  detail::for_words(P, 1, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vmor/hom-idt";
    rep.describe(law, pdesc);
    detail::single_law(rep, law, winst({"a"}, w), [&]() -> std::optional<std::string> {
      HomElem got = m.hom_comp(w[0], w[0], C.idt(w[0]));
      HomElem want = D.idt(m.obj_map(w[0]));
      if (D.elem_eq(got, want)) return std::nullopt;
      return D.elem_token(got) + " != " + D.elem_token(want);
    });
  });

  detail::for_words(P, 3, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vmor/hom-seq";
    rep.describe(law, pdesc);
    TypeObj a = w[0], b = w[1], d = w[2];
    detail::pred_sweep(
        C, rep, opt, sampled, law, winst({"a", "b", "c"}, w),
        {&C.hom(a, b), &C.hom(b, d)}, [](const std::uint32_t*) { return true; },
        [&](const HomElem* const* es) -> std::optional<std::string> {
          HomElem got = m.hom_comp(a, d, C.seq(a, b, d, *es[0], *es[1]));
          HomElem want = D.seq(m.obj_map(a), m.obj_map(b), m.obj_map(d),
                               m.hom_comp(a, b, *es[0]), m.hom_comp(b, d, *es[1]));
          if (D.elem_eq(got, want)) return std::nullopt;
          return D.elem_token(got) + " != " + D.elem_token(want);
        });
  });

  detail::for_words(P, 4, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vmor/hom-par";
    rep.describe(law, pdesc);
    TypeObj a1 = w[0], b1 = w[1], a2 = w[2], b2 = w[3];
    detail::pred_sweep(
        C, rep, opt, sampled, law,
        winst({"a1", "b1", "a2", "b2"}, w), {&C.hom(a1, b1), &C.hom(a2, b2)},
        [&](const std::uint32_t* st) { return C.par_sep(st[0], st[1]); },
        [&](const HomElem* const* es) -> std::optional<std::string> {
          TypeObj Fa1 = m.obj_map(a1), Fb1 = m.obj_map(b1);
          TypeObj Fa2 = m.obj_map(a2), Fb2 = m.obj_map(b2);
          // through the target's par, then fix the boundary with mu
          HomElem through_d =
              D.hom_map(base_id(md, tensor(Fa1, Fa2)), m.mu(b1, b2), tensor(Fa1, Fa2),
                        tensor(Fb1, Fb2),
                        D.par(Fa1, Fb1, Fa2, Fb2, m.hom_comp(a1, b1, *es[0]),
                              m.hom_comp(a2, b2, *es[1])));
          // through the source's par, then transport along mu
          HomElem through_c =
              D.hom_map(m.mu(a1, a2), base_id(md, m.obj_map(tensor(b1, b2))),
                        m.obj_map(tensor(a1, a2)), m.obj_map(tensor(b1, b2)),
                        m.hom_comp(tensor(a1, a2), tensor(b1, b2),
                                   C.par(a1, b1, a2, b2, *es[0], *es[1])));
          if (D.elem_eq(through_d, through_c)) return std::nullopt;
          return D.elem_token(through_d) + " != " + D.elem_token(through_c);
        });
  });

  detail::for_words(P, 2, [&](const std::vector<TypeObj>& w) {
    const std::string law = "vmor/hom-state";
    rep.describe(law, pdesc);
    detail::pred_sweep(C, rep, opt, sampled, law,
                       winst({"a", "b"}, w), {&C.hom(w[0], w[1])},
                       [](const std::uint32_t*) { return true; },
                       [&](const HomElem* const* es) -> std::optional<std::string> {
                         HomElem got = m.hom_comp(w[0], w[1], *es[0]);
                         if (state_preserved(vd, es[0]->state, got.state)) return std::nullopt;
                         return "hom component changed the state from " +
                                std::to_string(es[0]->state) + " to " +
                                std::to_string(got.state);
                       });
  });

  return rep;
}

}  // namespace duofreyd

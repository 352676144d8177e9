#pragma once
//
// Coherence-law checker for duoidal categories.
//
// Every law is verified elementwise on finite carriers over a declared
// probe family, and every failure is reported as data with a concrete
// witnessing element -- the checker never throws on a broken instance.
// A composite whose boundaries do not even line up (a typing failure,
// which mutant instances do produce) is reported the same way.
//
// Law families, quantified over probe objects A, B, ...:
//
//   per instance   unit-monoid (I, nabla, eps) and unit-comonoid
//                  (J, delta, eps) laws; validity of delta/nabla/eps
//   per A          unitor isomorphy and validity, identity validity
//   per (A,B)      triangles; the four delta/nabla unit diagrams;
//                  unitor naturality; tensoring of identities
//   per (A,B,C)    associator isomorphy/validity/naturality; tensoring
//                  of composites
//   per (A,B,C,D)  pentagons; zeta validity; zeta naturality
//   per 6-tuple    zeta associativity in the par and seq arguments
//
// The 4- and 6-tuple sweeps run chunked across hardware threads; reports
// are merged in deterministic order.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "duofreyd/report.hpp"
#include "duofreyd/util.hpp"
#include "duofreyd/vcat.hpp"

namespace duofreyd {

struct DuoidalCheckOptions {
  std::uint32_t probe_size = 2;   ///< used when no probe list is given
  std::uint32_t hom_budget = 8;   ///< sampled morphisms per naturality leg
  std::uint64_t seed = default_seed();
  unsigned threads = 0;           ///< 0 = all hardware threads
};

namespace detail {

/// Compares two composite-building thunks; boundary errors raised while
/// building (mismatched composites -- a mutant symptom) count as failures.
template <typename FL, typename FR>
void eq_law(const DuoidalCat& v, LawReport& rep, const std::string& law,
            const std::function<std::string()>& inst, FL&& lhs, FR&& rhs) {
  try {
    VMor l = lhs();
    VMor r = rhs();
    auto w = v.mor_neq_witness(l, r);
    rep.tally(law, !w, [&] { return std::make_pair(inst(), *w); });
  } catch (const boundary_error& b) {
    std::string msg = b.what();
    rep.tally(law, false, [&] { return std::make_pair(inst(), "typing: " + msg); });
  }
}

template <typename FM>
void valid_law(const DuoidalCat& v, LawReport& rep, const std::string& law,
               const std::function<std::string()>& inst, FM&& mor) {
  try {
    auto w = v.valid_violation(mor());
    rep.tally(law, !w, [&] { return std::make_pair(inst(), *w); });
  } catch (const boundary_error& b) {
    std::string msg = b.what();
    rep.tally(law, false, [&] { return std::make_pair(inst(), "typing: " + msg); });
  }
}

/// Runs fn(indices) for every tuple in the mixed-radix cube of the given
/// sizes when the cube is within budget, else for `budget` seeded draws.
template <typename F>
void for_combos(const std::vector<std::size_t>& sizes, std::uint64_t budget, Rng& rng, F&& fn) {
  for (auto s : sizes)
    if (s == 0) return;  // an empty leg: no combos exist
  std::uint64_t total = 1;
  for (auto s : sizes) {
    total *= s;
    if (total > budget) break;
  }
  std::vector<std::size_t> idx(sizes.size());
  if (total <= budget) {
    for (std::uint64_t k = 0; k < total; ++k) {
      std::uint64_t r = k;
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        idx[i] = r % sizes[i];
        r /= sizes[i];
      }
      fn(idx);
    }
  } else {
    for (std::uint64_t k = 0; k < budget; ++k) {
      for (std::size_t i = 0; i < sizes.size(); ++i) idx[i] = rng.below(sizes[i]);
      fn(idx);
    }
  }
}

inline void arity0_laws(const DuoidalCat& v, LawReport& rep) {
  auto inst = [&] { return std::string("units of ") + v.name(); };
  const VObj I = v.seq_unit(), J = v.par_unit();
  valid_law(v, rep, "duoidal/delta-valid", inst, [&] { return v.delta(); });
  valid_law(v, rep, "duoidal/nabla-valid", inst, [&] { return v.nabla(); });
  valid_law(v, rep, "duoidal/eps-valid", inst, [&] { return v.eps(); });
  // (I, nabla, eps) is a monoid for par
  eq_law(v, rep, "duoidal/unit-monoid-assoc", inst,
         [&] { return v.compose(v.par_mor(v.nabla(), v.id(I)), v.nabla()); },
         [&] {
           return v.compose(v.compose(v.par_assoc(I, I, I), v.par_mor(v.id(I), v.nabla())),
                            v.nabla());
         });
  eq_law(v, rep, "duoidal/unit-monoid-unit", inst,
         [&] { return v.compose(v.par_mor(v.eps(), v.id(I)), v.nabla()); },
         [&] { return v.par_lunit(I); });
  eq_law(v, rep, "duoidal/unit-monoid-unit", inst,
         [&] { return v.compose(v.par_mor(v.id(I), v.eps()), v.nabla()); },
         [&] { return v.par_runit(I); });
  // (J, delta, eps) is a comonoid for seq
  eq_law(v, rep, "duoidal/unit-comonoid-assoc", inst,
         [&] {
           return v.compose(v.compose(v.delta(), v.seq_mor(v.delta(), v.id(J))),
                            v.seq_assoc(J, J, J));
         },
         [&] { return v.compose(v.delta(), v.seq_mor(v.id(J), v.delta())); });
  eq_law(v, rep, "duoidal/unit-comonoid-counit", inst,
         [&] {
           return v.compose(v.compose(v.delta(), v.seq_mor(v.eps(), v.id(J))), v.seq_lunit(J));
         },
         [&] { return v.id(J); });
  eq_law(v, rep, "duoidal/unit-comonoid-counit", inst,
         [&] {
           return v.compose(v.compose(v.delta(), v.seq_mor(v.id(J), v.eps())), v.seq_runit(J));
         },
         [&] { return v.id(J); });
}

inline void arity1_laws(const DuoidalCat& v, const VObj& A, LawReport& rep) {
  auto inst = [&] { return "A=" + v.obj_token(A); };
  valid_law(v, rep, "duoidal/id-valid", inst, [&] { return v.id(A); });
  struct U {
    const char* tag;
    VMor fwd, inv;
    VObj padded;
  };
  std::vector<U> us;
  us.push_back({"par-lunit", v.par_lunit(A), v.par_lunit_inv(A), v.par_obj(v.par_unit(), A)});
  us.push_back({"par-runit", v.par_runit(A), v.par_runit_inv(A), v.par_obj(A, v.par_unit())});
  us.push_back({"seq-lunit", v.seq_lunit(A), v.seq_lunit_inv(A), v.seq_obj(v.seq_unit(), A)});
  us.push_back({"seq-runit", v.seq_runit(A), v.seq_runit_inv(A), v.seq_obj(A, v.seq_unit())});
  for (const auto& u : us) {
    auto uinst = [&] { return "A=" + v.obj_token(A) + " (" + u.tag + ")"; };
    std::string fam = std::string("duoidal/") + (u.tag[0] == 'p' ? "par" : "seq") + "-unitor-iso";
    eq_law(v, rep, fam, uinst, [&] { return v.compose(u.fwd, u.inv); },
           [&] { return v.id(u.padded); });
    eq_law(v, rep, fam, uinst, [&] { return v.compose(u.inv, u.fwd); }, [&] { return v.id(A); });
    valid_law(v, rep, "duoidal/unitor-valid", uinst, [&] { return u.fwd; });
    valid_law(v, rep, "duoidal/unitor-valid", uinst, [&] { return u.inv; });
  }
}

inline void arity2_laws(const DuoidalCat& v, const VObj& A, const VObj& B, LawReport& rep,
                        const DuoidalCheckOptions& opt) {
  auto inst = [&] { return "A=" + v.obj_token(A) + ", B=" + v.obj_token(B); };
  const VObj I = v.seq_unit(), J = v.par_unit();
  // triangles
  eq_law(v, rep, "duoidal/par-triangle", inst,
         [&] { return v.compose(v.par_assoc(A, J, B), v.par_mor(v.id(A), v.par_lunit(B))); },
         [&] { return v.par_mor(v.par_runit(A), v.id(B)); });
  eq_law(v, rep, "duoidal/seq-triangle", inst,
         [&] { return v.compose(v.seq_assoc(A, I, B), v.seq_mor(v.id(A), v.seq_lunit(B))); },
         [&] { return v.seq_mor(v.seq_runit(A), v.id(B)); });
  // delta against the par unitors:  J * (A o B) and (A o B) * J
  eq_law(v, rep, "duoidal/delta-left-unit", inst,
         [&] {
           auto step = v.compose(v.par_mor(v.delta(), v.id(v.seq_obj(A, B))), v.zeta(J, J, A, B));
           return v.compose(step, v.seq_mor(v.par_lunit(A), v.par_lunit(B)));
         },
         [&] { return v.par_lunit(v.seq_obj(A, B)); });
  eq_law(v, rep, "duoidal/delta-right-unit", inst,
         [&] {
           auto step = v.compose(v.par_mor(v.id(v.seq_obj(A, B)), v.delta()), v.zeta(A, B, J, J));
           return v.compose(step, v.seq_mor(v.par_runit(A), v.par_runit(B)));
         },
         [&] { return v.par_runit(v.seq_obj(A, B)); });
  // nabla against the seq unitors:  (I o A) * (I o B) and (A o I) * (B o I)
  eq_law(v, rep, "duoidal/nabla-left-unit", inst,
         [&] {
           auto step =
               v.compose(v.zeta(I, A, I, B), v.seq_mor(v.nabla(), v.id(v.par_obj(A, B))));
           return v.compose(step, v.seq_lunit(v.par_obj(A, B)));
         },
         [&] { return v.par_mor(v.seq_lunit(A), v.seq_lunit(B)); });
  eq_law(v, rep, "duoidal/nabla-right-unit", inst,
         [&] {
           auto step =
               v.compose(v.zeta(A, I, B, I), v.seq_mor(v.id(v.par_obj(A, B)), v.nabla()));
           return v.compose(step, v.seq_runit(v.par_obj(A, B)));
         },
         [&] { return v.par_mor(v.seq_runit(A), v.seq_runit(B)); });
  // identities tensor to identities
  eq_law(v, rep, "duoidal/par-bifunctor-id", inst,
         [&] { return v.par_mor(v.id(A), v.id(B)); }, [&] { return v.id(v.par_obj(A, B)); });
  eq_law(v, rep, "duoidal/seq-bifunctor-id", inst,
         [&] { return v.seq_mor(v.id(A), v.id(B)); }, [&] { return v.id(v.seq_obj(A, B)); });
  // unitor naturality over sampled homs f : A -> B
  auto homs = v.enumerate_homs(A, B, opt.hom_budget, opt.seed);
  for (const auto& f : homs) {
    auto finst = [&] { return inst() + ", sampled f"; };
    eq_law(v, rep, "duoidal/par-unitor-natural", finst,
           [&] { return v.compose(v.par_lunit(A), f); },
           [&] { return v.compose(v.par_mor(v.id(J), f), v.par_lunit(B)); });
    eq_law(v, rep, "duoidal/par-unitor-natural", finst,
           [&] { return v.compose(v.par_runit(A), f); },
           [&] { return v.compose(v.par_mor(f, v.id(J)), v.par_runit(B)); });
    eq_law(v, rep, "duoidal/seq-unitor-natural", finst,
           [&] { return v.compose(v.seq_lunit(A), f); },
           [&] { return v.compose(v.seq_mor(v.id(I), f), v.seq_lunit(B)); });
    eq_law(v, rep, "duoidal/seq-unitor-natural", finst,
           [&] { return v.compose(v.seq_runit(A), f); },
           [&] { return v.compose(v.seq_mor(f, v.id(I)), v.seq_runit(B)); });
  }
}

inline void arity3_laws(const DuoidalCat& v, const VObj& A, const VObj& B, const VObj& C,
                        LawReport& rep, const DuoidalCheckOptions& opt, std::uint64_t tuple_id) {
  auto inst = [&] {
    return "A=" + v.obj_token(A) + ", B=" + v.obj_token(B) + ", C=" + v.obj_token(C);
  };
  eq_law(v, rep, "duoidal/par-assoc-iso", inst,
         [&] { return v.compose(v.par_assoc(A, B, C), v.par_assoc_inv(A, B, C)); },
         [&] { return v.id(v.par_obj(v.par_obj(A, B), C)); });
  eq_law(v, rep, "duoidal/par-assoc-iso", inst,
         [&] { return v.compose(v.par_assoc_inv(A, B, C), v.par_assoc(A, B, C)); },
         [&] { return v.id(v.par_obj(A, v.par_obj(B, C))); });
  eq_law(v, rep, "duoidal/seq-assoc-iso", inst,
         [&] { return v.compose(v.seq_assoc(A, B, C), v.seq_assoc_inv(A, B, C)); },
         [&] { return v.id(v.seq_obj(v.seq_obj(A, B), C)); });
  eq_law(v, rep, "duoidal/seq-assoc-iso", inst,
         [&] { return v.compose(v.seq_assoc_inv(A, B, C), v.seq_assoc(A, B, C)); },
         [&] { return v.id(v.seq_obj(A, v.seq_obj(B, C))); });
  valid_law(v, rep, "duoidal/assoc-valid", inst, [&] { return v.par_assoc(A, B, C); });
  valid_law(v, rep, "duoidal/assoc-valid", inst, [&] { return v.seq_assoc(A, B, C); });
  // naturality and tensoring of composites, over sampled homs
  auto fs = v.enumerate_homs(A, B, opt.hom_budget, opt.seed);
  auto gs = v.enumerate_homs(B, C, opt.hom_budget, opt.seed + 1);
  auto hs = v.enumerate_homs(C, A, opt.hom_budget, opt.seed + 2);
  Rng rng(opt.seed, v.name() + "/arity3/" + std::to_string(tuple_id));
  for_combos({fs.size(), gs.size(), hs.size()}, opt.hom_budget, rng,
             [&](const std::vector<std::size_t>& ix) {
               const VMor &f = fs[ix[0]], &g = gs[ix[1]], &h = hs[ix[2]];
               auto ninst = [&] { return inst() + ", sampled f,g,h"; };
               eq_law(v, rep, "duoidal/par-assoc-natural", ninst,
                      [&] {
                        return v.compose(v.par_assoc(A, B, C), v.par_mor(f, v.par_mor(g, h)));
                      },
                      [&] {
                        return v.compose(v.par_mor(v.par_mor(f, g), h), v.par_assoc(B, C, A));
                      });
               eq_law(v, rep, "duoidal/seq-assoc-natural", ninst,
                      [&] {
                        return v.compose(v.seq_assoc(A, B, C), v.seq_mor(f, v.seq_mor(g, h)));
                      },
                      [&] {
                        return v.compose(v.seq_mor(v.seq_mor(f, g), h), v.seq_assoc(B, C, A));
                      });
             });
  for_combos({fs.size(), gs.size(), fs.size(), gs.size()}, opt.hom_budget, rng,
             [&](const std::vector<std::size_t>& ix) {
               const VMor &f = fs[ix[0]], &g = gs[ix[1]], &f2 = fs[ix[2]], &g2 = gs[ix[3]];
               auto ninst = [&] { return inst() + ", sampled f,g,f',g'"; };
               eq_law(v, rep, "duoidal/par-bifunctor-comp", ninst,
                      [&] { return v.par_mor(v.compose(f, g), v.compose(f2, g2)); },
                      [&] { return v.compose(v.par_mor(f, f2), v.par_mor(g, g2)); });
               eq_law(v, rep, "duoidal/seq-bifunctor-comp", ninst,
                      [&] { return v.seq_mor(v.compose(f, g), v.compose(f2, g2)); },
                      [&] { return v.compose(v.seq_mor(f, f2), v.seq_mor(g, g2)); });
             });
}

inline void arity4_laws(const DuoidalCat& v, const VObj& A, const VObj& B, const VObj& C,
                        const VObj& D, LawReport& rep, const DuoidalCheckOptions& opt,
                        std::uint64_t tuple_id) {
  auto inst = [&] {
    return "A=" + v.obj_token(A) + ", B=" + v.obj_token(B) + ", C=" + v.obj_token(C) +
           ", D=" + v.obj_token(D);
  };
  eq_law(v, rep, "duoidal/par-pentagon", inst,
         [&] {
           return v.compose(v.par_assoc(v.par_obj(A, B), C, D),
                            v.par_assoc(A, B, v.par_obj(C, D)));
         },
         [&] {
           auto first = v.par_mor(v.par_assoc(A, B, C), v.id(D));
           auto mid = v.par_assoc(A, v.par_obj(B, C), D);
           auto last = v.par_mor(v.id(A), v.par_assoc(B, C, D));
           return v.compose(v.compose(first, mid), last);
         });
  eq_law(v, rep, "duoidal/seq-pentagon", inst,
         [&] {
           return v.compose(v.seq_assoc(v.seq_obj(A, B), C, D),
                            v.seq_assoc(A, B, v.seq_obj(C, D)));
         },
         [&] {
           auto first = v.seq_mor(v.seq_assoc(A, B, C), v.id(D));
           auto mid = v.seq_assoc(A, v.seq_obj(B, C), D);
           auto last = v.seq_mor(v.id(A), v.seq_assoc(B, C, D));
           return v.compose(v.compose(first, mid), last);
         });
  valid_law(v, rep, "duoidal/zeta-valid", inst, [&] { return v.zeta(A, B, C, D); });
  // joint naturality of zeta, targets rotated through the same tuple
  auto fs = v.enumerate_homs(A, B, opt.hom_budget, opt.seed);
  auto gs = v.enumerate_homs(B, C, opt.hom_budget, opt.seed + 1);
  auto hs = v.enumerate_homs(C, D, opt.hom_budget, opt.seed + 2);
  auto ks = v.enumerate_homs(D, A, opt.hom_budget, opt.seed + 3);
  Rng rng(opt.seed, v.name() + "/arity4/" + std::to_string(tuple_id));
  for_combos({fs.size(), gs.size(), hs.size(), ks.size()}, opt.hom_budget, rng,
             [&](const std::vector<std::size_t>& ix) {
               const VMor &f = fs[ix[0]], &g = gs[ix[1]], &h = hs[ix[2]], &k = ks[ix[3]];
               auto ninst = [&] { return inst() + ", sampled f,g,h,k"; };
               eq_law(v, rep, "duoidal/zeta-natural", ninst,
                      [&] {
                        return v.compose(v.zeta(A, B, C, D),
                                         v.seq_mor(v.par_mor(f, h), v.par_mor(g, k)));
                      },
                      [&] {
                        return v.compose(v.par_mor(v.seq_mor(f, g), v.seq_mor(h, k)),
                                         v.zeta(B, C, D, A));
                      });
             });
}

/// Tensor-pair objects for a probe list, built once and shared by the
/// 6-tuple sweep (these sweeps dominate the checker's runtime).
struct PairCache {
  std::size_t n = 0;
  std::vector<VObj> sq, pq;                 ///< seq/par pairs, row-major
  std::vector<std::uint32_t> pm, smq, pmq;  ///< state masks (when maskable)
  bool maskable = false;
  bool swapped = false;

  PairCache(const DuoidalCat& v, const std::vector<VObj>& probes) : n(probes.size()) {
    const ElementwiseDuoidal& u = v.backend();
    swapped = v.tensors_swapped();
    sq.resize(n * n);
    pq.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        sq[i * n + j] = v.seq_obj(probes[i], probes[j]);
        pq[i * n + j] = v.par_obj(probes[i], probes[j]);
      }
    maskable = u.states() <= 32;
    if (maskable) {
      pm.resize(n);
      for (std::size_t i = 0; i < n; ++i) pm[i] = u.state_mask(probes[i]);
      smq.resize(n * n);
      pmq.resize(n * n);
      for (std::size_t k = 0; k < n * n; ++k) {
        smq[k] = u.state_mask(sq[k]);
        pmq[k] = u.state_mask(pq[k]);
      }
    }
  }

  const VObj& s(std::size_t i, std::size_t j) const { return sq[i * n + j]; }
  const VObj& p(std::size_t i, std::size_t j) const { return pq[i * n + j]; }
};

inline void zeta_assoc_par_law(const DuoidalCat& v, const std::vector<VObj>& P,
                               const PairCache& pc, std::size_t a1, std::size_t a2,
                               std::size_t b1, std::size_t b2, std::size_t c1, std::size_t c2,
                               LawReport& rep) {
  const VObj &A1 = P[a1], &A2 = P[a2], &B1 = P[b1], &B2 = P[b2], &C1 = P[c1], &C2 = P[c2];
  auto inst = [&] {
    return "A1=" + v.obj_token(A1) + ", A2=" + v.obj_token(A2) + ", B1=" + v.obj_token(B1) +
           ", B2=" + v.obj_token(B2) + ", C1=" + v.obj_token(C1) + ", C2=" + v.obj_token(C2);
  };
  // on ((A1oA2) * (B1oB2)) * (C1oC2)
  eq_law(v, rep, "duoidal/zeta-assoc-par", inst,
         [&] {
           const VObj &sA = pc.s(a1, a2), &sB = pc.s(b1, b2), &sC = pc.s(c1, c2);
           auto step1 = v.par_assoc(sA, sB, sC);
           auto step2 = v.par_mor(v.id(sA), v.zeta(B1, B2, C1, C2));
           auto step3 = v.zeta(A1, A2, pc.p(b1, c1), pc.p(b2, c2));
           return v.compose(v.compose(step1, step2), step3);
         },
         [&] {
           auto step1 = v.par_mor(v.zeta(A1, A2, B1, B2), v.id(pc.s(c1, c2)));
           auto step2 = v.zeta(pc.p(a1, b1), pc.p(a2, b2), C1, C2);
           auto step3 = v.seq_mor(v.par_assoc(A1, B1, C1), v.par_assoc(A2, B2, C2));
           return v.compose(v.compose(step1, step2), step3);
         });
}

inline void zeta_assoc_seq_law(const DuoidalCat& v, const std::vector<VObj>& P,
                               const PairCache& pc, std::size_t a1, std::size_t a2,
                               std::size_t a3, std::size_t b1, std::size_t b2, std::size_t b3,
                               LawReport& rep) {
  const VObj &A1 = P[a1], &A2 = P[a2], &A3 = P[a3], &B1 = P[b1], &B2 = P[b2], &B3 = P[b3];
  auto inst = [&] {
    return "A1=" + v.obj_token(A1) + ", A2=" + v.obj_token(A2) + ", A3=" + v.obj_token(A3) +
           ", B1=" + v.obj_token(B1) + ", B2=" + v.obj_token(B2) + ", B3=" + v.obj_token(B3);
  };
  // on ((A1oA2)oA3) * ((B1oB2)oB3)
  eq_law(v, rep, "duoidal/zeta-assoc-seq", inst,
         [&] {
           auto step1 = v.zeta(pc.s(a1, a2), A3, pc.s(b1, b2), B3);
           auto step2 = v.seq_mor(v.zeta(A1, A2, B1, B2), v.id(pc.p(a3, b3)));
           auto step3 = v.seq_assoc(pc.p(a1, b1), pc.p(a2, b2), pc.p(a3, b3));
           return v.compose(v.compose(step1, step2), step3);
         },
         [&] {
           auto step1 = v.par_mor(v.seq_assoc(A1, A2, A3), v.seq_assoc(B1, B2, B3));
           auto step2 = v.zeta(A1, pc.s(a2, a3), B1, pc.s(b2, b3));
           auto step3 = v.seq_mor(v.id(pc.p(a1, b1)), v.zeta(A2, A3, B2, B3));
           return v.compose(v.compose(step1, step2), step3);
         });
}

}  // namespace detail

/// Verifies every duoidal coherence law elementwise over the probe list.
/// Failures (including boundary mismatches in composites) are reported as
/// data; the function itself only throws on misuse (empty probe list).
inline LawReport check_duoidal_laws(const DuoidalCat& v, const std::vector<VObj>& probes,
                                    const DuoidalCheckOptions& opt = {}) {
  if (probes.empty()) throw config_error("check_duoidal_laws: probe list must be nonempty");
  LawReport rep;
  const std::size_t n = probes.size();
  const std::string cover =
      v.name() + ": " + std::to_string(n) + " probe objects, seed " + std::to_string(opt.seed);
  for (const char* law :
       {"duoidal/delta-valid", "duoidal/nabla-valid", "duoidal/eps-valid",
        "duoidal/unit-monoid-assoc", "duoidal/unit-monoid-unit", "duoidal/unit-comonoid-assoc",
        "duoidal/unit-comonoid-counit", "duoidal/id-valid", "duoidal/par-unitor-iso",
        "duoidal/seq-unitor-iso", "duoidal/unitor-valid", "duoidal/par-triangle",
        "duoidal/seq-triangle", "duoidal/delta-left-unit", "duoidal/delta-right-unit",
        "duoidal/nabla-left-unit", "duoidal/nabla-right-unit", "duoidal/par-bifunctor-id",
        "duoidal/seq-bifunctor-id", "duoidal/par-unitor-natural", "duoidal/seq-unitor-natural",
        "duoidal/par-assoc-iso", "duoidal/seq-assoc-iso", "duoidal/assoc-valid",
        "duoidal/par-assoc-natural", "duoidal/seq-assoc-natural", "duoidal/par-bifunctor-comp",
        "duoidal/seq-bifunctor-comp", "duoidal/par-pentagon", "duoidal/seq-pentagon",
        "duoidal/zeta-valid", "duoidal/zeta-natural", "duoidal/zeta-assoc-par",
        "duoidal/zeta-assoc-seq"})
    rep.describe(law, cover);

  detail::arity0_laws(v, rep);
  for (const auto& A : probes) detail::arity1_laws(v, A, rep);
  for (const auto& A : probes)
    for (const auto& B : probes) detail::arity2_laws(v, A, B, rep, opt);

  // Larger sweeps run chunked over the tuple cube, one report per worker,
  // merged in worker order for determinism.
  auto sweep = [&](std::uint64_t total,
                   const std::function<void(std::uint64_t, std::uint64_t, LawReport&)>& f) {
    std::vector<LawReport> parts(max_workers());
    parallel_chunks(
        total, [&](std::uint64_t b, std::uint64_t e, unsigned tid) { f(b, e, parts[tid]); },
        opt.threads);
    for (const auto& p : parts) rep.merge(p);
  };

  std::uint64_t n3 = static_cast<std::uint64_t>(n) * n * n;
  sweep(n3, [&](std::uint64_t b, std::uint64_t e, LawReport& r) {
    for (std::uint64_t i = b; i < e; ++i)
      detail::arity3_laws(v, probes[i % n], probes[(i / n) % n], probes[i / (n * n)], r, opt, i);
  });
  std::uint64_t n4 = n3 * n;
  sweep(n4, [&](std::uint64_t b, std::uint64_t e, LawReport& r) {
    for (std::uint64_t i = b; i < e; ++i)
      detail::arity4_laws(v, probes[i % n], probes[(i / n) % n], probes[(i / (n * n)) % n],
                          probes[i / n3], r, opt, i);
  });

  // The 6-tuple zeta sweeps dominate.  A law instance whose comparison
  // carrier is empty holds vacuously (two morphisms agree on no elements),
  // so a cheap state-mask walk filters those out before any composite is
  // built.  The enumeration carrier is the law's source -- or its target
  // for opposite instances, where comparison runs in the base category.
  detail::PairCache pc(v, probes);
  const ElementwiseDuoidal& u = v.backend();
  auto vpar = [&](std::uint32_t x, std::uint32_t y) { return u.mask_combine(x, y, !pc.swapped); };
  auto vseq = [&](std::uint32_t x, std::uint32_t y) { return u.mask_combine(x, y, pc.swapped); };
  std::uint64_t n6 = n4 * n * n;
  sweep(n6, [&](std::uint64_t b, std::uint64_t e, LawReport& r) {
    std::uint64_t vac_par = 0, vac_seq = 0;
    for (std::uint64_t i = b; i < e; ++i) {
      std::uint64_t k = i;
      std::size_t a1 = k % n;
      k /= n;
      std::size_t a2 = k % n;
      k /= n;
      std::size_t b1 = k % n;
      k /= n;
      std::size_t b2 = k % n;
      k /= n;
      std::size_t c1 = k % n;
      k /= n;
      std::size_t c2 = k % n;
      bool run_par = true, run_seq = true;
      if (pc.maskable) {
        std::uint32_t m_par =
            !pc.swapped
                ? vpar(vpar(pc.smq[a1 * n + a2], pc.smq[b1 * n + b2]), pc.smq[c1 * n + c2])
                : vseq(vpar(pc.pm[a1], pc.pmq[b1 * n + c1]), vpar(pc.pm[a2], pc.pmq[b2 * n + c2]));
        std::uint32_t m_seq =
            !pc.swapped
                ? vpar(vseq(pc.smq[a1 * n + a2], pc.pm[c1]), vseq(pc.smq[b1 * n + b2], pc.pm[c2]))
                : vseq(pc.pmq[a1 * n + b1], vseq(pc.pmq[a2 * n + b2], pc.pmq[c1 * n + c2]));
        run_par = m_par != 0;
        run_seq = m_seq != 0;
      }
      if (run_par)
        detail::zeta_assoc_par_law(v, probes, pc, a1, a2, b1, b2, c1, c2, r);
      else
        ++vac_par;
      if (run_seq)
        detail::zeta_assoc_seq_law(v, probes, pc, a1, a2, c1, b1, b2, c2, r);
      else
        ++vac_seq;
    }
    r.bulk_pass("duoidal/zeta-assoc-par", vac_par);
    r.bulk_pass("duoidal/zeta-assoc-seq", vac_seq);
  });
  return rep;
}

/// Convenience: checks over the instance's own default probe family.
inline LawReport check_duoidal_laws(const DuoidalCat& v, const DuoidalCheckOptions& opt = {}) {
  return check_duoidal_laws(v, v.probe_objects(opt.probe_size), opt);
}

/// An element of f's target hit by no source element, if any.
inline std::optional<std::string> surjectivity_witness(const ElementwiseDuoidal& u,
                                                       const VMor& f) {
  std::vector<std::uint64_t> hit;
  u.for_each_elem(f.src, [&](const Elem& e, std::uint32_t) {
    Elem out;
    f.eval(e, out);
    hit.push_back(u.full_rank(f.dst, out));
  });
  std::sort(hit.begin(), hit.end());
  std::optional<std::string> w;
  u.for_each_elem(f.dst, [&](const Elem& e, std::uint32_t) {
    if (w) return;
    if (!std::binary_search(hit.begin(), hit.end(), u.full_rank(f.dst, e)))
      w = u.elem_token(f.dst, e);
  });
  return w;
}

/// Two source elements with the same image under f, if any.
inline std::optional<std::string> injectivity_witness(const ElementwiseDuoidal& u,
                                                      const VMor& f) {
  std::vector<std::pair<std::uint64_t, Elem>> seen;
  std::optional<std::string> w;
  u.for_each_elem(f.src, [&](const Elem& e, std::uint32_t) {
    if (w) return;
    Elem out;
    f.eval(e, out);
    std::uint64_t r = u.full_rank(f.dst, out);
    for (const auto& [r2, e2] : seen)
      if (r2 == r) {
        w = u.elem_token(f.src, e2) + " and " + u.elem_token(f.src, e) + " both map to " +
            u.elem_token(f.dst, out);
        return;
      }
    seen.emplace_back(r, e);
  });
  return w;
}

}  // namespace duofreyd

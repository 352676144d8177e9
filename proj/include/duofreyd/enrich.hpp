#pragma once
//
// Change of enrichment.
//
//   * DoubleLaxFunctor -- a functor between duoidal categories carrying a
//     lax monoidal structure for each tensor.  Everything is data: the
//     object/morphism maps, the four structure maps and the element action
//     are concrete tables, and every coherence diagram is a checkable
//     claim, never an assumption.
//   * check_double_lax -- functoriality, both lax monoidal structures
//     (validity, naturality, associativity and unit coherence), and the
//     four diagrams tying the two structures to the duoidal data: the
//     zeta (interchange) square, the eps square, and the delta/nabla
//     compatibility diagrams.
//   * identity_double_lax -- the identity on any duoidal category.
//   * sep_hom_functor -- relabelling along a separated-monoid homomorphism
//     phi.  Requires, and exhaustively checks, that phi reflects
//     separation (phi(m) || phi(m') implies m || m'); without reflection
//     the par-side multiplication would not even be well defined.
//   * forgetful_functor -- morphisms-from-the-par-unit into finite
//     cartesian sets: label instances keep the unit-labelled elements,
//     subset instances keep the distinguished ones.
//   * sep_hom_mu_par_mutant -- a deliberately broken relabelling functor
//     whose par-side multiplication pretends to be defined on the
//     unrestricted pair object; the zeta-square family rejects it.
//   * change_enrichment -- transports an enriched Freyd instance along a
//     functor: hom carriers become the functor images, the structure maps
//     the functor images composed with the lax structure.  Along the
//     identity the instance is returned unchanged; change_enrichment_mor
//     transports structure-preserving maps the same way.
//
// Representation note.  A pair object's carrier is recomputed by whichever
// category evaluates it, so a relabelled *tree* would admit pairs by the
// target separation and forget the source admission.  Object maps
// therefore flatten: F(A) is a single leaf listing A's kept elements with
// mapped states, and the eta/mu maps are index translations.  Under that
// encoding "mu_par is the inclusion of separated pairs" becomes the
// (generally non-surjective) injection of target-separated pairs into
// source-separated pairs, and the seq-side maps are bijections.

#include <any>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duofreyd/duoidal.hpp"
#include "duofreyd/error.hpp"
#include "duofreyd/report.hpp"
#include "duofreyd/sepmonoid.hpp"
#include "duofreyd/util.hpp"
#include "duofreyd/vcat.hpp"
#include "duofreyd/vfreyd.hpp"

namespace duofreyd {

// ---------------------------------------------------------------------------
// The functor data
// ---------------------------------------------------------------------------

/// A double lax monoidal functor F between duoidal categories, with unit
/// maps eta_par : J' -> F(J), eta_seq : I' -> F(I) and multiplication
/// families mu_par(A,B) : F(A) * F(B) -> F(A * B),
/// mu_seq(A,B) : F(A) o F(B) -> F(A o B).
///
/// keep_state/map_state describe the element action used by
/// change_enrichment: the carrier of obj_map(A) enumerates, in order, the
/// elements of A whose state is kept, carrying the mapped state.  The
/// object-carrier law family verifies this claim against obj_map.
struct DoubleLaxFunctor {
  std::string name;
  std::shared_ptr<const DuoidalCat> src, dst;
  std::function<VObj(const VObj&)> obj_map;
  std::function<VMor(const VMor&)> mor_map;
  VMor eta_par, eta_seq;
  std::function<VMor(const VObj&, const VObj&)> mu_par, mu_seq;

  std::function<bool(std::uint32_t)> keep_state;
  std::function<std::uint32_t(std::uint32_t)> map_state;
  /// keep_state is constantly true: lets carrier counts delegate without
  /// enumerating.
  bool keeps_all = false;
  /// Set only by identity_double_lax; change_enrichment short-circuits.
  bool is_identity = false;
};

namespace detail {

/// Shared machinery of the shipped functors: flatten an object of the
/// source category v into a single leaf of the target category w, keeping
/// the elements whose state passes `keep` and restating them via `state`.
struct FlatAction {
  std::shared_ptr<const ElementwiseDuoidal> v, w;
  std::function<bool(std::uint32_t)> keep;
  std::function<std::uint32_t(std::uint32_t)> state;
  std::string tag;  ///< prefix for the image leaf names

  struct View {
    VObj up;                  ///< the source object
    VObj leaf;                ///< its image downstairs
    std::vector<Elem> elems;  ///< kept tuples, in enumeration order
    std::map<std::uint64_t, std::uint32_t> rank_to_idx;
  };

  View view(const VObj& a) const {
    View out;
    out.up = a;
    std::vector<std::string> toks;
    std::vector<std::uint8_t> dist;
    std::vector<std::uint32_t> lab;
    v->for_each_elem(a, [&](const Elem& e, std::uint32_t st) {
      if (!keep(st)) return;
      out.rank_to_idx.emplace(v->full_rank(a, e), static_cast<std::uint32_t>(out.elems.size()));
      out.elems.push_back(e);
      toks.push_back(v->elem_token(a, e));
      const std::uint32_t ws = state(st);
      if (w->family() == ElementwiseDuoidal::Family::SUBSET)
        dist.push_back(static_cast<std::uint8_t>(ws & 1));
      if (w->family() == ElementwiseDuoidal::Family::LABEL) lab.push_back(ws);
    });
    out.leaf = w->make_leaf(tag + "(" + v->obj_token(a) + ")", FinSet(std::move(toks)),
                            std::move(dist), std::move(lab));
    return out;
  }

  VObj obj(const VObj& a) const { return view(a).leaf; }

  VMor mor(const VMor& h) const {
    if (h.is_reversed())
      throw boundary_error("functor image: reversed morphisms are not supported here");
    View vs = view(h.src), vd = view(h.dst);
    std::vector<Elem> dom, tgt;
    for (std::uint32_t i = 0; i < vs.elems.size(); ++i) {
      Elem out;
      h.eval(vs.elems[i], out);
      auto it = vd.rank_to_idx.find(v->full_rank(h.dst, out));
      if (it == vd.rank_to_idx.end())
        throw boundary_error("functor image of " + v->elem_token(h.src, vs.elems[i]) +
                             " leaves the kept carrier of " + v->obj_token(h.dst));
      dom.push_back(singleton(i));
      tgt.push_back(singleton(it->second));
    }
    return w->table_mor(vs.leaf, vd.leaf, dom, std::move(tgt));
  }

  /// The lax multiplication for one tensor: F(A) x F(B) -> F(A x B),
  /// sending an admitted pair of kept elements to the corresponding pair
  /// element upstairs.  With `raw_domain` the par-side map is declared on
  /// the unrestricted pair object instead (the shipped mutant); pairs with
  /// no upstairs counterpart are left out of the table, so evaluating them
  /// throws.
  VMor mu(bool par_side, const VObj& a, const VObj& b, bool raw_domain = false) const {
    View va = view(a), vb = view(b);
    const VObj up = par_side ? v->par_obj(a, b) : v->seq_obj(a, b);
    View vu = view(up);
    const VObj lo = par_side ? (raw_domain ? w->par_obj_raw(va.leaf, vb.leaf)
                                           : w->par_obj(va.leaf, vb.leaf))
                             : w->seq_obj(va.leaf, vb.leaf);
    std::vector<Elem> dom, tgt;
    w->for_each_elem(lo, [&](const Elem& e, std::uint32_t) {
      Elem pair = va.elems[e[0]];
      pair.append(vb.elems[e[1]]);
      auto it = vu.rank_to_idx.find(v->full_rank(up, pair));
      if (it == vu.rank_to_idx.end()) {
        if (!raw_domain)
          throw boundary_error("lax multiplication: pair " + v->elem_token(a, va.elems[e[0]]) +
                               ", " + v->elem_token(b, vb.elems[e[1]]) +
                               " has no counterpart in " + v->obj_token(up));
        return;  // mutant: silently missing, evaluation will throw
      }
      dom.push_back(e);
      tgt.push_back(singleton(it->second));
    });
    return w->table_mor(lo, vu.leaf, dom, std::move(tgt));
  }

  /// The lax unit for one tensor: the target unit's point onto the image
  /// of the source unit, whose carrier must flatten to a single point.
  VMor eta(bool par_side) const {
    const VObj up = par_side ? v->par_unit() : v->seq_unit();
    View vu = view(up);
    if (vu.elems.size() != 1)
      throw config_error("lax unit: the image of the unit is not a single point");
    const VObj lo = par_side ? w->par_unit() : w->seq_unit();
    return w->table_mor(lo, vu.leaf, {singleton(0)}, {singleton(0)});
  }

  static Elem singleton(std::uint32_t i) {
    Elem e;
    e.push(i);
    return e;
  }
};

inline DoubleLaxFunctor from_action(std::string name,
                                    std::shared_ptr<const detail::FlatAction> act,
                                    bool keeps_all) {
  DoubleLaxFunctor f;
  f.name = std::move(name);
  f.src = act->v;
  f.dst = act->w;
  f.obj_map = [act](const VObj& a) { return act->obj(a); };
  f.mor_map = [act](const VMor& h) { return act->mor(h); };
  f.eta_par = act->eta(true);
  f.eta_seq = act->eta(false);
  f.mu_par = [act](const VObj& a, const VObj& b) { return act->mu(true, a, b); };
  f.mu_seq = [act](const VObj& a, const VObj& b) { return act->mu(false, a, b); };
  f.keep_state = act->keep;
  f.map_state = act->state;
  f.keeps_all = keeps_all;
  return f;
}

/// Shared precondition: `a` and `b` are the same enriching category in the
/// only sense the element encoding can see (same flavour, and for label
/// instances the same interned monoid).
inline void require_same_enricher(const ElementwiseDuoidal& a, const ElementwiseDuoidal& b,
                                  const std::string& who) {
  bool ok = a.family() == b.family();
  if (ok && a.family() == ElementwiseDuoidal::Family::LABEL)
    ok = a.monoid().elems == b.monoid().elems && a.monoid().op == b.monoid().op &&
         a.monoid().sep == b.monoid().sep;
  if (!ok)
    throw config_error(who + ": enriching categories do not match (" + a.name() + " vs " +
                       b.name() + ")");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Shipped functors
// ---------------------------------------------------------------------------

inline DoubleLaxFunctor identity_double_lax(std::shared_ptr<const DuoidalCat> v) {
  DoubleLaxFunctor f;
  f.name = "identity";
  f.src = v;
  f.dst = v;
  f.obj_map = [](const VObj& a) { return a; };
  f.mor_map = [](const VMor& h) { return h; };
  f.eta_par = v->id(v->par_unit());
  f.eta_seq = v->id(v->seq_unit());
  f.mu_par = [v](const VObj& a, const VObj& b) { return v->id(v->par_obj(a, b)); };
  f.mu_seq = [v](const VObj& a, const VObj& b) { return v->id(v->seq_obj(a, b)); };
  f.keep_state = [](std::uint32_t) { return true; };
  f.map_state = [](std::uint32_t s) { return s; };
  f.keeps_all = true;
  f.is_identity = true;
  return f;
}

namespace detail {

inline std::shared_ptr<const FlatAction> sep_hom_action(const SepHom& phi) {
  auto src = label_duoidal(phi.src);
  auto dst = label_duoidal(phi.dst);
  const auto& ms = src->monoid();
  const auto& mn = dst->monoid();
  auto tr = std::make_shared<std::vector<std::uint32_t>>();
  for (std::uint32_t i = 0; i < ms.size(); ++i) {
    auto j = mn.index_of(phi.map(ms.elems[i]));
    if (!j)
      throw config_error("sep_hom_functor: phi('" + ms.elems[i] +
                         "') is outside the target carrier");
    tr->push_back(*j);
  }
  auto act = std::make_shared<FlatAction>();
  act->v = src;
  act->w = dst;
  act->keep = [](std::uint32_t) { return true; };
  act->state = [tr](std::uint32_t s) { return (*tr)[s]; };
  act->tag = phi.name;
  return act;
}

}  // namespace detail

/// Relabelling along a separated-monoid homomorphism.  The homomorphism
/// and reflection laws are checked exhaustively over the source carrier
/// first; a failing phi is rejected with the offending law and witness.
inline DoubleLaxFunctor sep_hom_functor(const SepHom& phi) {
  LawReport pre = check_sep_hom(phi);
  if (!pre.ok()) {
    const std::string law = pre.failing_laws().front();
    auto w = pre.first_witness(law);
    throw config_error("sep_hom_functor: '" + phi.name + "' fails " + law +
                       (w ? " at " + *w : std::string()));
  }
  return detail::from_action(phi.name, detail::sep_hom_action(phi), /*keeps_all=*/true);
}

/// Deliberately broken variant of sep_hom_functor: the par-side
/// multiplication is declared on the unrestricted pair object, as if its
/// admission restriction had been dropped.  check_double_lax rejects it
/// through the zeta-square family (the square's legs no longer share
/// boundaries) and the multiplication-validity family.
inline DoubleLaxFunctor sep_hom_mu_par_mutant(const SepHom& phi) {
  auto act = detail::sep_hom_action(phi);
  DoubleLaxFunctor f = detail::from_action("mutant-unrestricted-" + phi.name, act,
                                           /*keeps_all=*/true);
  f.mu_par = [act](const VObj& a, const VObj& b) {
    return act->mu(true, a, b, /*raw_domain=*/true);
  };
  return f;
}

/// Morphisms-from-the-par-unit as a functor into finite cartesian sets:
/// label instances keep the unit-labelled elements, subset instances the
/// distinguished ones, cartesian instances everything.  eta_par picks the
/// identity point, eta_seq the point of the (singleton) seq unit image,
/// and the multiplications pair points up; the par-side pairing factors
/// through the unit's unitor inverse, which is the same map whether taken
/// on the left or the right (the units here are single points).
inline DoubleLaxFunctor forgetful_functor(std::shared_ptr<const ElementwiseDuoidal> v) {
  auto act = std::make_shared<detail::FlatAction>();
  act->v = v;
  act->w = finset_cartesian_duoidal();
  switch (v->family()) {
    case ElementwiseDuoidal::Family::LABEL: {
      const std::uint32_t unit = v->monoid().unit;
      act->keep = [unit](std::uint32_t s) { return s == unit; };
      break;
    }
    case ElementwiseDuoidal::Family::SUBSET:
      act->keep = [](std::uint32_t s) { return s == 1; };
      break;
    default: act->keep = [](std::uint32_t) { return true; };
  }
  act->state = [](std::uint32_t) { return 0u; };
  act->tag = "pts";
  return detail::from_action("forgetful", act,
                             v->family() == ElementwiseDuoidal::Family::CARTESIAN);
}

/// Diagrammatic composite: apply `f` first, then `g`.
inline DoubleLaxFunctor compose_double_lax(const DoubleLaxFunctor& f, const DoubleLaxFunctor& g) {
  detail::require_same_enricher(f.dst->backend(), g.src->backend(), "compose_double_lax");
  auto w2 = g.dst;
  DoubleLaxFunctor h;
  h.name = f.name + ";" + g.name;
  h.src = f.src;
  h.dst = w2;
  auto fo = f.obj_map, go = g.obj_map;
  h.obj_map = [fo, go](const VObj& a) { return go(fo(a)); };
  auto fm = f.mor_map, gm = g.mor_map;
  h.mor_map = [fm, gm](const VMor& m) { return gm(fm(m)); };
  h.eta_par = w2->compose(g.eta_par, g.mor_map(f.eta_par));
  h.eta_seq = w2->compose(g.eta_seq, g.mor_map(f.eta_seq));
  auto fmu_par = f.mu_par, gmu_par = g.mu_par;
  h.mu_par = [w2, fo, fmu_par, gmu_par, gm](const VObj& a, const VObj& b) {
    return w2->compose(gmu_par(fo(a), fo(b)), gm(fmu_par(a, b)));
  };
  auto fmu_seq = f.mu_seq, gmu_seq = g.mu_seq;
  h.mu_seq = [w2, fo, fmu_seq, gmu_seq, gm](const VObj& a, const VObj& b) {
    return w2->compose(gmu_seq(fo(a), fo(b)), gm(fmu_seq(a, b)));
  };
  auto fk = f.keep_state, gk = g.keep_state;
  auto fs = f.map_state, gs = g.map_state;
  h.keep_state = [fk, fs, gk](std::uint32_t s) { return fk(s) && gk(fs(s)); };
  h.map_state = [fs, gs](std::uint32_t s) { return gs(fs(s)); };
  h.keeps_all = f.keeps_all && g.keeps_all;
  h.is_identity = f.is_identity && g.is_identity;
  return h;
}

// ---------------------------------------------------------------------------
// The law checker
// ---------------------------------------------------------------------------

struct DoubleLaxCheckOptions {
  std::uint32_t max_probe_size = 2;  ///< when probes are not supplied
  std::uint32_t hom_cap = 3;         ///< morphisms sampled per hom-set
  std::uint32_t pair_cap = 2048;     ///< (A,B) grid cap for binary families
  std::uint32_t triple_cap = 320;    ///< (A,B,C) tuples for associativity laws
  std::uint32_t quad_cap = 320;      ///< 4-tuples for zeta square / naturality
  std::uint64_t seed = default_seed();
};

namespace detail {

/// All tuples when the grid fits under `cap`; otherwise the diagonal plus
/// seeded draws up to `cap`.
template <std::size_t K>
std::vector<std::array<std::uint32_t, K>> probe_tuples(std::uint32_t n, std::uint32_t cap,
                                                       std::uint64_t seed,
                                                       const std::string& purpose) {
  std::vector<std::array<std::uint32_t, K>> out;
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < K && total <= cap; ++k) total *= n;
  if (total <= cap) {
    std::array<std::uint32_t, K> t{};
    for (std::uint64_t r = 0; r < total; ++r) {
      std::uint64_t x = r;
      for (std::size_t k = 0; k < K; ++k) {
        t[k] = static_cast<std::uint32_t>(x % n);
        x /= n;
      }
      out.push_back(t);
    }
    return out;
  }
  for (std::uint32_t i = 0; i < n && out.size() < cap; ++i) {
    std::array<std::uint32_t, K> t{};
    t.fill(i);
    out.push_back(t);
  }
  Rng rng(seed, purpose);
  while (out.size() < cap) {
    std::array<std::uint32_t, K> t{};
    for (std::size_t k = 0; k < K; ++k) t[k] = static_cast<std::uint32_t>(rng.below(n));
    out.push_back(t);
  }
  return out;
}

}  // namespace detail

/// Checks every double-lax law over the probe objects (defaulting to the
/// source category's probe family).  Failures are report records with
/// elementwise witnesses; shape problems inside a diagram (a mutant whose
/// legs cannot even be pasted) are tallied as failures of that diagram's
/// family, with the typing complaint as the witness.
inline LawReport check_double_lax(const DoubleLaxFunctor& f, std::vector<VObj> probes = {},
                                  const DoubleLaxCheckOptions& opt = {}) {
  if (!f.src || !f.dst) throw config_error("check_double_lax: functor lacks source or target");
  if (!f.obj_map || !f.mor_map || !f.mu_par || !f.mu_seq)
    throw config_error("check_double_lax: functor data is incomplete");
  if (!f.keep_state || !f.map_state)
    throw config_error("check_double_lax: functor lacks its element action");
  const DuoidalCat& v = *f.src;
  const DuoidalCat& w = *f.dst;
  if (probes.empty()) probes = v.probe_objects(opt.max_probe_size);
  if (probes.empty()) throw config_error("check_double_lax: no probe objects");
  const std::uint32_t n = static_cast<std::uint32_t>(probes.size());

  LawReport rep;
  const std::string cover =
      f.name + ": " + v.name() + " -> " + w.name() + ", " + std::to_string(n) + " probes";
  for (const char* law :
       {"dlax/object-carrier", "dlax/functor-identity", "dlax/functor-composition",
        "dlax/image-valid", "dlax/unit-map-valid", "dlax/mult-map-valid",
        "dlax/mu-par-natural", "dlax/mu-seq-natural", "dlax/par-assoc", "dlax/par-unit",
        "dlax/seq-assoc", "dlax/seq-unit", "dlax/zeta-square", "dlax/eps-square",
        "dlax/delta-compat", "dlax/nabla-compat"})
    rep.describe(law, cover);

  std::vector<VObj> fobj;
  fobj.reserve(n);
  for (const auto& a : probes) fobj.push_back(f.obj_map(a));
  auto tok = [&](std::uint32_t i) { return v.obj_token(probes[i]); };

  // Two morphisms agree: boundaries line up and no element separates them.
  // Exceptions while building a route count against the law.
  auto diagram = [&](const char* law, const std::string& inst, auto&& lhs_fn, auto&& rhs_fn) {
    std::optional<std::string> wit;
    try {
      VMor lhs = lhs_fn();
      VMor rhs = rhs_fn();
      wit = w.mor_neq_witness(lhs, rhs);
    } catch (const boundary_error& e) {
      wit = std::string("typing: ") + e.what();
    } catch (const config_error& e) {
      wit = std::string("typing: ") + e.what();
    }
    rep.tally(law, !wit, [&] { return std::make_pair(inst, *wit); });
  };

  // -- the element action matches the object map -----------------------------
  {
    const ElementwiseDuoidal& vb = v.backend();
    const ElementwiseDuoidal& wb = w.backend();
    for (std::uint32_t i = 0; i < n; ++i) {
      std::vector<std::uint32_t> up;
      vb.for_each_elem(probes[i], [&](const Elem&, std::uint32_t st) {
        if (f.keep_state(st)) up.push_back(f.map_state(st));
      });
      std::vector<std::uint32_t> down;
      wb.for_each_elem(fobj[i], [&](const Elem&, std::uint32_t st) { down.push_back(st); });
      std::optional<std::string> bad;
      if (up.size() != down.size())
        bad = "F(" + tok(i) + ") has " + std::to_string(down.size()) + " elements but " +
              std::to_string(up.size()) + " are kept";
      else
        for (std::size_t k = 0; k < up.size() && !bad; ++k)
          if (up[k] != down[k])
            bad = "element " + std::to_string(k) + " of F(" + tok(i) + ") carries state " +
                  std::to_string(down[k]) + ", expected " + std::to_string(up[k]);
      rep.tally("dlax/object-carrier", !bad, [&] { return std::make_pair(tok(i), *bad); });
    }
  }

  // -- functoriality ----------------------------------------------------------
  for (std::uint32_t i = 0; i < n; ++i)
    diagram(
        "dlax/functor-identity", tok(i), [&] { return f.mor_map(v.id(probes[i])); },
        [&] { return w.id(fobj[i]); });

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<VMor>> hom_cache;
  auto homs = [&](std::uint32_t i, std::uint32_t j) -> const std::vector<VMor>& {
    auto key = std::make_pair(i, j);
    auto it = hom_cache.find(key);
    if (it != hom_cache.end()) return it->second;
    auto hs = v.enumerate_homs(probes[i], probes[j], opt.hom_cap, opt.seed + i * 131u + j);
    return hom_cache.emplace(key, std::move(hs)).first->second;
  };

  for (const auto& t : detail::probe_tuples<2>(n, opt.pair_cap, opt.seed, "dlax/pairs"))
    for (const auto& h : homs(t[0], t[1])) {
      std::optional<std::string> bad;
      try {
        VMor fh = f.mor_map(h);
        if (!w.obj_eq(fh.src, fobj[t[0]]) || !w.obj_eq(fh.dst, fobj[t[1]]))
          bad = "image boundaries disagree with the object map";
        else
          bad = w.valid_violation(fh);
      } catch (const boundary_error& e) {
        bad = std::string("typing: ") + e.what();
      }
      rep.tally("dlax/image-valid", !bad,
                [&] { return std::make_pair(tok(t[0]) + " -> " + tok(t[1]), *bad); });
    }

  for (const auto& t : detail::probe_tuples<3>(n, opt.triple_cap, opt.seed ^ 0x9e37, "dlax/comp"))
    for (const auto& h1 : homs(t[0], t[1]))
      for (const auto& h2 : homs(t[1], t[2]))
        diagram(
            "dlax/functor-composition", tok(t[0]) + " -> " + tok(t[1]) + " -> " + tok(t[2]),
            [&] { return f.mor_map(v.compose(h1, h2)); },
            [&] { return w.compose(f.mor_map(h1), f.mor_map(h2)); });

  // -- unit and multiplication maps are honest morphisms ----------------------
  {
    const VObj fJ = f.obj_map(v.par_unit()), fI = f.obj_map(v.seq_unit());
    auto unit_ok = [&](const VMor& eta, const VObj& lo, const VObj& hi, const char* which) {
      std::optional<std::string> bad;
      if (!w.obj_eq(eta.src, lo) || !w.obj_eq(eta.dst, hi))
        bad = std::string(which) + " has the wrong boundary";
      else
        bad = w.valid_violation(eta);
      rep.tally("dlax/unit-map-valid", !bad, [&] { return std::make_pair(which, *bad); });
    };
    unit_ok(f.eta_par, w.par_unit(), fJ, "eta_par");
    unit_ok(f.eta_seq, w.seq_unit(), fI, "eta_seq");
  }
  for (const auto& t : detail::probe_tuples<2>(n, opt.pair_cap, opt.seed, "dlax/mu")) {
    auto mult_ok = [&](bool par_side) {
      const char* which = par_side ? "mu_par" : "mu_seq";
      std::optional<std::string> bad;
      try {
        VMor mu = par_side ? f.mu_par(probes[t[0]], probes[t[1]])
                           : f.mu_seq(probes[t[0]], probes[t[1]]);
        const VObj lo = par_side ? w.par_obj(fobj[t[0]], fobj[t[1]])
                                 : w.seq_obj(fobj[t[0]], fobj[t[1]]);
        const VObj hi = f.obj_map(par_side ? v.par_obj(probes[t[0]], probes[t[1]])
                                           : v.seq_obj(probes[t[0]], probes[t[1]]));
        if (!w.obj_eq(mu.src, lo) || !w.obj_eq(mu.dst, hi))
          bad = std::string(which) + " has the wrong boundary";
        else
          bad = w.valid_violation(mu);
      } catch (const boundary_error& e) {
        bad = std::string("typing: ") + e.what();
      }
      rep.tally("dlax/mult-map-valid", !bad, [&] {
        return std::make_pair(std::string(which) + "(" + tok(t[0]) + ", " + tok(t[1]) + ")",
                              *bad);
      });
    };
    mult_ok(true);
    mult_ok(false);
  }

  // -- naturality of the multiplications --------------------------------------
  for (const auto& t :
       detail::probe_tuples<4>(n, opt.quad_cap, opt.seed ^ 0x51de, "dlax/natural"))
    for (const auto& h1 : homs(t[0], t[1]))
      for (const auto& h2 : homs(t[2], t[3])) {
        const std::string inst = tok(t[0]) + " -> " + tok(t[1]) + ", " + tok(t[2]) + " -> " +
                                 tok(t[3]);
        diagram(
            "dlax/mu-par-natural", inst,
            [&] {
              return w.compose(w.par_mor(f.mor_map(h1), f.mor_map(h2)),
                               f.mu_par(probes[t[1]], probes[t[3]]));
            },
            [&] {
              return w.compose(f.mu_par(probes[t[0]], probes[t[2]]),
                               f.mor_map(v.par_mor(h1, h2)));
            });
        diagram(
            "dlax/mu-seq-natural", inst,
            [&] {
              return w.compose(w.seq_mor(f.mor_map(h1), f.mor_map(h2)),
                               f.mu_seq(probes[t[1]], probes[t[3]]));
            },
            [&] {
              return w.compose(f.mu_seq(probes[t[0]], probes[t[2]]),
                               f.mor_map(v.seq_mor(h1, h2)));
            });
      }

  // -- lax monoidal coherence ---------------------------------------------------
  for (const auto& t :
       detail::probe_tuples<3>(n, opt.triple_cap, opt.seed ^ 0xa55a, "dlax/assoc")) {
    const VObj &A = probes[t[0]], &B = probes[t[1]], &C = probes[t[2]];
    const VObj &FA = fobj[t[0]], &FB = fobj[t[1]], &FC = fobj[t[2]];
    const std::string inst = tok(t[0]) + ", " + tok(t[1]) + ", " + tok(t[2]);
    diagram(
        "dlax/par-assoc", inst,
        [&] {
          return w.compose(w.compose(w.par_mor(f.mu_par(A, B), w.id(FC)),
                                     f.mu_par(v.par_obj(A, B), C)),
                           f.mor_map(v.par_assoc(A, B, C)));
        },
        [&] {
          return w.compose(w.par_assoc(FA, FB, FC),
                           w.compose(w.par_mor(w.id(FA), f.mu_par(B, C)),
                                     f.mu_par(A, v.par_obj(B, C))));
        });
    diagram(
        "dlax/seq-assoc", inst,
        [&] {
          return w.compose(w.compose(w.seq_mor(f.mu_seq(A, B), w.id(FC)),
                                     f.mu_seq(v.seq_obj(A, B), C)),
                           f.mor_map(v.seq_assoc(A, B, C)));
        },
        [&] {
          return w.compose(w.seq_assoc(FA, FB, FC),
                           w.compose(w.seq_mor(w.id(FA), f.mu_seq(B, C)),
                                     f.mu_seq(A, v.seq_obj(B, C))));
        });
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    const VObj &A = probes[i], &FA = fobj[i];
    const VObj Jv = v.par_unit(), Iv = v.seq_unit();
    diagram(
        "dlax/par-unit", tok(i) + " (left)",
        [&] {
          return w.compose(w.compose(w.par_mor(f.eta_par, w.id(FA)), f.mu_par(Jv, A)),
                           f.mor_map(v.par_lunit(A)));
        },
        [&] { return w.par_lunit(FA); });
    diagram(
        "dlax/par-unit", tok(i) + " (right)",
        [&] {
          return w.compose(w.compose(w.par_mor(w.id(FA), f.eta_par), f.mu_par(A, Jv)),
                           f.mor_map(v.par_runit(A)));
        },
        [&] { return w.par_runit(FA); });
    diagram(
        "dlax/seq-unit", tok(i) + " (left)",
        [&] {
          return w.compose(w.compose(w.seq_mor(f.eta_seq, w.id(FA)), f.mu_seq(Iv, A)),
                           f.mor_map(v.seq_lunit(A)));
        },
        [&] { return w.seq_lunit(FA); });
    diagram(
        "dlax/seq-unit", tok(i) + " (right)",
        [&] {
          return w.compose(w.compose(w.seq_mor(w.id(FA), f.eta_seq), f.mu_seq(A, Iv)),
                           f.mor_map(v.seq_runit(A)));
        },
        [&] { return w.seq_runit(FA); });
  }

  // -- compatibility with the duoidal structure --------------------------------
  for (const auto& t :
       detail::probe_tuples<4>(n, opt.quad_cap, opt.seed ^ 0x2e7a, "dlax/zeta")) {
    const VObj &A = probes[t[0]], &B = probes[t[1]], &C = probes[t[2]], &D = probes[t[3]];
    const VObj &FA = fobj[t[0]], &FB = fobj[t[1]], &FC = fobj[t[2]], &FD = fobj[t[3]];
    diagram(
        "dlax/zeta-square",
        tok(t[0]) + ", " + tok(t[1]) + ", " + tok(t[2]) + ", " + tok(t[3]),
        [&] {
          return w.compose(w.compose(w.par_mor(f.mu_seq(A, B), f.mu_seq(C, D)),
                                     f.mu_par(v.seq_obj(A, B), v.seq_obj(C, D))),
                           f.mor_map(v.zeta(A, B, C, D)));
        },
        [&] {
          return w.compose(w.compose(w.zeta(FA, FB, FC, FD),
                                     w.seq_mor(f.mu_par(A, C), f.mu_par(B, D))),
                           f.mu_seq(v.par_obj(A, C), v.par_obj(B, D)));
        });
  }
  diagram(
      "dlax/eps-square", "units", [&] { return w.compose(f.eta_par, f.mor_map(v.eps())); },
      [&] { return w.compose(w.eps(), f.eta_seq); });
  diagram(
      "dlax/delta-compat", "units",
      [&] { return w.compose(f.eta_par, f.mor_map(v.delta())); },
      [&] {
        return w.compose(w.delta(), w.compose(w.seq_mor(f.eta_par, f.eta_par),
                                              f.mu_seq(v.par_unit(), v.par_unit())));
      });
  diagram(
      "dlax/nabla-compat", "units",
      [&] {
        return w.compose(w.compose(w.par_mor(f.eta_seq, f.eta_seq),
                                   f.mu_par(v.seq_unit(), v.seq_unit())),
                         f.mor_map(v.nabla()));
      },
      [&] { return w.compose(w.nabla(), f.eta_seq); });

  return rep;
}

// ---------------------------------------------------------------------------
// Transporting an enriched Freyd instance
// ---------------------------------------------------------------------------

namespace detail {

/// The instance transported along a functor: hom carriers are the kept
/// elements with mapped states, structure maps delegate to the inner
/// instance (the functor's element action makes the lax composites act
/// elementwise), and par admission is judged by the *target* enricher, so
/// a change can genuinely restrict which maps may run in parallel.
class ChangedVFreyd final : public VFreydCat {
 public:
  ChangedVFreyd(DoubleLaxFunctor f, std::shared_ptr<const VFreydCat> inner,
                std::shared_ptr<const ElementwiseDuoidal> enr)
      : f_(std::move(f)), inner_(std::move(inner)), enrich_(std::move(enr)) {}

  std::string name() const override { return f_.name + "(" + inner_->name() + ")"; }
  const MCat& base() const override { return inner_->base(); }
  std::shared_ptr<const ElementwiseDuoidal> enrich() const override { return enrich_; }

  std::uint64_t hom_count(const TypeObj& a, const TypeObj& b) const override {
    if (f_.keeps_all) return inner_->hom_count(a, b);
    std::uint64_t total = 0;
    for (const auto& g : inner_->hom(a, b).groups)
      if (f_.keep_state(g.state)) total += g.idx.size();
    return total;
  }

  HomElem idt(const TypeObj& a) const override { return wrap(inner_->idt(a)); }
  HomElem zero() const override { return wrap(inner_->zero()); }

  HomElem seq(const TypeObj& a, const TypeObj& b, const TypeObj& c, const HomElem& g,
              const HomElem& h) const override {
    return wrap(inner_->seq(a, b, c, unwrap(g), unwrap(h)));
  }

  HomElem par(const TypeObj& a1, const TypeObj& b1, const TypeObj& a2, const TypeObj& b2,
              const HomElem& g, const HomElem& h) const override {
    if (!par_sep(g.state, h.state))
      throw separation_error(name() + ": par of " + elem_token(g) + " and " + elem_token(h) +
                                 " is not admitted by " + enrich_->name(),
                             {});
    return wrap(inner_->par(a1, b1, a2, b2, unwrap(g), unwrap(h)));
  }

  HomElem hom_map(const BaseMor& g, const BaseMor& h, const TypeObj& a, const TypeObj& b,
                  const HomElem& x) const override {
    return wrap(inner_->hom_map(g, h, a, b, unwrap(x)));
  }

  bool elem_eq(const HomElem& x, const HomElem& y) const override {
    return inner_->elem_eq(unwrap(x), unwrap(y));
  }
  std::string elem_token(const HomElem& x) const override {
    return inner_->elem_token(unwrap(x));
  }

  HomElem wrap(HomElem inner) const {
    HomElem out;
    out.state = f_.map_state(inner.state);
    out.data = std::move(inner);
    return out;
  }
  static const HomElem& unwrap(const HomElem& x) {
    return std::any_cast<const HomElem&>(x.data);
  }

  const VFreydCat& inner() const { return *inner_; }

 protected:
  std::vector<HomElem> enum_hom(const TypeObj& a, const TypeObj& b) const override {
    std::vector<HomElem> out;
    for (const auto& e : inner_->hom(a, b).elems)
      if (f_.keep_state(e.state)) out.push_back(wrap(e));
    return out;
  }

 private:
  DoubleLaxFunctor f_;
  std::shared_ptr<const VFreydCat> inner_;
  std::shared_ptr<const ElementwiseDuoidal> enrich_;
};

}  // namespace detail

/// Transports `c` along the functor: hom carriers become the images
/// F(C(a,b)), identities/zero/seq/par the F-images composed with the lax
/// structure.  Along the identity functor `c` itself is returned.
inline std::shared_ptr<const VFreydCat> change_enrichment(const DoubleLaxFunctor& f,
                                                          std::shared_ptr<const VFreydCat> c) {
  if (!f.src) throw config_error("change_enrichment: functor lacks a source");
  detail::require_same_enricher(f.src->backend(), *c->enrich(), "change_enrichment");
  if (f.is_identity) return c;
  if (!f.keep_state || !f.map_state)
    throw config_error("change_enrichment: functor lacks its element action");
  auto enr = std::dynamic_pointer_cast<const ElementwiseDuoidal>(f.dst);
  if (!enr)
    throw config_error("change_enrichment: the target category does not carry elements");
  return std::make_shared<detail::ChangedVFreyd>(f, std::move(c), std::move(enr));
}

/// Transports a structure-preserving map: same base functor, hom
/// components the F-images.
inline VFreydMor change_enrichment_mor(const DoubleLaxFunctor& f, const VFreydMor& g) {
  VFreydMor out;
  out.name = f.name + "(" + g.name + ")";
  out.src = change_enrichment(f, g.src);
  out.dst = change_enrichment(f, g.dst);
  out.obj_map = g.obj_map;
  out.mor_map = g.mor_map;
  out.mu = g.mu;
  out.eta = g.eta;
  if (f.is_identity) {
    out.hom_comp = g.hom_comp;
    return out;
  }
  auto inner = g.hom_comp;
  auto ms = f.map_state;
  out.hom_comp = [inner, ms](const TypeObj& a, const TypeObj& b, const HomElem& x) {
    HomElem r = inner(a, b, detail::ChangedVFreyd::unwrap(x));
    HomElem wrapped;
    wrapped.state = ms(r.state);
    wrapped.data = std::move(r);
    return wrapped;
  };
  return out;
}

}  // namespace duofreyd

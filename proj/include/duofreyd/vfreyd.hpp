#pragma once
//
// Enriched Freyd structure: a strict monoidal base category whose homs are
// objects of a duoidal enriching category, together with the four structure
// maps
//
//   idt  : I -> C(a,a)                    (identities)
//   seq  : C(a,b) o C(b,c) -> C(a,c)      (sequencing)
//   zero : J -> C(e,e)                    (the trivial effect)
//   par  : C(a,b) * C(c,d) -> C(a@c,b@d)  (parallel juxtaposition)
//
// (@ is the base tensor on words).  Hom carriers between tensor words
// explode quickly -- over a single one-bit resource the maps out of a
// two-letter word already number 8^8 -- so the structure is exposed
// *elementwise*: hom elements are opaque values that the structure maps
// consume and produce one at a time, and only the carriers the law
// checkers actually quantify over are ever enumerated.  The duoidal
// bookkeeping rides along as a per-element state (interned label index,
// or a distinction flag) drawn from the enriching category's state space.
//
// For boundaries whose carriers are small, materialized views exist that
// rebuild honest enriching-category objects and morphisms (hom_vobj,
// seq_vmor, ...); the change-of-enrichment machinery works through those.

#include <any>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duofreyd/duoidal.hpp"
#include "duofreyd/error.hpp"
#include "duofreyd/finset.hpp"
#include "duofreyd/mcat.hpp"
#include "duofreyd/resources.hpp"
#include "duofreyd/vcat.hpp"

namespace duofreyd {

// ---------------------------------------------------------------------------
// Morphisms of the base category
// ---------------------------------------------------------------------------

/// A morphism of the strict monoidal base: a plain function between the
/// value carriers of two type words.
struct BaseMor {
  TypeObj src, dst;
  FinFn fn;

  friend bool operator==(const BaseMor& f, const BaseMor& g) {
    return f.src == g.src && f.dst == g.dst && f.fn.table == g.fn.table;
  }
  friend bool operator!=(const BaseMor& f, const BaseMor& g) { return !(f == g); }
};

inline BaseMor base_id(const MCat& m, const TypeObj& a) {
  return BaseMor{a, a, m.identity_mor(a)};
}

/// Diagrammatic composition: first f, then g.
inline BaseMor base_compose(const BaseMor& f, const BaseMor& g) {
  if (f.dst != g.src)
    throw boundary_error("base_compose: middle types differ: " + f.dst.token() + " vs " +
                         g.src.token());
  return BaseMor{f.src, g.dst, compose(f.fn, g.fn)};
}

inline BaseMor base_tensor(const MCat& m, const BaseMor& f, const BaseMor& g) {
  return BaseMor{tensor(f.src, g.src), tensor(f.dst, g.dst),
                 m.tensor_mor(f.fn, g.fn, f.src, f.dst, g.src, g.dst)};
}

/// Display token "a->b#rank" (rank among functions with that boundary).
inline std::string base_token(const BaseMor& f) {
  return f.src.token() + "->" + f.dst.token() + "#" + std::to_string(function_rank(f.fn));
}

// ---------------------------------------------------------------------------
// Hom elements and carriers
// ---------------------------------------------------------------------------

/// One element of a hom object.  `state` is the index into the enriching
/// category's state space (monoid label, or distinction flag); `data` is
/// the instance's private payload -- a StateMap for the resource instance,
/// a base-category morphism id for embedded ordinary categories, and so on.
struct HomElem {
  std::uint32_t state = 0;
  std::any data;
};

/// Elements of one hom carrier sharing a state, by index into the carrier.
struct HomGroup {
  std::uint32_t state = 0;
  std::vector<std::uint32_t> idx;
};

/// A fully enumerated hom carrier, with elements grouped by state so that
/// sweeps over par domains can discard non-separated blocks wholesale.
struct HomTable {
  TypeObj a, b;
  std::vector<HomElem> elems;
  std::vector<HomGroup> groups;

  std::uint64_t size() const { return elems.size(); }
};

inline void build_groups(HomTable& t) {
  t.groups.clear();
  for (std::uint32_t i = 0; i < t.elems.size(); ++i) {
    const std::uint32_t st = t.elems[i].state;
    HomGroup* g = nullptr;
    for (auto& cand : t.groups)
      if (cand.state == st) {
        g = &cand;
        break;
      }
    if (!g) {
      t.groups.push_back(HomGroup{st, {}});
      g = &t.groups.back();
    }
    g->idx.push_back(i);
  }
}

// ---------------------------------------------------------------------------
// The enriched Freyd interface
// ---------------------------------------------------------------------------

/// Whether an output state is acceptable for a map whose input has the
/// given (combined) state: labels must be preserved exactly, distinguished
/// elements must stay distinguished, and the plain flavour tracks nothing.
inline bool state_preserved(const ElementwiseDuoidal& v, std::uint32_t expect,
                            std::uint32_t got) {
  switch (v.family()) {
    case ElementwiseDuoidal::Family::LABEL: return got == expect;
    case ElementwiseDuoidal::Family::SUBSET: return expect != 1 || got == 1;
    default: return true;
  }
}

class VFreydCat {
 public:
  virtual ~VFreydCat() = default;

  virtual std::string name() const = 0;
  virtual const MCat& base() const = 0;
  virtual std::shared_ptr<const ElementwiseDuoidal> enrich() const = 0;

  /// The state required of identity and zero images: the label unit, or
  /// "distinguished" in the subset flavour.
  std::uint32_t neutral_state() const {
    switch (enrich()->family()) {
      case ElementwiseDuoidal::Family::LABEL: return enrich()->monoid().unit;
      case ElementwiseDuoidal::Family::SUBSET: return 1;
      default: return 0;
    }
  }

  /// The fully enumerated carrier of C(a,b), cached per boundary.  Throws
  /// budget_error when the carrier is too large to materialize; the law
  /// checkers only request probe-word boundaries, never diagram codomains.
  const HomTable& hom(const TypeObj& a, const TypeObj& b) const {
    auto key = std::make_pair(a.token(), b.token());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    HomTable t;
    t.a = a;
    t.b = b;
    t.elems = enum_hom(a, b);
    build_groups(t);
    return cache_.emplace(std::move(key), std::move(t)).first->second;
  }

  /// Carrier size without enumeration, saturating at 2^64-1.
  virtual std::uint64_t hom_count(const TypeObj& a, const TypeObj& b) const = 0;

  // -- elementwise structure maps ---------------------------------------------

  virtual HomElem idt(const TypeObj& a) const = 0;
  virtual HomElem zero() const { return idt(TypeObj::unit()); }
  /// The image of (f, g) in C(a,b) o C(b,c) under sequencing.
  virtual HomElem seq(const TypeObj& a, const TypeObj& b, const TypeObj& c, const HomElem& f,
                      const HomElem& g) const = 0;
  /// The image of (f, g) in C(a1,b1) * C(a2,b2) under juxtaposition.
  /// Callers respect the carrier: par is only applied to state pairs the
  /// instance claims admissible (par_sep).
  virtual HomElem par(const TypeObj& a1, const TypeObj& b1, const TypeObj& a2,
                      const TypeObj& b2, const HomElem& f, const HomElem& g) const = 0;
  /// Functorial reindexing C(f,g) : C(a,b) -> C(a',b') for base morphisms
  /// f : a' -> a (contravariant leg) and g : b -> b'.
  virtual HomElem hom_map(const BaseMor& f, const BaseMor& g, const TypeObj& a,
                          const TypeObj& b, const HomElem& h) const = 0;

  /// The instance's claimed par admission on states.  Honest instances
  /// delegate to the enriching category; a mutant may claim more (or less),
  /// which the admission check reports against the enricher's own relation.
  virtual bool par_sep(std::uint32_t s1, std::uint32_t s2) const {
    return enrich()->admit_par(s1, s2);
  }

  // -- element identity ---------------------------------------------------------

  virtual bool elem_eq(const HomElem& x, const HomElem& y) const = 0;
  /// Canonical display token, unique within one hom carrier.
  virtual std::string elem_token(const HomElem& x) const = 0;

 protected:
  /// Uncached carrier enumeration, in a canonical order.
  virtual std::vector<HomElem> enum_hom(const TypeObj& a, const TypeObj& b) const = 0;

 private:
  mutable std::map<std::pair<std::string, std::string>, HomTable> cache_;
};

// ---------------------------------------------------------------------------
// Materialized views (small boundaries only)
// ---------------------------------------------------------------------------

/// C(a,b) rebuilt as an honest object of the enriching category: one leaf
/// whose tokens are the element tokens and whose distinction/label data is
/// the element states.  Throws budget_error via hom() when too large.
inline VObj hom_vobj(const VFreydCat& c, const TypeObj& a, const TypeObj& b) {
  const HomTable& t = c.hom(a, b);
  const auto& v = *c.enrich();
  std::vector<std::string> tokens;
  std::vector<std::uint8_t> dist;
  std::vector<std::uint32_t> label;
  tokens.reserve(t.elems.size());
  for (const auto& e : t.elems) {
    tokens.push_back(c.elem_token(e));
    if (v.family() == ElementwiseDuoidal::Family::SUBSET)
      dist.push_back(static_cast<std::uint8_t>(e.state & 1));
    if (v.family() == ElementwiseDuoidal::Family::LABEL) label.push_back(e.state);
  }
  return v.make_leaf("C(" + a.token() + "," + b.token() + ")", FinSet(std::move(tokens)),
                     std::move(dist), std::move(label));
}

namespace detail {

/// Index of an element inside its (materialized) hom carrier.
inline std::uint32_t hom_index(const VFreydCat& c, const HomTable& t, const HomElem& e) {
  for (std::uint32_t i = 0; i < t.elems.size(); ++i)
    if (c.elem_eq(t.elems[i], e)) return i;
  throw boundary_error("hom element '" + c.elem_token(e) + "' not in carrier C(" +
                       t.a.token() + "," + t.b.token() + ")");
}

inline Elem singleton_elem(std::uint32_t i) {
  Elem e;
  e.push(i);
  return e;
}

}  // namespace detail

/// idt as a point I -> C(a,a) of the enriching category.
inline VMor idt_vmor(const VFreydCat& c, const TypeObj& a) {
  const auto& v = *c.enrich();
  VObj dst = hom_vobj(c, a, a);
  std::vector<Elem> dom{detail::singleton_elem(0)};
  std::vector<Elem> tgt{detail::singleton_elem(detail::hom_index(c, c.hom(a, a), c.idt(a)))};
  return v.table_mor(v.seq_unit(), dst, dom, std::move(tgt));
}

/// zero as a point J -> C(e,e).
inline VMor zero_vmor(const VFreydCat& c) {
  const auto& v = *c.enrich();
  const TypeObj e = TypeObj::unit();
  VObj dst = hom_vobj(c, e, e);
  std::vector<Elem> dom{detail::singleton_elem(0)};
  std::vector<Elem> tgt{detail::singleton_elem(detail::hom_index(c, c.hom(e, e), c.zero()))};
  return v.table_mor(v.par_unit(), dst, dom, std::move(tgt));
}

/// seq as a morphism C(a,b) o C(b,d) -> C(a,d).
inline VMor seq_vmor(const VFreydCat& c, const TypeObj& a, const TypeObj& b, const TypeObj& d) {
  const auto& v = *c.enrich();
  const HomTable &t1 = c.hom(a, b), &t2 = c.hom(b, d), &tout = c.hom(a, d);
  VObj src = v.seq_obj(hom_vobj(c, a, b), hom_vobj(c, b, d));
  VObj dst = hom_vobj(c, a, d);
  std::vector<Elem> dom, tgt;
  v.for_each_elem(src, [&](const Elem& e, std::uint32_t) {
    dom.push_back(e);
    HomElem r = c.seq(a, b, d, t1.elems[e[0]], t2.elems[e[1]]);
    tgt.push_back(detail::singleton_elem(detail::hom_index(c, tout, r)));
  });
  return v.table_mor(src, dst, dom, std::move(tgt));
}

/// par as a morphism C(a1,b1) * C(a2,b2) -> C(a1@a2, b1@b2).
inline VMor par_vmor(const VFreydCat& c, const TypeObj& a1, const TypeObj& b1,
                     const TypeObj& a2, const TypeObj& b2) {
  const auto& v = *c.enrich();
  const HomTable &t1 = c.hom(a1, b1), &t2 = c.hom(a2, b2);
  const HomTable& tout = c.hom(tensor(a1, a2), tensor(b1, b2));
  VObj src = v.par_obj(hom_vobj(c, a1, b1), hom_vobj(c, a2, b2));
  VObj dst = hom_vobj(c, tensor(a1, a2), tensor(b1, b2));
  std::vector<Elem> dom, tgt;
  v.for_each_elem(src, [&](const Elem& e, std::uint32_t) {
    dom.push_back(e);
    HomElem r = c.par(a1, b1, a2, b2, t1.elems[e[0]], t2.elems[e[1]]);
    tgt.push_back(detail::singleton_elem(detail::hom_index(c, tout, r)));
  });
  return v.table_mor(src, dst, dom, std::move(tgt));
}

/// C(f,g) as a morphism C(a,b) -> C(a',b') for f : a'->a, g : b->b'.
inline VMor hom_map_vmor(const VFreydCat& c, const BaseMor& f, const BaseMor& g,
                         const TypeObj& a, const TypeObj& b) {
  const auto& v = *c.enrich();
  const HomTable& tin = c.hom(a, b);
  const HomTable& tout = c.hom(f.src, g.dst);
  VObj src = hom_vobj(c, a, b);
  VObj dst = hom_vobj(c, f.src, g.dst);
  std::vector<Elem> dom, tgt;
  for (std::uint32_t i = 0; i < tin.elems.size(); ++i) {
    dom.push_back(detail::singleton_elem(i));
    HomElem r = c.hom_map(f, g, a, b, tin.elems[i]);
    tgt.push_back(detail::singleton_elem(detail::hom_index(c, tout, r)));
  }
  return v.table_mor(src, dst, dom, std::move(tgt));
}

// ---------------------------------------------------------------------------
// Morphisms of enriched Freyd structures (same enriching category)
// ---------------------------------------------------------------------------

/// A structure-preserving map between two enriched Freyd categories over
/// the same enriching category: a strong monoidal functor on the bases
/// (object map, morphism map, tensor comparison mu and unit comparison
/// eta, both invertible) plus a hom-component compatible with idt, seq
/// and par.
struct VFreydMor {
  std::string name;
  std::shared_ptr<const VFreydCat> src, dst;
  std::function<TypeObj(const TypeObj&)> obj_map;
  std::function<BaseMor(const BaseMor&)> mor_map;
  /// mu(a,b) : obj_map(a) @ obj_map(b) -> obj_map(a @ b) in the target base.
  std::function<BaseMor(const TypeObj&, const TypeObj&)> mu;
  /// eta : e -> obj_map(e) in the target base.
  BaseMor eta;
  /// Hom component at (a,b): an element of C(a,b) to one of C'(F a, F b).
  std::function<HomElem(const TypeObj&, const TypeObj&, const HomElem&)> hom_comp;
};

inline VFreydMor identity_vfreyd_mor(std::shared_ptr<const VFreydCat> c) {
  VFreydMor m;
  m.name = "id[" + c->name() + "]";
  m.src = c;
  m.dst = c;
  m.obj_map = [](const TypeObj& a) { return a; };
  m.mor_map = [](const BaseMor& f) { return f; };
  const MCat* mc = &c->base();
  m.mu = [mc](const TypeObj& a, const TypeObj& b) { return base_id(*mc, tensor(a, b)); };
  m.eta = base_id(*mc, TypeObj::unit());
  m.hom_comp = [](const TypeObj&, const TypeObj&, const HomElem& h) { return h; };
  return m;
}

// ---------------------------------------------------------------------------
// The resource instance
// ---------------------------------------------------------------------------

/// Stateful maps over a finite resource store, enriched in sets labelled
/// by the finite-subsets monoid of the resource family: hom elements are
/// StateMaps, sequencing unions labels, juxtaposition requires disjoint
/// labels, and reindexing along pure maps leaves labels untouched.
class ResourceVFreyd final : public VFreydCat {
 public:
  ResourceVFreyd(ResourceCtx ctx, std::uint64_t per_label_budget = 4096)
      : ctx_(std::move(ctx)), per_label_budget_(per_label_budget) {
    enrich_ = label_duoidal(pf_sep_monoid(ctx_.resources()));
    const auto& mon = enrich_->monoid();
    state_of_mask_.resize(ctx_.full_mask() + 1u);
    for (std::uint32_t m = 0; m <= ctx_.full_mask(); ++m) {
      auto ix = mon.index_of(ctx_.label_token(m));
      if (!ix)
        throw config_error("ResourceVFreyd: label " + ctx_.label_token(m) +
                           " missing from the interned monoid");
      state_of_mask_[m] = *ix;
    }
  }

  const ResourceCtx& ctx() const { return ctx_; }

  std::string name() const override { return "resources" + ctx_.label_token(ctx_.full_mask()); }
  const MCat& base() const override { return ctx_.types; }
  std::shared_ptr<const ElementwiseDuoidal> enrich() const override { return enrich_; }

  HomElem wrap(StateMap m) const {
    HomElem e;
    e.state = state_of_mask_[m.label];
    e.data = std::move(m);
    return e;
  }

  static const StateMap& unwrap(const HomElem& e) {
    const StateMap* p = std::any_cast<StateMap>(&e.data);
    if (!p) throw boundary_error("expected a resource hom element");
    return *p;
  }

  std::uint64_t hom_count(const TypeObj& a, const TypeObj& b) const override {
    constexpr std::uint64_t CAP = ~std::uint64_t{0};
    const std::uint64_t na = ctx_.types.value_size(a), nb = ctx_.types.value_size(b);
    std::uint64_t total = 0;
    for (std::uint32_t q = 0; q <= ctx_.full_mask(); ++q) {
      const std::uint64_t sq = ctx_.store_size(q);
      const std::uint64_t dom = na * sq, cod = nb * sq;
      std::uint64_t count = 1;
      for (std::uint64_t i = 0; i < dom; ++i) {
        if (cod == 0) {
          count = 0;
          break;
        }
        if (count > CAP / cod) {
          count = CAP;
          break;
        }
        count *= cod;
      }
      if (total > CAP - count) return CAP;
      total += count;
    }
    return total;
  }

  HomElem idt(const TypeObj& a) const override { return wrap(idt_res(ctx_, a)); }

  HomElem seq(const TypeObj&, const TypeObj&, const TypeObj&, const HomElem& f,
              const HomElem& g) const override {
    return wrap(seq_res(ctx_, unwrap(f), unwrap(g)));
  }

  HomElem par(const TypeObj&, const TypeObj&, const TypeObj&, const TypeObj&, const HomElem& f,
              const HomElem& g) const override {
    return wrap(par_res(ctx_, unwrap(f), unwrap(g)));
  }

  HomElem hom_map(const BaseMor& f, const BaseMor& g, const TypeObj& a, const TypeObj& b,
                  const HomElem& h) const override {
    const StateMap& m = unwrap(h);
    if (f.dst != a || m.a != a || g.src != b || m.b != b)
      throw boundary_error("hom_map: boundaries do not line up at C(" + a.token() + "," +
                           b.token() + ")");
    StateMap pre = pure_res(ctx_, f.fn, f.src, f.dst);
    StateMap post = pure_res(ctx_, g.fn, g.src, g.dst);
    return wrap(seq_res(ctx_, seq_res(ctx_, pre, m), post));
  }

  bool elem_eq(const HomElem& x, const HomElem& y) const override {
    return unwrap(x) == unwrap(y);
  }

  std::string elem_token(const HomElem& x) const override {
    return state_token(ctx_, unwrap(x));
  }

 protected:
  std::vector<HomElem> enum_hom(const TypeObj& a, const TypeObj& b) const override {
    HomCarrier h = enumerate_hom(ctx_, a, b, per_label_budget_);
    std::vector<HomElem> out;
    out.reserve(h.elems.size());
    for (auto& m : h.elems) out.push_back(wrap(std::move(m)));
    return out;
  }

 private:
  ResourceCtx ctx_;
  std::shared_ptr<const ElementwiseDuoidal> enrich_;
  std::vector<std::uint32_t> state_of_mask_;
  std::uint64_t per_label_budget_;
};

inline std::shared_ptr<ResourceVFreyd> build_resource_vfreyd(ResourceCtx ctx,
                                                             std::uint64_t per_label_budget = 4096) {
  return std::make_shared<ResourceVFreyd>(std::move(ctx), per_label_budget);
}

}  // namespace duofreyd

#pragma once
//
// Shipped duoidal-category instances.
//
//   * finset_cartesian_duoidal -- finite sets, both tensors the cartesian
//     product, interchange the middle-four shuffle (a bijection here).
//   * subset_duoidal -- pairs (distinguished subset, carrier).  seq is the
//     componentwise product; par is the disjunctive product, whose carrier
//     keeps only pairs with at least one distinguished half.  Interchange
//     is the restricted middle-four and is not surjective in general.
//   * label_duoidal -- sets labelled in a separated monoid.  seq multiplies
//     labels on the full product; par keeps only separated pairs.
//   * opposite_duoidal -- tensors swapped, structure maps reversed.
//   * duoidal_from_products -- builds the seq side from chosen categorical
//     products and a terminal object (interchange = <pi1 * pi1, pi2 * pi2>),
//     verifying the universal properties on probes first.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "duofreyd/error.hpp"
#include "duofreyd/sepmonoid.hpp"
#include "duofreyd/vcat.hpp"

namespace duofreyd {

inline std::shared_ptr<ElementwiseDuoidal> finset_cartesian_duoidal() {
  return std::make_shared<ElementwiseDuoidal>(ElementwiseDuoidal::Family::CARTESIAN,
                                              "finset-cartesian");
}

inline std::shared_ptr<ElementwiseDuoidal> subset_duoidal() {
  return std::make_shared<ElementwiseDuoidal>(ElementwiseDuoidal::Family::SUBSET, "subset");
}

/// Labelled sets over a separated monoid.  Rejects monoids that fail the
/// separation laws on their probe set: without them the par tensor would
/// not even be associative.
inline std::shared_ptr<ElementwiseDuoidal> label_duoidal(const SepMonoid& m) {
  LawReport rep = check_separated_laws(m);
  if (!rep.ok()) {
    std::string law = rep.failing_laws().front();
    auto w = rep.first_witness(law);
    throw config_error("label_duoidal: monoid '" + m.name + "' fails " + law +
                       (w ? " at " + *w : std::string()));
  }
  return std::make_shared<ElementwiseDuoidal>(ElementwiseDuoidal::Family::LABEL,
                                              "label(" + m.name + ")", intern_monoid(m));
}

inline std::shared_ptr<DuoidalCat> opposite_duoidal(std::shared_ptr<const DuoidalCat> v) {
  return std::make_shared<OppositeDuoidal>(std::move(v));
}

// ---------------------------------------------------------------------------
// Duoidal structure from chosen products
// ---------------------------------------------------------------------------

/// A monoidal category (the par side of `universe`) together with chosen
/// binary products and a terminal object.  The choices are *claims*:
/// duoidal_from_products verifies them on probes before building anything.
struct ProductsWitness {
  std::shared_ptr<const ElementwiseDuoidal> universe;
  std::function<VObj(const VObj&, const VObj&)> product_obj;
  std::function<VMor(const VObj&, const VObj&)> pi1;  ///< product_obj(a,b) -> a
  std::function<VMor(const VObj&, const VObj&)> pi2;  ///< product_obj(a,b) -> b
  /// For f : X -> A, g : X -> B, the mediating map X -> product_obj(A,B).
  std::function<VMor(const VMor&, const VMor&)> pairing;
  VObj terminal;
  std::function<VMor(const VObj&)> bang;  ///< the map into the terminal object
};

/// The canonical witness for the cartesian and subset instances, where the
/// seq tensor happens to be a categorical product and the tensor unit is
/// terminal.  (For subset objects the terminal is the distinguished point.)
inline ProductsWitness canonical_products_witness(
    std::shared_ptr<const ElementwiseDuoidal> u) {
  ProductsWitness w;
  w.universe = u;
  w.product_obj = [u](const VObj& a, const VObj& b) { return u->seq_obj(a, b); };
  auto block1 = [u](const VObj& a, const VObj& b) {
    VMor m;
    m.src = u->seq_obj(a, b);
    m.dst = a;
    const std::uint32_t k = a->nleaves;
    m.eval = [k](const Elem& in, Elem& out) {
      out.clear();
      for (std::uint32_t i = 0; i < k; ++i) out.push(in[i]);
    };
    return m;
  };
  auto block2 = [u](const VObj& a, const VObj& b) {
    VMor m;
    m.src = u->seq_obj(a, b);
    m.dst = b;
    const std::uint32_t k = a->nleaves;
    m.eval = [k](const Elem& in, Elem& out) {
      out.clear();
      for (std::uint32_t i = k; i < in.n; ++i) out.push(in[i]);
    };
    return m;
  };
  w.pi1 = block1;
  w.pi2 = block2;
  w.pairing = [u](const VMor& f, const VMor& g) {
    if (!u->obj_eq(f.src, g.src)) throw boundary_error("pairing: sources differ");
    VMor m;
    m.src = f.src;
    m.dst = u->seq_obj(f.dst, g.dst);
    auto fe = f.eval, ge = g.eval;
    m.eval = [fe, ge](const Elem& in, Elem& out) {
      Elem a, b;
      fe(in, a);
      ge(in, b);
      out = a;
      out.append(b);
    };
    return m;
  };
  w.terminal = u->seq_unit();
  w.bang = [u](const VObj& a) {
    VMor m;
    m.src = a;
    m.dst = u->seq_unit();
    m.eval = [](const Elem&, Elem& out) {
      out.clear();
      out.push(0);
    };
    return m;
  };
  return w;
}

/// The duoidal category (V, *, J, x, 1) of a monoidal category with finite
/// products: par is the universe's tensor, seq is the chosen product,
/// interchange is <pi1 * pi1, pi2 * pi2>, delta the diagonal, nabla and eps
/// the terminal maps.  Built by duoidal_from_products after verification.
class FromProductsDuoidal : public DuoidalCat {
  std::shared_ptr<const ElementwiseDuoidal> u_;
  ProductsWitness w_;

 public:
  explicit FromProductsDuoidal(ProductsWitness w) : u_(w.universe), w_(std::move(w)) {}

  std::string name() const override { return "from-products(" + u_->name() + ")"; }
  const ElementwiseDuoidal& backend() const override { return *u_; }

  VObj par_unit() const override { return u_->par_unit(); }
  VObj seq_unit() const override { return w_.terminal; }
  VObj par_obj(const VObj& a, const VObj& b) const override { return u_->par_obj(a, b); }
  VObj seq_obj(const VObj& a, const VObj& b) const override { return w_.product_obj(a, b); }
  std::vector<VObj> probe_objects(std::uint32_t max_size) const override {
    return u_->probe_objects(max_size);
  }

  VMor id(const VObj& a) const override { return u_->id(a); }
  VMor compose(const VMor& f, const VMor& g) const override { return u_->compose(f, g); }
  VMor par_mor(const VMor& f, const VMor& g) const override { return u_->par_mor(f, g); }
  VMor seq_mor(const VMor& f, const VMor& g) const override {
    // f x g = <pi1;f, pi2;g>
    auto p1 = w_.pi1(f.src, g.src), p2 = w_.pi2(f.src, g.src);
    return w_.pairing(u_->compose(p1, f), u_->compose(p2, g));
  }

  VMor par_assoc(const VObj& a, const VObj& b, const VObj& c) const override {
    return u_->par_assoc(a, b, c);
  }
  VMor par_assoc_inv(const VObj& a, const VObj& b, const VObj& c) const override {
    return u_->par_assoc_inv(a, b, c);
  }
  VMor par_lunit(const VObj& a) const override { return u_->par_lunit(a); }
  VMor par_lunit_inv(const VObj& a) const override { return u_->par_lunit_inv(a); }
  VMor par_runit(const VObj& a) const override { return u_->par_runit(a); }
  VMor par_runit_inv(const VObj& a) const override { return u_->par_runit_inv(a); }

  VMor seq_assoc(const VObj& a, const VObj& b, const VObj& c) const override {
    VObj ab = seq_obj(a, b);
    auto outer1 = w_.pi1(ab, c), outer2 = w_.pi2(ab, c);
    auto inner1 = w_.pi1(a, b), inner2 = w_.pi2(a, b);
    auto to_a = u_->compose(outer1, inner1);
    auto to_b = u_->compose(outer1, inner2);
    return w_.pairing(to_a, w_.pairing(to_b, outer2));
  }
  VMor seq_assoc_inv(const VObj& a, const VObj& b, const VObj& c) const override {
    VObj bc = seq_obj(b, c);
    auto outer1 = w_.pi1(a, bc), outer2 = w_.pi2(a, bc);
    auto inner1 = w_.pi1(b, c), inner2 = w_.pi2(b, c);
    auto to_b = u_->compose(outer2, inner1);
    auto to_c = u_->compose(outer2, inner2);
    return w_.pairing(w_.pairing(outer1, to_b), to_c);
  }
  VMor seq_lunit(const VObj& a) const override { return w_.pi2(w_.terminal, a); }
  VMor seq_lunit_inv(const VObj& a) const override {
    return w_.pairing(w_.bang(a), u_->id(a));
  }
  VMor seq_runit(const VObj& a) const override { return w_.pi1(a, w_.terminal); }
  VMor seq_runit_inv(const VObj& a) const override {
    return w_.pairing(u_->id(a), w_.bang(a));
  }

  VMor zeta(const VObj& a, const VObj& b, const VObj& c, const VObj& d) const override {
    auto left = u_->par_mor(w_.pi1(a, b), w_.pi1(c, d));
    auto right = u_->par_mor(w_.pi2(a, b), w_.pi2(c, d));
    return w_.pairing(left, right);
  }
  VMor delta() const override {
    auto j = u_->par_unit();
    return w_.pairing(u_->id(j), u_->id(j));
  }
  VMor nabla() const override { return w_.bang(u_->par_obj(w_.terminal, w_.terminal)); }
  VMor eps() const override { return w_.bang(u_->par_unit()); }

  bool obj_eq(const VObj& a, const VObj& b) const override { return u_->obj_eq(a, b); }
  std::string obj_token(const VObj& o) const override { return u_->obj_token(o); }
  std::optional<std::string> valid_violation(const VMor& f) const override {
    return u_->valid_violation(f);
  }
  std::optional<std::string> mor_neq_witness(const VMor& f, const VMor& g) const override {
    return u_->mor_neq_witness(f, g);
  }
  std::vector<VMor> enumerate_homs(const VObj& src, const VObj& dst, std::uint32_t max_out,
                                   std::uint64_t seed) const override {
    return u_->enumerate_homs(src, dst, max_out, seed);
  }
};

/// Verifies the product/terminal claims of `w` on the given probes (default:
/// the universe's size-2 probe family) and, on success, packages the duoidal
/// structure they induce.  Throws config_error with a witness otherwise.
///
/// The universal property of product_obj(A,B) is checked as: the map
/// h |-> (h;pi1, h;pi2) from Hom(X, AxB) is injective and hits exactly
/// |Hom(X,A)| * |Hom(X,B)| pairs, for every probe X.  Terminality is the
/// count |Hom(X,1)| = 1 together with bang(X) being that morphism.
inline std::shared_ptr<DuoidalCat> duoidal_from_products(const ProductsWitness& w,
                                                         std::vector<VObj> probes = {}) {
  const auto& u = *w.universe;
  if (probes.empty()) probes = u.probe_objects(2);
  constexpr std::uint32_t HOM_BUDGET = 600;

  auto hom_count = [&](const VObj& x, const VObj& y) -> std::uint64_t {
    auto hs = u.enumerate_homs(x, y, HOM_BUDGET, 1);
    if (hs.size() >= HOM_BUDGET)
      throw config_error("duoidal_from_products: probe hom-set exceeds the verification budget");
    return hs.size();
  };
  auto mor_key = [&](const VMor& m) {
    std::string key;
    u.for_each_elem(m.src, [&](const Elem& e, std::uint32_t) {
      Elem out;
      m.eval(e, out);
      key += std::to_string(u.full_rank(m.dst, out)) + ",";
    });
    return key;
  };

  // Terminal object.
  for (const auto& x : probes) {
    auto b = w.bang(x);
    if (auto v = u.valid_violation(b))
      throw config_error("duoidal_from_products: bang(" + u.obj_token(x) +
                         ") is not a morphism: " + *v);
    if (hom_count(x, w.terminal) != 1)
      throw config_error("duoidal_from_products: " + u.obj_token(w.terminal) +
                         " is not terminal: |Hom(" + u.obj_token(x) + ", 1)| != 1");
  }

  // Binary products.
  for (const auto& a : probes)
    for (const auto& b : probes) {
      VObj p = w.product_obj(a, b);
      auto p1 = w.pi1(a, b), p2 = w.pi2(a, b);
      for (const auto* pr : {&p1, &p2})
        if (auto v = u.valid_violation(*pr))
          throw config_error("duoidal_from_products: projection of " + u.obj_token(p) +
                             " is not a morphism: " + *v);
      if (!u.obj_eq(p1.src, p) || !u.obj_eq(p2.src, p) || !u.obj_eq(p1.dst, a) ||
          !u.obj_eq(p2.dst, b))
        throw config_error("duoidal_from_products: projection boundaries disagree with " +
                           u.obj_token(p));
      for (const auto& x : probes) {
        std::uint64_t expect = hom_count(x, a) * hom_count(x, b);
        auto hps = u.enumerate_homs(x, p, HOM_BUDGET, 1);
        if (hps.size() >= HOM_BUDGET)
          throw config_error(
              "duoidal_from_products: probe hom-set exceeds the verification budget");
        std::map<std::string, bool> seen;
        for (const auto& h : hps) {
          std::string key =
              mor_key(u.compose(h, p1)) + "|" + mor_key(u.compose(h, p2));
          if (!seen.emplace(key, true).second)
            throw config_error("duoidal_from_products: " + u.obj_token(p) +
                               " is not a product: two maps from " + u.obj_token(x) +
                               " share both projections");
        }
        if (seen.size() != expect)
          throw config_error("duoidal_from_products: " + u.obj_token(p) +
                             " is not a product over " + u.obj_token(x) + ": |Hom(X,P)| = " +
                             std::to_string(seen.size()) + " but |Hom(X,A)|*|Hom(X,B)| = " +
                             std::to_string(expect));
        // Pairing really mediates (spot-check every enumerated pair).
        auto fa = u.enumerate_homs(x, a, 8, 2);
        auto fb = u.enumerate_homs(x, b, 8, 3);
        for (const auto& f : fa)
          for (const auto& g : fb) {
            auto h = w.pairing(f, g);
            if (auto v = u.valid_violation(h))
              throw config_error("duoidal_from_products: pairing is not a morphism: " + *v);
            if (u.mor_neq_witness(u.compose(h, p1), f) ||
                u.mor_neq_witness(u.compose(h, p2), g))
              throw config_error(
                  "duoidal_from_products: pairing does not commute with the projections at " +
                  u.obj_token(x));
          }
      }
    }

  return std::make_shared<FromProductsDuoidal>(w);
}

/// Declared for completeness: the dual construction also yields a duoidal
/// structure whose par tensor is the coproduct.  This toolkit's carriers
/// are product-shaped and nothing downstream consumes the coproduct
/// variant, so it is a stub by design.
inline std::shared_ptr<DuoidalCat> finset_coproduct_duoidal() {
  throw config_error(
      "finset_coproduct_duoidal: the coproduct-variant structure is a declared stub; "
      "no finite model ships with it");
}

}  // namespace duofreyd

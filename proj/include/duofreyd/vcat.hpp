#pragma once
//
// Objects and morphisms of the finite enriching categories, plus the
// packaged duoidal-category interface.
//
// Every shipped enriching category uses one elementwise representation:
//
//   * An object is a binary tree whose leaves are finite carriers --
//     optionally with a distinguished-element mask (Subset flavour) or an
//     element labelling into a separated monoid (Label flavour) -- and
//     whose internal nodes are tensor pairs: par "*" or seq "o".
//   * An element of an object is the tuple of its leaf component indices,
//     read left to right.  Pair nodes may restrict which component pairs
//     are admitted (label separation, or "at least one side distinguished"
//     for the disjunctive product); elements failing a restriction simply
//     do not exist in the carrier.
//   * Structure maps (associators, unitors, interchange, unit maps) act on
//     tuples by permuting blocks and dropping/duplicating unit components.
//
// DuoidalCat packages the two monoidal structures (par, J) and (seq, I)
// together with the interchange zeta : (A o B) * (C o D) -> (A*C) o (B*D)
// and the unit maps delta : J -> J o J, nabla : I * I -> I, eps : J -> I.
// Everything is plain data; the checkers compose these maps and compare
// them pointwise, reporting failures as data.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "duofreyd/error.hpp"
#include "duofreyd/finset.hpp"
#include "duofreyd/sepmonoid.hpp"
#include "duofreyd/util.hpp"

namespace duofreyd {

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// A carrier element: the tuple of leaf component indices.  Fixed inline
/// capacity keeps the hot enumeration loops allocation-free.
struct Elem {
  static constexpr std::uint32_t cap = 12;
  std::uint32_t comp[cap];
  std::uint32_t n = 0;

  void clear() { n = 0; }
  void push(std::uint32_t v) {
    if (n >= cap) throw error("Elem: component capacity exceeded");
    comp[n++] = v;
  }
  std::uint32_t size() const { return n; }
  std::uint32_t operator[](std::uint32_t i) const { return comp[i]; }
  std::uint32_t& operator[](std::uint32_t i) { return comp[i]; }
  void append(const Elem& other) {
    for (std::uint32_t i = 0; i < other.n; ++i) push(other.comp[i]);
  }
  friend bool operator==(const Elem& a, const Elem& b) {
    if (a.n != b.n) return false;
    for (std::uint32_t i = 0; i < a.n; ++i)
      if (a.comp[i] != b.comp[i]) return false;
    return true;
  }
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }
};

// ---------------------------------------------------------------------------
// Objects
// ---------------------------------------------------------------------------

/// Leaf payload: tokens plus optional distinguished mask / label indices.
struct Leaf {
  std::string name;
  FinSet tokens;
  std::vector<std::uint8_t> dist;    ///< Subset flavour: 1 = distinguished
  std::vector<std::uint32_t> label;  ///< Label flavour: interned monoid index
};

struct ObjNode;
using VObj = std::shared_ptr<const ObjNode>;

struct ObjNode {
  enum Kind : std::uint8_t { LEAF, PAIR } kind = LEAF;
  enum Tensor : std::uint8_t { PAR, SEQ } tensor = PAR;
  bool raw = false;  ///< pair only: admission restriction deliberately off
  std::shared_ptr<const Leaf> leaf;
  VObj left, right;
  std::uint32_t nleaves = 1;
};

inline VObj make_leaf_node(std::shared_ptr<const Leaf> l) {
  auto n = std::make_shared<ObjNode>();
  n->kind = ObjNode::LEAF;
  n->leaf = std::move(l);
  n->nleaves = 1;
  return n;
}

inline VObj make_pair_node(ObjNode::Tensor t, VObj l, VObj r, bool raw = false) {
  auto n = std::make_shared<ObjNode>();
  n->kind = ObjNode::PAIR;
  n->tensor = t;
  n->raw = raw;
  n->nleaves = l->nleaves + r->nleaves;
  if (n->nleaves > Elem::cap) throw error("object tree exceeds component capacity");
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

/// A morphism between objects.  In the elementwise categories `eval`
/// rewrites component tuples.  In an opposite category a morphism is a
/// wrapped morphism of the base category read backwards (`reversed` set,
/// no forward eval); such morphisms are composed and compared through the
/// owning instance, never evaluated directly.
struct VMor {
  VObj src, dst;
  std::function<void(const Elem&, Elem&)> eval;
  std::shared_ptr<const VMor> reversed;
  bool is_reversed() const { return reversed != nullptr; }
};

// ---------------------------------------------------------------------------
// The packaged duoidal category
// ---------------------------------------------------------------------------

class ElementwiseDuoidal;

class DuoidalCat {
 public:
  virtual ~DuoidalCat() = default;
  virtual std::string name() const = 0;

  /// The elementwise category carrying the actual tuples.  For a concrete
  /// instance this is itself; for an opposite it is the wrapped base.
  virtual const ElementwiseDuoidal& backend() const = 0;

  /// True when this instance's par tensor is the backend's seq tensor and
  /// vice versa (odd numbers of opposites).  Checkers use this to reason
  /// about carriers without building objects.
  virtual bool tensors_swapped() const { return false; }

  // objects
  virtual VObj par_unit() const = 0;  ///< J
  virtual VObj seq_unit() const = 0;  ///< I
  virtual VObj par_obj(const VObj&, const VObj&) const = 0;
  virtual VObj seq_obj(const VObj&, const VObj&) const = 0;
  virtual std::vector<VObj> probe_objects(std::uint32_t max_size) const = 0;

  // morphisms
  virtual VMor id(const VObj&) const = 0;
  /// Diagrammatic composition: first f, then g.  Throws boundary_error
  /// when g's source differs from f's target (a typing failure).
  virtual VMor compose(const VMor& f, const VMor& g) const = 0;
  virtual VMor par_mor(const VMor&, const VMor&) const = 0;
  virtual VMor seq_mor(const VMor&, const VMor&) const = 0;

  // structure maps
  virtual VMor par_assoc(const VObj&, const VObj&, const VObj&) const = 0;
  virtual VMor par_assoc_inv(const VObj&, const VObj&, const VObj&) const = 0;
  virtual VMor par_lunit(const VObj&) const = 0;
  virtual VMor par_lunit_inv(const VObj&) const = 0;
  virtual VMor par_runit(const VObj&) const = 0;
  virtual VMor par_runit_inv(const VObj&) const = 0;
  virtual VMor seq_assoc(const VObj&, const VObj&, const VObj&) const = 0;
  virtual VMor seq_assoc_inv(const VObj&, const VObj&, const VObj&) const = 0;
  virtual VMor seq_lunit(const VObj&) const = 0;
  virtual VMor seq_lunit_inv(const VObj&) const = 0;
  virtual VMor seq_runit(const VObj&) const = 0;
  virtual VMor seq_runit_inv(const VObj&) const = 0;
  virtual VMor zeta(const VObj&, const VObj&, const VObj&, const VObj&) const = 0;
  virtual VMor delta() const = 0;
  virtual VMor nabla() const = 0;
  virtual VMor eps() const = 0;

  // comparisons and probing
  virtual bool obj_eq(const VObj&, const VObj&) const = 0;
  virtual std::string obj_token(const VObj&) const = 0;
  /// nullopt when f is a well-formed morphism of this category (lands in
  /// the carrier, preserves distinction/labels); otherwise a witness.
  virtual std::optional<std::string> valid_violation(const VMor& f) const = 0;
  /// nullopt when f = g pointwise on the (shared) source carrier.
  virtual std::optional<std::string> mor_neq_witness(const VMor& f, const VMor& g) const = 0;
  /// All well-formed morphisms src -> dst when there are at most max_out,
  /// else max_out deterministic samples.
  virtual std::vector<VMor> enumerate_homs(const VObj& src, const VObj& dst,
                                           std::uint32_t max_out, std::uint64_t seed) const = 0;
};

// ---------------------------------------------------------------------------
// The shared elementwise backend
// ---------------------------------------------------------------------------

class ElementwiseDuoidal : public DuoidalCat,
                           public std::enable_shared_from_this<ElementwiseDuoidal> {
 public:
  enum class Family { CARTESIAN, SUBSET, LABEL };

 protected:
  Family family_;
  std::string name_;
  InternedMonoid monoid_;  // LABEL only
  VObj unit_;              // J and I coincide in all shipped instances

 public:
  ElementwiseDuoidal(Family f, std::string name, InternedMonoid monoid = {})
      : family_(f), name_(std::move(name)), monoid_(std::move(monoid)) {
    if (family_ == Family::LABEL && monoid_.size() == 0)
      throw config_error("label-flavoured category needs an interned monoid");
    Leaf u;
    u.name = "1";
    u.tokens = FinSet({"*"});
    if (family_ == Family::SUBSET) u.dist = {1};
    if (family_ == Family::LABEL) u.label = {monoid_.unit};
    unit_ = make_leaf_node(std::make_shared<Leaf>(std::move(u)));
  }

  Family family() const { return family_; }
  const InternedMonoid& monoid() const { return monoid_; }
  std::string name() const override { return name_; }
  const ElementwiseDuoidal& backend() const override { return *this; }

  /// Number of element states tracked per subtree: monoid size for labels,
  /// distinguished/not for subsets, a single state otherwise.
  std::uint32_t states() const {
    switch (family_) {
      case Family::LABEL: return monoid_.size();
      case Family::SUBSET: return 2;
      default: return 1;
    }
  }

  std::uint32_t leaf_state(const Leaf& l, std::uint32_t i) const {
    switch (family_) {
      case Family::LABEL: return l.label[i];
      case Family::SUBSET: return l.dist[i];
      default: return 0;
    }
  }

  std::uint32_t combine_state(std::uint32_t a, std::uint32_t b) const {
    switch (family_) {
      case Family::LABEL: return monoid_.mul(a, b);
      case Family::SUBSET: return a & b;  // a pair is distinguished iff both halves are
      default: return 0;
    }
  }

  bool admit_par(std::uint32_t a, std::uint32_t b) const {
    switch (family_) {
      case Family::LABEL: return monoid_.is_sep(a, b);
      case Family::SUBSET: return (a | b) != 0;  // disjunctive carrier
      default: return true;
    }
  }

  /// Builds a leaf object, validating the payload against the flavour.
  VObj make_leaf(const std::string& name, FinSet tokens, std::vector<std::uint8_t> dist = {},
                 std::vector<std::uint32_t> label = {}) const {
    Leaf l;
    l.name = name;
    l.tokens = std::move(tokens);
    if (family_ == Family::SUBSET) {
      if (dist.size() != l.tokens.size())
        throw config_error("make_leaf: distinguished mask must cover the carrier");
      l.dist = std::move(dist);
    } else if (!dist.empty()) {
      throw config_error("make_leaf: distinguished mask not meaningful in this flavour");
    }
    if (family_ == Family::LABEL) {
      if (label.size() != l.tokens.size())
        throw config_error("make_leaf: labels must cover the carrier");
      for (auto v : label)
        if (v >= monoid_.size()) throw config_error("make_leaf: label index out of range");
      l.label = std::move(label);
    } else if (!label.empty()) {
      throw config_error("make_leaf: labels not meaningful in this flavour");
    }
    return make_leaf_node(std::make_shared<Leaf>(std::move(l)));
  }

  // -- objects --------------------------------------------------------------

  VObj par_unit() const override { return unit_; }
  VObj seq_unit() const override { return unit_; }
  VObj par_obj(const VObj& a, const VObj& b) const override {
    return make_pair_node(ObjNode::PAR, a, b);
  }
  VObj seq_obj(const VObj& a, const VObj& b) const override {
    return make_pair_node(ObjNode::SEQ, a, b);
  }
  /// A par pair with the admission restriction deliberately switched off.
  /// Only mutant instances produce these; the checkers treat them as what
  /// they are, a differently-shaped object.
  VObj par_obj_raw(const VObj& a, const VObj& b) const {
    return make_pair_node(ObjNode::PAR, a, b, /*raw=*/true);
  }

  bool obj_eq(const VObj& a, const VObj& b) const override {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    if (a->kind == ObjNode::LEAF) {
      if (a->leaf.get() == b->leaf.get()) return true;
      return a->leaf->tokens == b->leaf->tokens && a->leaf->dist == b->leaf->dist &&
             a->leaf->label == b->leaf->label;
    }
    return a->tensor == b->tensor && a->raw == b->raw && obj_eq(a->left, b->left) &&
           obj_eq(a->right, b->right);
  }

  std::string obj_token(const VObj& o) const override {
    if (o->kind == ObjNode::LEAF) return o->leaf->name;
    return "(" + obj_token(o->left) + (o->tensor == ObjNode::PAR ? " * " : " o ") +
           obj_token(o->right) + (o->raw ? " [raw]" : "") + ")";
  }

  std::string elem_token(const VObj& o, const Elem& e) const {
    std::uint32_t pos = 0;
    return elem_token_rec(o.get(), e, pos);
  }

  // -- carrier enumeration ----------------------------------------------------

  /// Calls cb(elem, root_state) for every admitted element, in canonical
  /// (left-major, ascending) order.
  template <typename F>
  void for_each_elem(const VObj& o, F&& cb) const {
    Shape sh = compile(o);
    const std::uint32_t L = static_cast<std::uint32_t>(sh.leaf_nodes.size());
    for (const auto* ln : sh.leaf_nodes)
      if (ln->leafp->tokens.size() == 0) return;  // empty factor: empty carrier
    Elem e;
    e.n = L;
    std::vector<std::uint32_t> vals(sh.nodes.size());
    std::uint32_t pos = 0;
    e.comp[0] = 0;
    while (true) {
      const Shape::N& ln = *sh.leaf_nodes[pos];
      if (e.comp[pos] >= ln.leafp->tokens.size()) {
        if (pos == 0) break;
        --pos;
        ++e.comp[pos];
        continue;
      }
      vals[ln.id] = leaf_state(*ln.leafp, e.comp[pos]);
      bool ok = true;
      for (std::uint32_t ni : sh.checks_at[pos]) {
        const Shape::N& nd = sh.nodes[ni];
        std::uint32_t lv = vals[nd.li], rv = vals[nd.ri];
        if (nd.is_par && !nd.raw && !admit_par(lv, rv)) {
          ok = false;
          break;
        }
        vals[ni] = combine_state(lv, rv);
      }
      if (!ok) {
        ++e.comp[pos];
        continue;
      }
      if (pos + 1 == L) {
        cb(static_cast<const Elem&>(e), vals[sh.root]);
        ++e.comp[pos];
        continue;
      }
      ++pos;
      e.comp[pos] = 0;
    }
  }

  /// State (label index / distinction) of an element, or nullopt if the
  /// tuple is out of range or fails an admission restriction.
  std::optional<std::uint32_t> elem_info(const VObj& o, const Elem& e) const {
    if (e.n != o->nleaves) return std::nullopt;
    std::uint32_t pos = 0;
    auto r = info_rec(o.get(), e, pos);
    return r;
  }

  std::uint64_t carrier_size(const VObj& o) const {
    auto h = count_hist(o);
    std::uint64_t n = 0;
    for (auto v : h) n += v;
    return n;
  }

  /// Product of leaf sizes: an upper bound for carrier_size, allocation-free
  /// and saturating.
  std::uint64_t full_size(const VObj& o) const {
    if (o->kind == ObjNode::LEAF) return o->leaf->tokens.size();
    std::uint64_t l = full_size(o->left), r = full_size(o->right);
    if (r != 0 && l > ~std::uint64_t{0} / r) return ~std::uint64_t{0};
    return l * r;
  }

  /// Bitmask of root states that occur in the carrier (bit i = some element
  /// has state i); 0 means the carrier is empty.  Only available when the
  /// state space fits a mask; callers must check states() <= 32.
  std::uint32_t state_mask(const VObj& o) const {
    if (o->kind == ObjNode::LEAF) {
      std::uint32_t m = 0;
      for (std::uint32_t i = 0; i < o->leaf->tokens.size(); ++i)
        m |= 1u << leaf_state(*o->leaf, i);
      return m;
    }
    return mask_combine(state_mask(o->left), state_mask(o->right),
                        o->tensor == ObjNode::PAR && !o->raw);
  }

  /// Combines two state masks through a tensor node (with or without the
  /// par admission filter).
  std::uint32_t mask_combine(std::uint32_t m1, std::uint32_t m2, bool par_admission) const {
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; m1 >> i; ++i) {
      if (!((m1 >> i) & 1)) continue;
      for (std::uint32_t j = 0; m2 >> j; ++j) {
        if (!((m2 >> j) & 1)) continue;
        if (par_admission && !admit_par(i, j)) continue;
        out |= 1u << combine_state(i, j);
      }
    }
    return out;
  }

  /// Element counts by root state (histogram over `states()` buckets).
  std::vector<std::uint64_t> count_hist(const VObj& o) const {
    std::vector<std::uint64_t> h(states(), 0);
    if (o->kind == ObjNode::LEAF) {
      for (std::uint32_t i = 0; i < o->leaf->tokens.size(); ++i) ++h[leaf_state(*o->leaf, i)];
      return h;
    }
    auto l = count_hist(o->left), r = count_hist(o->right);
    for (std::uint32_t i = 0; i < l.size(); ++i) {
      if (!l[i]) continue;
      for (std::uint32_t j = 0; j < r.size(); ++j) {
        if (!r[j]) continue;
        if (o->tensor == ObjNode::PAR && !o->raw && !admit_par(i, j)) continue;
        h[combine_state(i, j)] += l[i] * r[j];
      }
    }
    return h;
  }

  /// Exact uniform sample from the admitted carrier (weighted by the state
  /// histograms, so heavy restriction costs nothing).
  Elem sample_elem(const VObj& o, Rng& rng) const {
    std::unordered_map<const ObjNode*, std::vector<std::uint64_t>> cache;
    std::function<const std::vector<std::uint64_t>&(const ObjNode*)> hist =
        [&](const ObjNode* n) -> const std::vector<std::uint64_t>& {
      auto it = cache.find(n);
      if (it != cache.end()) return it->second;
      VObj tmp(n, [](const ObjNode*) {});  // non-owning alias for count_hist
      return cache.emplace(n, count_hist(tmp)).first->second;
    };
    Elem e;
    std::function<void(const ObjNode*, std::uint32_t)> go = [&](const ObjNode* n,
                                                                std::uint32_t state) {
      if (n->kind == ObjNode::LEAF) {
        std::uint64_t total = hist(n)[state];
        if (total == 0) throw error("sample_elem: empty state (internal)");
        std::uint64_t k = rng.below(total);
        for (std::uint32_t i = 0; i < n->leaf->tokens.size(); ++i)
          if (leaf_state(*n->leaf, i) == state) {
            if (k == 0) {
              e.push(i);
              return;
            }
            --k;
          }
        throw error("sample_elem: state walk fell off (internal)");
      }
      const auto& l = hist(n->left.get());
      const auto& r = hist(n->right.get());
      std::uint64_t total = 0;
      for (std::uint32_t i = 0; i < l.size(); ++i)
        for (std::uint32_t j = 0; j < r.size(); ++j) {
          if (combine_state(i, j) != state) continue;
          if (n->tensor == ObjNode::PAR && !n->raw && !admit_par(i, j)) continue;
          total += l[i] * r[j];
        }
      if (total == 0) throw error("sample_elem: empty state (internal)");
      std::uint64_t k = rng.below(total);
      for (std::uint32_t i = 0; i < l.size(); ++i)
        for (std::uint32_t j = 0; j < r.size(); ++j) {
          if (combine_state(i, j) != state) continue;
          if (n->tensor == ObjNode::PAR && !n->raw && !admit_par(i, j)) continue;
          std::uint64_t w = l[i] * r[j];
          if (k < w) {
            go(n->left.get(), i);
            go(n->right.get(), j);
            return;
          }
          k -= w;
        }
      throw error("sample_elem: weight walk fell off (internal)");
    };
    auto root_h = count_hist(o);
    std::uint64_t total = 0;
    for (auto v : root_h) total += v;
    if (total == 0) throw error("sample_elem: empty carrier");
    std::uint64_t k = rng.below(total);
    std::uint32_t root_state = 0;
    while (k >= root_h[root_state]) k -= root_h[root_state++];
    // Re-draw inside the chosen state (keeps the per-state sampling exact).
    go(o.get(), root_state);
    return e;
  }

  // -- morphism builders -------------------------------------------------------

  VMor id(const VObj& a) const override {
    VMor m;
    m.src = a;
    m.dst = a;
    m.eval = [](const Elem& in, Elem& out) { out = in; };
    return m;
  }

  VMor compose(const VMor& f, const VMor& g) const override {
    if (f.is_reversed() || g.is_reversed())
      throw boundary_error("compose: reversed morphism in an elementwise category");
    if (!obj_eq(f.dst, g.src))
      throw boundary_error("compose: target of '" + obj_token(f.dst) +
                           "' differs from source '" + obj_token(g.src) + "'");
    auto fe = f.eval, ge = g.eval;
    VMor m;
    m.src = f.src;
    m.dst = g.dst;
    m.eval = [fe, ge](const Elem& in, Elem& out) {
      Elem t;
      fe(in, t);
      ge(t, out);
    };
    return m;
  }

  VMor par_mor(const VMor& f, const VMor& g) const override { return tensor_mor(f, g, true); }
  VMor seq_mor(const VMor& f, const VMor& g) const override { return tensor_mor(f, g, false); }

  VMor par_assoc(const VObj& a, const VObj& b, const VObj& c) const override {
    return assoc_mor(a, b, c, true, false);
  }
  VMor par_assoc_inv(const VObj& a, const VObj& b, const VObj& c) const override {
    return assoc_mor(a, b, c, true, true);
  }
  VMor seq_assoc(const VObj& a, const VObj& b, const VObj& c) const override {
    return assoc_mor(a, b, c, false, false);
  }
  VMor seq_assoc_inv(const VObj& a, const VObj& b, const VObj& c) const override {
    return assoc_mor(a, b, c, false, true);
  }

  VMor par_lunit(const VObj& a) const override { return unit_mor(a, true, true, false); }
  VMor par_lunit_inv(const VObj& a) const override { return unit_mor(a, true, true, true); }
  VMor par_runit(const VObj& a) const override { return unit_mor(a, true, false, false); }
  VMor par_runit_inv(const VObj& a) const override { return unit_mor(a, true, false, true); }
  VMor seq_lunit(const VObj& a) const override { return unit_mor(a, false, true, false); }
  VMor seq_lunit_inv(const VObj& a) const override { return unit_mor(a, false, true, true); }
  VMor seq_runit(const VObj& a) const override { return unit_mor(a, false, false, false); }
  VMor seq_runit_inv(const VObj& a) const override { return unit_mor(a, false, false, true); }

  /// zeta : (A o B) * (C o D) -> (A*C) o (B*D); block permutation abcd -> acbd.
  VMor zeta(const VObj& a, const VObj& b, const VObj& c, const VObj& d) const override {
    VMor m;
    m.src = par_obj(seq_obj(a, b), seq_obj(c, d));
    m.dst = seq_obj(par_obj(a, c), par_obj(b, d));
    const std::uint32_t la = a->nleaves, lb = b->nleaves, lc = c->nleaves, ld = d->nleaves;
    m.eval = [la, lb, lc, ld](const Elem& in, Elem& out) {
      out.clear();
      std::uint32_t i = 0;
      for (; i < la; ++i) out.push(in[i]);
      for (std::uint32_t k = 0; k < lc; ++k) out.push(in[la + lb + k]);
      for (std::uint32_t k = 0; k < lb; ++k) out.push(in[la + k]);
      for (std::uint32_t k = 0; k < ld; ++k) out.push(in[la + lb + lc + k]);
    };
    return m;
  }

  VMor delta() const override {
    VMor m;
    m.src = par_unit();
    m.dst = seq_obj(par_unit(), par_unit());
    m.eval = [](const Elem& in, Elem& out) {
      out = in;
      out.append(in);
    };
    return m;
  }

  VMor nabla() const override {
    VMor m;
    m.src = par_obj(seq_unit(), seq_unit());
    m.dst = seq_unit();
    const std::uint32_t half = seq_unit()->nleaves;
    m.eval = [half](const Elem& in, Elem& out) {
      out.clear();
      for (std::uint32_t i = 0; i < half; ++i) out.push(in[i]);
    };
    return m;
  }

  VMor eps() const override {
    VMor m;
    m.src = par_unit();
    m.dst = seq_unit();
    m.eval = [](const Elem& in, Elem& out) { out = in; };
    return m;
  }

  // -- validity and comparison ---------------------------------------------------

  std::optional<std::string> valid_violation(const VMor& f) const override {
    if (f.is_reversed()) return valid_violation(*f.reversed);
    std::optional<std::string> bad;
    std::uint64_t budget = 200000;
    for_each_capped(f.src, budget, [&](const Elem& e, std::uint32_t st) {
      if (bad) return;
      Elem out;
      f.eval(e, out);
      auto oinfo = elem_info(f.dst, out);
      if (!oinfo) {
        bad = elem_token(f.src, e) + " |-> " + render_raw(f.dst, out) +
              " which is not in the carrier of " + obj_token(f.dst);
        return;
      }
      if (family_ == Family::LABEL && *oinfo != st) {
        bad = elem_token(f.src, e) + " (label " + monoid_.elems[st] + ") |-> " +
              elem_token(f.dst, out) + " (label " + monoid_.elems[*oinfo] + ")";
        return;
      }
      if (family_ == Family::SUBSET && st == 1 && *oinfo != 1) {
        bad = "distinguished " + elem_token(f.src, e) + " |-> non-distinguished " +
              elem_token(f.dst, out);
        return;
      }
    });
    return bad;
  }

  std::optional<std::string> mor_neq_witness(const VMor& f, const VMor& g) const override {
    if (f.is_reversed() && g.is_reversed()) return mor_neq_witness(*f.reversed, *g.reversed);
    if (f.is_reversed() != g.is_reversed()) return std::string("one side is a reversed morphism");
    if (!obj_eq(f.src, g.src))
      return "source mismatch: " + obj_token(f.src) + " vs " + obj_token(g.src);
    if (!obj_eq(f.dst, g.dst))
      return "target mismatch: " + obj_token(f.dst) + " vs " + obj_token(g.dst);
    std::optional<std::string> bad;
    std::uint64_t budget = 400000;
    for_each_capped(f.src, budget, [&](const Elem& e, std::uint32_t) {
      if (bad) return;
      Elem a, b;
      f.eval(e, a);
      g.eval(e, b);
      if (!(a == b))
        bad = "at " + elem_token(f.src, e) + ": " + render_raw(f.dst, a) + " vs " +
              render_raw(f.dst, b);
    });
    return bad;
  }

  // -- hom enumeration ------------------------------------------------------------

  std::vector<VMor> enumerate_homs(const VObj& src, const VObj& dst, std::uint32_t max_out,
                                   std::uint64_t seed) const override {
    // Collect domain elements with their states, and codomain elements
    // grouped by state.
    std::vector<Elem> dom;
    std::vector<std::uint32_t> dom_state;
    for_each_elem(src, [&](const Elem& e, std::uint32_t st) {
      dom.push_back(e);
      dom_state.push_back(st);
    });
    std::vector<std::vector<Elem>> by_state(states());
    std::vector<Elem> all;
    for_each_elem(dst, [&](const Elem& e, std::uint32_t st) {
      by_state[st].push_back(e);
      all.push_back(e);
    });
    // Allowed targets per domain element, by flavour.
    std::vector<const std::vector<Elem>*> allowed(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) {
      switch (family_) {
        case Family::LABEL: allowed[i] = &by_state[dom_state[i]]; break;
        case Family::SUBSET: allowed[i] = dom_state[i] ? &by_state[1] : &all; break;
        default: allowed[i] = &all; break;
      }
    }
    // Total count (capped) of well-formed morphisms.
    constexpr std::uint64_t CAP = ~std::uint64_t{0};
    std::uint64_t total = 1;
    for (auto* opts : allowed) {
      if (opts->empty()) return {};  // no morphism can exist
      if (total != CAP && total > CAP / opts->size()) total = CAP;
      if (total != CAP) total *= opts->size();
    }
    auto build = [&](std::uint64_t rank) {
      std::vector<Elem> targets(dom.size());
      for (std::size_t i = 0; i < dom.size(); ++i) {
        targets[i] = (*allowed[i])[rank % allowed[i]->size()];
        rank /= allowed[i]->size();
      }
      return table_mor(src, dst, dom, std::move(targets));
    };
    std::vector<VMor> out;
    if (total <= max_out) {
      for (std::uint64_t k = 0; k < total; ++k) out.push_back(build(k));
    } else {
      Rng rng(seed, name_ + "/homs/" + obj_token(src) + "->" + obj_token(dst));
      std::vector<std::uint64_t> seen;
      while (out.size() < max_out) {
        std::uint64_t k = total == CAP ? rng.raw() : rng.below(total);
        if (std::find(seen.begin(), seen.end(), k) != seen.end()) continue;
        seen.push_back(k);
        out.push_back(build(k));
      }
    }
    return out;
  }

  /// A morphism from an explicit element table (targets aligned with the
  /// canonical enumeration order of src).
  VMor table_mor(const VObj& src, const VObj& dst, const std::vector<Elem>& dom,
                 std::vector<Elem> targets) const {
    auto franks = std::make_shared<std::vector<std::uint64_t>>();
    franks->reserve(dom.size());
    for (const auto& e : dom) franks->push_back(full_rank(src, e));
    auto tgt = std::make_shared<std::vector<Elem>>(std::move(targets));
    VObj s = src;
    VMor m;
    m.src = src;
    m.dst = dst;
    m.eval = [franks, tgt, s](const Elem& in, Elem& out) {
      std::uint64_t r = full_rank_static(s.get(), in);
      auto it = std::lower_bound(franks->begin(), franks->end(), r);
      if (it == franks->end() || *it != r)
        throw boundary_error("table morphism applied outside its domain");
      out = (*tgt)[static_cast<std::size_t>(it - franks->begin())];
    };
    return m;
  }

  std::uint64_t full_rank(const VObj& o, const Elem& e) const { return full_rank_static(o.get(), e); }

  // -- probe objects -----------------------------------------------------------

  std::vector<VObj> probe_objects(std::uint32_t max_size) const override {
    std::vector<VObj> out;
    auto tokens = [](std::uint32_t n) {
      std::vector<std::string> t;
      for (std::uint32_t i = 0; i < n; ++i) t.push_back("e" + std::to_string(i));
      return FinSet(t);
    };
    switch (family_) {
      case Family::CARTESIAN:
        for (std::uint32_t n = 0; n <= max_size; ++n)
          out.push_back(make_leaf("F" + std::to_string(n), tokens(n)));
        break;
      case Family::SUBSET:
        for (std::uint32_t n = 0; n <= max_size; ++n)
          for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<std::uint8_t> dist(n);
            for (std::uint32_t i = 0; i < n; ++i) dist[i] = (mask >> i) & 1;
            out.push_back(make_leaf("S" + std::to_string(n) + "m" + std::to_string(mask),
                                    tokens(n), std::move(dist)));
          }
        break;
      case Family::LABEL:
        // Size 0, then size 1 with every label, then size 2 with every
        // unordered label pair (ordered variants are isomorphic by the
        // carrier swap, which every diagram respects).
        out.push_back(make_leaf("L0", tokens(0), {}, {}));
        if (max_size >= 1)
          for (std::uint32_t l = 0; l < monoid_.size(); ++l)
            out.push_back(make_leaf("L1[" + monoid_.elems[l] + "]", tokens(1), {}, {l}));
        if (max_size >= 2)
          for (std::uint32_t l1 = 0; l1 < monoid_.size(); ++l1)
            for (std::uint32_t l2 = l1; l2 < monoid_.size(); ++l2)
              out.push_back(make_leaf(
                  "L2[" + monoid_.elems[l1] + "," + monoid_.elems[l2] + "]", tokens(2), {},
                  {l1, l2}));
        if (max_size >= 3)
          throw config_error("label probe family is defined up to carrier size 2");
        break;
    }
    return out;
  }

  // -- helpers usable by subclasses and checkers --------------------------------

  /// Enumerates at most `budget` elements exhaustively; when the carrier is
  /// larger, falls back to `budget` deterministic samples.
  template <typename F>
  void for_each_capped(const VObj& o, std::uint64_t budget, F&& cb,
                       std::uint64_t seed = 0x5eed) const {
    // The leaf-size product bounds the carrier, so the common small case
    // skips the histogram walk entirely.
    if (full_size(o) <= budget || carrier_size(o) <= budget) {
      for_each_elem(o, cb);
      return;
    }
    Rng rng(seed, name_ + "/elems/" + obj_token(o));
    for (std::uint64_t i = 0; i < budget; ++i) {
      Elem e = sample_elem(o, rng);
      auto st = elem_info(o, e);
      cb(static_cast<const Elem&>(e), *st);
    }
  }

  std::string render_raw(const VObj& o, const Elem& e) const {
    if (e.n != o->nleaves) return "<arity " + std::to_string(e.n) + ">";
    std::uint32_t pos = 0;
    return render_raw_rec(o.get(), e, pos);
  }

 private:
  struct Shape {
    struct N {
      std::uint32_t id;
      const Leaf* leafp = nullptr;  // set for leaf nodes
      std::uint32_t li = 0, ri = 0;
      bool is_par = false, raw = false;
    };
    std::vector<N> nodes;                               // postorder
    std::vector<const N*> leaf_nodes;                   // by leaf position
    std::vector<std::vector<std::uint32_t>> checks_at;  // internal nodes ending at leaf pos
    std::uint32_t root = 0;
  };

  Shape compile(const VObj& o) const {
    Shape sh;
    std::function<std::uint32_t(const ObjNode*)> go = [&](const ObjNode* n) -> std::uint32_t {
      if (n->kind == ObjNode::LEAF) {
        Shape::N nd;
        nd.id = static_cast<std::uint32_t>(sh.nodes.size());
        nd.leafp = n->leaf.get();
        sh.nodes.push_back(nd);
        sh.checks_at.emplace_back();
        return nd.id;
      }
      std::uint32_t li = go(n->left.get());
      std::uint32_t ri = go(n->right.get());
      Shape::N nd;
      nd.id = static_cast<std::uint32_t>(sh.nodes.size());
      nd.li = li;
      nd.ri = ri;
      nd.is_par = n->tensor == ObjNode::PAR;
      nd.raw = n->raw;
      sh.nodes.push_back(nd);
      sh.checks_at.back().push_back(nd.id);
      return nd.id;
    };
    sh.root = go(o.get());
    for (const auto& nd : sh.nodes)
      if (nd.leafp) sh.leaf_nodes.push_back(&nd);
    // checks_at was built indexed by "leaf completed so far" count; the
    // recursion above pushes one checks_at entry per leaf, and parents land
    // on the entry of their rightmost leaf, which is what the odometer needs.
    return sh;
  }

  std::string elem_token_rec(const ObjNode* n, const Elem& e, std::uint32_t& pos) const {
    if (n->kind == ObjNode::LEAF) return n->leaf->tokens.at(e[pos++]);
    std::string l = elem_token_rec(n->left.get(), e, pos);
    std::string r = elem_token_rec(n->right.get(), e, pos);
    return "(" + l + "," + r + ")";
  }

  std::string render_raw_rec(const ObjNode* n, const Elem& e, std::uint32_t& pos) const {
    if (n->kind == ObjNode::LEAF) {
      std::uint32_t i = e[pos++];
      return i < n->leaf->tokens.size() ? n->leaf->tokens.at(i)
                                        : "#" + std::to_string(i) + "!";
    }
    std::string l = render_raw_rec(n->left.get(), e, pos);
    std::string r = render_raw_rec(n->right.get(), e, pos);
    return "(" + l + "," + r + ")";
  }

  std::optional<std::uint32_t> info_rec(const ObjNode* n, const Elem& e,
                                        std::uint32_t& pos) const {
    if (n->kind == ObjNode::LEAF) {
      std::uint32_t i = e[pos++];
      if (i >= n->leaf->tokens.size()) return std::nullopt;
      return leaf_state(*n->leaf, i);
    }
    auto l = info_rec(n->left.get(), e, pos);
    if (!l) return std::nullopt;
    auto r = info_rec(n->right.get(), e, pos);
    if (!r) return std::nullopt;
    if (n->tensor == ObjNode::PAR && !n->raw && !admit_par(*l, *r)) return std::nullopt;
    return combine_state(*l, *r);
  }

  static std::uint64_t full_rank_static(const ObjNode* o, const Elem& e) {
    std::uint64_t r = 0;
    std::uint32_t pos = 0;
    std::function<void(const ObjNode*)> go = [&](const ObjNode* n) {
      if (n->kind == ObjNode::LEAF) {
        r = r * n->leaf->tokens.size() + e[pos++];
        return;
      }
      go(n->left.get());
      go(n->right.get());
    };
    go(o);
    return r;
  }

  VMor tensor_mor(const VMor& f, const VMor& g, bool is_par) const {
    if (f.is_reversed() || g.is_reversed())
      throw boundary_error("tensor: reversed morphism in an elementwise category");
    VMor m;
    m.src = is_par ? par_obj(f.src, g.src) : seq_obj(f.src, g.src);
    m.dst = is_par ? par_obj(f.dst, g.dst) : seq_obj(f.dst, g.dst);
    const std::uint32_t lf = f.src->nleaves;
    auto fe = f.eval, ge = g.eval;
    m.eval = [lf, fe, ge](const Elem& in, Elem& out) {
      Elem a, b;
      a.n = lf;
      for (std::uint32_t i = 0; i < lf; ++i) a.comp[i] = in[i];
      b.n = in.n - lf;
      for (std::uint32_t i = lf; i < in.n; ++i) b.comp[i - lf] = in[i];
      Elem fa, gb;
      fe(a, fa);
      ge(b, gb);
      out = fa;
      out.append(gb);
    };
    return m;
  }

  VMor assoc_mor(const VObj& a, const VObj& b, const VObj& c, bool is_par, bool inv) const {
    auto mk = [&](const VObj& x, const VObj& y) { return is_par ? par_obj(x, y) : seq_obj(x, y); };
    VMor m;
    VObj lhs = mk(mk(a, b), c), rhs = mk(a, mk(b, c));
    m.src = inv ? rhs : lhs;
    m.dst = inv ? lhs : rhs;
    m.eval = [](const Elem& in, Elem& out) { out = in; };  // flat tuples do not move
    return m;
  }

  VMor unit_mor(const VObj& a, bool is_par, bool left, bool inv) const {
    auto mk = [&](const VObj& x, const VObj& y) { return is_par ? par_obj(x, y) : seq_obj(x, y); };
    const VObj u = is_par ? par_unit() : seq_unit();
    const std::uint32_t uk = u->nleaves;
    VObj padded = left ? mk(u, a) : mk(a, u);
    VMor m;
    m.src = inv ? a : padded;
    m.dst = inv ? padded : a;
    if (!inv) {
      if (left) {
        m.eval = [uk](const Elem& in, Elem& out) {
          out.clear();
          for (std::uint32_t i = uk; i < in.n; ++i) out.push(in[i]);
        };
      } else {
        m.eval = [uk](const Elem& in, Elem& out) {
          out.clear();
          for (std::uint32_t i = 0; i + uk < in.n; ++i) out.push(in[i]);
        };
      }
    } else {
      if (left) {
        m.eval = [uk](const Elem& in, Elem& out) {
          out.clear();
          for (std::uint32_t i = 0; i < uk; ++i) out.push(0);  // units are singletons
          out.append(in);
        };
      } else {
        m.eval = [uk](const Elem& in, Elem& out) {
          out = in;
          for (std::uint32_t i = 0; i < uk; ++i) out.push(0);
        };
      }
    }
    return m;
  }
};

// ---------------------------------------------------------------------------
// Opposite category: tensors swapped, structure maps formally reversed.
// ---------------------------------------------------------------------------

class OppositeDuoidal : public DuoidalCat {
  std::shared_ptr<const DuoidalCat> base_;

  /// Formal reversal; an involution, so it is also how an op-morphism is
  /// read back in the base category (and op of op unwraps to the original).
  static VMor rev(const VMor& f) {
    if (f.is_reversed()) return *f.reversed;
    VMor m;
    m.src = f.dst;
    m.dst = f.src;
    m.reversed = std::make_shared<VMor>(f);
    return m;
  }

 public:
  explicit OppositeDuoidal(std::shared_ptr<const DuoidalCat> base) : base_(std::move(base)) {}

  std::string name() const override { return "op(" + base_->name() + ")"; }
  const ElementwiseDuoidal& backend() const override { return base_->backend(); }
  bool tensors_swapped() const override { return !base_->tensors_swapped(); }

  VObj par_unit() const override { return base_->seq_unit(); }
  VObj seq_unit() const override { return base_->par_unit(); }
  VObj par_obj(const VObj& a, const VObj& b) const override { return base_->seq_obj(a, b); }
  VObj seq_obj(const VObj& a, const VObj& b) const override { return base_->par_obj(a, b); }
  std::vector<VObj> probe_objects(std::uint32_t max_size) const override {
    return base_->probe_objects(max_size);
  }

  VMor id(const VObj& a) const override { return rev(base_->id(a)); }
  VMor compose(const VMor& f, const VMor& g) const override {
    return rev(base_->compose(rev(g), rev(f)));
  }
  VMor par_mor(const VMor& f, const VMor& g) const override {
    return rev(base_->seq_mor(rev(f), rev(g)));
  }
  VMor seq_mor(const VMor& f, const VMor& g) const override {
    return rev(base_->par_mor(rev(f), rev(g)));
  }

  VMor par_assoc(const VObj& a, const VObj& b, const VObj& c) const override {
    return rev(base_->seq_assoc_inv(a, b, c));
  }
  VMor par_assoc_inv(const VObj& a, const VObj& b, const VObj& c) const override {
    return rev(base_->seq_assoc(a, b, c));
  }
  VMor seq_assoc(const VObj& a, const VObj& b, const VObj& c) const override {
    return rev(base_->par_assoc_inv(a, b, c));
  }
  VMor seq_assoc_inv(const VObj& a, const VObj& b, const VObj& c) const override {
    return rev(base_->par_assoc(a, b, c));
  }
  VMor par_lunit(const VObj& a) const override { return rev(base_->seq_lunit_inv(a)); }
  VMor par_lunit_inv(const VObj& a) const override { return rev(base_->seq_lunit(a)); }
  VMor par_runit(const VObj& a) const override { return rev(base_->seq_runit_inv(a)); }
  VMor par_runit_inv(const VObj& a) const override { return rev(base_->seq_runit(a)); }
  VMor seq_lunit(const VObj& a) const override { return rev(base_->par_lunit_inv(a)); }
  VMor seq_lunit_inv(const VObj& a) const override { return rev(base_->par_lunit(a)); }
  VMor seq_runit(const VObj& a) const override { return rev(base_->par_runit_inv(a)); }
  VMor seq_runit_inv(const VObj& a) const override { return rev(base_->par_runit(a)); }

  VMor zeta(const VObj& a, const VObj& b, const VObj& c, const VObj& d) const override {
    return rev(base_->zeta(a, c, b, d));
  }
  VMor delta() const override { return rev(base_->nabla()); }
  VMor nabla() const override { return rev(base_->delta()); }
  VMor eps() const override { return rev(base_->eps()); }

  bool obj_eq(const VObj& a, const VObj& b) const override { return base_->obj_eq(a, b); }
  std::string obj_token(const VObj& o) const override { return base_->obj_token(o); }
  std::optional<std::string> valid_violation(const VMor& f) const override {
    return base_->valid_violation(rev(f));
  }
  std::optional<std::string> mor_neq_witness(const VMor& f, const VMor& g) const override {
    return base_->mor_neq_witness(rev(f), rev(g));
  }
  std::vector<VMor> enumerate_homs(const VObj& src, const VObj& dst, std::uint32_t max_out,
                                   std::uint64_t seed) const override {
    auto hs = base_->enumerate_homs(dst, src, max_out, seed);
    std::vector<VMor> out;
    out.reserve(hs.size());
    for (const auto& h : hs) out.push_back(rev(h));
    return out;
  }
};

}  // namespace duofreyd

#pragma once
//
// Resource-labelled stateful functions over a finite store.
//
// Fix a finite family of resources, each with a finite value set.  A
// stateful map from type word a to type word b carries a label Q (the
// subset of resources it may read or write) and a total function
//
//   value(a) x Pi_Q  ->  value(b) x Pi_Q,
//
// where Pi_Q is the product of the value sets of the resources in Q,
// taken in the fixed declaration order.  Sequencing unions the labels
// (lifting both maps to the union store); parallel composition requires
// the labels to be *disjoint* and acts blockwise on values and store —
// overlap is a static error, not a runtime one.
//
// Functions are stored as raw index tables with the boundary kept
// symbolically (label mask + type words); all combinators are pure digit
// arithmetic on those tables, so no string carriers are built on the hot
// paths.  Materialized FinFn views exist for display and serialization.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "duofreyd/error.hpp"
#include "duofreyd/finset.hpp"
#include "duofreyd/mcat.hpp"

namespace duofreyd {

/// The fixed resource family and store shape, plus the base types of the
/// ambient strict monoidal category.  Immutable after declaration.
class ResourceCtx {
 public:
  static constexpr std::uint32_t max_resources = 20;

  MCat types;

  void add_resource(const std::string& name, FinSet values) {
    if (names_.size() >= max_resources)
      throw config_error("ResourceCtx: too many resources (max 20)");
    for (const auto& n : names_)
      if (n == name) throw config_error("ResourceCtx: resource '" + name + "' declared twice");
    if (values.empty())
      throw config_error("ResourceCtx: resource '" + name + "' needs a nonempty value set");
    names_.push_back(name);
    values_.push_back(std::move(values));
    resources_ = FinSet(names_);
  }

  const FinSet& resources() const { return resources_; }
  std::uint32_t nres() const { return static_cast<std::uint32_t>(names_.size()); }
  std::uint32_t full_mask() const { return nres() == 0 ? 0 : (1u << nres()) - 1; }

  const FinSet& store_values(std::uint32_t i) const {
    if (i >= values_.size()) throw boundary_error("ResourceCtx: resource index out of range");
    return values_[i];
  }

  /// |Pi_Q| for the subset Q given as a bitmask over resource order.
  std::uint64_t store_size(std::uint32_t mask) const {
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < nres(); ++i)
      if (mask & (1u << i)) n *= values_[i].size();
    return n;
  }

  /// Splits a Pi_Q index into per-resource digits (written only at the
  /// positions in the mask; leftmost resource is most significant).
  void store_digits(std::uint32_t mask, std::uint64_t idx, std::uint32_t* d) const {
    for (std::uint32_t i = nres(); i-- > 0;)
      if (mask & (1u << i)) {
        d[i] = static_cast<std::uint32_t>(idx % values_[i].size());
        idx /= values_[i].size();
      }
  }

  std::uint64_t store_index(std::uint32_t mask, const std::uint32_t* d) const {
    std::uint64_t idx = 0;
    for (std::uint32_t i = 0; i < nres(); ++i)
      if (mask & (1u << i)) idx = idx * values_[i].size() + d[i];
    return idx;
  }

  /// The flat-tuple carrier of Pi_Q, resources in declaration order.
  FinSet store_set(std::uint32_t mask) const {
    std::uint64_t n = store_size(mask);
    std::vector<std::string> elems;
    elems.reserve(static_cast<std::size_t>(n));
    std::uint32_t d[max_resources] = {};
    std::vector<std::string> parts;
    for (std::uint64_t k = 0; k < n; ++k) {
      store_digits(mask, k, d);
      parts.clear();
      for (std::uint32_t i = 0; i < nres(); ++i)
        if (mask & (1u << i)) parts.push_back(values_[i].at(d[i]));
      elems.push_back(tuple_token(parts));
    }
    return FinSet(std::move(elems));
  }

  /// "{x,y}" in declaration order; matches the powerset monoid's tokens.
  std::string label_token(std::uint32_t mask) const {
    std::string out = "{";
    bool first = true;
    for (std::uint32_t i = 0; i < nres(); ++i)
      if (mask & (1u << i)) {
        if (!first) out += ",";
        out += names_[i];
        first = false;
      }
    return out + "}";
  }

  /// Parses "{x,y}" (or "{}") back to a mask.
  std::uint32_t parse_label(const std::string& text) const {
    std::string body = text;
    if (body.size() < 2 || body.front() != '{' || body.back() != '}')
      throw config_error("ResourceCtx: label must look like {x,y}: '" + text + "'");
    body = body.substr(1, body.size() - 2);
    std::uint32_t mask = 0;
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t comma = body.find(',', pos);
      std::size_t end = comma == std::string::npos ? body.size() : comma;
      std::string name = body.substr(pos, end - pos);
      while (!name.empty() && (name.front() == ' ')) name.erase(name.begin());
      while (!name.empty() && (name.back() == ' ')) name.pop_back();
      auto idx = resources_.index_of(name);
      if (!idx) throw config_error("ResourceCtx: unknown resource '" + name + "' in '" + text + "'");
      mask |= 1u << *idx;
      pos = end + 1;
    }
    return mask;
  }

  /// Names of the resources in a mask, declaration order.
  std::vector<std::string> mask_names(std::uint32_t mask) const {
    std::vector<std::string> out;
    for (std::uint32_t i = 0; i < nres(); ++i)
      if (mask & (1u << i)) out.push_back(names_[i]);
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::vector<FinSet> values_;
  FinSet resources_;
};

/// A stateful map: label Q plus an index table for
/// value(a) x Pi_Q -> value(b) x Pi_Q.  Domain index is ia * |Pi_Q| + is;
/// codomain likewise.  Equality is equality of label, boundary and table.
struct StateMap {
  std::uint32_t label = 0;
  TypeObj a, b;
  std::vector<std::uint32_t> table;

  friend bool operator==(const StateMap& f, const StateMap& g) {
    return f.label == g.label && f.a == g.a && f.b == g.b && f.table == g.table;
  }
  friend bool operator!=(const StateMap& f, const StateMap& g) { return !(f == g); }
};

/// The identity on a: label {} and the identity table.
inline StateMap idt_res(const ResourceCtx& ctx, const TypeObj& a) {
  StateMap m;
  m.a = m.b = a;
  std::uint64_t n = ctx.types.value_size(a);
  m.table.resize(static_cast<std::size_t>(n));
  for (std::uint32_t i = 0; i < n; ++i) m.table[i] = i;
  return m;
}

/// The identity on the empty word (the image of the zero structure map).
inline StateMap zero_res(const ResourceCtx& ctx) { return idt_res(ctx, TypeObj::unit()); }

/// A label-{} map from a plain function between value sets.
inline StateMap pure_res(const ResourceCtx& ctx, const FinFn& f, const TypeObj& a,
                         const TypeObj& b) {
  if (f.dom != ctx.types.value_set(a) || f.cod != ctx.types.value_set(b))
    throw boundary_error("pure_res: function boundary does not match " + a.token() + " -> " +
                         b.token());
  StateMap m;
  m.a = a;
  m.b = b;
  m.table = f.table;
  return m;
}

/// The induced map on a larger store: acts as f on the f.label components
/// and leaves the extra resources untouched.
inline StateMap lift(const ResourceCtx& ctx, const StateMap& f, std::uint32_t q_big) {
  if ((f.label & q_big) != f.label)
    throw boundary_error("lift: target label " + ctx.label_token(q_big) +
                         " does not contain " + ctx.label_token(f.label));
  if (f.label == q_big) return f;
  StateMap out;
  out.label = q_big;
  out.a = f.a;
  out.b = f.b;
  const std::uint64_t sq_small = ctx.store_size(f.label);
  const std::uint64_t sq_big = ctx.store_size(q_big);
  const std::uint64_t na = ctx.types.value_size(f.a);
  out.table.resize(static_cast<std::size_t>(na * sq_big));
  std::uint32_t d[ResourceCtx::max_resources] = {};
  for (std::uint64_t is = 0; is < sq_big; ++is) {
    ctx.store_digits(q_big, is, d);
    std::uint64_t is_small = ctx.store_index(f.label, d);
    for (std::uint64_t ia = 0; ia < na; ++ia) {
      std::uint32_t im = f.table[static_cast<std::size_t>(ia * sq_small + is_small)];
      std::uint64_t ib = im / sq_small;
      ctx.store_digits(f.label, im % sq_small, d);  // overwrite the f.label digits
      out.table[static_cast<std::size_t>(ia * sq_big + is)] =
          static_cast<std::uint32_t>(ib * sq_big + ctx.store_index(q_big, d));
    }
  }
  return out;
}

/// Sequential composition: union label, composite of the two lifts.
inline StateMap seq_res(const ResourceCtx& ctx, const StateMap& f, const StateMap& g) {
  if (f.b != g.a)
    throw boundary_error("seq_res: middle types differ: " + f.b.token() + " vs " + g.a.token());
  std::uint32_t q = f.label | g.label;
  StateMap lf = lift(ctx, f, q);
  StateMap lg = lift(ctx, g, q);
  StateMap out;
  out.label = q;
  out.a = f.a;
  out.b = g.b;
  out.table.resize(lf.table.size());
  for (std::size_t i = 0; i < lf.table.size(); ++i) out.table[i] = lg.table[lf.table[i]];
  return out;
}

/// Parallel composition: requires disjoint labels, then acts as f on the
/// first value block and its store components and as g on the second.
inline StateMap par_res(const ResourceCtx& ctx, const StateMap& f, const StateMap& g) {
  if (f.label & g.label)
    throw separation_error("par_res: labels overlap on " + ctx.label_token(f.label & g.label),
                           ctx.mask_names(f.label & g.label));
  StateMap out;
  out.label = f.label | g.label;
  out.a = tensor(f.a, g.a);
  out.b = tensor(f.b, g.b);
  const std::uint64_t sp = ctx.store_size(f.label);
  const std::uint64_t sq = ctx.store_size(g.label);
  const std::uint64_t su = ctx.store_size(out.label);
  const std::uint64_t na1 = ctx.types.value_size(f.a), na2 = ctx.types.value_size(g.a);
  const std::uint64_t nb2 = ctx.types.value_size(g.b);
  out.table.resize(static_cast<std::size_t>(na1 * na2 * su));
  std::uint32_t d[ResourceCtx::max_resources] = {};
  for (std::uint64_t is = 0; is < su; ++is) {
    ctx.store_digits(out.label, is, d);
    const std::uint64_t isp = ctx.store_index(f.label, d);
    const std::uint64_t isq = ctx.store_index(g.label, d);
    for (std::uint64_t i1 = 0; i1 < na1; ++i1) {
      const std::uint32_t fm = f.table[static_cast<std::size_t>(i1 * sp + isp)];
      const std::uint64_t j1 = fm / sp;
      for (std::uint64_t i2 = 0; i2 < na2; ++i2) {
        const std::uint32_t gm = g.table[static_cast<std::size_t>(i2 * sq + isq)];
        const std::uint64_t j2 = gm / sq;
        ctx.store_digits(f.label, fm % sp, d);
        ctx.store_digits(g.label, gm % sq, d);
        const std::uint64_t os = ctx.store_index(out.label, d);
        out.table[static_cast<std::size_t>((i1 * na2 + i2) * su + is)] =
            static_cast<std::uint32_t>((j1 * nb2 + j2) * su + os);
        ctx.store_digits(out.label, is, d);  // restore for the next inner step
      }
    }
  }
  return out;
}

/// Materialized view of a StateMap as a function between pair carriers
/// (value(a) x Pi_Q on both sides), for display and serialization.
inline FinFn state_fn(const ResourceCtx& ctx, const StateMap& m) {
  FinSet dom = product(ctx.types.value_set(m.a), ctx.store_set(m.label));
  FinSet cod = product(ctx.types.value_set(m.b), ctx.store_set(m.label));
  return FinFn(std::move(dom), std::move(cod), m.table);
}

/// Rank of the table among all tables with the same boundary, in the
/// canonical order where the first entry varies fastest.
inline std::uint64_t state_rank(const ResourceCtx& ctx, const StateMap& m) {
  const std::uint64_t cod = ctx.types.value_size(m.b) * ctx.store_size(m.label);
  std::uint64_t k = 0;
  for (std::size_t i = m.table.size(); i-- > 0;) k = k * cod + m.table[i];
  return k;
}

/// Canonical display token: "{x}#13" is the 13th map at label {x}.
inline std::string state_token(const ResourceCtx& ctx, const StateMap& m) {
  return ctx.label_token(m.label) + "#" + std::to_string(state_rank(ctx, m));
}

// ---------------------------------------------------------------------------
// Hom carriers: every stateful map between two type words, grouped by label
// ---------------------------------------------------------------------------

/// All stateful maps a -> b, labels in mask order and tables in rank order
/// within each label.  offset[q] is the index of the first map at label q;
/// offset[2^n] is the total size.
struct HomCarrier {
  TypeObj a, b;
  std::vector<StateMap> elems;
  std::vector<std::uint64_t> offset;

  std::uint64_t size() const { return elems.size(); }

  std::uint64_t index_of(const ResourceCtx& ctx, const StateMap& m) const {
    if (m.a != a || m.b != b)
      throw boundary_error("HomCarrier: map has boundary " + m.a.token() + " -> " +
                           m.b.token() + ", carrier is " + a.token() + " -> " + b.token());
    std::uint64_t idx = offset[m.label] + state_rank(ctx, m);
    if (idx >= offset[m.label + 1])
      throw boundary_error("HomCarrier: map rank out of range at label " +
                           ctx.label_token(m.label));
    return idx;
  }
};

/// Enumerates the full hom carrier, guarded per label so accidental blowups
/// are loud: the count at each label Q is (|value(b)|*|Pi_Q|)^(|value(a)|*|Pi_Q|).
inline HomCarrier enumerate_hom(const ResourceCtx& ctx, const TypeObj& a, const TypeObj& b,
                                std::uint64_t per_label_budget = 4096) {
  HomCarrier h;
  h.a = a;
  h.b = b;
  const std::uint32_t nmasks = ctx.full_mask() + 1;
  h.offset.assign(nmasks + 1, 0);
  const std::uint64_t na = ctx.types.value_size(a);
  const std::uint64_t nb = ctx.types.value_size(b);
  for (std::uint32_t q = 0; q < nmasks; ++q) {
    h.offset[q] = h.elems.size();
    const std::uint64_t sq = ctx.store_size(q);
    const std::uint64_t dom = na * sq, cod = nb * sq;
    std::uint64_t count = 1;
    for (std::uint64_t i = 0; i < dom; ++i) {
      if (cod == 0) {
        count = 0;
        break;
      }
      if (count > per_label_budget || count > ~std::uint64_t{0} / cod) {
        count = per_label_budget + 1;
        break;
      }
      count *= cod;
    }
    if (count > per_label_budget)
      throw budget_error("enumerate_hom: carrier " + a.token() + " -> " + b.token() +
                             " at label " + ctx.label_token(q) + " exceeds the per-label budget",
                         count, per_label_budget);
    for (std::uint64_t k = 0; k < count; ++k) {
      StateMap m;
      m.label = q;
      m.a = a;
      m.b = b;
      m.table.resize(static_cast<std::size_t>(dom));
      std::uint64_t r = k;
      for (std::uint64_t i = 0; i < dom; ++i) {
        m.table[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(r % cod);
        r /= cod;
      }
      h.elems.push_back(std::move(m));
    }
  }
  h.offset[nmasks] = h.elems.size();
  return h;
}

}  // namespace duofreyd

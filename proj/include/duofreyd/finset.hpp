#pragma once
//
// Finite sets and total functions between them: products, projections,
// pairing, the middle-four interchange, and brute-force enumeration of
// whole function spaces.  Everything else in the library is ultimately
// a table over these.
//
// Conventions, fixed once and relied on everywhere:
//   * element order is construction order and is canonical; two FinSets
//     are equal iff their element lists are equal,
//   * product(a, b) lists pairs in a-major (lexicographic) order, so the
//     pair (i, j) sits at index i*|b| + j,
//   * compose(f, g) is diagrammatic: first f, then g,
//   * enumerate_functions orders the |b|^|a| tables so that the image of
//     the first domain element varies fastest.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "duofreyd/error.hpp"

namespace duofreyd {

/// A finite set of distinct, opaque element tokens.  Cheap to copy
/// (shared immutable representation); order is canonical.
class FinSet {
  struct Rep {
    std::vector<std::string> elems;
    std::unordered_map<std::string, std::uint32_t> index;
  };
  std::shared_ptr<const Rep> rep_;

  static const std::shared_ptr<const Rep>& empty_rep() {
    static const std::shared_ptr<const Rep> r = std::make_shared<Rep>();
    return r;
  }

 public:
  FinSet() : rep_(empty_rep()) {}

  explicit FinSet(std::vector<std::string> elems) {
    auto rep = std::make_shared<Rep>();
    rep->elems = std::move(elems);
    rep->index.reserve(rep->elems.size());
    for (std::uint32_t i = 0; i < rep->elems.size(); ++i) {
      if (!rep->index.emplace(rep->elems[i], i).second)
        throw config_error("FinSet: duplicate element token '" + rep->elems[i] + "'");
    }
    rep_ = std::move(rep);
  }

  std::size_t size() const { return rep_->elems.size(); }
  bool empty() const { return rep_->elems.empty(); }

  const std::string& at(std::size_t i) const {
    if (i >= rep_->elems.size()) throw boundary_error("FinSet: element index out of range");
    return rep_->elems[i];
  }

  const std::vector<std::string>& elems() const { return rep_->elems; }

  std::optional<std::uint32_t> index_of(const std::string& tok) const {
    auto it = rep_->index.find(tok);
    if (it == rep_->index.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const std::string& tok) const { return index_of(tok).has_value(); }

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.rep_ == b.rep_ || a.rep_->elems == b.rep_->elems;
  }
  friend bool operator!=(const FinSet& a, const FinSet& b) { return !(a == b); }
};

/// Canonical rendering of a product element.
struct PairElem {
  std::string left, right;
  std::string token() const { return "(" + left + "," + right + ")"; }
};

inline std::string pair_token(const std::string& l, const std::string& r) {
  return PairElem{l, r}.token();
}

/// Splits "(l,r)" at the top-level comma (nesting-aware).  Inverse of
/// pair_token on well-formed input.
inline PairElem split_pair(const std::string& tok) {
  if (tok.size() < 3 || tok.front() != '(' || tok.back() != ')')
    throw boundary_error("split_pair: not a pair token: " + tok);
  int depth = 0;
  for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
    char c = tok[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == ',' && depth == 0)
      return PairElem{tok.substr(1, i - 1), tok.substr(i + 1, tok.size() - i - 2)};
  }
  throw boundary_error("split_pair: no top-level comma in: " + tok);
}

/// A total function between finite sets, stored as an index table:
/// table[i] is the codomain index of the image of dom.at(i).
struct FinFn {
  FinSet dom, cod;
  std::vector<std::uint32_t> table;

  FinFn() = default;
  FinFn(FinSet d, FinSet c, std::vector<std::uint32_t> t)
      : dom(std::move(d)), cod(std::move(c)), table(std::move(t)) {
    if (table.size() != dom.size())
      throw boundary_error("FinFn: table size does not match domain size");
    for (auto v : table)
      if (v >= cod.size()) throw boundary_error("FinFn: table entry outside codomain");
  }

  std::uint32_t operator()(std::uint32_t i) const {
    if (i >= table.size()) throw boundary_error("FinFn: argument index out of range");
    return table[i];
  }

  /// Token-level application (convenience for tests and I/O).
  const std::string& map(const std::string& tok) const {
    auto i = dom.index_of(tok);
    if (!i) throw boundary_error("FinFn: '" + tok + "' is not in the domain");
    return cod.at(table[*i]);
  }

  friend bool operator==(const FinFn& f, const FinFn& g) {
    return f.dom == g.dom && f.cod == g.cod && f.table == g.table;
  }
  friend bool operator!=(const FinFn& f, const FinFn& g) { return !(f == g); }
};

inline FinFn identity(const FinSet& a) {
  std::vector<std::uint32_t> t(a.size());
  for (std::uint32_t i = 0; i < t.size(); ++i) t[i] = i;
  return FinFn(a, a, std::move(t));
}

/// Diagrammatic composition: first f, then g.
inline FinFn compose(const FinFn& f, const FinFn& g) {
  if (f.cod != g.dom)
    throw boundary_error("compose: cod of the first function differs from dom of the second");
  std::vector<std::uint32_t> t(f.table.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.table[f.table[i]];
  return FinFn(f.dom, g.cod, std::move(t));
}

/// Cartesian product carrier, pairs in a-major order.
inline FinSet product(const FinSet& a, const FinSet& b) {
  std::vector<std::string> elems;
  elems.reserve(a.size() * b.size());
  for (const auto& x : a.elems())
    for (const auto& y : b.elems()) elems.push_back(pair_token(x, y));
  return FinSet(std::move(elems));
}

inline FinFn proj1(const FinSet& a, const FinSet& b) {
  std::vector<std::uint32_t> t(a.size() * b.size());
  for (std::uint32_t i = 0; i < a.size(); ++i)
    for (std::uint32_t j = 0; j < b.size(); ++j) t[i * b.size() + j] = i;
  return FinFn(product(a, b), a, std::move(t));
}

inline FinFn proj2(const FinSet& a, const FinSet& b) {
  std::vector<std::uint32_t> t(a.size() * b.size());
  for (std::uint32_t i = 0; i < a.size(); ++i)
    for (std::uint32_t j = 0; j < b.size(); ++j) t[i * b.size() + j] = j;
  return FinFn(product(a, b), b, std::move(t));
}

/// Pairing <f,g> : dom(f) -> cod(f) x cod(g); requires dom(f) = dom(g).
inline FinFn pair_fn(const FinFn& f, const FinFn& g) {
  if (f.dom != g.dom) throw boundary_error("pair_fn: the two functions have different domains");
  std::vector<std::uint32_t> t(f.table.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = f.table[i] * static_cast<std::uint32_t>(g.cod.size()) + g.table[i];
  return FinFn(f.dom, product(f.cod, g.cod), std::move(t));
}

/// f x g acting componentwise on a product carrier.
inline FinFn product_fn(const FinFn& f, const FinFn& g) {
  const auto nb = g.dom.size(), mb = g.cod.size();
  std::vector<std::uint32_t> t(f.dom.size() * nb);
  for (std::uint32_t i = 0; i < f.dom.size(); ++i)
    for (std::uint32_t j = 0; j < nb; ++j)
      t[i * nb + j] = f.table[i] * static_cast<std::uint32_t>(mb) + g.table[j];
  return FinFn(product(f.dom, g.dom), product(f.cod, g.cod), std::move(t));
}

/// The middle-four interchange bijection
///   (a x b) x (c x d) -> (a x c) x (b x d),   ((p,q),(r,s)) |-> ((p,r),(q,s)).
inline FinFn middle_four(const FinSet& a, const FinSet& b, const FinSet& c, const FinSet& d) {
  const std::uint64_t nb = b.size(), nc = c.size(), nd = d.size();
  std::vector<std::uint32_t> t(a.size() * nb * nc * nd);
  for (std::uint32_t p = 0; p < a.size(); ++p)
    for (std::uint32_t q = 0; q < nb; ++q)
      for (std::uint32_t r = 0; r < nc; ++r)
        for (std::uint32_t s = 0; s < nd; ++s) {
          std::uint64_t src = ((p * nb + q) * nc + r) * nd + s;
          std::uint64_t dst = ((p * nc + r) * nb + q) * nd + s;
          t[src] = static_cast<std::uint32_t>(dst);
        }
  return FinFn(product(product(a, b), product(c, d)),
               product(product(a, c), product(b, d)), std::move(t));
}

/// |b|^|a| with overflow detection (returns nullopt past 2^63).
inline std::optional<std::uint64_t> count_functions(const FinSet& a, const FinSet& b) {
  if (a.empty()) return 1;
  if (b.empty()) return 0;
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (n > (std::uint64_t{1} << 63) / b.size()) return std::nullopt;
    n *= b.size();
  }
  return n;
}

/// The k-th function a -> b in the canonical order: the codomain index of
/// the first domain element varies fastest, i.e. table[i] = (k / |b|^i) mod |b|.
inline FinFn nth_function(const FinSet& a, const FinSet& b, std::uint64_t k) {
  if (b.empty() && !a.empty()) throw boundary_error("nth_function: empty codomain");
  std::vector<std::uint32_t> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    t[i] = static_cast<std::uint32_t>(k % b.size());
    k /= b.size();
  }
  if (k != 0) throw boundary_error("nth_function: rank out of range");
  return FinFn(a, b, std::move(t));
}

/// Rank of f in the enumerate_functions order; inverse of nth_function.
inline std::uint64_t function_rank(const FinFn& f) {
  std::uint64_t k = 0;
  for (std::size_t i = f.table.size(); i-- > 0;) k = k * f.cod.size() + f.table[i];
  return k;
}

/// All |b|^|a| total functions a -> b in the canonical deterministic order.
/// Guarded by a budget to keep accidental explosions loud.
inline std::vector<FinFn> enumerate_functions(const FinSet& a, const FinSet& b,
                                              std::uint64_t budget = 1u << 20) {
  auto n = count_functions(a, b);
  if (!n || *n > budget)
    throw budget_error("enumerate_functions: function space exceeds budget",
                       n.value_or(~std::uint64_t{0}), budget);
  std::vector<FinFn> out;
  out.reserve(static_cast<std::size_t>(*n));
  for (std::uint64_t k = 0; k < *n; ++k) out.push_back(nth_function(a, b, k));
  return out;
}

// ---------------------------------------------------------------------------
// JSON-style serialization:  {"elems":[...]}  and
// {"dom":...,"cod":...,"table":{"x":"u",...}}.  nlohmann objects keep keys
// sorted, so dumps are canonical byte-for-byte.
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const FinSet& s) {
  return nlohmann::json{{"elems", s.elems()}};
}

inline FinSet finset_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("elems") || !j["elems"].is_array())
    throw config_error("FinSet: expected {\"elems\":[...]}");
  std::vector<std::string> elems;
  for (const auto& e : j["elems"]) {
    if (!e.is_string()) throw config_error("FinSet: element tokens must be strings");
    elems.push_back(e.get<std::string>());
  }
  return FinSet(std::move(elems));
}

inline nlohmann::json to_json(const FinFn& f) {
  nlohmann::json table = nlohmann::json::object();
  for (std::uint32_t i = 0; i < f.dom.size(); ++i) table[f.dom.at(i)] = f.cod.at(f.table[i]);
  return nlohmann::json{{"dom", to_json(f.dom)}, {"cod", to_json(f.cod)}, {"table", table}};
}

inline FinFn finfn_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dom") || !j.contains("cod") || !j.contains("table"))
    throw config_error("FinFn: expected {\"dom\":...,\"cod\":...,\"table\":{...}}");
  FinSet dom = finset_from_json(j["dom"]);
  FinSet cod = finset_from_json(j["cod"]);
  std::vector<std::uint32_t> table(dom.size());
  std::size_t seen = 0;
  for (const auto& [k, v] : j["table"].items()) {
    auto di = dom.index_of(k);
    if (!di) throw config_error("FinFn: table key '" + k + "' is not in the domain");
    if (!v.is_string()) throw config_error("FinFn: table values must be element tokens");
    auto ci = cod.index_of(v.get<std::string>());
    if (!ci) throw config_error("FinFn: table value '" + v.get<std::string>() + "' is not in the codomain");
    table[*di] = *ci;
    ++seen;
  }
  if (seen != dom.size()) throw config_error("FinFn: table is not total on the domain");
  return FinFn(std::move(dom), std::move(cod), std::move(table));
}

inline std::string to_text(const FinSet& s) { return to_json(s).dump(); }
inline std::string to_text(const FinFn& f) { return to_json(f).dump(); }

}  // namespace duofreyd

#pragma once
//
// Strict monoidal base categories of finite value sets.
//
// An object is a *word* of declared base-type names; the tensor is word
// concatenation and the unit is the empty word, so associativity and the
// unit laws hold syntactically and the coherence isomorphisms are literal
// identities.  A morphism a -> b is any total function between the value
// sets, where the value set of a word is the cartesian product of its
// base value sets flattened to canonical tuples:
//
//   value(e)          = { "()" }               (one empty tuple)
//   value(bit)        = { "0", "1" }           (bare base tokens)
//   value(bit*bit)    = { "(0,0)", "(0,1)", "(1,0)", "(1,1)" }
//
// Tuples are listed leftmost-major (the last component varies fastest),
// matching the product conventions in finset.hpp.  Because value sets are
// computed from the flattened word, value(a ⊕ b) is definitionally the
// product of value(a) and value(b) and strictness costs nothing.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "duofreyd/error.hpp"
#include "duofreyd/finset.hpp"

namespace duofreyd {

/// An object of the base category: an ordered word of base-type names.
struct TypeObj {
  std::vector<std::string> word;

  static TypeObj unit() { return TypeObj{}; }
  static TypeObj base(std::string name) { return TypeObj{{std::move(name)}}; }

  std::size_t size() const { return word.size(); }
  bool is_unit() const { return word.empty(); }

  /// Display form: "e" for the empty word, else names joined with '*'.
  std::string token() const {
    if (word.empty()) return "e";
    std::string out = word[0];
    for (std::size_t i = 1; i < word.size(); ++i) out += "*" + word[i];
    return out;
  }

  friend TypeObj tensor(const TypeObj& a, const TypeObj& b) {
    TypeObj out = a;
    out.word.insert(out.word.end(), b.word.begin(), b.word.end());
    return out;
  }

  friend bool operator==(const TypeObj& a, const TypeObj& b) { return a.word == b.word; }
  friend bool operator!=(const TypeObj& a, const TypeObj& b) { return !(a == b); }
};

/// Canonical token for a flat tuple of component tokens: "()" when empty,
/// the bare token when singular, "(t1,...,tn)" otherwise.
inline std::string tuple_token(const std::vector<std::string>& parts) {
  if (parts.empty()) return "()";
  if (parts.size() == 1) return parts[0];
  std::string out = "(" + parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "," + parts[i];
  return out + ")";
}

/// A base category: declared finite value sets per base-type name, with the
/// full function space as morphisms between word value sets.  Immutable
/// after declaration; all queries are const.
class MCat {
 public:
  /// Declares a new base type.  "e" is reserved for the empty word.
  void add_base(const std::string& name, FinSet values) {
    if (name == "e") throw config_error("MCat: base name 'e' is reserved for the unit type");
    if (name.empty()) throw config_error("MCat: base name must be nonempty");
    if (bases_.count(name)) throw config_error("MCat: base '" + name + "' declared twice");
    order_.push_back(name);
    bases_.emplace(name, std::move(values));
  }

  bool has_base(const std::string& name) const { return bases_.count(name) != 0; }

  const FinSet& base_values(const std::string& name) const {
    auto it = bases_.find(name);
    if (it == bases_.end()) throw config_error("MCat: unknown base type '" + name + "'");
    return it->second;
  }

  /// Base names in declaration order.
  const std::vector<std::string>& base_names() const { return order_; }

  /// Number of elements of value_set(a), saturating at 2^63.
  std::uint64_t value_size(const TypeObj& a) const {
    constexpr std::uint64_t CAP = std::uint64_t{1} << 63;
    std::uint64_t n = 1;
    for (const auto& name : a.word) {
      std::uint64_t k = base_values(name).size();
      if (k == 0) return 0;
      n = (n > CAP / k) ? CAP : n * k;
    }
    return n;
  }

  /// The flat-tuple carrier of a word, in leftmost-major order.
  FinSet value_set(const TypeObj& a, std::uint64_t budget = std::uint64_t{1} << 20) const {
    std::uint64_t n = value_size(a);
    if (n > budget) throw budget_error("MCat: value set of '" + a.token() + "' exceeds budget", n, budget);
    std::vector<const FinSet*> comps;
    comps.reserve(a.word.size());
    for (const auto& name : a.word) comps.push_back(&base_values(name));
    std::vector<std::string> elems;
    elems.reserve(static_cast<std::size_t>(n));
    std::vector<std::uint32_t> idx(comps.size(), 0);
    std::vector<std::string> parts(comps.size());
    for (std::uint64_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < comps.size(); ++i) parts[i] = comps[i]->at(idx[i]);
      elems.push_back(tuple_token(parts));
      for (std::size_t i = comps.size(); i-- > 0;) {
        if (++idx[i] < comps[i]->size()) break;
        idx[i] = 0;
      }
    }
    return FinSet(std::move(elems));
  }

  FinFn identity_mor(const TypeObj& a) const { return identity(value_set(a)); }

  /// The tensor f ⊕ g of f : a1 -> b1 and g : a2 -> b2, acting as f on the
  /// first block of each tuple and as g on the second.
  FinFn tensor_mor(const FinFn& f, const FinFn& g, const TypeObj& a1, const TypeObj& b1,
                   const TypeObj& a2, const TypeObj& b2) const {
    if (f.dom != value_set(a1) || f.cod != value_set(b1))
      throw boundary_error("MCat: first tensor factor does not have boundary " + a1.token() +
                           " -> " + b1.token());
    if (g.dom != value_set(a2) || g.cod != value_set(b2))
      throw boundary_error("MCat: second tensor factor does not have boundary " + a2.token() +
                           " -> " + b2.token());
    const std::uint64_t n2 = g.dom.size(), m2 = g.cod.size();
    std::vector<std::uint32_t> t(f.dom.size() * n2);
    for (std::uint32_t i = 0; i < f.dom.size(); ++i)
      for (std::uint32_t j = 0; j < n2; ++j)
        t[i * n2 + j] = static_cast<std::uint32_t>(f.table[i] * m2 + g.table[j]);
    return FinFn(value_set(tensor(a1, a2)), value_set(tensor(b1, b2)), std::move(t));
  }

  /// All functions value(a) -> value(b) in the canonical order.
  std::vector<FinFn> hom(const TypeObj& a, const TypeObj& b,
                         std::uint64_t budget = std::uint64_t{1} << 20) const {
    return enumerate_functions(value_set(a), value_set(b), budget);
  }

  /// Parses "e" or a '*'-joined word of declared base names (spaces allowed
  /// around the separators).
  TypeObj parse_type(const std::string& text) const {
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t");
      std::size_t e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string body = trim(text);
    if (body.empty()) throw config_error("MCat: empty type expression");
    if (body == "e") return TypeObj::unit();
    TypeObj out;
    std::size_t pos = 0;
    while (true) {
      std::size_t star = body.find('*', pos);
      std::string name = trim(body.substr(pos, star == std::string::npos ? star : star - pos));
      if (name.empty()) throw config_error("MCat: malformed type expression '" + text + "'");
      if (!has_base(name))
        throw config_error("MCat: unknown base type '" + name + "' in '" + text + "'");
      out.word.push_back(name);
      if (star == std::string::npos) break;
      pos = star + 1;
    }
    return out;
  }

 private:
  std::vector<std::string> order_;
  std::unordered_map<std::string, FinSet> bases_;
};

}  // namespace duofreyd

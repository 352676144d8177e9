#pragma once
//
// Separated monoids: a monoid (M, op, e) together with a binary
// "separation" relation  m || n  marking pairs that may act in parallel.
// The laws, checked by check_separated_laws over a probe list:
//
//   unit:            e || m   and   m || e
//   mult (left):     (m . m') || n   iff   m || n  and  m' || n
//   mult (right):    m || (n . n')   iff   m || n  and  m || n'
//
// plus ordinary monoid associativity/unit laws.  The relation is an
// arbitrary decidable one: symmetry is deliberately NOT assumed or
// checked, only the laws above.
//
// Carriers may be finite (fully enumerable) or declared infinite, in
// which case checking is sample-based over a documented probe list.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "duofreyd/error.hpp"
#include "duofreyd/finset.hpp"
#include "duofreyd/report.hpp"

namespace duofreyd {

struct SepMonoid {
  std::string name;
  bool finite = true;
  FinSet carrier;  ///< empty and unused when !finite
  std::vector<std::string> default_probes;
  std::string unit;
  std::function<std::string(const std::string&, const std::string&)> op;
  std::function<bool(const std::string&, const std::string&)> sep;
};

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

namespace detail {

/// Token <-> bitmask helpers for finite-subset monoids: "{}", "{x}", "{x,y}"
/// with members listed in resource order.
inline std::string subset_token(const FinSet& resources, std::uint32_t mask) {
  std::string out = "{";
  bool first = true;
  for (std::uint32_t i = 0; i < resources.size(); ++i)
    if (mask & (1u << i)) {
      if (!first) out += ",";
      out += resources.at(i);
      first = false;
    }
  return out + "}";
}

inline std::uint32_t subset_mask(const FinSet& resources, const std::string& tok) {
  if (tok.size() < 2 || tok.front() != '{' || tok.back() != '}')
    throw config_error("subset token must look like {a,b}: " + tok);
  std::uint32_t mask = 0;
  std::size_t pos = 1;
  while (pos < tok.size() - 1) {
    std::size_t comma = tok.find(',', pos);
    if (comma == std::string::npos || comma > tok.size() - 1) comma = tok.size() - 1;
    std::string name = tok.substr(pos, comma - pos);
    auto idx = resources.index_of(name);
    if (!idx) throw config_error("unknown resource '" + name + "' in " + tok);
    mask |= 1u << *idx;
    pos = comma + 1;
  }
  return mask;
}

}  // namespace detail

/// Finite subsets of a resource set under union; separation is disjointness.
inline SepMonoid pf_sep_monoid(const FinSet& resources) {
  if (resources.size() > 16)
    throw budget_error("pf_sep_monoid: too many resources to enumerate subsets",
                       resources.size(), 16);
  std::vector<std::string> elems;
  for (std::uint32_t mask = 0; mask < (1u << resources.size()); ++mask)
    elems.push_back(detail::subset_token(resources, mask));
  SepMonoid m;
  m.name = "pf(" + std::to_string(resources.size()) + ")";
  m.finite = true;
  m.carrier = FinSet(elems);
  m.default_probes = elems;
  m.unit = "{}";
  m.op = [resources](const std::string& a, const std::string& b) {
    return detail::subset_token(resources,
                                detail::subset_mask(resources, a) | detail::subset_mask(resources, b));
  };
  m.sep = [resources](const std::string& a, const std::string& b) {
    return (detail::subset_mask(resources, a) & detail::subset_mask(resources, b)) == 0;
  };
  return m;
}

/// Natural numbers under addition; x || y iff x = 0 or y = 0.
inline SepMonoid nat_sep_monoid() {
  SepMonoid m;
  m.name = "nat";
  m.finite = false;
  m.default_probes = {"0", "1", "2", "3", "4", "5"};
  m.unit = "0";
  m.op = [](const std::string& a, const std::string& b) {
    return std::to_string(std::stoull(a) + std::stoull(b));
  };
  m.sep = [](const std::string& a, const std::string& b) { return a == "0" || b == "0"; };
  return m;
}

/// Product monoid with pointwise operation and pointwise separation.
inline SepMonoid product_sep(const SepMonoid& m1, const SepMonoid& m2) {
  SepMonoid m;
  m.name = "(" + m1.name + " x " + m2.name + ")";
  m.finite = m1.finite && m2.finite;
  if (m.finite) m.carrier = product(m1.carrier, m2.carrier);
  const auto& p1 = m1.finite ? m1.carrier.elems() : m1.default_probes;
  const auto& p2 = m2.finite ? m2.carrier.elems() : m2.default_probes;
  for (const auto& a : p1)
    for (const auto& b : p2) m.default_probes.push_back(pair_token(a, b));
  m.unit = pair_token(m1.unit, m2.unit);
  auto op1 = m1.op, op2 = m2.op;
  m.op = [op1, op2](const std::string& a, const std::string& b) {
    auto pa = split_pair(a), pb = split_pair(b);
    return pair_token(op1(pa.left, pb.left), op2(pa.right, pb.right));
  };
  auto sep1 = m1.sep, sep2 = m2.sep;
  m.sep = [sep1, sep2](const std::string& a, const std::string& b) {
    auto pa = split_pair(a), pb = split_pair(b);
    return sep1(pa.left, pb.left) && sep2(pa.right, pb.right);
  };
  return m;
}

// ---------------------------------------------------------------------------
// Law checking
// ---------------------------------------------------------------------------

/// Checks the separated-monoid laws over all probe triples.  Probes default
/// to the full carrier (finite) or the instance's declared probe list.
/// Failures are report records, never exceptions.
inline LawReport check_separated_laws(const SepMonoid& m,
                                      std::vector<std::string> probes = {}) {
  if (probes.empty()) probes = m.finite ? m.carrier.elems() : m.default_probes;
  if (probes.empty()) throw config_error("check_separated_laws: no probes available");

  LawReport rep;
  const std::string cover =
      m.name + ", " + std::to_string(probes.size()) + " probes" + (m.finite ? " (full carrier)" : " (sampled)");
  for (const char* law : {"sepmonoid/monoid-unit", "sepmonoid/monoid-assoc", "sepmonoid/unit-sep",
                          "sepmonoid/mult-sep-left", "sepmonoid/mult-sep-right"})
    rep.describe(law, cover);

  for (const auto& a : probes) {
    rep.tally("sepmonoid/monoid-unit", m.op(m.unit, a) == a && m.op(a, m.unit) == a,
              [&] { return std::make_pair(a, "unit law fails at " + a); });
    rep.tally("sepmonoid/unit-sep", m.sep(m.unit, a) && m.sep(a, m.unit), [&] {
      return std::make_pair(a, std::string(m.sep(m.unit, a) ? "" : "e || " + a + " fails; ") +
                                   (m.sep(a, m.unit) ? "" : a + " || e fails"));
    });
  }

  for (const auto& a : probes)
    for (const auto& b : probes) {
      const std::string ab = m.op(a, b);
      for (const auto& c : probes) {
        rep.tally("sepmonoid/monoid-assoc", m.op(ab, c) == m.op(a, m.op(b, c)), [&] {
          return std::make_pair("(" + a + "," + b + "," + c + ")",
                                "(ab)c = " + m.op(ab, c) + " but a(bc) = " + m.op(a, m.op(b, c)));
        });
        // (a.b) || c  iff  a || c  and  b || c
        rep.tally("sepmonoid/mult-sep-left", m.sep(ab, c) == (m.sep(a, c) && m.sep(b, c)), [&] {
          return std::make_pair("(" + a + "," + b + "," + c + ")",
                                "(" + ab + ") || " + c + " is " + (m.sep(ab, c) ? "true" : "false") +
                                    " but componentwise gives " +
                                    ((m.sep(a, c) && m.sep(b, c)) ? "true" : "false"));
        });
        // a || (b.c)  iff  a || b  and  a || c
        const std::string bc = m.op(b, c);
        rep.tally("sepmonoid/mult-sep-right", m.sep(a, bc) == (m.sep(a, b) && m.sep(a, c)), [&] {
          return std::make_pair("(" + a + "," + b + "," + c + ")",
                                a + " || (" + bc + ") is " + (m.sep(a, bc) ? "true" : "false") +
                                    " but componentwise gives " +
                                    ((m.sep(a, b) && m.sep(a, c)) ? "true" : "false"));
        });
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Homomorphisms between separated monoids
// ---------------------------------------------------------------------------

struct SepHom {
  std::string name;
  SepMonoid src, dst;
  std::function<std::string(const std::string&)> map;
};

/// Collapse map into subsets of a one-element resource universe:
/// the empty label stays empty, every nonempty label becomes {*}.
inline SepHom pf_collapse_hom(const FinSet& resources) {
  SepHom h;
  h.name = "pf-collapse";
  h.src = pf_sep_monoid(resources);
  h.dst = pf_sep_monoid(FinSet({"*"}));
  h.map = [](const std::string& tok) { return tok == "{}" ? std::string("{}") : std::string("{*}"); };
  return h;
}

inline SepHom identity_sep_hom(const SepMonoid& m) {
  return SepHom{"identity", m, m, [](const std::string& t) { return t; }};
}

/// Checks that phi is a monoid homomorphism and reflects separation
/// (phi(m) || phi(m') implies m || m') over the probe pairs.
inline LawReport check_sep_hom(const SepHom& phi, std::vector<std::string> probes = {}) {
  if (probes.empty()) probes = phi.src.finite ? phi.src.carrier.elems() : phi.src.default_probes;
  if (probes.empty()) throw config_error("check_sep_hom: no probes available");
  LawReport rep;
  const std::string cover = phi.name + ": " + phi.src.name + " -> " + phi.dst.name + ", " +
                            std::to_string(probes.size()) + " probes";
  for (const char* law : {"sephom/unit", "sephom/mult", "sephom/reflects-separation"})
    rep.describe(law, cover);

  rep.tally("sephom/unit", phi.map(phi.src.unit) == phi.dst.unit, [&] {
    return std::make_pair(phi.src.unit, "phi(e) = " + phi.map(phi.src.unit) + " != e'");
  });
  for (const auto& a : probes)
    for (const auto& b : probes) {
      rep.tally("sephom/mult", phi.map(phi.src.op(a, b)) == phi.dst.op(phi.map(a), phi.map(b)),
                [&] {
                  return std::make_pair("(" + a + "," + b + ")",
                                        "phi(ab) = " + phi.map(phi.src.op(a, b)) +
                                            " but phi(a)phi(b) = " +
                                            phi.dst.op(phi.map(a), phi.map(b)));
                });
      rep.tally("sephom/reflects-separation",
                !phi.dst.sep(phi.map(a), phi.map(b)) || phi.src.sep(a, b), [&] {
                  return std::make_pair("(" + a + "," + b + ")",
                                        "phi(" + a + ") || phi(" + b + ") holds downstairs but " +
                                            a + " || " + b + " fails upstairs");
                });
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Interning: a finite, multiplication-closed fragment with index tables,
// used by the labelled-set machinery for fast label arithmetic.
// ---------------------------------------------------------------------------

struct InternedMonoid {
  std::vector<std::string> elems;
  std::uint32_t unit = 0;
  std::vector<std::uint32_t> op;  ///< row-major |elems| x |elems|
  std::vector<std::uint8_t> sep;

  std::uint32_t size() const { return static_cast<std::uint32_t>(elems.size()); }
  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const { return op[i * elems.size() + j]; }
  bool is_sep(std::uint32_t i, std::uint32_t j) const { return sep[i * elems.size() + j] != 0; }
  std::optional<std::uint32_t> index_of(const std::string& tok) const {
    for (std::uint32_t i = 0; i < elems.size(); ++i)
      if (elems[i] == tok) return i;
    return std::nullopt;
  }
};

/// Closes `seeds` (plus the unit) under multiplication and freezes the
/// result into index tables.  For finite monoids with no seeds the whole
/// carrier is interned.
inline InternedMonoid intern_monoid(const SepMonoid& m, std::vector<std::string> seeds = {},
                                    std::size_t budget = 4096) {
  std::vector<std::string> elems;
  auto push_unique = [&elems](const std::string& t) {
    for (const auto& e : elems)
      if (e == t) return false;
    elems.push_back(t);
    return true;
  };
  push_unique(m.unit);
  if (seeds.empty() && m.finite) seeds = m.carrier.elems();
  for (const auto& s : seeds) push_unique(s);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      // Copy: push_unique may reallocate elems.
      std::string prod = m.op(elems[i], elems[j]);
      push_unique(prod);
      if (elems.size() > budget)
        throw budget_error("intern_monoid: multiplicative closure exceeds budget", elems.size(),
                           budget);
    }
  }
  InternedMonoid im;
  im.elems = elems;
  im.unit = 0;
  const std::size_t n = elems.size();
  im.op.resize(n * n);
  im.sep.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::string prod = m.op(elems[i], elems[j]);
      auto it = im.index_of(prod);
      if (!it) throw error("intern_monoid: closure is not closed (internal)");
      im.op[i * n + j] = *it;
      im.sep[i * n + j] = m.sep(elems[i], elems[j]) ? 1 : 0;
    }
  return im;
}

// ---------------------------------------------------------------------------
// Serialization: carrier + op table + sep table (finite monoids only).
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const SepMonoid& m) {
  if (!m.finite) throw config_error("SepMonoid serialization requires a finite carrier");
  const auto& es = m.carrier.elems();
  nlohmann::json op = nlohmann::json::array(), sep = nlohmann::json::array();
  for (const auto& a : es) {
    nlohmann::json oprow = nlohmann::json::array(), seprow = nlohmann::json::array();
    for (const auto& b : es) {
      oprow.push_back(m.op(a, b));
      seprow.push_back(m.sep(a, b));
    }
    op.push_back(oprow);
    sep.push_back(seprow);
  }
  return nlohmann::json{
      {"name", m.name}, {"carrier", es}, {"unit", m.unit}, {"op", op}, {"sep", sep}};
}

inline SepMonoid sepmonoid_from_json(const nlohmann::json& j) {
  for (const char* k : {"carrier", "unit", "op", "sep"})
    if (!j.contains(k)) throw config_error(std::string("SepMonoid: missing field '") + k + "'");
  SepMonoid m;
  m.name = j.value("name", "file");
  m.finite = true;
  m.carrier = FinSet(j["carrier"].get<std::vector<std::string>>());
  m.default_probes = m.carrier.elems();
  m.unit = j["unit"].get<std::string>();
  if (!m.carrier.contains(m.unit)) throw config_error("SepMonoid: unit not in carrier");
  const std::size_t n = m.carrier.size();
  auto op = j["op"], sep = j["sep"];
  if (op.size() != n || sep.size() != n)
    throw config_error("SepMonoid: op/sep tables must be |carrier| x |carrier|");
  auto optab = std::make_shared<std::vector<std::uint32_t>>(n * n);
  auto septab = std::make_shared<std::vector<std::uint8_t>>(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (op[i].size() != n || sep[i].size() != n)
      throw config_error("SepMonoid: op/sep tables must be |carrier| x |carrier|");
    for (std::size_t jj = 0; jj < n; ++jj) {
      auto idx = m.carrier.index_of(op[i][jj].get<std::string>());
      if (!idx) throw config_error("SepMonoid: op entry not in carrier");
      (*optab)[i * n + jj] = *idx;
      (*septab)[i * n + jj] = sep[i][jj].get<bool>() ? 1 : 0;
    }
  }
  FinSet carrier = m.carrier;
  m.op = [carrier, optab, n](const std::string& a, const std::string& b) {
    auto ia = carrier.index_of(a), ib = carrier.index_of(b);
    if (!ia || !ib) throw boundary_error("SepMonoid op: token not in carrier");
    return carrier.at((*optab)[*ia * n + *ib]);
  };
  m.sep = [carrier, septab, n](const std::string& a, const std::string& b) {
    auto ia = carrier.index_of(a), ib = carrier.index_of(b);
    if (!ia || !ib) throw boundary_error("SepMonoid sep: token not in carrier");
    return (*septab)[*ia * n + *ib] != 0;
  };
  return m;
}

}  // namespace duofreyd

#pragma once
//
// Resource programs: a small text format for store-transforming programs.
//
// A program file declares the resource family, base types, and named
// primitive stateful maps, then gives one expression built from pure maps,
// identities, sequential composition, and parallel composition.  The whole
// expression elaborates bottom-up into a single stateful map; the parallel
// operator's separation requirement is enforced during elaboration --
// strictly before any table is applied -- and a violation reports the
// overlapping resources together with the offending subterm path.
//
// Grammar ('#' starts a comment; declarations precede their uses):
//
//   file     := { decl } "main" "=" expr
//   decl     := "resource" NAME ":" "{" tok { "," tok } "}"
//             | "type"     NAME ":" "{" tok { "," tok } "}"
//             | "prim"     NAME ":" word "->" word "uses" label
//                          "table" "{" nat { "," nat } "}"
//   word     := "e" | NAME { "*" NAME }
//   label    := "{" [ NAME { "," NAME } ] "}"
//   expr     := "pure" JSON | "id" word | "seq" "(" expr "," expr ")"
//             | "par" "(" expr "," expr ")" | NAME
//
// A prim's table lists indices into value(b) x store(label), one entry per
// point of value(a) x store(label); both sides enumerate value-major,
// store-minor.  `pure` takes a plain function literal in the JSON form
// {"dom":{"elems":[..]},"cod":{"elems":[..]},"table":{tok:tok,..}}; its
// boundary words are inferred from the element tokens.

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "duofreyd/resources.hpp"

namespace duofreyd {

struct ResourceProgram;
using ProgPtr = std::shared_ptr<const ResourceProgram>;

struct ResourceProgram {
  enum class Kind { Pure, Idt, Seq, Par, Prim };
  Kind kind = Kind::Idt;
  FinFn fn;             ///< Pure: the plain value map
  TypeObj a, b;         ///< boundary words
  std::string name;     ///< Prim
  ProgPtr left, right;  ///< Seq / Par
};

inline ProgPtr prog_pure(FinFn fn, TypeObj a, TypeObj b) {
  auto p = std::make_shared<ResourceProgram>();
  p->kind = ResourceProgram::Kind::Pure;
  p->fn = std::move(fn);
  p->a = std::move(a);
  p->b = std::move(b);
  return p;
}

inline ProgPtr prog_idt(TypeObj a) {
  auto p = std::make_shared<ResourceProgram>();
  p->kind = ResourceProgram::Kind::Idt;
  p->a = a;
  p->b = std::move(a);
  return p;
}

inline ProgPtr prog_seq(ProgPtr l, ProgPtr r) {
  auto p = std::make_shared<ResourceProgram>();
  p->kind = ResourceProgram::Kind::Seq;
  p->a = l->a;
  p->b = r->b;
  p->left = std::move(l);
  p->right = std::move(r);
  return p;
}

inline ProgPtr prog_par(ProgPtr l, ProgPtr r) {
  auto p = std::make_shared<ResourceProgram>();
  p->kind = ResourceProgram::Kind::Par;
  p->a = tensor(l->a, r->a);
  p->b = tensor(l->b, r->b);
  p->left = std::move(l);
  p->right = std::move(r);
  return p;
}

inline ProgPtr prog_prim(std::string name, TypeObj a, TypeObj b) {
  auto p = std::make_shared<ResourceProgram>();
  p->kind = ResourceProgram::Kind::Prim;
  p->name = std::move(name);
  p->a = std::move(a);
  p->b = std::move(b);
  return p;
}

/// A parsed program file: context, named primitives, and the main expression.
struct ProgramFile {
  ResourceCtx ctx;
  std::vector<std::string> prim_order;
  std::map<std::string, StateMap> prims;
  ProgPtr main;
};

// ---------------------------------------------------------------------------
// Boundary inference for pure literals
// ---------------------------------------------------------------------------

/// Reconstructs the type word whose value set is exactly `s`: the unit for
/// {"()"}, a declared base for a matching value set, else a left-nested
/// product split at the top-level comma of each "(l,r)" token.  Inference
/// requires base value tokens free of '(', ')' and ','.
inline TypeObj infer_word(const MCat& m, const FinSet& s) {
  if (s.size() == 1 && s.at(0) == "()") return TypeObj::unit();
  for (const auto& name : m.base_names()) {
    TypeObj t = TypeObj::base(name);
    if (m.value_set(t) == s) return t;
  }
  // split every token "(l,r)" at the comma closing depth 1
  std::vector<std::string> ls, rs;
  auto push_unique = [](std::vector<std::string>& v, const std::string& t) {
    for (const auto& u : v)
      if (u == t) return;
    v.push_back(t);
  };
  for (std::uint32_t i = 0; i < s.size(); ++i) {
    const std::string& tok = s.at(i);
    if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
      throw config_error("pure literal: cannot infer a type word for element '" + tok + "'");
    int depth = 0;
    std::size_t split = std::string::npos;
    for (std::size_t j = 0; j < tok.size(); ++j) {
      if (tok[j] == '(') ++depth;
      else if (tok[j] == ')') --depth;
      else if (tok[j] == ',' && depth == 1 && split == std::string::npos) split = j;
    }
    if (split == std::string::npos)
      throw config_error("pure literal: cannot infer a type word for element '" + tok + "'");
    push_unique(ls, tok.substr(1, split - 1));
    push_unique(rs, tok.substr(split + 1, tok.size() - split - 2));
  }
  TypeObj left = infer_word(m, FinSet(ls));
  TypeObj right = infer_word(m, FinSet(rs));
  TypeObj out = tensor(left, right);
  if (!(m.value_set(out) == s))
    throw config_error("pure literal: element tokens do not enumerate a declared type word");
  return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

/// Token stream over the file text with '#' comments blanked out (except
/// inside JSON string literals, so pure literals survive).
class ProgLexer {
 public:
  explicit ProgLexer(std::string text) : src_(std::move(text)) {
    bool in_str = false;
    for (std::size_t i = 0; i < src_.size(); ++i) {
      if (src_[i] == '"' && (i == 0 || src_[i - 1] != '\\')) in_str = !in_str;
      if (src_[i] == '#' && !in_str)
        while (i < src_.size() && src_[i] != '\n') src_[i++] = ' ';
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= src_.size();
  }

  std::string peek() {
    std::size_t save = pos_;
    std::string t = next();
    pos_ = save;
    return t;
  }

  std::string next() {
    skip_ws();
    if (pos_ >= src_.size()) return "";
    char c = src_[pos_];
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      pos_ += 2;
      return "->";
    }
    if (std::string("{}(),:=*").find(c) != std::string::npos) {
      ++pos_;
      return std::string(1, c);
    }
    std::size_t start = pos_;
    while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
           std::string("{}(),:=*#\"").find(src_[pos_]) == std::string::npos &&
           !(src_[pos_] == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>'))
      ++pos_;
    if (pos_ == start)
      throw config_error("program: unexpected character '" + std::string(1, c) + "'");
    return src_.substr(start, pos_ - start);
  }

  void expect(const std::string& want) {
    std::string got = next();
    if (got != want)
      throw config_error("program: expected '" + want + "', found '" +
                         (got.empty() ? "end of file" : got) + "'");
  }

  /// Consumes a balanced {...} block verbatim (JSON literal).
  std::string balanced_json() {
    skip_ws();
    if (pos_ >= src_.size() || src_[pos_] != '{')
      throw config_error("program: expected a JSON object after 'pure'");
    std::size_t start = pos_;
    int depth = 0;
    bool in_str = false;
    for (; pos_ < src_.size(); ++pos_) {
      char c = src_[pos_];
      if (c == '"' && src_[pos_ - 1] != '\\') in_str = !in_str;
      if (in_str) continue;
      if (c == '{') ++depth;
      if (c == '}' && --depth == 0) {
        ++pos_;
        return src_.substr(start, pos_ - start);
      }
    }
    throw config_error("program: unbalanced JSON literal");
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  std::string src_;
  std::size_t pos_ = 0;
};

inline bool prog_ident(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline std::vector<std::string> parse_tok_set(ProgLexer& lx) {
  lx.expect("{");
  std::vector<std::string> out;
  if (lx.peek() == "}") {
    lx.next();
    return out;
  }
  while (true) {
    std::string t = lx.next();
    if (!prog_ident(t)) throw config_error("program: malformed element token '" + t + "'");
    out.push_back(t);
    std::string sep = lx.next();
    if (sep == "}") return out;
    if (sep != ",") throw config_error("program: expected ',' or '}' in a token set");
  }
}

inline TypeObj parse_word(ProgLexer& lx, const MCat& m) {
  std::string t = lx.next();
  if (!prog_ident(t)) throw config_error("program: malformed type word near '" + t + "'");
  std::string text = t;
  while (lx.peek() == "*") {
    lx.next();
    std::string n = lx.next();
    if (!prog_ident(n)) throw config_error("program: malformed type word near '" + n + "'");
    text += "*" + n;
  }
  return m.parse_type(text);
}

inline ProgPtr parse_expr(ProgLexer& lx, const ProgramFile& pf) {
  std::string head = lx.next();
  if (head == "pure") {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(lx.balanced_json());
    } catch (const nlohmann::json::exception& ex) {
      throw config_error(std::string("program: bad pure literal: ") + ex.what());
    }
    FinFn fn = finfn_from_json(j);
    TypeObj a = infer_word(pf.ctx.types, fn.dom);
    TypeObj b = infer_word(pf.ctx.types, fn.cod);
    return prog_pure(std::move(fn), std::move(a), std::move(b));
  }
  if (head == "id") return prog_idt(parse_word(lx, pf.ctx.types));
  if (head == "seq" || head == "par") {
    lx.expect("(");
    ProgPtr l = parse_expr(lx, pf);
    lx.expect(",");
    ProgPtr r = parse_expr(lx, pf);
    lx.expect(")");
    return head == "seq" ? prog_seq(std::move(l), std::move(r))
                         : prog_par(std::move(l), std::move(r));
  }
  auto it = pf.prims.find(head);
  if (it == pf.prims.end())
    throw config_error("program: '" + head + "' is not a declared primitive");
  return prog_prim(head, it->second.a, it->second.b);
}

}  // namespace detail

inline ProgramFile parse_program(const std::string& text) {
  detail::ProgLexer lx(text);
  ProgramFile pf;
  while (!lx.at_end()) {
    std::string kw = lx.next();
    if (kw == "resource") {
      std::string name = lx.next();
      if (!detail::prog_ident(name)) throw config_error("program: bad resource name");
      lx.expect(":");
      pf.ctx.add_resource(name, FinSet(detail::parse_tok_set(lx)));
    } else if (kw == "type") {
      std::string name = lx.next();
      if (!detail::prog_ident(name)) throw config_error("program: bad type name");
      lx.expect(":");
      pf.ctx.types.add_base(name, FinSet(detail::parse_tok_set(lx)));
    } else if (kw == "prim") {
      std::string name = lx.next();
      if (!detail::prog_ident(name)) throw config_error("program: bad primitive name");
      if (pf.prims.count(name))
        throw config_error("program: primitive '" + name + "' declared twice");
      lx.expect(":");
      StateMap m;
      m.a = detail::parse_word(lx, pf.ctx.types);
      lx.expect("->");
      m.b = detail::parse_word(lx, pf.ctx.types);
      lx.expect("uses");
      std::string label = "{";
      lx.expect("{");
      while (lx.peek() != "}") {
        std::string t = lx.next();
        if (t != "," && !detail::prog_ident(t))
          throw config_error("program: malformed label in primitive '" + name + "'");
        label += t;
      }
      lx.next();
      label += "}";
      m.label = pf.ctx.parse_label(label);
      lx.expect("table");
      lx.expect("{");
      while (true) {
        std::string t = lx.next();
        std::size_t used = 0;
        unsigned long v = 0;
        try {
          v = std::stoul(t, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != t.size())
          throw config_error("program: table entries of '" + name + "' must be numbers");
        m.table.push_back(static_cast<std::uint32_t>(v));
        std::string sep = lx.next();
        if (sep == "}") break;
        if (sep != ",") throw config_error("program: expected ',' or '}' in a table");
      }
      try {
        state_fn(pf.ctx, m);  // validates table size and entry range
      } catch (const error& ex) {
        throw config_error("program: primitive '" + name + "': " + ex.what());
      }
      pf.prim_order.push_back(name);
      pf.prims.emplace(name, std::move(m));
    } else if (kw == "main") {
      lx.expect("=");
      pf.main = detail::parse_expr(lx, pf);
      if (!lx.at_end())
        throw config_error("program: trailing input after the main expression");
      return pf;
    } else {
      throw config_error("program: unknown declaration '" + kw + "'");
    }
  }
  throw config_error("program: missing 'main = <expr>'");
}

inline ProgramFile load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("program: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_program(buf.str());
  } catch (const config_error& ex) {
    throw config_error(path + ": " + ex.what());
  }
}

// ---------------------------------------------------------------------------
// Elaboration (the static separation gate) and execution
// ---------------------------------------------------------------------------

namespace detail {

inline StateMap elab(const ProgramFile& pf, const ProgPtr& e, const std::string& path) {
  if (!e) throw config_error("program: empty expression");
  using K = ResourceProgram::Kind;
  switch (e->kind) {
    case K::Pure:
      return pure_res(pf.ctx, e->fn, e->a, e->b);
    case K::Idt:
      return idt_res(pf.ctx, e->a);
    case K::Prim: {
      auto it = pf.prims.find(e->name);
      if (it == pf.prims.end())
        throw config_error("program: unknown primitive '" + e->name + "' at " + path);
      return it->second;
    }
    case K::Seq: {
      StateMap l = elab(pf, e->left, path + "/seq:left");
      StateMap r = elab(pf, e->right, path + "/seq:right");
      if (l.b != r.a)
        throw boundary_error("program: at " + path + ", seq joins " + l.b.token() + " to " +
                             r.a.token());
      return seq_res(pf.ctx, l, r);
    }
    case K::Par: {
      StateMap l = elab(pf, e->left, path + "/par:left");
      StateMap r = elab(pf, e->right, path + "/par:right");
      try {
        return par_res(pf.ctx, l, r);
      } catch (const separation_error& ex) {
        throw separation_error(std::string(ex.what()) + " (subterm " + path + ")", ex.overlap);
      }
    }
  }
  throw config_error("program: malformed expression node");
}

}  // namespace detail

/// Elaborates the main expression to one stateful map.  Every par node's
/// separation requirement is checked here; nothing has been executed yet.
inline StateMap elaborate(const ProgramFile& pf) {
  if (!pf.main) throw config_error("program: no main expression");
  return detail::elab(pf, pf.main, "main");
}

/// Parses "x=0,y=1" into one value index per declared resource (declaration
/// order).  Every resource must be assigned exactly once.
inline std::vector<std::uint32_t> parse_store_spec(const ResourceCtx& ctx,
                                                   const std::string& text) {
  std::vector<std::optional<std::uint32_t>> got(ctx.nres());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::size_t end = comma == std::string::npos ? text.size() : comma;
    std::string part = text.substr(pos, end - pos);
    std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw config_error("store: expected name=value, found '" + part + "'");
    std::string name = part.substr(0, eq), val = part.substr(eq + 1);
    auto ri = ctx.resources().index_of(name);
    if (!ri) throw config_error("store: unknown resource '" + name + "'");
    auto vi = ctx.store_values(*ri).index_of(val);
    if (!vi)
      throw config_error("store: '" + val + "' is not a value of resource '" + name + "'");
    if (got[*ri]) throw config_error("store: resource '" + name + "' assigned twice");
    got[*ri] = *vi;
    pos = end + 1;
  }
  std::vector<std::uint32_t> out(ctx.nres());
  for (std::uint32_t i = 0; i < ctx.nres(); ++i) {
    if (!got[i])
      throw config_error("store: resource '" + ctx.resources().at(i) + "' is not assigned");
    out[i] = *got[i];
  }
  return out;
}

struct RunResult {
  std::string output;               ///< token of value(b)
  std::vector<std::string> store;   ///< final store, one token per resource
  std::uint32_t label = 0;          ///< resources the program may touch
  TypeObj a, b;                     ///< program boundary
};

/// Runs an elaborated stateful map on one input value and one full store.
/// Store components outside the map's label are passed through untouched.
inline RunResult run_program(const ResourceCtx& ctx, const StateMap& m,
                             const std::string& input_token,
                             std::vector<std::uint32_t> digits) {
  if (digits.size() != ctx.nres())
    throw config_error("run: store must assign every resource");
  FinSet va = ctx.types.value_set(m.a), vb = ctx.types.value_set(m.b);
  auto ia = va.index_of(input_token);
  if (!ia)
    throw config_error("run: '" + input_token + "' is not a value of " + m.a.token());
  const std::uint64_t sq = ctx.store_size(m.label);
  const std::uint64_t is = ctx.store_index(m.label, digits.data());
  const std::uint64_t out = m.table[static_cast<std::size_t>(*ia * sq + is)];
  const std::uint64_t ib = out / sq;
  ctx.store_digits(m.label, out % sq, digits.data());
  RunResult r;
  r.output = vb.at(static_cast<std::uint32_t>(ib));
  for (std::uint32_t i = 0; i < ctx.nres(); ++i)
    r.store.push_back(ctx.store_values(i).at(digits[i]));
  r.label = m.label;
  r.a = m.a;
  r.b = m.b;
  return r;
}

}  // namespace duofreyd

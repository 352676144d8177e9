#pragma once
//
// Deliberately defective instances.
//
// Each mutant carries exactly one defect and otherwise delegates to (or
// copies) an honest instance.  They exist to calibrate the law checkers:
// every mutant must be rejected by at least one named law with a concrete
// witness, and the tests pin down which law that is.  None of them is
// reachable from the honest constructors.
//
//   mutant_duoidal:
//     * mutant-zeta-unrestricted -- the subset category with the
//       interchange map's codomain declared on unrestricted pairs;
//       the naturality and coherence squares no longer paste.
//     * mutant-delta-skew -- a labelled-set category whose unit
//       comultiplication lands in J o (J o J) instead of J o J.
//   mutant_vfreyd (over the one-bit, one-resource context):
//     * mutant-par-nosep -- claims par admission for every state pair,
//       as if the * tensor's separation constraint were the plain tensor.
//     * mutant-seq-nolift -- composes stateful maps without lifting them
//       to the union store: each map misreads the union store index as
//       its own, and the first map's store writes are dropped.
//     * mutant-hommap-relabel -- reindexing along base maps returns the
//       lift of the honest answer to the full label, so a pure map comes
//       back claiming every resource.

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "duofreyd/duoidal.hpp"
#include "duofreyd/error.hpp"
#include "duofreyd/resources.hpp"
#include "duofreyd/sepmonoid.hpp"
#include "duofreyd/vcat.hpp"
#include "duofreyd/vfreyd.hpp"

namespace duofreyd {

namespace detail {

/// Interchange with the admission restriction missing from the codomain.
class ZetaUnrestricted final : public ElementwiseDuoidal {
 public:
  using ElementwiseDuoidal::ElementwiseDuoidal;
  VMor zeta(const VObj& a, const VObj& b, const VObj& c, const VObj& d) const override {
    VMor m = ElementwiseDuoidal::zeta(a, b, c, d);
    m.dst = seq_obj(par_obj_raw(a, c), par_obj_raw(b, d));
    return m;
  }
};

/// Unit comultiplication skewed one level: J -> J o (J o J).
class DeltaSkew final : public ElementwiseDuoidal {
 public:
  using ElementwiseDuoidal::ElementwiseDuoidal;
  VMor delta() const override {
    VMor m;
    m.src = par_unit();
    m.dst = seq_obj(par_unit(), seq_obj(par_unit(), par_unit()));
    m.eval = [](const Elem& in, Elem& out) {
      out = in;
      out.append(in);
      out.append(in);
    };
    return m;
  }
};

/// A resource instance with every method delegated; subclasses override
/// exactly the defective one, so the diff against honesty is one function.
class MutantResourceVFreyd : public VFreydCat {
 public:
  MutantResourceVFreyd(std::string name, std::shared_ptr<const ResourceVFreyd> inner)
      : name_(std::move(name)), inner_(std::move(inner)) {}

  std::string name() const override { return name_; }
  const MCat& base() const override { return inner_->base(); }
  std::shared_ptr<const ElementwiseDuoidal> enrich() const override { return inner_->enrich(); }
  std::uint64_t hom_count(const TypeObj& a, const TypeObj& b) const override {
    return inner_->hom_count(a, b);
  }
  HomElem idt(const TypeObj& a) const override { return inner_->idt(a); }
  HomElem zero() const override { return inner_->zero(); }
  HomElem seq(const TypeObj& a, const TypeObj& b, const TypeObj& c, const HomElem& f,
              const HomElem& g) const override {
    return inner_->seq(a, b, c, f, g);
  }
  HomElem par(const TypeObj& a1, const TypeObj& b1, const TypeObj& a2, const TypeObj& b2,
              const HomElem& f, const HomElem& g) const override {
    return inner_->par(a1, b1, a2, b2, f, g);
  }
  HomElem hom_map(const BaseMor& f, const BaseMor& g, const TypeObj& a, const TypeObj& b,
                  const HomElem& h) const override {
    return inner_->hom_map(f, g, a, b, h);
  }
  bool par_sep(std::uint32_t s1, std::uint32_t s2) const override {
    return inner_->par_sep(s1, s2);
  }
  bool elem_eq(const HomElem& x, const HomElem& y) const override {
    return inner_->elem_eq(x, y);
  }
  std::string elem_token(const HomElem& x) const override { return inner_->elem_token(x); }

 protected:
  std::vector<HomElem> enum_hom(const TypeObj& a, const TypeObj& b) const override {
    return inner_->hom(a, b).elems;
  }

  std::string name_;
  std::shared_ptr<const ResourceVFreyd> inner_;
};

/// Claims par admission for every state pair.
class ParNoSep final : public MutantResourceVFreyd {
 public:
  using MutantResourceVFreyd::MutantResourceVFreyd;
  bool par_sep(std::uint32_t, std::uint32_t) const override { return true; }
};

/// Composes without lifting to the union store: both maps misread the
/// union store index as their own (modulo their store size), and only the
/// second map's store output survives.
class SeqNoLift final : public MutantResourceVFreyd {
 public:
  using MutantResourceVFreyd::MutantResourceVFreyd;
  HomElem seq(const TypeObj&, const TypeObj&, const TypeObj&, const HomElem& fe,
              const HomElem& ge) const override {
    const ResourceCtx& ctx = inner_->ctx();
    const StateMap& f = ResourceVFreyd::unwrap(fe);
    const StateMap& g = ResourceVFreyd::unwrap(ge);
    if (f.b != g.a)
      throw boundary_error("seq: middle types differ: " + f.b.token() + " vs " + g.a.token());
    StateMap out;
    out.label = f.label | g.label;
    out.a = f.a;
    out.b = g.b;
    const std::uint64_t su = ctx.store_size(out.label);
    const std::uint64_t sf = ctx.store_size(f.label), sg = ctx.store_size(g.label);
    const std::uint64_t na = ctx.types.value_size(f.a);
    out.table.resize(static_cast<std::size_t>(na * su));
    for (std::uint64_t ia = 0; ia < na; ++ia)
      for (std::uint64_t is = 0; is < su; ++is) {
        const std::uint64_t rf = f.table[static_cast<std::size_t>(ia * sf + is % sf)];
        const std::uint64_t rg = g.table[static_cast<std::size_t>((rf / sf) * sg + is % sg)];
        out.table[static_cast<std::size_t>(ia * su + is)] =
            static_cast<std::uint32_t>((rg / sg) * su + rg % sg);
      }
    return inner_->wrap(std::move(out));
  }
};

/// Reindexing along base maps relabels to the full resource set.
class HomMapRelabel final : public MutantResourceVFreyd {
 public:
  using MutantResourceVFreyd::MutantResourceVFreyd;
  HomElem hom_map(const BaseMor& f, const BaseMor& g, const TypeObj& a, const TypeObj& b,
                  const HomElem& h) const override {
    const ResourceCtx& ctx = inner_->ctx();
    HomElem honest = inner_->hom_map(f, g, a, b, h);
    return inner_->wrap(lift(ctx, ResourceVFreyd::unwrap(honest), ctx.full_mask()));
  }
};

}  // namespace detail

inline std::vector<std::string> mutant_duoidal_names() {
  return {"mutant-zeta-unrestricted", "mutant-delta-skew"};
}

inline std::vector<std::string> mutant_vfreyd_names() {
  return {"mutant-par-nosep", "mutant-seq-nolift", "mutant-hommap-relabel"};
}

inline std::shared_ptr<const DuoidalCat> mutant_duoidal(const std::string& name) {
  if (name == "mutant-zeta-unrestricted")
    return std::make_shared<detail::ZetaUnrestricted>(ElementwiseDuoidal::Family::SUBSET, name);
  if (name == "mutant-delta-skew")
    return std::make_shared<detail::DeltaSkew>(ElementwiseDuoidal::Family::LABEL, name,
                                               intern_monoid(pf_sep_monoid(FinSet({"x"}))));
  std::string known;
  for (const auto& n : mutant_duoidal_names()) known += " " + n;
  throw config_error("mutant_duoidal: unknown mutant '" + name + "'; known:" + known);
}

/// The defective resource instances, all over the one-bit, one-resource
/// context with a single 2-element base type.
inline std::shared_ptr<const VFreydCat> mutant_vfreyd(const std::string& name) {
  ResourceCtx ctx;
  ctx.add_resource("x", FinSet({"0", "1"}));
  ctx.types.add_base("v", FinSet({"u0", "u1"}));
  auto inner = build_resource_vfreyd(std::move(ctx));
  if (name == "mutant-par-nosep") return std::make_shared<detail::ParNoSep>(name, inner);
  if (name == "mutant-seq-nolift") return std::make_shared<detail::SeqNoLift>(name, inner);
  if (name == "mutant-hommap-relabel")
    return std::make_shared<detail::HomMapRelabel>(name, inner);
  std::string known;
  for (const auto& n : mutant_vfreyd_names()) known += " " + n;
  throw config_error("mutant_vfreyd: unknown mutant '" + name + "'; known:" + known);
}

}  // namespace duofreyd

#include "daseinizer/daseinisation.hpp"

namespace daseinizer {

std::uint64_t outer_mask(const Projector& p, const Context& v) {
  if (p.dim() != v.dim()) throw Error("projector dimension does not match context");
  std::uint64_t mask = 0;
  for (int q = 0; q < v.size(); ++q)
    if (max_abs(v.minimal(q).matrix() * p.matrix()) > tolerance()) mask |= std::uint64_t{1} << q;
  return mask;
}

std::uint64_t inner_mask(const Projector& p, const Context& v) {
  if (p.dim() != v.dim()) throw Error("projector dimension does not match context");
  std::uint64_t mask = 0;
  for (int q = 0; q < v.size(); ++q)
    if (proj_leq(v.minimal(q), p)) mask |= std::uint64_t{1} << q;
  return mask;
}

Projector outer_at(const Projector& p, const Context& v) { return v.element(outer_mask(p, v)); }

Projector inner_at(const Projector& p, const Context& v) { return v.element(inner_mask(p, v)); }

namespace {

Presheaf lattice_presheaf(const ContextPoset& poset, Flavor flavor) {
  std::vector<std::uint32_t> sizes;
  sizes.reserve(static_cast<std::size_t>(poset.size()));
  for (int v = 0; v < poset.size(); ++v) {
    if (poset.context(v).size() > 31) throw Error("lattice stalk is too large to enumerate");
    sizes.push_back(std::uint32_t{1} << poset.context(v).size());
  }
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> maps;
  for (const auto& [sub, super] : poset.strict_pairs()) {
    std::vector<std::uint32_t> m(sizes[static_cast<std::size_t>(super)]);
    for (std::uint32_t mask = 0; mask < m.size(); ++mask)
      m[mask] = static_cast<std::uint32_t>(flavor == Flavor::outer
                                               ? poset.restrict_outer(super, sub, mask)
                                               : poset.restrict_inner(super, sub, mask));
    maps.emplace(std::make_pair(sub, super), std::move(m));
  }
  return Presheaf(poset, std::move(sizes), std::move(maps));
}

}  // namespace

Presheaf outer_presheaf(const ContextPoset& poset) { return lattice_presheaf(poset, Flavor::outer); }

Presheaf inner_presheaf(const ContextPoset& poset) { return lattice_presheaf(poset, Flavor::inner); }

GlobalElement::GlobalElement(const ContextPoset& poset, std::vector<std::uint64_t> masks,
                             Flavor flavor)
    : poset_(&poset), masks_(std::move(masks)), flavor_(flavor) {
  if (masks_.size() != static_cast<std::size_t>(poset.size()))
    throw Error("global element needs one component per context");
  for (int v = 0; v < poset.size(); ++v)
    if (masks_[static_cast<std::size_t>(v)] >> poset.context(v).size())
      throw Error("component mask addresses minimals outside its context");
  for (const auto& [sub, super] : poset.strict_pairs()) {
    std::uint64_t expected =
        flavor_ == Flavor::outer
            ? poset.restrict_outer(super, sub, masks_[static_cast<std::size_t>(super)])
            : poset.restrict_inner(super, sub, masks_[static_cast<std::size_t>(super)]);
    if (expected != masks_[static_cast<std::size_t>(sub)])
      throw Error("components do not match under restriction ('" + poset.context(sub).label() +
                  "' ⊆ '" + poset.context(super).label() + "')");
  }
}

GlobalElement daseinise_global(const Projector& p, const ContextPoset& poset, Flavor flavor) {
  std::vector<std::uint64_t> masks;
  masks.reserve(static_cast<std::size_t>(poset.size()));
  for (int v = 0; v < poset.size(); ++v)
    masks.push_back(flavor == Flavor::outer ? outer_mask(p, poset.context(v))
                                            : inner_mask(p, poset.context(v)));
  return GlobalElement(poset, std::move(masks), flavor);
}

bool global_leq(const GlobalElement& a, const GlobalElement& b) {
  if (&a.poset() != &b.poset() || a.flavor() != b.flavor())
    throw Error("global elements are not comparable");
  for (int v = 0; v < a.poset().size(); ++v)
    if ((a.mask_at(v) & b.mask_at(v)) != a.mask_at(v)) return false;
  return true;
}

GlobalElement global_order_join(const GlobalElement& a, const GlobalElement& b) {
  if (&a.poset() != &b.poset() || a.flavor() != b.flavor())
    throw Error("global elements are not comparable");
  std::vector<std::uint64_t> masks;
  masks.reserve(a.masks().size());
  for (int v = 0; v < a.poset().size(); ++v) masks.push_back(a.mask_at(v) | b.mask_at(v));
  return GlobalElement(a.poset(), std::move(masks), a.flavor());
}

HyperElement::HyperElement(const ContextPoset& poset, std::vector<std::uint64_t> masks)
    : poset_(&poset), masks_(std::move(masks)) {
  if (masks_.size() != static_cast<std::size_t>(poset.size()))
    throw Error("hyper element needs one component per context");
  for (int v = 0; v < poset.size(); ++v)
    if (masks_[static_cast<std::size_t>(v)] >> poset.context(v).size())
      throw Error("component mask addresses minimals outside its context");
  for (const auto& [sub, super] : poset.strict_pairs()) {
    std::uint64_t lower = poset.restrict_outer(super, sub, masks_[static_cast<std::size_t>(super)]);
    if ((lower & masks_[static_cast<std::size_t>(sub)]) != lower)
      throw Error("hyper element fails to dominate its restriction ('" +
                  poset.context(sub).label() + "' ⊆ '" + poset.context(super).label() + "')");
  }
}

HyperElement::HyperElement(const GlobalElement& g) : HyperElement(g.poset(), g.masks()) {
  if (g.flavor() != Flavor::outer)
    throw Error("only outer families embed into the hyper elements");
}

HyperElement hyper_meet(const HyperElement& a, const HyperElement& b) {
  if (&a.poset() != &b.poset()) throw Error("hyper elements live on different posets");
  std::vector<std::uint64_t> masks;
  masks.reserve(a.masks().size());
  for (int v = 0; v < a.poset().size(); ++v) masks.push_back(a.mask_at(v) & b.mask_at(v));
  return HyperElement(a.poset(), std::move(masks));
}

HyperElement hyper_join(const HyperElement& a, const HyperElement& b) {
  if (&a.poset() != &b.poset()) throw Error("hyper elements live on different posets");
  std::vector<std::uint64_t> masks;
  masks.reserve(a.masks().size());
  for (int v = 0; v < a.poset().size(); ++v) masks.push_back(a.mask_at(v) | b.mask_at(v));
  return HyperElement(a.poset(), std::move(masks));
}

bool negation_check(const Projector& p, const ContextPoset& poset, std::string* witness) {
  Projector comp = p.complement();
  for (int v = 0; v < poset.size(); ++v) {
    const Context& ctx = poset.context(v);
    std::uint64_t outer_of_comp = outer_mask(comp, ctx);
    std::uint64_t inner_of_p = inner_mask(p, ctx);
    if (outer_of_comp != (ctx.full_mask() & ~inner_of_p)) {
      if (witness)
        *witness = "complement duality fails at '" + ctx.label() + "'";
      return false;
    }
  }
  // mask complement as a stage bijection between the two lattice presheaves
  Presheaf outer = outer_presheaf(poset);
  Presheaf inner = inner_presheaf(poset);
  NatTransform negation{&outer, &inner, {}};
  negation.component.resize(static_cast<std::size_t>(poset.size()));
  for (int v = 0; v < poset.size(); ++v) {
    std::uint64_t full = poset.context(v).full_mask();
    auto& comp_v = negation.component[static_cast<std::size_t>(v)];
    comp_v.resize(outer.stalk_size(v));
    for (std::uint32_t mask = 0; mask < comp_v.size(); ++mask)
      comp_v[mask] = static_cast<std::uint32_t>(full & ~std::uint64_t{mask});
  }
  return check_natural(negation, witness);
}

}  // namespace daseinizer

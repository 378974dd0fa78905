#pragma once

#include "daseinizer/presheaf.hpp"

namespace daseinizer {

enum class Flavor { outer, inner };

/// Smallest element of P(V) above p: the sum of the minimals that overlap p.
Projector outer_at(const Projector& p, const Context& v);
/// Largest element of P(V) below p: the sum of the minimals under p.
Projector inner_at(const Projector& p, const Context& v);

/// Mask forms of the two approximations.
std::uint64_t outer_mask(const Projector& p, const Context& v);
std::uint64_t inner_mask(const Projector& p, const Context& v);

/// Stalk at V is P(V) (element ids are minimal-subset masks); restriction is
/// the approximation from above. Inflationary along every arrow.
Presheaf outer_presheaf(const ContextPoset& poset);
/// Same stalks; restriction approximates from below. Deflationary.
Presheaf inner_presheaf(const ContextPoset& poset);

/// A compatible family in the outer (or inner) presheaf: one element of
/// P(V) per context, exactly matching under restriction.
class GlobalElement {
 public:
  GlobalElement(const ContextPoset& poset, std::vector<std::uint64_t> masks, Flavor flavor);

  const ContextPoset& poset() const { return *poset_; }
  Flavor flavor() const { return flavor_; }
  std::uint64_t mask_at(int v) const { return masks_[static_cast<std::size_t>(v)]; }
  Projector at(int v) const { return poset_->context(v).element(mask_at(v)); }
  const std::vector<std::uint64_t>& masks() const { return masks_; }

  friend bool operator==(const GlobalElement& a, const GlobalElement& b) {
    return a.flavor_ == b.flavor_ && a.masks_ == b.masks_;
  }

 private:
  const ContextPoset* poset_;
  std::vector<std::uint64_t> masks_;
  Flavor flavor_;
};

/// Stage-wise approximation of an arbitrary projector over the whole poset.
GlobalElement daseinise_global(const Projector& p, const ContextPoset& poset,
                               Flavor flavor = Flavor::outer);

/// Stage-wise order and join of compatible families (the join is again a
/// compatible family; the stage-wise meet in general is not).
bool global_leq(const GlobalElement& a, const GlobalElement& b);
GlobalElement global_order_join(const GlobalElement& a, const GlobalElement& b);

/// A family that dominates the restriction of its value at every arrow,
/// without requiring exact matching. Closed under stage-wise meet and join.
class HyperElement {
 public:
  HyperElement(const ContextPoset& poset, std::vector<std::uint64_t> masks);
  explicit HyperElement(const GlobalElement& g);

  const ContextPoset& poset() const { return *poset_; }
  std::uint64_t mask_at(int v) const { return masks_[static_cast<std::size_t>(v)]; }
  const std::vector<std::uint64_t>& masks() const { return masks_; }

  friend bool operator==(const HyperElement& a, const HyperElement& b) {
    return a.masks_ == b.masks_;
  }

 private:
  const ContextPoset* poset_;
  std::vector<std::uint64_t> masks_;
};

HyperElement hyper_meet(const HyperElement& a, const HyperElement& b);
HyperElement hyper_join(const HyperElement& a, const HyperElement& b);

/// Certifies the duality between the two approximations: approximating the
/// complement from above is complementing the approximation from below, at
/// every context; and mask complement is a natural family of stage
/// bijections from the outer to the inner presheaf.
bool negation_check(const Projector& p, const ContextPoset& poset, std::string* witness = nullptr);

}  // namespace daseinizer

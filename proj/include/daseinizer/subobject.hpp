#pragma once

#include "daseinizer/daseinisation.hpp"
#include "daseinizer/presheaf.hpp"

namespace daseinizer {

/// A clopen sub-object of the spectrum: one subset of the stalk per context
/// (bit q selects the q-th minimal), closed under restriction of points.
class ClopenSubobject {
 public:
  ClopenSubobject(const ContextPoset& poset, std::vector<std::uint64_t> masks);
  static ClopenSubobject top(const ContextPoset& poset);
  static ClopenSubobject bottom(const ContextPoset& poset);

  const ContextPoset& poset() const { return *poset_; }
  std::uint64_t mask_at(int v) const { return masks_[static_cast<std::size_t>(v)]; }
  const std::vector<std::uint64_t>& masks() const { return masks_; }
  bool contains(const SpectralElement& e) const;
  /// The component as a projector of P(V), through the lattice isomorphism.
  Projector component(int v) const;

  friend bool operator==(const ClopenSubobject& a, const ClopenSubobject& b) {
    return a.masks_ == b.masks_;
  }

 private:
  const ContextPoset* poset_;
  std::vector<std::uint64_t> masks_;
};

/// Lattice isomorphism between P(V) and the clopen subsets of the stalk:
/// a projector of the algebra corresponds to the set of minimals under it.
std::uint64_t clopen_of_projector(const Context& v, const Projector& p);
Projector projector_of_clopen(const Context& v, std::uint64_t mask);

/// The sub-object with component {λ | λ(δ P at V) = 1} at every V; equals
/// the outer approximation of p read through the isomorphism stage-wise.
ClopenSubobject daseinise_subobject(const Projector& p, const ContextPoset& poset);

bool sub_leq(const ClopenSubobject& s, const ClopenSubobject& t);
ClopenSubobject sub_meet(const ClopenSubobject& s, const ClopenSubobject& t);
ClopenSubobject sub_join(const ClopenSubobject& s, const ClopenSubobject& t);

/// Heyting implication: λ belongs at V iff at every smaller context the
/// restriction of λ stays in t whenever it lies in s.
ClopenSubobject sub_implies(const ClopenSubobject& s, const ClopenSubobject& t);
/// Heyting negation, s ⇒ bottom. The outermost step passes through
/// interior_hook; with finite discrete stalks every subset is clopen, so the
/// hook is the identity. A non-discrete spectrum would take a topological
/// interior here.
ClopenSubobject sub_neg(const ClopenSubobject& s);
std::uint64_t interior_hook(const Context& v, std::uint64_t mask);

/// Image of the component at super under point restriction, as a subset of
/// the stalk at sub. Always contained in the component at sub; equality
/// holds for daseinised sub-objects.
std::uint64_t restrict_image(const ContextPoset& poset, int super, int sub, std::uint64_t mask);

/// The arrow classifying s: at stage V it sends a point to the sieve of
/// contexts where the restricted point has entered s.
struct CharacteristicArrow {
  const ContextPoset* poset = nullptr;
  std::vector<std::vector<Sieve>> at;  // per context, per stalk element
};
CharacteristicArrow characteristic_arrow(const ClopenSubobject& s);
/// Naturality of the classifying arrow against sieve pullback.
bool characteristic_natural(const CharacteristicArrow& chi, std::string* witness = nullptr);

/// The sieve of contexts below the stage where the restricted point enters
/// the daseinised-style family of the algebra element alpha_mask.
Sieve iota(const ContextPoset& poset, int stage, std::uint64_t alpha_mask, int point);

/// Element of the power object of the spectrum at a stage: a clopen family
/// over the principal down-set.
struct PowerObjectElement {
  int stage = 0;
  std::vector<std::pair<int, std::uint64_t>> masks;  // (context, subset), sorted

  friend bool operator==(const PowerObjectElement&, const PowerObjectElement&) = default;
};

/// Power transpose of iota at a stage: alpha_mask to the family of its
/// approximations from above over the down-set.
PowerObjectElement power_transpose(const ContextPoset& poset, int stage, std::uint64_t alpha_mask);

/// All clopen families, restricted to the down-set of root when given (one
/// mask per member of down_set(root) in sorted order; with root = -1 one
/// mask per context), in a deterministic order. Throws beyond the cap.
std::vector<std::vector<std::uint64_t>> enumerate_clopen_families(
    const ContextPoset& poset, int root = -1, std::size_t cap = std::size_t{1} << 20);

/// The power object of the spectrum, materialized: the stalk at V
/// enumerates the clopen families over the down-set of V; restriction
/// truncates a family to the smaller down-set.
struct PowerObject {
  Presheaf presheaf;
  /// families[v][i] lists masks in down_set(v) order for stalk element i.
  std::vector<std::vector<std::vector<std::uint64_t>>> families;
};
PowerObject power_object(const ContextPoset& poset, std::size_t cap = std::size_t{1} << 20);

/// The transpose family as stage maps from the outer lattice presheaf into
/// the power object, suitable for check_natural; stage-injective.
NatTransform power_transpose_transform(const Presheaf& outer, const PowerObject& power);

}  // namespace daseinizer

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "daseinizer/context.hpp"

namespace daseinizer {

/// A point of the spectrum at a context: the multiplicative functional that
/// sends the selected minimal to 1 and the others to 0.
struct SpectralElement {
  int context = 0;
  int index = 0;
  friend bool operator==(const SpectralElement&, const SpectralElement&) = default;
  friend auto operator<=>(const SpectralElement&, const SpectralElement&) = default;
};

/// A contravariant functor on a context poset with finite stalks. Stalk
/// elements are indices 0..stalk_size-1; each strictly comparable pair
/// (sub, super) carries a map from the stalk at super to the stalk at sub.
class Presheaf {
 public:
  Presheaf(const ContextPoset& poset, std::vector<std::uint32_t> stalk_sizes,
           std::map<std::pair<int, int>, std::vector<std::uint32_t>> maps);

  const ContextPoset& poset() const { return *poset_; }
  std::uint32_t stalk_size(int v) const { return stalk_sizes_[static_cast<std::size_t>(v)]; }
  /// Image of element x at super in the stalk at sub (identity when equal).
  std::uint32_t restrict(int super, int sub, std::uint32_t x) const;

 private:
  const ContextPoset* poset_;
  std::vector<std::uint32_t> stalk_sizes_;
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> maps_;
};

/// Stalks are the minimal projectors (the finite Gelfand spectrum);
/// restriction sends a minimal to the unique dominating minimal below.
Presheaf spectral_presheaf(const ContextPoset& poset);

/// Evaluation of a spectral element on an algebra element: 1 iff the
/// selected minimal lies under the mask.
int evaluate(const Context& v, int spectral_index, std::uint64_t mask);

/// A down-closed set of contexts under a base context.
class Sieve {
 public:
  Sieve(const ContextPoset& poset, int base, std::vector<int> members);
  static Sieve total(const ContextPoset& poset, int base);
  static Sieve empty(const ContextPoset& poset, int base);

  const ContextPoset& poset() const { return *poset_; }
  int base() const { return base_; }
  const std::vector<int>& members() const { return members_; }  // sorted
  bool contains(int v) const;
  bool is_total() const;

  /// Pullback along sub ⊆ base: the members under sub, re-based at sub.
  Sieve pull_to(int sub) const;

  friend bool operator==(const Sieve& a, const Sieve& b) {
    return a.base_ == b.base_ && a.members_ == b.members_;
  }

 private:
  const ContextPoset* poset_;
  int base_ = 0;
  std::vector<int> members_;
};

/// Heyting operations in the sieve algebra at a fixed base.
Sieve sieve_meet(const Sieve& a, const Sieve& b);
Sieve sieve_join(const Sieve& a, const Sieve& b);
Sieve sieve_implies(const Sieve& a, const Sieve& b);
Sieve sieve_neg(const Sieve& a);

/// All sieves on the given base, in a deterministic order.
std::vector<Sieve> all_sieves(const ContextPoset& poset, int base);

/// A family of sieves, one per context, compatible under pullback.
class GlobalOmegaElement {
 public:
  GlobalOmegaElement(const ContextPoset& poset, std::vector<Sieve> components);

  const ContextPoset& poset() const { return *poset_; }
  const Sieve& at(int v) const { return components_[static_cast<std::size_t>(v)]; }
  /// Totally true: every component is the total sieve.
  bool is_top() const;
  /// The contexts where the element holds locally; determines the family.
  std::vector<int> support() const;

  friend bool operator==(const GlobalOmegaElement& a, const GlobalOmegaElement& b) {
    return a.components_ == b.components_;
  }

 private:
  const ContextPoset* poset_;
  std::vector<Sieve> components_;
};

using GlobalSection = std::vector<std::uint32_t>;  // one stalk element per context

/// Exhaustive deterministic search for global sections; contexts are
/// assigned in decreasing stalk order with forward propagation. Throws when
/// the visited-node budget is exhausted.
std::vector<GlobalSection> global_sections(const Presheaf& f, std::uint64_t node_cap = 1u << 22);

/// A stage-indexed family of stalk maps between two presheaves on one poset.
struct NatTransform {
  const Presheaf* dom = nullptr;
  const Presheaf* cod = nullptr;
  std::vector<std::vector<std::uint32_t>> component;  // per context
};

/// Checks the naturality squares; on failure fills witness with the stage
/// pair and element where they do not commute.
bool check_natural(const NatTransform& t, std::string* witness = nullptr);

}  // namespace daseinizer

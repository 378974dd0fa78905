#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "daseinizer/operators.hpp"

namespace daseinizer {

inline constexpr int kDefaultBlockCap = 6;

/// An abelian context: a partition of the identity into pairwise orthogonal
/// non-zero projectors (at least two, so the trivial algebra is excluded).
/// Minimals are kept in canonical order; subsets of them, encoded as bit
/// masks, enumerate the projector lattice P(V) of the generated algebra.
class Context {
 public:
  Context(std::vector<Projector> minimals, std::string label);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(minimals_.size()); }
  const std::vector<Projector>& minimals() const { return minimals_; }
  const Projector& minimal(int q) const { return minimals_[static_cast<std::size_t>(q)]; }
  const std::string& label() const { return label_; }
  const std::string& key() const { return key_; }

  /// Sum of the minimals selected by the mask; an element of P(V).
  Projector element(std::uint64_t mask) const;
  std::uint64_t full_mask() const { return (std::uint64_t{1} << size()) - 1; }

  /// Mask of p as an element of P(V), if p lies in the algebra.
  std::optional<std::uint64_t> mask_of(const Projector& p) const;

 private:
  int dim_ = 0;
  std::vector<Projector> minimals_;
  std::string label_;
  std::string key_;
};

/// Joint eigenspace context of a pairwise commuting family.
Context context_from_commuting(const std::vector<SelfAdjointOperator>& ops, std::string label);

/// All strictly coarser partitions with at least two blocks, as contexts.
std::vector<Context> coarsenings(const Context& v, int block_cap = kDefaultBlockCap);

/// True iff sub is a subalgebra of super: every minimal of sub is a sum of
/// minimals of super.
bool refines(const Context& sub, const Context& super);

/// For sub ⊆ super: per sub-minimal, the mask of super-minimals summing to it.
std::optional<std::vector<std::uint64_t>> block_structure(const Context& sub, const Context& super);

/// A finite poset of contexts of one Hilbert space dimension, ordered by
/// the subalgebra relation, with the mask-level restriction combinatorics
/// precomputed for every comparable pair.
class ContextPoset {
 public:
  explicit ContextPoset(std::vector<Context> contexts);

  int size() const { return static_cast<int>(contexts_.size()); }
  int dim() const { return dim_; }
  const Context& context(int i) const { return contexts_[static_cast<std::size_t>(i)]; }
  const std::vector<Context>& contexts() const { return contexts_; }
  int index_of_label(const std::string& label) const;  // -1 when absent

  /// sub ⊆ super as algebras; reflexive.
  bool below(int sub, int super) const;
  /// All i with i ⊆ v, sorted, v included.
  const std::vector<int>& down_set(int v) const;
  /// All strictly comparable pairs (sub, super).
  const std::vector<std::pair<int, int>>& strict_pairs() const { return strict_pairs_; }
  std::vector<int> maximal_contexts() const;
  /// Hasse cover pairs (sub, super) with nothing strictly between.
  std::vector<std::pair<int, int>> cover_pairs() const;

  /// Per sub-minimal masks over super's minimals (sub strictly below super).
  const std::vector<std::uint64_t>& blocks(int sub, int super) const;

  /// P(super) -> P(sub): smallest dominating element (approximation from above).
  std::uint64_t restrict_outer(int super, int sub, std::uint64_t mask) const;
  /// P(super) -> P(sub): largest dominated element (approximation from below).
  std::uint64_t restrict_inner(int super, int sub, std::uint64_t mask) const;
  /// Spectrum restriction: minimal q of super to the unique dominating
  /// minimal of sub.
  int restrict_point(int super, int sub, int q) const;

 private:
  int dim_ = 0;
  std::vector<Context> contexts_;
  std::vector<char> leq_;  // leq_[sub * n + super]
  std::vector<std::vector<int>> down_sets_;
  std::vector<std::pair<int, int>> strict_pairs_;
  std::map<std::pair<int, int>, std::vector<std::uint64_t>> blocks_;
};

/// Seeds, deduplicated, optionally closed downward under coarsening, in
/// canonical order (more minimals first, then canonical key).
ContextPoset generate_poset(const std::vector<Context>& seeds, bool down_close = true,
                            int block_cap = kDefaultBlockCap);

}  // namespace daseinizer

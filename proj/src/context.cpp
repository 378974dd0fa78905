#include "daseinizer/context.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace daseinizer {

Context::Context(std::vector<Projector> minimals, std::string label)
    : minimals_(std::move(minimals)), label_(std::move(label)) {
  if (minimals_.size() < 2)
    throw Error("context '" + label_ + "' needs at least two minimal projectors");
  if (minimals_.size() > 63) throw Error("context '" + label_ + "' has too many minimals");
  dim_ = minimals_.front().dim();
  for (const auto& p : minimals_) {
    if (p.dim() != dim_) throw Error("context '" + label_ + "' mixes dimensions");
    if (p.rank() == 0) throw Error("context '" + label_ + "' contains a zero minimal");
  }
  std::sort(minimals_.begin(), minimals_.end(), [](const Projector& a, const Projector& b) {
    return canonical_key(a.matrix()) < canonical_key(b.matrix());
  });
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < minimals_.size(); ++i) {
    for (std::size_t j = i + 1; j < minimals_.size(); ++j)
      if (max_abs(minimals_[i].matrix() * minimals_[j].matrix()) > tolerance())
        throw Error("context '" + label_ + "' has non-orthogonal minimals");
    sum += minimals_[i].matrix();
  }
  if (!approx_equal(sum, Matrix::Identity(dim_, dim_)))
    throw Error("context '" + label_ + "' minimals do not resolve the identity");
  key_.reserve(minimals_.size() * 64);
  for (const auto& p : minimals_) {
    key_ += canonical_key(p.matrix());
    key_ += '#';
  }
}

Projector Context::element(std::uint64_t mask) const {
  if (mask >> size()) throw Error("mask addresses minimals outside the context");
  Matrix acc = Matrix::Zero(dim_, dim_);
  for (int q = 0; q < size(); ++q)
    if (mask >> q & 1) acc += minimals_[static_cast<std::size_t>(q)].matrix();
  return projector_unchecked(std::move(acc));
}

std::optional<std::uint64_t> Context::mask_of(const Projector& p) const {
  if (p.dim() != dim_) throw Error("projector dimension does not match context");
  std::uint64_t mask = 0;
  for (int q = 0; q < size(); ++q)
    if (proj_leq(minimal(q), p)) mask |= std::uint64_t{1} << q;
  if (proj_equal(element(mask), p)) return mask;
  return std::nullopt;
}

Context context_from_commuting(const std::vector<SelfAdjointOperator>& ops, std::string label) {
  if (ops.empty()) throw Error("context '" + label + "': empty generating family");
  int dim = ops.front().dim();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].dim() != dim) throw Error("context '" + label + "': generators mix dimensions");
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      Matrix comm = ops[i].matrix() * ops[j].matrix() - ops[j].matrix() * ops[i].matrix();
      double norm = max_abs(comm);
      if (norm > tolerance())
        throw Error("context '" + label + "': generators " + std::to_string(i) + " and " +
                    std::to_string(j) + " do not commute (commutator max-norm " +
                    format_double(norm) + ")");
    }
  }
  // refine the trivial partition by each generator's eigenspaces
  std::vector<Matrix> parts{Matrix::Identity(dim, dim)};
  for (const auto& op : ops) {
    std::vector<Matrix> next;
    for (const auto& ep : spectral_decompose(op)) {
      for (const auto& part : parts) {
        Matrix prod = part * ep.projector.matrix();
        if (max_abs(prod) <= tolerance()) continue;
        // commuting projectors: the product is the intersection projector,
        // re-symmetrized against roundoff
        next.push_back(((prod + prod.adjoint()) / 2.0).eval());
      }
    }
    parts = std::move(next);
  }
  if (parts.size() < 2)
    throw Error("context '" + label + "': generators only span the trivial algebra");
  std::vector<Projector> minimals;
  minimals.reserve(parts.size());
  for (auto& m : parts) minimals.emplace_back(std::move(m));
  return Context(std::move(minimals), std::move(label));
}

namespace {

/// Restricted growth strings enumerate set partitions in a stable order.
void enumerate_partitions(int k, const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> rgs(static_cast<std::size_t>(k), 0);
  while (true) {
    emit(rgs);
    int i = k - 1;
    for (; i > 0; --i) {
      int cap = 0;
      for (int j = 0; j < i; ++j) cap = std::max(cap, rgs[static_cast<std::size_t>(j)]);
      if (rgs[static_cast<std::size_t>(i)] <= cap) break;
    }
    if (i == 0) return;
    ++rgs[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) rgs[static_cast<std::size_t>(j)] = 0;
  }
}

std::string block_pattern(const std::vector<std::vector<int>>& blocks) {
  std::string s;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) s += '|';
    for (int q : blocks[b]) s += static_cast<char>('0' + q);
  }
  return s;
}

}  // namespace

std::vector<Context> coarsenings(const Context& v, int block_cap) {
  int k = v.size();
  if (k > block_cap)
    throw Error("context '" + v.label() + "' has " + std::to_string(k) +
                " minimals, above the block cap " + std::to_string(block_cap));
  std::vector<Context> out;
  enumerate_partitions(k, [&](const std::vector<int>& rgs) {
    int nblocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    if (nblocks < 2 || nblocks == k) return;
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(nblocks));
    for (int q = 0; q < k; ++q) blocks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(q)])].push_back(q);
    std::vector<Projector> minimals;
    minimals.reserve(blocks.size());
    for (const auto& block : blocks) {
      Matrix acc = Matrix::Zero(v.dim(), v.dim());
      for (int q : block) acc += v.minimal(q).matrix();
      minimals.push_back(projector_unchecked(std::move(acc)));
    }
    out.emplace_back(std::move(minimals), v.label() + ":" + block_pattern(blocks));
  });
  return out;
}

std::optional<std::vector<std::uint64_t>> block_structure(const Context& sub, const Context& super) {
  if (sub.dim() != super.dim()) throw Error("contexts of different dimension are incomparable");
  std::vector<std::uint64_t> blocks(static_cast<std::size_t>(sub.size()), 0);
  std::uint64_t used = 0;
  for (int i = 0; i < sub.size(); ++i) {
    std::uint64_t mask = 0;
    for (int q = 0; q < super.size(); ++q)
      if (proj_leq(super.minimal(q), sub.minimal(i))) mask |= std::uint64_t{1} << q;
    if (!proj_equal(super.element(mask), sub.minimal(i))) return std::nullopt;
    blocks[static_cast<std::size_t>(i)] = mask;
    used |= mask;
  }
  if (used != super.full_mask()) return std::nullopt;
  return blocks;
}

bool refines(const Context& sub, const Context& super) {
  return block_structure(sub, super).has_value();
}

ContextPoset::ContextPoset(std::vector<Context> contexts) : contexts_(std::move(contexts)) {
  if (contexts_.empty()) throw Error("poset needs at least one context");
  dim_ = contexts_.front().dim();
  std::set<std::string> keys;
  for (const auto& c : contexts_) {
    if (c.dim() != dim_) throw Error("poset mixes Hilbert space dimensions");
    if (!keys.insert(c.key()).second)
      throw Error("poset contains two copies of context '" + c.label() + "'");
  }
  int n = size();
  leq_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  down_sets_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        leq_[static_cast<std::size_t>(i) * n + j] = 1;
        down_sets_[static_cast<std::size_t>(j)].push_back(i);
        continue;
      }
      auto blocks = block_structure(contexts_[static_cast<std::size_t>(i)],
                                    contexts_[static_cast<std::size_t>(j)]);
      if (!blocks) continue;
      leq_[static_cast<std::size_t>(i) * n + j] = 1;
      down_sets_[static_cast<std::size_t>(j)].push_back(i);
      strict_pairs_.emplace_back(i, j);
      blocks_.emplace(std::make_pair(i, j), std::move(*blocks));
    }
  }
  for (auto& ds : down_sets_) std::sort(ds.begin(), ds.end());
  for (const auto& [i, j] : strict_pairs_)
    if (below(j, i))
      throw Error("order is not antisymmetric: '" + context(i).label() + "' and '" +
                  context(j).label() + "'");
}

int ContextPoset::index_of_label(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (contexts_[static_cast<std::size_t>(i)].label() == label) return i;
  return -1;
}

bool ContextPoset::below(int sub, int super) const {
  return leq_[static_cast<std::size_t>(sub) * size() + super] != 0;
}

const std::vector<int>& ContextPoset::down_set(int v) const {
  return down_sets_[static_cast<std::size_t>(v)];
}

std::vector<int> ContextPoset::maximal_contexts() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    bool top = true;
    for (int j = 0; j < size() && top; ++j)
      if (j != i && below(i, j)) top = false;
    if (top) out.push_back(i);
  }
  return out;
}

std::vector<std::pair<int, int>> ContextPoset::cover_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [sub, super] : strict_pairs_) {
    bool covered = true;
    for (int mid = 0; mid < size() && covered; ++mid)
      if (mid != sub && mid != super && below(sub, mid) && below(mid, super)) covered = false;
    if (covered) out.emplace_back(sub, super);
  }
  return out;
}

const std::vector<std::uint64_t>& ContextPoset::blocks(int sub, int super) const {
  auto it = blocks_.find({sub, super});
  if (it == blocks_.end()) throw Error("contexts are not strictly comparable");
  return it->second;
}

std::uint64_t ContextPoset::restrict_outer(int super, int sub, std::uint64_t mask) const {
  if (sub == super) return mask;
  const auto& bl = blocks(sub, super);
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < bl.size(); ++i)
    if (bl[i] & mask) out |= std::uint64_t{1} << i;
  return out;
}

std::uint64_t ContextPoset::restrict_inner(int super, int sub, std::uint64_t mask) const {
  if (sub == super) return mask;
  const auto& bl = blocks(sub, super);
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < bl.size(); ++i)
    if ((bl[i] & mask) == bl[i]) out |= std::uint64_t{1} << i;
  return out;
}

int ContextPoset::restrict_point(int super, int sub, int q) const {
  if (sub == super) return q;
  const auto& bl = blocks(sub, super);
  for (std::size_t i = 0; i < bl.size(); ++i)
    if (bl[i] >> q & 1) return static_cast<int>(i);
  throw Error("minimal index outside the context");
}

ContextPoset generate_poset(const std::vector<Context>& seeds, bool down_close, int block_cap) {
  if (seeds.empty()) throw Error("poset generation needs at least one seed context");
  std::vector<Context> members;
  std::set<std::string> seen;
  auto add = [&](Context&& c) {
    if (seen.insert(c.key()).second) members.push_back(std::move(c));
  };
  for (const auto& seed : seeds) {
    add(Context(seed));
    if (down_close)
      for (auto& c : coarsenings(seed, block_cap)) add(std::move(c));
  }
  std::sort(members.begin(), members.end(), [](const Context& a, const Context& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.key() < b.key();
  });
  return ContextPoset(std::move(members));
}

}  // namespace daseinizer

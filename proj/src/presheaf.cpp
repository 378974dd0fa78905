#include "daseinizer/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <iterator>

namespace daseinizer {

Presheaf::Presheaf(const ContextPoset& poset, std::vector<std::uint32_t> stalk_sizes,
                   std::map<std::pair<int, int>, std::vector<std::uint32_t>> maps)
    : poset_(&poset), stalk_sizes_(std::move(stalk_sizes)), maps_(std::move(maps)) {
  if (stalk_sizes_.size() != static_cast<std::size_t>(poset.size()))
    throw Error("presheaf needs one stalk per context");
  for (const auto& [sub, super] : poset.strict_pairs()) {
    auto it = maps_.find({sub, super});
    if (it == maps_.end())
      throw Error("presheaf is missing the restriction map for a comparable pair");
    if (it->second.size() != stalk_size(super))
      throw Error("restriction map size does not match the source stalk");
    for (auto y : it->second)
      if (y >= stalk_size(sub)) throw Error("restriction map leaves the target stalk");
  }
  // functoriality: along any chain the maps compose
  for (const auto& [sub, mid] : poset.strict_pairs()) {
    for (const auto& [mid2, super] : poset.strict_pairs()) {
      if (mid2 != mid) continue;
      for (std::uint32_t x = 0; x < stalk_size(super); ++x)
        if (restrict(super, sub, x) != restrict(mid, sub, restrict(super, mid, x)))
          throw Error("presheaf restriction maps do not compose along '" +
                      poset.context(sub).label() + "' ⊆ '" + poset.context(mid).label() +
                      "' ⊆ '" + poset.context(super).label() + "'");
    }
  }
}

std::uint32_t Presheaf::restrict(int super, int sub, std::uint32_t x) const {
  if (x >= stalk_size(super)) throw Error("stalk element out of range");
  if (sub == super) return x;
  auto it = maps_.find({sub, super});
  if (it == maps_.end()) throw Error("contexts are not comparable");
  return it->second[x];
}

Presheaf spectral_presheaf(const ContextPoset& poset) {
  std::vector<std::uint32_t> sizes;
  sizes.reserve(static_cast<std::size_t>(poset.size()));
  for (int v = 0; v < poset.size(); ++v)
    sizes.push_back(static_cast<std::uint32_t>(poset.context(v).size()));
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> maps;
  for (const auto& [sub, super] : poset.strict_pairs()) {
    std::vector<std::uint32_t> m(sizes[static_cast<std::size_t>(super)]);
    for (std::uint32_t q = 0; q < m.size(); ++q)
      m[q] = static_cast<std::uint32_t>(poset.restrict_point(super, sub, static_cast<int>(q)));
    maps.emplace(std::make_pair(sub, super), std::move(m));
  }
  return Presheaf(poset, std::move(sizes), std::move(maps));
}

int evaluate(const Context& v, int spectral_index, std::uint64_t mask) {
  if (spectral_index < 0 || spectral_index >= v.size())
    throw Error("spectral element index outside the context");
  if (mask >> v.size()) throw Error("mask addresses minimals outside the context");
  return (mask >> spectral_index) & 1 ? 1 : 0;
}

Sieve::Sieve(const ContextPoset& poset, int base, std::vector<int> members)
    : poset_(&poset), base_(base), members_(std::move(members)) {
  if (base_ < 0 || base_ >= poset.size()) throw Error("sieve base outside the poset");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (int v : members_)
    if (v < 0 || v >= poset.size() || !poset.below(v, base_))
      throw Error("sieve member is not below its base");
  // down-closure
  for (int v : members_)
    for (int w : poset.down_set(v))
      if (!std::binary_search(members_.begin(), members_.end(), w))
        throw Error("sieve on '" + poset.context(base_).label() + "' is not down-closed: has '" +
                    poset.context(v).label() + "' but not '" + poset.context(w).label() + "'");
}

Sieve Sieve::total(const ContextPoset& poset, int base) {
  return Sieve(poset, base, poset.down_set(base));
}

Sieve Sieve::empty(const ContextPoset& poset, int base) { return Sieve(poset, base, {}); }

bool Sieve::contains(int v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

bool Sieve::is_total() const {
  return members_.size() == poset_->down_set(base_).size();
}

Sieve Sieve::pull_to(int sub) const {
  if (!poset_->below(sub, base_)) throw Error("pullback target is not below the sieve base");
  std::vector<int> kept;
  for (int v : members_)
    if (poset_->below(v, sub)) kept.push_back(v);
  return Sieve(*poset_, sub, std::move(kept));
}

namespace {

void check_same_base(const Sieve& a, const Sieve& b) {
  if (&a.poset() != &b.poset() || a.base() != b.base())
    throw Error("sieve operation needs a common base");
}

}  // namespace

Sieve sieve_meet(const Sieve& a, const Sieve& b) {
  check_same_base(a, b);
  std::vector<int> out;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(out));
  return Sieve(a.poset(), a.base(), std::move(out));
}

Sieve sieve_join(const Sieve& a, const Sieve& b) {
  check_same_base(a, b);
  std::vector<int> out;
  std::set_union(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                 std::back_inserter(out));
  return Sieve(a.poset(), a.base(), std::move(out));
}

Sieve sieve_implies(const Sieve& a, const Sieve& b) {
  check_same_base(a, b);
  std::vector<int> out;
  for (int v : a.poset().down_set(a.base())) {
    bool all = true;
    for (int w : a.poset().down_set(v))
      if (a.contains(w) && !b.contains(w)) {
        all = false;
        break;
      }
    if (all) out.push_back(v);
  }
  return Sieve(a.poset(), a.base(), std::move(out));
}

Sieve sieve_neg(const Sieve& a) { return sieve_implies(a, Sieve::empty(a.poset(), a.base())); }

std::vector<Sieve> all_sieves(const ContextPoset& poset, int base) {
  const auto& down = poset.down_set(base);
  if (down.size() > 20) throw Error("sieve enumeration is limited to 20 contexts below the base");
  std::vector<Sieve> out;
  for (std::uint32_t bits = 0; bits < (1u << down.size()); ++bits) {
    std::vector<int> members;
    for (std::size_t i = 0; i < down.size(); ++i)
      if (bits >> i & 1) members.push_back(down[i]);
    bool closed = true;
    for (int v : members) {
      for (int w : poset.down_set(v))
        if (!std::binary_search(members.begin(), members.end(), w)) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (closed) out.emplace_back(poset, base, std::move(members));
  }
  return out;
}

GlobalOmegaElement::GlobalOmegaElement(const ContextPoset& poset, std::vector<Sieve> components)
    : poset_(&poset), components_(std::move(components)) {
  if (components_.size() != static_cast<std::size_t>(poset.size()))
    throw Error("global truth value needs one sieve per context");
  for (int v = 0; v < poset.size(); ++v)
    if (components_[static_cast<std::size_t>(v)].base() != v)
      throw Error("component sieve has the wrong base");
  for (const auto& [sub, super] : poset.strict_pairs())
    if (!(components_[static_cast<std::size_t>(super)].pull_to(sub) ==
          components_[static_cast<std::size_t>(sub)]))
      throw Error("truth value components do not match under pullback ('" +
                  poset.context(sub).label() + "' ⊆ '" + poset.context(super).label() + "')");
}

bool GlobalOmegaElement::is_top() const {
  for (const auto& s : components_)
    if (!s.is_total()) return false;
  return true;
}

std::vector<int> GlobalOmegaElement::support() const {
  std::vector<int> out;
  for (int v = 0; v < poset_->size(); ++v)
    if (components_[static_cast<std::size_t>(v)].contains(v)) out.push_back(v);
  return out;
}

std::vector<GlobalSection> global_sections(const Presheaf& f, std::uint64_t node_cap) {
  const ContextPoset& poset = f.poset();
  int n = poset.size();
  // order contexts so each one is comparable to as many predecessors as
  // possible: constraints then propagate as soon as a value is placed,
  // instead of after a blind product over mutually incomparable contexts
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<char> ordered(static_cast<std::size_t>(n), 0);
  std::vector<int> links(static_cast<std::size_t>(n), 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (ordered[static_cast<std::size_t>(v)]) continue;
      if (best < 0) { best = v; continue; }
      auto lv = links[static_cast<std::size_t>(v)], lb = links[static_cast<std::size_t>(best)];
      if (lv != lb ? lv > lb : f.stalk_size(v) < f.stalk_size(best)) best = v;
    }
    order.push_back(best);
    ordered[static_cast<std::size_t>(best)] = 1;
    for (int v = 0; v < n; ++v)
      if (!ordered[static_cast<std::size_t>(v)] &&
          (poset.below(v, best) || poset.below(best, v)))
        ++links[static_cast<std::size_t>(v)];
  }

  std::vector<GlobalSection> out;
  GlobalSection assignment(static_cast<std::size_t>(n), 0);
  std::vector<char> assigned(static_cast<std::size_t>(n), 0);
  std::uint64_t visited = 0;

  auto consistent = [&](int v, std::uint32_t x) {
    for (int w = 0; w < n; ++w) {
      if (!assigned[static_cast<std::size_t>(w)]) continue;
      if (poset.below(w, v) && w != v) {
        if (f.restrict(v, w, x) != assignment[static_cast<std::size_t>(w)]) return false;
      } else if (poset.below(v, w) && w != v) {
        if (f.restrict(w, v, assignment[static_cast<std::size_t>(w)]) != x) return false;
      }
    }
    return true;
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
    if (depth == order.size()) {
      out.push_back(assignment);
      return;
    }
    int v = order[depth];
    for (std::uint32_t x = 0; x < f.stalk_size(v); ++x) {
      if (++visited > node_cap)
        throw Error("global section search exceeded the node budget of " +
                    std::to_string(node_cap));
      if (!consistent(v, x)) continue;
      assignment[static_cast<std::size_t>(v)] = x;
      assigned[static_cast<std::size_t>(v)] = 1;
      dfs(depth + 1);
      assigned[static_cast<std::size_t>(v)] = 0;
    }
  };
  dfs(0);
  std::sort(out.begin(), out.end());
  return out;
}

bool check_natural(const NatTransform& t, std::string* witness) {
  if (!t.dom || !t.cod) throw Error("natural transformation needs domain and codomain");
  const ContextPoset& poset = t.dom->poset();
  if (&t.cod->poset() != &poset) throw Error("domain and codomain live on different posets");
  if (t.component.size() != static_cast<std::size_t>(poset.size()))
    throw Error("natural transformation needs one component per context");
  for (int v = 0; v < poset.size(); ++v) {
    const auto& comp = t.component[static_cast<std::size_t>(v)];
    if (comp.size() != t.dom->stalk_size(v))
      throw Error("component size does not match the domain stalk");
    for (auto y : comp)
      if (y >= t.cod->stalk_size(v)) throw Error("component leaves the codomain stalk");
  }
  for (const auto& [sub, super] : poset.strict_pairs()) {
    for (std::uint32_t x = 0; x < t.dom->stalk_size(super); ++x) {
      std::uint32_t down_then_map =
          t.component[static_cast<std::size_t>(sub)][t.dom->restrict(super, sub, x)];
      std::uint32_t map_then_down =
          t.cod->restrict(super, sub, t.component[static_cast<std::size_t>(super)][x]);
      if (down_then_map != map_then_down) {
        if (witness)
          *witness = "square fails at '" + poset.context(sub).label() + "' ⊆ '" +
                     poset.context(super).label() + "' on element " + std::to_string(x) +
                     ": restrict-then-map gives " + std::to_string(down_then_map) +
                     ", map-then-restrict gives " + std::to_string(map_then_down);
        return false;
      }
    }
  }
  return true;
}

}  // namespace daseinizer

#include "daseinizer/subobject.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace daseinizer {

ClopenSubobject::ClopenSubobject(const ContextPoset& poset, std::vector<std::uint64_t> masks)
    : poset_(&poset), masks_(std::move(masks)) {
  if (masks_.size() != static_cast<std::size_t>(poset.size()))
    throw Error("sub-object needs one component per context");
  for (int v = 0; v < poset.size(); ++v)
    if (masks_[static_cast<std::size_t>(v)] >> poset.context(v).size())
      throw Error("component selects points outside its stalk");
  for (const auto& [sub, super] : poset.strict_pairs()) {
    std::uint64_t image =
        restrict_image(poset, super, sub, masks_[static_cast<std::size_t>(super)]);
    if (image & ~masks_[static_cast<std::size_t>(sub)])
      throw CertificationError("sub-object components are not closed under restriction ('" +
                               poset.context(sub).label() + "' ⊆ '" +
                               poset.context(super).label() + "')");
  }
}

ClopenSubobject ClopenSubobject::top(const ContextPoset& poset) {
  std::vector<std::uint64_t> masks;
  masks.reserve(static_cast<std::size_t>(poset.size()));
  for (int v = 0; v < poset.size(); ++v) masks.push_back(poset.context(v).full_mask());
  return ClopenSubobject(poset, std::move(masks));
}

ClopenSubobject ClopenSubobject::bottom(const ContextPoset& poset) {
  return ClopenSubobject(poset, std::vector<std::uint64_t>(static_cast<std::size_t>(poset.size()), 0));
}

bool ClopenSubobject::contains(const SpectralElement& e) const {
  if (e.context < 0 || e.context >= poset_->size()) throw Error("point context outside the poset");
  return mask_at(e.context) >> e.index & 1;
}

Projector ClopenSubobject::component(int v) const {
  return projector_of_clopen(poset_->context(v), mask_at(v));
}

std::uint64_t clopen_of_projector(const Context& v, const Projector& p) {
  auto mask = v.mask_of(p);
  if (!mask) throw Error("projector does not belong to the context algebra");
  return *mask;
}

Projector projector_of_clopen(const Context& v, std::uint64_t mask) { return v.element(mask); }

ClopenSubobject daseinise_subobject(const Projector& p, const ContextPoset& poset) {
  std::vector<std::uint64_t> masks;
  masks.reserve(static_cast<std::size_t>(poset.size()));
  for (int v = 0; v < poset.size(); ++v) masks.push_back(outer_mask(p, poset.context(v)));
  return ClopenSubobject(poset, std::move(masks));
}

namespace {

void check_same_poset(const ClopenSubobject& s, const ClopenSubobject& t) {
  if (&s.poset() != &t.poset()) throw Error("sub-objects live on different posets");
}

}  // namespace

bool sub_leq(const ClopenSubobject& s, const ClopenSubobject& t) {
  check_same_poset(s, t);
  for (int v = 0; v < s.poset().size(); ++v)
    if (s.mask_at(v) & ~t.mask_at(v)) return false;
  return true;
}

ClopenSubobject sub_meet(const ClopenSubobject& s, const ClopenSubobject& t) {
  check_same_poset(s, t);
  std::vector<std::uint64_t> masks;
  masks.reserve(s.masks().size());
  for (int v = 0; v < s.poset().size(); ++v) masks.push_back(s.mask_at(v) & t.mask_at(v));
  return ClopenSubobject(s.poset(), std::move(masks));
}

ClopenSubobject sub_join(const ClopenSubobject& s, const ClopenSubobject& t) {
  check_same_poset(s, t);
  std::vector<std::uint64_t> masks;
  masks.reserve(s.masks().size());
  for (int v = 0; v < s.poset().size(); ++v) masks.push_back(s.mask_at(v) | t.mask_at(v));
  return ClopenSubobject(s.poset(), std::move(masks));
}

ClopenSubobject sub_implies(const ClopenSubobject& s, const ClopenSubobject& t) {
  check_same_poset(s, t);
  const ContextPoset& poset = s.poset();
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(poset.size()), 0);
  for (int v = 0; v < poset.size(); ++v) {
    std::uint64_t mask = 0;
    for (int q = 0; q < poset.context(v).size(); ++q) {
      bool ok = true;
      for (int w : poset.down_set(v)) {
        int qw = poset.restrict_point(v, w, q);
        bool in_s = s.mask_at(w) >> qw & 1;
        bool in_t = t.mask_at(w) >> qw & 1;
        if (in_s && !in_t) {
          ok = false;
          break;
        }
      }
      if (ok) mask |= std::uint64_t{1} << q;
    }
    masks[static_cast<std::size_t>(v)] = interior_hook(poset.context(v), mask);
  }
  return ClopenSubobject(poset, std::move(masks));
}

ClopenSubobject sub_neg(const ClopenSubobject& s) {
  return sub_implies(s, ClopenSubobject::bottom(s.poset()));
}

std::uint64_t interior_hook(const Context& v, std::uint64_t mask) {
  // every subset of the finite stalk is clopen: the interior is the set
  if (mask >> v.size()) throw Error("mask addresses minimals outside the context");
  return mask;
}

std::uint64_t restrict_image(const ContextPoset& poset, int super, int sub, std::uint64_t mask) {
  return poset.restrict_outer(super, sub, mask);
}

CharacteristicArrow characteristic_arrow(const ClopenSubobject& s) {
  const ContextPoset& poset = s.poset();
  CharacteristicArrow chi;
  chi.poset = &poset;
  chi.at.resize(static_cast<std::size_t>(poset.size()));
  for (int v = 0; v < poset.size(); ++v) {
    auto& row = chi.at[static_cast<std::size_t>(v)];
    for (int q = 0; q < poset.context(v).size(); ++q) {
      std::vector<int> members;
      for (int w : poset.down_set(v))
        if (s.mask_at(w) >> poset.restrict_point(v, w, q) & 1) members.push_back(w);
      row.emplace_back(poset, v, std::move(members));
    }
  }
  return chi;
}

bool characteristic_natural(const CharacteristicArrow& chi, std::string* witness) {
  const ContextPoset& poset = *chi.poset;
  for (const auto& [sub, super] : poset.strict_pairs()) {
    for (int q = 0; q < poset.context(super).size(); ++q) {
      const Sieve& at_super = chi.at[static_cast<std::size_t>(super)][static_cast<std::size_t>(q)];
      const Sieve& at_sub =
          chi.at[static_cast<std::size_t>(sub)]
                [static_cast<std::size_t>(poset.restrict_point(super, sub, q))];
      if (!(at_super.pull_to(sub) == at_sub)) {
        if (witness)
          *witness = "classifying arrow fails to commute at '" + poset.context(sub).label() +
                     "' ⊆ '" + poset.context(super).label() + "' on point " + std::to_string(q);
        return false;
      }
    }
  }
  return true;
}

Sieve iota(const ContextPoset& poset, int stage, std::uint64_t alpha_mask, int point) {
  if (stage < 0 || stage >= poset.size()) throw Error("stage outside the poset");
  const Context& v = poset.context(stage);
  if (alpha_mask >> v.size()) throw Error("mask addresses minimals outside the context");
  if (point < 0 || point >= v.size()) throw Error("point index outside the stalk");
  std::vector<int> members;
  for (int w : poset.down_set(stage)) {
    std::uint64_t alpha_w = poset.restrict_outer(stage, w, alpha_mask);
    int pw = poset.restrict_point(stage, w, point);
    if (alpha_w >> pw & 1) members.push_back(w);
  }
  return Sieve(poset, stage, std::move(members));
}

PowerObjectElement power_transpose(const ContextPoset& poset, int stage, std::uint64_t alpha_mask) {
  if (stage < 0 || stage >= poset.size()) throw Error("stage outside the poset");
  if (alpha_mask >> poset.context(stage).size())
    throw Error("mask addresses minimals outside the context");
  PowerObjectElement out;
  out.stage = stage;
  for (int w : poset.down_set(stage))
    out.masks.emplace_back(w, poset.restrict_outer(stage, w, alpha_mask));
  return out;
}

std::vector<std::vector<std::uint64_t>> enumerate_clopen_families(const ContextPoset& poset,
                                                                  int root, std::size_t cap) {
  std::vector<int> scope;
  if (root < 0) {
    for (int v = 0; v < poset.size(); ++v) scope.push_back(v);
  } else {
    scope = poset.down_set(root);
  }
  // collect the closure constraints between scope positions
  struct EdgeRef {
    std::size_t sub_pos, super_pos;
  };
  std::vector<EdgeRef> edges;
  std::map<int, std::size_t> pos;
  for (std::size_t i = 0; i < scope.size(); ++i) pos[scope[i]] = i;
  for (const auto& [sub, super] : poset.strict_pairs()) {
    auto ps = pos.find(sub);
    auto pp = pos.find(super);
    if (ps != pos.end() && pp != pos.end()) edges.push_back({ps->second, pp->second});
  }

  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> current(scope.size(), 0);
  std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
    if (depth == scope.size()) {
      if (out.size() >= cap)
        throw Error("sub-object enumeration exceeded the cap of " + std::to_string(cap));
      out.push_back(current);
      return;
    }
    int v = scope[depth];
    std::uint64_t full = poset.context(v).full_mask();
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
      current[depth] = mask;
      bool ok = true;
      for (const auto& e : edges) {
        if (e.sub_pos > depth || e.super_pos > depth) continue;
        std::uint64_t image = restrict_image(poset, scope[e.super_pos], scope[e.sub_pos],
                                             current[e.super_pos]);
        if (image & ~current[e.sub_pos]) {
          ok = false;
          break;
        }
      }
      if (ok) dfs(depth + 1);
    }
    current[depth] = 0;
  };
  dfs(0);
  std::sort(out.begin(), out.end());
  return out;
}

PowerObject power_object(const ContextPoset& poset, std::size_t cap) {
  std::vector<std::uint32_t> sizes(static_cast<std::size_t>(poset.size()), 0);
  std::vector<std::vector<std::vector<std::uint64_t>>> families(
      static_cast<std::size_t>(poset.size()));
  for (int v = 0; v < poset.size(); ++v) {
    families[static_cast<std::size_t>(v)] = enumerate_clopen_families(poset, v, cap);
    sizes[static_cast<std::size_t>(v)] =
        static_cast<std::uint32_t>(families[static_cast<std::size_t>(v)].size());
  }
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> maps;
  for (const auto& [sub, super] : poset.strict_pairs()) {
    const auto& down_super = poset.down_set(super);
    const auto& down_sub = poset.down_set(sub);
    // positions of down_sub members inside down_super
    std::vector<std::size_t> select;
    select.reserve(down_sub.size());
    for (int w : down_sub) {
      auto it = std::lower_bound(down_super.begin(), down_super.end(), w);
      select.push_back(static_cast<std::size_t>(it - down_super.begin()));
    }
    std::vector<std::uint32_t> m;
    m.reserve(families[static_cast<std::size_t>(super)].size());
    for (const auto& fam : families[static_cast<std::size_t>(super)]) {
      std::vector<std::uint64_t> truncated;
      truncated.reserve(select.size());
      for (auto p : select) truncated.push_back(fam[p]);
      const auto& fams_sub = families[static_cast<std::size_t>(sub)];
      auto it = std::lower_bound(fams_sub.begin(), fams_sub.end(), truncated);
      if (it == fams_sub.end() || *it != truncated)
        throw CertificationError("truncated clopen family is missing from the smaller stalk");
      m.push_back(static_cast<std::uint32_t>(it - fams_sub.begin()));
    }
    maps.emplace(std::make_pair(sub, super), std::move(m));
  }
  return PowerObject{Presheaf(poset, std::move(sizes), std::move(maps)), std::move(families)};
}

NatTransform power_transpose_transform(const Presheaf& outer, const PowerObject& power) {
  const ContextPoset& poset = outer.poset();
  if (&power.presheaf.poset() != &poset)
    throw Error("lattice presheaf and power object live on different posets");
  NatTransform t{&outer, &power.presheaf, {}};
  t.component.resize(static_cast<std::size_t>(poset.size()));
  for (int v = 0; v < poset.size(); ++v) {
    const auto& down = poset.down_set(v);
    auto& comp = t.component[static_cast<std::size_t>(v)];
    comp.reserve(outer.stalk_size(v));
    for (std::uint32_t alpha = 0; alpha < outer.stalk_size(v); ++alpha) {
      std::vector<std::uint64_t> fam;
      fam.reserve(down.size());
      for (int w : down) fam.push_back(poset.restrict_outer(v, w, alpha));
      const auto& fams = power.families[static_cast<std::size_t>(v)];
      auto it = std::lower_bound(fams.begin(), fams.end(), fam);
      if (it == fams.end() || *it != fam)
        throw CertificationError("transpose family is missing from the power object stalk");
      comp.push_back(static_cast<std::uint32_t>(it - fams.begin()));
    }
  }
  return t;
}

}  // namespace daseinizer

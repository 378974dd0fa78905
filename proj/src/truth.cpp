#include "daseinizer/truth.hpp"

#include <algorithm>
#include <cmath>

namespace daseinizer {

TruthObject::TruthObject(const ContextPoset& poset,
                         std::vector<std::vector<std::uint64_t>> stage_minimals)
    : poset_(&poset), stage_minimals_(std::move(stage_minimals)) {
  if (stage_minimals_.size() != static_cast<std::size_t>(poset.size()))
    throw Error("truth object needs one stage per context");
  for (int v = 0; v < poset.size(); ++v) {
    auto& mins = stage_minimals_[static_cast<std::size_t>(v)];
    std::sort(mins.begin(), mins.end());
    if (mins.empty())
      throw CertificationError("truth object stage at '" + poset.context(v).label() +
                               "' is empty, it must contain the unit");
    for (std::uint64_t m : mins)
      if (m >> poset.context(v).size())
        throw Error("truth object member addresses minimals outside its context");
    for (std::size_t i = 0; i < mins.size(); ++i)
      for (std::size_t j = 0; j < mins.size(); ++j)
        if (i != j && (mins[i] & mins[j]) == mins[i])
          throw Error("truth object stage minimals must form an antichain");
  }
  // stability under the approximation-from-above restriction
  for (const auto& [sub, super] : poset.strict_pairs())
    for (std::uint64_t m : stage_minimals_[static_cast<std::size_t>(super)])
      if (!contains(sub, poset.restrict_outer(super, sub, m)))
        throw CertificationError("truth object is not a sub-presheaf: stage '" +
                                 poset.context(super).label() + "' leaks out of stage '" +
                                 poset.context(sub).label() + "'");
}

bool TruthObject::contains(int v, std::uint64_t mask) const {
  for (std::uint64_t m : stage_minimals_[static_cast<std::size_t>(v)])
    if ((mask & m) == m) return true;
  return false;
}

const std::vector<std::uint64_t>& TruthObject::minimals_at(int v) const {
  return stage_minimals_[static_cast<std::size_t>(v)];
}

std::vector<std::uint64_t> TruthObject::stage_elements(int v) const {
  std::vector<std::uint64_t> out;
  std::uint64_t full = poset_->context(v).full_mask();
  for (std::uint64_t mask = 0; mask <= full; ++mask)
    if (contains(v, mask)) out.push_back(mask);
  return out;
}

namespace {

std::vector<std::uint64_t> minimal_members(std::vector<std::uint64_t> members) {
  std::vector<std::uint64_t> mins;
  for (std::uint64_t m : members) {
    bool minimal = true;
    for (std::uint64_t other : members)
      if (other != m && (m & other) == other) {
        minimal = false;
        break;
      }
    if (minimal) mins.push_back(m);
  }
  return mins;
}

template <typename Weight>
TruthObject truth_object_from_weights(const ContextPoset& poset, const Weight& stage_member) {
  std::vector<std::vector<std::uint64_t>> stage_minimals;
  stage_minimals.reserve(static_cast<std::size_t>(poset.size()));
  for (int v = 0; v < poset.size(); ++v) {
    const Context& ctx = poset.context(v);
    std::vector<std::uint64_t> members;
    for (std::uint64_t mask = 0; mask <= ctx.full_mask(); ++mask)
      if (stage_member(ctx, mask)) members.push_back(mask);
    // certify up-closure of the raw scan before compressing
    for (std::uint64_t m : members) {
      std::uint64_t grown = m;
      for (int q = 0; q < ctx.size(); ++q) {
        grown = m | (std::uint64_t{1} << q);
        if (grown != m && !std::binary_search(members.begin(), members.end(), grown))
          throw CertificationError("truth object stage at '" + ctx.label() +
                                   "' is not closed upward");
      }
    }
    stage_minimals.push_back(minimal_members(std::move(members)));
  }
  return TruthObject(poset, std::move(stage_minimals));
}

}  // namespace

TruthObject truth_object_pure(const StateVector& psi, const ContextPoset& poset) {
  if (psi.dim() != poset.dim()) throw Error("state dimension does not match the poset");
  return truth_object_from_weights(poset, [&](const Context& ctx, std::uint64_t mask) {
    return (ctx.element(mask).matrix() * psi.vector() - psi.vector()).norm() <= tolerance();
  });
}

TruthObject truth_object_density(const DensityMatrix& rho, const ContextPoset& poset) {
  if (rho.dim() != poset.dim()) throw Error("density dimension does not match the poset");
  return truth_object_from_weights(poset, [&](const Context& ctx, std::uint64_t mask) {
    return (rho.matrix() * ctx.element(mask).matrix()).trace().real() >= 1.0 - tolerance();
  });
}

namespace {

GlobalOmegaElement valuation_from_masks(const ContextPoset& poset,
                                        const std::vector<std::uint64_t>& masks,
                                        const TruthObject& t) {
  std::vector<Sieve> components;
  components.reserve(static_cast<std::size_t>(poset.size()));
  for (int v = 0; v < poset.size(); ++v) {
    std::vector<int> members;
    for (int w : poset.down_set(v))
      if (t.contains(w, masks[static_cast<std::size_t>(w)])) members.push_back(w);
    components.emplace_back(poset, v, std::move(members));
  }
  return GlobalOmegaElement(poset, std::move(components));
}

}  // namespace

GlobalOmegaElement membership_valuation(const GlobalElement& k, const TruthObject& t) {
  if (&k.poset() != &t.poset()) throw Error("family and truth object live on different posets");
  return valuation_from_masks(k.poset(), k.masks(), t);
}

GlobalOmegaElement membership_valuation(const ClopenSubobject& s, const TruthObject& t) {
  if (&s.poset() != &t.poset())
    throw Error("sub-object and truth object live on different posets");
  return valuation_from_masks(s.poset(), s.masks(), t);
}

namespace {

template <typename State>
GlobalOmegaElement truth_value_impl(const SelfAdjointOperator& a, const BorelSet& set,
                                    const State& state, const ContextPoset& poset,
                                    const TruthObject& t) {
  Projector p = spectral_projector(a, set);
  GlobalElement gamma = daseinise_global(p, poset, Flavor::outer);
  GlobalOmegaElement value = membership_valuation(gamma, t);
  // the same sieves must come out of the direct certainty formula
  for (int v = 0; v < poset.size(); ++v) {
    std::vector<int> direct;
    for (int w : poset.down_set(v))
      if (is_certain(gamma.at(w), state)) direct.push_back(w);
    if (!(Sieve(poset, v, std::move(direct)) == value.at(v)))
      throw CertificationError("membership route and direct certainty route disagree at '" +
                               poset.context(v).label() + "'");
  }
  return value;
}

}  // namespace

GlobalOmegaElement truth_value_proposition(const SelfAdjointOperator& a, const BorelSet& set,
                                           const StateVector& psi, const ContextPoset& poset) {
  return truth_value_impl(a, set, psi, poset, truth_object_pure(psi, poset));
}

GlobalOmegaElement truth_value_proposition(const SelfAdjointOperator& a, const BorelSet& set,
                                           const DensityMatrix& rho, const ContextPoset& poset) {
  return truth_value_impl(a, set, rho, poset, truth_object_density(rho, poset));
}

int ClassicalModel::state_index(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  throw Error("unknown classical state '" + name + "'");
}

const std::vector<double>& ClassicalModel::quantity(const std::string& name) const {
  auto it = quantities.find(name);
  if (it == quantities.end()) throw Error("unknown classical quantity '" + name + "'");
  return it->second;
}

void ClassicalModel::validate() const {
  if (states.empty()) throw Error("classical model needs at least one state");
  if (states.size() > 16)
    throw Error("classical model supports at most 16 states (subset collections are explicit)");
  std::set<std::string> seen(states.begin(), states.end());
  if (seen.size() != states.size()) throw Error("classical state names must be distinct");
  for (const auto& [name, values] : quantities)
    if (values.size() != states.size())
      throw Error("classical quantity '" + name + "' needs one value per state");
}

std::uint64_t classical_preimage(const ClassicalModel& m, const std::string& quantity,
                                 const BorelSet& set) {
  const auto& values = m.quantity(quantity);
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (set.contains(values[i])) mask |= std::uint64_t{1} << i;
  return mask;
}

int classical_truth(const ClassicalModel& m, const std::string& quantity, const BorelSet& set,
                    int state) {
  if (state < 0 || state >= static_cast<int>(m.states.size()))
    throw Error("classical state index out of range");
  return set.contains(m.quantity(quantity)[static_cast<std::size_t>(state)]) ? 1 : 0;
}

int classical_truth(const ClassicalModel& m, const std::string& quantity, const BorelSet& set,
                    const std::set<std::uint64_t>& truth_collection) {
  return truth_collection.count(classical_preimage(m, quantity, set)) ? 1 : 0;
}

std::set<std::uint64_t> classical_truth_collection(const ClassicalModel& m, int state) {
  if (state < 0 || state >= static_cast<int>(m.states.size()))
    throw Error("classical state index out of range");
  m.validate();
  std::set<std::uint64_t> out;
  std::uint64_t n = m.states.size();
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k)
    if (k >> state & 1) out.insert(k);
  return out;
}

}  // namespace daseinizer

#pragma once

#include <set>

#include "daseinizer/subobject.hpp"

namespace daseinizer {

/// A truth object: one up-closed subset of P(V) per context, stable under
/// the approximation-from-above restriction, always containing the unit.
/// Stored as the antichain of minimal members per stage.
class TruthObject {
 public:
  TruthObject(const ContextPoset& poset, std::vector<std::vector<std::uint64_t>> stage_minimals);

  const ContextPoset& poset() const { return *poset_; }
  bool contains(int v, std::uint64_t mask) const;
  const std::vector<std::uint64_t>& minimals_at(int v) const;
  /// The whole up-set at a stage, sorted; reconstructed on demand.
  std::vector<std::uint64_t> stage_elements(int v) const;

  friend bool operator==(const TruthObject& a, const TruthObject& b) {
    return a.stage_minimals_ == b.stage_minimals_;
  }

 private:
  const ContextPoset* poset_;
  std::vector<std::vector<std::uint64_t>> stage_minimals_;
};

/// Stage V collects the algebra elements that hold with certainty in the
/// state: ||alpha psi - psi|| <= eps, resp. tr(rho alpha) >= 1 - eps.
TruthObject truth_object_pure(const StateVector& psi, const ContextPoset& poset);
TruthObject truth_object_density(const DensityMatrix& rho, const ContextPoset& poset);

/// Sieve-valued membership of a compatible family in a truth object:
/// at stage V the contexts below V where the component has entered.
GlobalOmegaElement membership_valuation(const GlobalElement& k, const TruthObject& t);
GlobalOmegaElement membership_valuation(const ClopenSubobject& s, const TruthObject& t);

/// Truth value of the proposition "A in set" in the given state: the
/// membership valuation of the daseinised spectral projector, certified
/// against the direct certainty formula at every stage.
GlobalOmegaElement truth_value_proposition(const SelfAdjointOperator& a, const BorelSet& set,
                                           const StateVector& psi, const ContextPoset& poset);
GlobalOmegaElement truth_value_proposition(const SelfAdjointOperator& a, const BorelSet& set,
                                           const DensityMatrix& rho, const ContextPoset& poset);

/// A finite classical state space with real-valued quantities.
struct ClassicalModel {
  std::vector<std::string> states;
  std::map<std::string, std::vector<double>> quantities;

  int state_index(const std::string& name) const;
  const std::vector<double>& quantity(const std::string& name) const;
  void validate() const;
};

/// Subsets of the state space are bit masks over state indices.
std::uint64_t classical_preimage(const ClassicalModel& m, const std::string& quantity,
                                 const BorelSet& set);
/// State form: 1 iff the quantity's value at the state lies in the set.
int classical_truth(const ClassicalModel& m, const std::string& quantity, const BorelSet& set,
                    int state);
/// Truth-object form: 1 iff the preimage belongs to the collection.
int classical_truth(const ClassicalModel& m, const std::string& quantity, const BorelSet& set,
                    const std::set<std::uint64_t>& truth_collection);
/// The collection of all subsets containing the state; makes the two forms
/// agree for every quantity and Borel set.
std::set<std::uint64_t> classical_truth_collection(const ClassicalModel& m, int state);

}  // namespace daseinizer

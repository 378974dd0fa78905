#include <doctest.h>

#include <algorithm>

#include "daseinizer/truth.hpp"
#include "oracles.hpp"

using namespace daseinizer;

namespace {

Projector unit_diag(int dim, std::initializer_list<int> ones) {
  Matrix m = Matrix::Zero(dim, dim);
  for (int i : ones) m(i, i) = 1.0;
  return Projector(std::move(m));
}

Context diag_context(int dim, const std::string& label) {
  std::vector<Projector> minimals;
  for (int i = 0; i < dim; ++i) minimals.push_back(unit_diag(dim, {i}));
  return Context(std::move(minimals), label);
}

ContextPoset d3_family() { return generate_poset({diag_context(3, "d3")}); }

StateVector basis_state(int dim, int i) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return StateVector(std::move(v));
}

StateVector superposition(int dim, std::initializer_list<int> ones) {
  Vector v = Vector::Zero(dim);
  for (int i : ones) v(i) = 1.0;
  v.normalize();
  return StateVector(std::move(v));
}

ClassicalModel dice_model() {
  ClassicalModel m;
  m.states = {"s1", "s2", "s3", "s4"};
  m.quantities["face"] = {1.0, 2.0, 3.0, 4.0};
  m.quantities["parity"] = {1.0, 0.0, 1.0, 0.0};
  m.validate();
  return m;
}

}  // namespace

TEST_CASE("truth objects validate antichains and stability") {
  ContextPoset poset = d3_family();
  StateVector psi = basis_state(3, 0);
  TruthObject t = truth_object_pure(psi, poset);

  // every stage contains the unit and is up-closed
  for (int v = 0; v < poset.size(); ++v) {
    const Context& vc = poset.context(v);
    CHECK(t.contains(v, vc.full_mask()));
    CHECK(!t.minimals_at(v).empty());
    for (std::uint64_t mask = 0; mask <= vc.full_mask(); ++mask)
      if (t.contains(v, mask))
        for (int q = 0; q < vc.size(); ++q) CHECK(t.contains(v, mask | (std::uint64_t{1} << q)));
    // stage_elements agrees with contains
    auto up = t.stage_elements(v);
    CHECK(std::is_sorted(up.begin(), up.end()));
    for (std::uint64_t mask = 0; mask <= vc.full_mask(); ++mask)
      CHECK(t.contains(v, mask) == (std::find(up.begin(), up.end(), mask) != up.end()));
  }

  // a non-antichain presentation is rejected
  std::vector<std::vector<std::uint64_t>> bad;
  for (int v = 0; v < poset.size(); ++v) bad.push_back(t.minimals_at(v));
  bad[0].push_back(poset.context(0).full_mask());
  CHECK_THROWS_AS(TruthObject(poset, bad), Error);

  // an empty stage is rejected
  std::vector<std::vector<std::uint64_t>> empty_stage;
  for (int v = 0; v < poset.size(); ++v) empty_stage.push_back(t.minimals_at(v));
  empty_stage[1].clear();
  CHECK_THROWS_AS(TruthObject(poset, empty_stage), Error);

  // breaking stability under approximation from above is rejected
  std::vector<std::vector<std::uint64_t>> unstable;
  for (int v = 0; v < poset.size(); ++v)
    unstable.push_back({poset.context(v).full_mask()});
  unstable[0] = {1};  // one minimal certain at the top, nothing below follows
  CHECK_THROWS_AS(TruthObject(poset, unstable), CertificationError);
}

TEST_CASE("pure-state stages collect exactly the certain elements") {
  ContextPoset poset = d3_family();
  Rng rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    StateVector psi = oracles::sample_state(3, rng);
    TruthObject t = truth_object_pure(psi, poset);
    for (int v = 0; v < poset.size(); ++v) {
      const Context& vc = poset.context(v);
      for (std::uint64_t mask = 0; mask <= vc.full_mask(); ++mask)
        CHECK(t.contains(v, mask) == is_certain(vc.element(mask), psi));
    }
  }
}

TEST_CASE("pure-state stages are principal with a least element") {
  ContextPoset poset = d3_family();
  Rng rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    StateVector psi = oracles::sample_state(3, rng);
    TruthObject t = truth_object_pure(psi, poset);
    Projector support = projector_unchecked(
        (psi.vector() * psi.vector().adjoint()).eval());
    for (int v = 0; v < poset.size(); ++v) {
      REQUIRE(t.minimals_at(v).size() == 1);
      CHECK(t.minimals_at(v)[0] == outer_mask(support, poset.context(v)));
    }
  }
}

TEST_CASE("density stages against the direct trace predicate") {
  ContextPoset poset = d3_family();
  DensityMatrix rho(Matrix(Matrix::Identity(3, 3) / 3.0));
  TruthObject t = truth_object_density(rho, poset);
  for (int v = 0; v < poset.size(); ++v) {
    const Context& vc = poset.context(v);
    for (std::uint64_t mask = 0; mask <= vc.full_mask(); ++mask)
      CHECK(t.contains(v, mask) == is_certain(vc.element(mask), rho));
    // the maximally mixed state is certain only of the unit
    CHECK(t.minimals_at(v) == std::vector<std::uint64_t>{vc.full_mask()});
  }
}

TEST_CASE("distinct mixtures with one certainty pattern collapse together") {
  ContextPoset poset = d3_family();
  Matrix r1 = Matrix::Zero(3, 3);
  r1(0, 0) = 0.5;
  r1(1, 1) = 0.5;
  Matrix r2 = Matrix::Zero(3, 3);
  r2(0, 0) = 0.3;
  r2(1, 1) = 0.7;
  TruthObject t1 = truth_object_density(DensityMatrix(r1), poset);
  TruthObject t2 = truth_object_density(DensityMatrix(r2), poset);
  CHECK(t1 == t2);  // the certainty data forgets the weights

  // while a pure state in the same face is genuinely different
  TruthObject tp = truth_object_pure(basis_state(3, 0), poset);
  CHECK(!(t1 == tp));
}

TEST_CASE("membership valuation produces a matching sieve family") {
  ContextPoset poset = d3_family();
  StateVector psi = superposition(3, {0, 1});
  TruthObject t = truth_object_pure(psi, poset);
  Vector v(3);
  v << 1.0, 1.0, 0.0;
  v.normalize();
  Projector p((v * v.adjoint()).eval());
  GlobalElement k = daseinise_global(p, poset, Flavor::outer);
  GlobalOmegaElement value = membership_valuation(k, t);

  // stage contents: exactly the contexts below where the component entered
  for (int v2 = 0; v2 < poset.size(); ++v2)
    for (int w : poset.down_set(v2))
      CHECK(value.at(v2).contains(w) == t.contains(w, k.mask_at(w)));

  // here the approximation is certain everywhere
  CHECK(value.is_top());

  // and the sub-object overload agrees
  GlobalOmegaElement via_sub = membership_valuation(daseinise_subobject(p, poset), t);
  CHECK(via_sub == value);
}

TEST_CASE("truth values certify against the direct certainty route") {
  ContextPoset poset = d3_family();
  SelfAdjointOperator a(Matrix([] {
    Matrix m = Matrix::Zero(3, 3);
    m(1, 1) = 1.0;
    m(2, 2) = 2.0;
    return m;
  }()));

  // e1 is certain of "A in [0,...]" exactly when 0 stays in the window
  GlobalOmegaElement tv = truth_value_proposition(a, BorelSet::closed(-0.5, 0.5),
                                                  basis_state(3, 0), poset);
  CHECK(tv.is_top());
  // probability zero at the top, yet coarse stages where the approximation
  // degrades to the unit still hold: the truth value grades, not collapses
  GlobalOmegaElement fv = truth_value_proposition(a, BorelSet::closed(0.5, 2.5),
                                                  basis_state(3, 0), poset);
  CHECK(!fv.is_top());
  {
    Projector p = spectral_projector(a, BorelSet::closed(0.5, 2.5));
    GlobalElement k = daseinise_global(p, poset, Flavor::outer);
    std::vector<int> expect;
    for (int v = 0; v < poset.size(); ++v)
      if (is_certain(k.at(v), basis_state(3, 0))) expect.push_back(v);
    CHECK(fv.support() == expect);
    CHECK(std::find(expect.begin(), expect.end(), 0) == expect.end());
  }

  // a superposition is certain only of the window covering both branches
  StateVector plus = superposition(3, {0, 1});
  CHECK(truth_value_proposition(a, BorelSet::closed(-0.5, 1.5), plus, poset).is_top());
  GlobalOmegaElement partial =
      truth_value_proposition(a, BorelSet::closed(0.5, 1.5), plus, poset);
  CHECK(!partial.is_top());
  // exactly one coarsening absorbs the spread of the superposition
  CHECK(partial.support().size() == 1);

  // density route agrees with the pure route on the projector state
  Matrix dyad = plus.vector() * plus.vector().adjoint();
  GlobalOmegaElement via_density =
      truth_value_proposition(a, BorelSet::closed(-0.5, 1.5), DensityMatrix(dyad), poset);
  CHECK(via_density.is_top());
}

TEST_CASE("partially true propositions hold on a proper sieve") {
  // poset from A's own eigencontext so the proposition is exactly decidable
  // at the top and the coarsenings grade it
  Context top = diag_context(3, "d3");
  ContextPoset poset = generate_poset({top});
  SelfAdjointOperator a(Matrix([] {
    Matrix m = Matrix::Zero(3, 3);
    m(1, 1) = 1.0;
    m(2, 2) = 2.0;
    return m;
  }()));
  StateVector plus = superposition(3, {0, 1});

  // "A in [0.5, 2.5]" has probability 1/2 in plus: neither top nor bottom,
  // but the approximation at the coarsening {e0+e1 | e2} becomes certain
  GlobalOmegaElement tv = truth_value_proposition(a, BorelSet::closed(0.5, 2.5), plus, poset);
  CHECK(!tv.is_top());
  CHECK(!tv.support().empty());
  Projector p = spectral_projector(a, BorelSet::closed(0.5, 2.5));
  GlobalElement k = daseinise_global(p, poset, Flavor::outer);
  TruthObject t = truth_object_pure(plus, poset);
  for (int v : tv.support()) CHECK(t.contains(v, k.mask_at(v)));
}

TEST_CASE("classical model plumbing") {
  ClassicalModel m = dice_model();
  CHECK(m.state_index("s3") == 2);
  CHECK_THROWS_AS(m.state_index("nope"), Error);
  CHECK(m.quantity("face")[3] == 4.0);
  CHECK_THROWS_AS(m.quantity("nope"), Error);

  ClassicalModel dup = m;
  dup.states[1] = "s1";
  CHECK_THROWS_AS(dup.validate(), Error);
  ClassicalModel ragged = m;
  ragged.quantities["face"].pop_back();
  CHECK_THROWS_AS(ragged.validate(), Error);
}

TEST_CASE("classical preimages and the two truth forms") {
  ClassicalModel m = dice_model();
  CHECK(classical_preimage(m, "face", BorelSet::closed(1.5, 3.5)) == 0b0110);
  CHECK(classical_preimage(m, "parity", BorelSet::closed(0.5, 1.5)) == 0b0101);

  // state form matches pointwise evaluation everywhere
  for (int s = 0; s < 4; ++s) {
    auto collection = classical_truth_collection(m, s);
    // the collection is exactly the up-set of the singleton
    CHECK(collection.size() == 8);
    for (std::uint64_t subset : collection) CHECK(((subset >> s) & 1) == 1);
    for (const auto& [name, values] : m.quantities)
      for (double cut : {0.25, 0.5, 1.0, 2.5, 3.0}) {
        BorelSet set = BorelSet::closed(cut, cut + 1.0);
        int direct = classical_truth(m, name, set, s);
        int via_collection = classical_truth(m, name, set, collection);
        CHECK(direct == via_collection);
        CHECK(direct == (set.contains(values[static_cast<std::size_t>(s)]) ? 1 : 0));
      }
  }
}

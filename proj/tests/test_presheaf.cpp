#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "daseinizer/presheaf.hpp"
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

ContextPoset qubit_fan(int n) {
  std::vector<Context> fans;
  for (int k = 0; k < n; ++k) {
    double theta = (k + 1) * 3.14159265358979323846 / 12.0;
    Vector v(2);
    v << std::cos(theta), std::sin(theta);
    Projector p((v * v.adjoint()).eval());
    fans.push_back(Context({p, p.complement()}, "fan" + std::to_string(k)));
  }
  return ContextPoset(fans);
}

}  // namespace

TEST_CASE("presheaf constructor enforces shape and functoriality") {
  ContextPoset poset = d3_family();
  Presheaf sigma = spectral_presheaf(poset);
  CHECK(sigma.stalk_size(0) == 3);
  for (int v = 1; v < poset.size(); ++v) CHECK(sigma.stalk_size(v) == 2);

  // missing map for a comparable pair
  std::vector<std::uint32_t> sizes(static_cast<std::size_t>(poset.size()), 2);
  CHECK_THROWS_AS(Presheaf(poset, sizes, {}), Error);

  // out-of-range image
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> bad;
  for (auto [sub, super] : poset.strict_pairs())
    bad[{sub, super}] = std::vector<std::uint32_t>{7, 7};
  CHECK_THROWS_AS(Presheaf(poset, sizes, bad), Error);
}

TEST_CASE("functoriality is rejected when a chain disagrees") {
  // chain poset: d4 > {01|2|3} > {01|23}
  Context fine = diag_context(4, "d4");
  Context mid({unit_diag(4, {0, 1}), unit_diag(4, {2}), unit_diag(4, {3})}, "mid");
  Context bot({unit_diag(4, {0, 1}), unit_diag(4, {2, 3})}, "bot");
  ContextPoset poset({fine, mid, bot});
  int fi = poset.index_of_label("d4");
  int mi = poset.index_of_label("mid");
  int bi = poset.index_of_label("bot");

  std::vector<std::uint32_t> sizes(3);
  sizes[static_cast<std::size_t>(fi)] = 2;
  sizes[static_cast<std::size_t>(mi)] = 2;
  sizes[static_cast<std::size_t>(bi)] = 2;
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> maps;
  maps[{mi, fi}] = std::vector<std::uint32_t>{0, 1};
  maps[{bi, mi}] = std::vector<std::uint32_t>{0, 1};
  maps[{bi, fi}] = std::vector<std::uint32_t>{0, 1};
  CHECK_NOTHROW(Presheaf(poset, sizes, maps));
  maps[{bi, fi}] = std::vector<std::uint32_t>{1, 0};  // breaks composition
  CHECK_THROWS_AS(Presheaf(poset, sizes, maps), Error);
}

TEST_CASE("spectral restriction follows the dominating minimal") {
  ContextPoset poset = d3_family();
  Presheaf sigma = spectral_presheaf(poset);
  for (auto [sub, super] : poset.strict_pairs())
    for (std::uint32_t q = 0; q < sigma.stalk_size(super); ++q)
      CHECK(sigma.restrict(super, sub, q) ==
            static_cast<std::uint32_t>(poset.restrict_point(super, sub, static_cast<int>(q))));
  // identity on equal stages
  CHECK(sigma.restrict(0, 0, 2) == 2);
}

TEST_CASE("spectral elements evaluate algebra elements to bits") {
  Context v = diag_context(3, "d3");
  for (int q = 0; q < 3; ++q)
    for (std::uint64_t mask = 0; mask <= v.full_mask(); ++mask)
      CHECK(evaluate(v, q, mask) == (((mask >> q) & 1) ? 1 : 0));
}

TEST_CASE("sieves validate membership and downward closure") {
  ContextPoset poset = d3_family();
  int top = poset.index_of_label("d3");
  REQUIRE(top == 0);

  Sieve total = Sieve::total(poset, top);
  CHECK(total.is_total());
  CHECK(total.members().size() == 4);
  Sieve none = Sieve::empty(poset, top);
  CHECK(none.members().empty());
  CHECK(!none.is_total());

  // a single coarsening is a valid sieve (nothing strictly below it)
  CHECK_NOTHROW(Sieve(poset, top, {1}));
  // the base alone is not down-closed: its coarsenings are missing
  CHECK_THROWS_AS(Sieve(poset, top, {top}), Error);
  // members must lie below the base
  CHECK_THROWS_AS(Sieve(poset, 1, {2}), Error);

  Sieve one(poset, top, {1});
  CHECK(one.contains(1));
  CHECK(!one.contains(2));
  CHECK(one.pull_to(1).is_total());
  CHECK(one.pull_to(2).members().empty());
  CHECK(total.pull_to(1).is_total());
}

TEST_CASE("sieve count matches the down-closed subset count") {
  ContextPoset poset = d3_family();
  // down-set of the finest context: itself over three incomparable
  // coarsenings; down-closed subsets: 2^3 without the base, 1 with it
  CHECK(all_sieves(poset, 0).size() == 9);
  CHECK(all_sieves(poset, 1).size() == 2);

  auto sieves = all_sieves(poset, 0);
  CHECK(std::count_if(sieves.begin(), sieves.end(), [](const Sieve& s) { return s.is_total(); }) ==
        1);
}

TEST_CASE("sieve algebra satisfies the Heyting laws") {
  ContextPoset poset = d3_family();
  auto sieves = all_sieves(poset, 0);
  Sieve total = Sieve::total(poset, 0);
  Sieve none = Sieve::empty(poset, 0);

  auto leq = [](const Sieve& a, const Sieve& b) { return sieve_meet(a, b) == a; };

  for (const auto& a : sieves) {
    CHECK(sieve_implies(a, a) == total);
    CHECK(sieve_meet(a, total) == a);
    CHECK(sieve_join(a, none) == a);
    CHECK(sieve_meet(a, sieve_neg(a)) == none);
    for (const auto& b : sieves) {
      CHECK(leq(sieve_meet(a, b), a));
      CHECK(leq(a, sieve_join(a, b)));
      CHECK(leq(sieve_meet(a, sieve_implies(a, b)), b));  // modus ponens
      // adjunction: c <= a=>b iff c ∧ a <= b
      for (const auto& c : sieves)
        CHECK(leq(c, sieve_implies(a, b)) == leq(sieve_meet(c, a), b));
    }
  }

  // intuitionistic signature: some sieve fails excluded middle here
  bool lem_fails = false;
  for (const auto& a : sieves)
    if (!(sieve_join(a, sieve_neg(a)) == total)) lem_fails = true;
  CHECK(lem_fails);
}

TEST_CASE("pullback respects the Heyting operations") {
  ContextPoset poset = d3_family();
  auto sieves = all_sieves(poset, 0);
  for (const auto& a : sieves)
    for (const auto& b : sieves)
      for (int sub : poset.down_set(0)) {
        CHECK(sieve_meet(a, b).pull_to(sub) == sieve_meet(a.pull_to(sub), b.pull_to(sub)));
        CHECK(sieve_join(a, b).pull_to(sub) == sieve_join(a.pull_to(sub), b.pull_to(sub)));
        CHECK(sieve_implies(a, b).pull_to(sub) ==
              sieve_implies(a.pull_to(sub), b.pull_to(sub)));
      }
}

TEST_CASE("global elements of the sieve presheaf") {
  ContextPoset poset = d3_family();

  // the family induced by a down-closed set of contexts is compatible
  auto family_of = [&](const std::vector<int>& holds) {
    std::vector<Sieve> parts;
    for (int v = 0; v < poset.size(); ++v) {
      std::vector<int> members;
      for (int w : poset.down_set(v))
        if (std::find(holds.begin(), holds.end(), w) != holds.end()) members.push_back(w);
      parts.emplace_back(poset, v, members);
    }
    return parts;
  };

  GlobalOmegaElement top(poset, family_of({0, 1, 2, 3}));
  CHECK(top.is_top());
  CHECK(top.support() == std::vector<int>{0, 1, 2, 3});

  GlobalOmegaElement partial(poset, family_of({1, 3}));
  CHECK(!partial.is_top());
  CHECK(partial.support() == std::vector<int>{1, 3});
  CHECK(!(partial == top));

  // breaking one component violates the matching condition
  auto broken = family_of({1, 3});
  broken[2] = Sieve::total(poset, 2);
  CHECK_THROWS_AS(GlobalOmegaElement(poset, broken), Error);
}

TEST_CASE("global sections of a classical family are the top choices") {
  ContextPoset poset = d3_family();
  auto sections = global_sections(spectral_presheaf(poset));
  // a choice at the finest context forces every coarsening
  REQUIRE(sections.size() == 3);
  for (const auto& s : sections) {
    REQUIRE(s.size() == static_cast<std::size_t>(poset.size()));
    for (auto [sub, super] : poset.strict_pairs())
      CHECK(s[static_cast<std::size_t>(sub)] ==
            static_cast<std::uint32_t>(poset.restrict_point(
                super, sub, static_cast<int>(s[static_cast<std::size_t>(super)]))));
  }
  // deterministic order and distinctness
  CHECK(std::is_sorted(sections.begin(), sections.end()));
  CHECK(std::adjacent_find(sections.begin(), sections.end()) == sections.end());
}

TEST_CASE("an antichain imposes no constraints on sections") {
  ContextPoset poset = qubit_fan(5);
  auto sections = global_sections(spectral_presheaf(poset));
  CHECK(sections.size() == 32);
}

TEST_CASE("the node budget guards the section search") {
  ContextPoset poset = qubit_fan(5);
  CHECK_THROWS_AS(global_sections(spectral_presheaf(poset), 4), Error);
}

TEST_CASE("naturality check accepts the identity and reports breakage") {
  ContextPoset poset = d3_family();
  Presheaf sigma = spectral_presheaf(poset);

  NatTransform id;
  id.dom = &sigma;
  id.cod = &sigma;
  for (int v = 0; v < poset.size(); ++v) {
    std::vector<std::uint32_t> comp(sigma.stalk_size(v));
    for (std::uint32_t x = 0; x < sigma.stalk_size(v); ++x) comp[x] = x;
    id.component.push_back(comp);
  }
  std::string witness;
  CHECK(check_natural(id, &witness));
  CHECK(witness.empty());

  // swap two points at the finest stage only: squares to coarser stages break
  NatTransform twisted = id;
  std::swap(twisted.component[0][0], twisted.component[0][1]);
  CHECK(!check_natural(twisted, &witness));
  CHECK(!witness.empty());
}

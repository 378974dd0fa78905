#include <doctest.h>

#include "daseinizer/pl.hpp"
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

std::map<std::string, SelfAdjointOperator> qutrit_symbols() {
  Matrix a = Matrix::Zero(3, 3);
  a(1, 1) = 1.0;
  a(2, 2) = 2.0;
  Matrix b = Matrix::Zero(3, 3);
  b(0, 0) = 3.0;
  b(1, 1) = 1.0;
  b(2, 2) = 1.0;
  std::map<std::string, SelfAdjointOperator> m;
  m.emplace("A", SelfAdjointOperator(a));
  m.emplace("B", SelfAdjointOperator(b));
  return m;
}

std::string round_trip(const std::string& text) {
  return print_proposition(parse_proposition(text));
}

}  // namespace

TEST_CASE("primitives parse with interval sets") {
  PropPtr p = parse_proposition("A in [0,1]u(2,3]");
  REQUIRE(p->kind == Proposition::Kind::primitive);
  CHECK(p->symbol == "A");
  CHECK(p->set.contains(0.5));
  CHECK(!p->set.contains(2.0));
  CHECK(p->set.contains(3.0));
  CHECK(p->set.str() == "[0,1]u(2,3]");

  // glyph spellings mean the same thing
  CHECK(round_trip("A ∈ [0,1]∪(2,3]") == round_trip("A in [0,1]u(2,3]"));
  // negative and fractional endpoints
  CHECK(parse_proposition("A in [-1.5,2.25)")->set.contains(-1.5));
}

TEST_CASE("connective precedence and associativity") {
  // not > and > or > '=>', with '=>' associating right
  PropPtr p = parse_proposition("not A in [0,1] and B in [0,1] or A in [2,3] => B in [2,3]");
  REQUIRE(p->kind == Proposition::Kind::implication);
  CHECK(p->lhs->kind == Proposition::Kind::disjunction);
  CHECK(p->lhs->lhs->kind == Proposition::Kind::conjunction);
  CHECK(p->lhs->lhs->lhs->kind == Proposition::Kind::negation);
  CHECK(p->rhs->kind == Proposition::Kind::primitive);

  PropPtr chain = parse_proposition("A in [0,1] => B in [0,1] => A in [2,3]");
  REQUIRE(chain->kind == Proposition::Kind::implication);
  CHECK(chain->rhs->kind == Proposition::Kind::implication);

  // parentheses regroup
  PropPtr grouped = parse_proposition("(A in [0,1] => B in [0,1]) => A in [2,3]");
  CHECK(grouped->lhs->kind == Proposition::Kind::implication);

  // glyphs parse identically to the words
  CHECK(round_trip("¬A ∈ [0,1] ∧ B ∈ [0,1]") == round_trip("not A in [0,1] and B in [0,1]"));
}

TEST_CASE("printing uses minimal parentheses and round-trips") {
  const char* cases[] = {
      "A in [0,1]",
      "not A in [0,1]",
      "not not A in [0,1]",
      "A in [0,1] and B in [0,1]",
      "A in [0,1] and B in [0,1] and A in [2,3]",
      "A in [0,1] or B in [0,1] and A in [2,3]",
      "(A in [0,1] or B in [0,1]) and A in [2,3]",
      "not (A in [0,1] and B in [0,1])",
      "A in [0,1] => B in [0,1] => A in [2,3]",
      "(A in [0,1] => B in [0,1]) => A in [2,3]",
      "A in [0,1]u(2,3] or B in [-1,0)",
  };
  for (const char* text : cases) {
    std::string printed = round_trip(text);
    CHECK(printed == text);           // already minimal
    CHECK(round_trip(printed) == printed);  // canonical fixed point
  }
  // redundant parentheses are dropped
  CHECK(round_trip("((A in [0,1]))") == "A in [0,1]");
  CHECK(round_trip("(A in [0,1] and B in [0,1]) or A in [2,3]") ==
        "A in [0,1] and B in [0,1] or A in [2,3]");
}

TEST_CASE("parse errors carry the offending column") {
  CHECK_THROWS_WITH_AS(parse_proposition(""), doctest::Contains("column 1"), Error);
  CHECK_THROWS_WITH_AS(parse_proposition("A [0,1]"), doctest::Contains("expected 'in'"), Error);
  CHECK_THROWS_WITH_AS(parse_proposition("A in [2,1]"),
                       doctest::Contains("lower bound exceeds"), Error);
  CHECK_THROWS_WITH_AS(parse_proposition("A in (1,1)"), doctest::Contains("degenerate"), Error);
  CHECK_THROWS_WITH_AS(parse_proposition("A in [0,1] and"),
                       doctest::Contains("expected a proposition"), Error);
  CHECK_THROWS_WITH_AS(parse_proposition("(A in [0,1]"), doctest::Contains("expected ')'"), Error);
  CHECK_THROWS_WITH_AS(parse_proposition("A in [0,1] trailing"),
                       doctest::Contains("unexpected trailing input"), Error);
  CHECK_THROWS_WITH_AS(parse_proposition("A in [zero,1]"),
                       doctest::Contains("expected a number"), Error);
  // column is 1-based and points into the text
  try {
    parse_proposition("A in [0,1] and ");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("column 16") != std::string::npos);
  }
}

TEST_CASE("representation matches the algebra operations structurally") {
  ContextPoset poset = generate_poset({diag_context(3, "d3")});
  auto symbols = qutrit_symbols();

  ClopenSubobject sa = represent(parse_proposition("A in [0.5,2.5]"), symbols, poset);
  CHECK(sa == daseinise_subobject(
                  spectral_projector(symbols.at("A"), BorelSet::closed(0.5, 2.5)), poset));

  ClopenSubobject nota = represent(parse_proposition("not A in [0.5,2.5]"), symbols, poset);
  CHECK(nota == sub_neg(sa));

  ClopenSubobject sb = represent(parse_proposition("B in [0.5,1.5]"), symbols, poset);
  CHECK(represent(parse_proposition("A in [0.5,2.5] and B in [0.5,1.5]"), symbols, poset) ==
        sub_meet(sa, sb));
  CHECK(represent(parse_proposition("A in [0.5,2.5] or B in [0.5,1.5]"), symbols, poset) ==
        sub_join(sa, sb));
  CHECK(represent(parse_proposition("A in [0.5,2.5] => B in [0.5,1.5]"), symbols, poset) ==
        sub_implies(sa, sb));

  // the two spectral projectors coincide, so the sub-objects do
  CHECK(sa == sb);

  CHECK_THROWS_AS(represent(parse_proposition("C in [0,1]"), symbols, poset), Error);
}

TEST_CASE("disjunction represents a union of windows exactly") {
  ContextPoset poset = generate_poset({diag_context(3, "d3")});
  auto symbols = qutrit_symbols();
  ClopenSubobject split =
      represent(parse_proposition("A in [-0.5,0.5] or A in [1.5,2.5]"), symbols, poset);
  ClopenSubobject merged =
      represent(parse_proposition("A in [-0.5,0.5]u[1.5,2.5]"), symbols, poset);
  CHECK(split == merged);
}

TEST_CASE("conjunction only dominates an intersection of windows") {
  ContextPoset poset = generate_poset({diag_context(3, "d3")});
  auto symbols = qutrit_symbols();
  ClopenSubobject both =
      represent(parse_proposition("A in [-0.5,1.5] and A in [0.5,2.5]"), symbols, poset);
  ClopenSubobject narrowed =
      represent(parse_proposition("A in [0.5,1.5]"), symbols, poset);
  CHECK(sub_leq(narrowed, both));
  CHECK(!(both == narrowed));

  // the gap is visible where the window projectors approximate to the unit
  // while the intersection stays a proper element
  int strict_stage = -1;
  for (int v = 0; v < poset.size(); ++v)
    if (both.mask_at(v) != narrowed.mask_at(v)) strict_stage = v;
  REQUIRE(strict_stage >= 0);
  CHECK(both.mask_at(strict_stage) == poset.context(strict_stage).full_mask());
  CHECK(poset.context(strict_stage).element(narrowed.mask_at(strict_stage)).rank() == 1);
}

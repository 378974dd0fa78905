#pragma once

#include <map>
#include <memory>

#include "daseinizer/subobject.hpp"

namespace daseinizer {

/// Abstract syntax of the propositional language: primitives "A in set"
/// plus not/and/or/=>. "=>" binds loosest and associates right; "not"
/// binds tightest.
struct Proposition {
  enum class Kind { primitive, negation, conjunction, disjunction, implication };

  Kind kind = Kind::primitive;
  std::string symbol;  // primitive
  BorelSet set;        // primitive
  std::shared_ptr<const Proposition> lhs;  // negation uses lhs only
  std::shared_ptr<const Proposition> rhs;
};

using PropPtr = std::shared_ptr<const Proposition>;

/// Recursive descent parser; errors carry the 1-based column.
/// Accepts the keyword spellings and the glyphs ¬ ∧ ∨ ⇒ ∈ ∪.
PropPtr parse_proposition(const std::string& text);

/// Canonical form with minimal parentheses; parsing it again yields an
/// equal tree.
std::string print_proposition(const PropPtr& p);

/// Map a proposition to a clopen sub-object of the spectrum: primitives go
/// through the spectral projector of the named operator and approximation
/// from above; connectives go to the corresponding algebra operations.
ClopenSubobject represent(const PropPtr& p,
                          const std::map<std::string, SelfAdjointOperator>& symbols,
                          const ContextPoset& poset);

}  // namespace daseinizer

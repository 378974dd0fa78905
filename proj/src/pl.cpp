#include "daseinizer/pl.hpp"

#include <cctype>
#include <cstdlib>

namespace daseinizer {

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw Error("column " + std::to_string(at + 1) + ": " + message);
  }

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(const std::string& token) {
    skip_space();
    if (text.compare(pos, token.size(), token) == 0) {
      pos += token.size();
      return true;
    }
    return false;
  }

  /// Keyword: the spelling must not continue as an identifier.
  bool eat_word(const std::string& word) {
    skip_space();
    if (text.compare(pos, word.size(), word) != 0) return false;
    std::size_t end = pos + word.size();
    if (end < text.size() &&
        (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
      return false;
    pos = end;
    return true;
  }

  std::string ident() {
    skip_space();
    std::size_t start = pos;
    if (pos >= text.size() ||
        !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      fail("expected an identifier", pos);
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }

  double number() {
    skip_space();
    std::size_t start = pos;
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number", start);
    pos += static_cast<std::size_t>(end - begin);
    return v;
  }

  BorelSet::Interval interval() {
    skip_space();
    std::size_t start = pos;
    BorelSet::Interval iv;
    if (eat("[")) {
      iv.lo_closed = true;
    } else if (eat("(")) {
      iv.lo_closed = false;
    } else {
      fail("expected an interval", pos);
    }
    iv.lo = number();
    skip_space();
    if (!eat(",")) fail("expected ',' inside the interval", pos);
    iv.hi = number();
    skip_space();
    if (eat("]")) {
      iv.hi_closed = true;
    } else if (eat(")")) {
      iv.hi_closed = false;
    } else {
      fail("expected ']' or ')' closing the interval", pos);
    }
    if (!(iv.lo <= iv.hi)) fail("interval lower bound exceeds upper bound", start);
    if (iv.lo == iv.hi && !(iv.lo_closed && iv.hi_closed))
      fail("degenerate interval must be closed on both ends", start);
    return iv;
  }

  BorelSet interval_set() {
    std::vector<BorelSet::Interval> parts;
    parts.push_back(interval());
    while (true) {
      std::size_t save = pos;
      if (eat_word("u") || eat("∪")) {
        parts.push_back(interval());
      } else {
        pos = save;
        break;
      }
    }
    return BorelSet(std::move(parts));
  }

  PropPtr primary() {
    skip_space();
    if (pos >= text.size()) fail("expected a proposition", pos);
    if (eat("(")) {
      PropPtr inner = implication();
      skip_space();
      if (!eat(")")) fail("expected ')'", pos);
      return inner;
    }
    std::size_t start = pos;
    std::string name = ident();
    skip_space();
    if (!(eat_word("in") || eat("∈"))) fail("expected 'in' after '" + name + "'", pos);
    auto node = std::make_shared<Proposition>();
    node->kind = Proposition::Kind::primitive;
    node->symbol = std::move(name);
    node->set = interval_set();
    if (node->set.empty()) fail("empty interval set", start);
    return node;
  }

  PropPtr unary() {
    if (eat_word("not") || eat("¬")) {
      auto node = std::make_shared<Proposition>();
      node->kind = Proposition::Kind::negation;
      node->lhs = unary();
      return node;
    }
    return primary();
  }

  PropPtr conjunction() {
    PropPtr left = unary();
    while (eat_word("and") || eat("∧")) {
      auto node = std::make_shared<Proposition>();
      node->kind = Proposition::Kind::conjunction;
      node->lhs = std::move(left);
      node->rhs = unary();
      left = std::move(node);
    }
    return left;
  }

  PropPtr disjunction() {
    PropPtr left = conjunction();
    while (eat_word("or") || eat("∨")) {
      auto node = std::make_shared<Proposition>();
      node->kind = Proposition::Kind::disjunction;
      node->lhs = std::move(left);
      node->rhs = conjunction();
      left = std::move(node);
    }
    return left;
  }

  PropPtr implication() {
    PropPtr left = disjunction();
    if (eat("=>") || eat("⇒")) {
      auto node = std::make_shared<Proposition>();
      node->kind = Proposition::Kind::implication;
      node->lhs = std::move(left);
      node->rhs = implication();  // right associative
      return node;
    }
    return left;
  }
};

enum Precedence { kImplication = 0, kDisjunction = 1, kConjunction = 2, kNegation = 3, kPrimitive = 4 };

int precedence(const Proposition& p) {
  switch (p.kind) {
    case Proposition::Kind::implication: return kImplication;
    case Proposition::Kind::disjunction: return kDisjunction;
    case Proposition::Kind::conjunction: return kConjunction;
    case Proposition::Kind::negation: return kNegation;
    case Proposition::Kind::primitive: return kPrimitive;
  }
  return kPrimitive;
}

void print_node(const Proposition& p, int outer, std::string& out) {
  int mine = precedence(p);
  bool parens = mine < outer;
  if (parens) out += '(';
  switch (p.kind) {
    case Proposition::Kind::primitive:
      out += p.symbol;
      out += " in ";
      out += p.set.str();
      break;
    case Proposition::Kind::negation:
      out += "not ";
      print_node(*p.lhs, kNegation, out);
      break;
    case Proposition::Kind::conjunction:
      print_node(*p.lhs, kConjunction, out);
      out += " and ";
      print_node(*p.rhs, kConjunction + 1, out);
      break;
    case Proposition::Kind::disjunction:
      print_node(*p.lhs, kDisjunction, out);
      out += " or ";
      print_node(*p.rhs, kDisjunction + 1, out);
      break;
    case Proposition::Kind::implication:
      print_node(*p.lhs, kImplication + 1, out);
      out += " => ";
      print_node(*p.rhs, kImplication, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

PropPtr parse_proposition(const std::string& text) {
  Parser parser{text};
  PropPtr p = parser.implication();
  parser.skip_space();
  if (parser.pos != text.size()) parser.fail("unexpected trailing input", parser.pos);
  return p;
}

std::string print_proposition(const PropPtr& p) {
  if (!p) throw Error("cannot print an empty proposition");
  std::string out;
  print_node(*p, kImplication, out);
  return out;
}

ClopenSubobject represent(const PropPtr& p,
                          const std::map<std::string, SelfAdjointOperator>& symbols,
                          const ContextPoset& poset) {
  if (!p) throw Error("cannot represent an empty proposition");
  switch (p->kind) {
    case Proposition::Kind::primitive: {
      auto it = symbols.find(p->symbol);
      if (it == symbols.end()) throw Error("unknown operator symbol '" + p->symbol + "'");
      return daseinise_subobject(spectral_projector(it->second, p->set), poset);
    }
    case Proposition::Kind::negation:
      return sub_neg(represent(p->lhs, symbols, poset));
    case Proposition::Kind::conjunction:
      return sub_meet(represent(p->lhs, symbols, poset), represent(p->rhs, symbols, poset));
    case Proposition::Kind::disjunction:
      return sub_join(represent(p->lhs, symbols, poset), represent(p->rhs, symbols, poset));
    case Proposition::Kind::implication:
      return sub_implies(represent(p->lhs, symbols, poset), represent(p->rhs, symbols, poset));
  }
  throw Error("unreachable proposition kind");
}

}  // namespace daseinizer

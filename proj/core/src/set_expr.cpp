#include "sqlab/set_expr.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace sqlab {

namespace {

ExprPtr node(SetExpr e) { return std::make_shared<const SetExpr>(std::move(e)); }

bool is_scalar(const ExprPtr& e) { return e->kind == SetExpr::Kind::Scalar; }

}  // namespace

ExprPtr SetExpr::var(std::string name) {
  SetExpr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  return node(std::move(e));
}

ExprPtr SetExpr::literal(Rat value) {
  SetExpr e;
  e.kind = Kind::Scalar;
  e.scalar = std::move(value);
  return node(std::move(e));
}

ExprPtr SetExpr::sum(ExprPtr a, ExprPtr b) {
  if (is_scalar(a) && is_scalar(b)) return literal(a->scalar + b->scalar);
  if (is_scalar(a)) return shift(std::move(b), a->scalar);
  if (is_scalar(b)) return shift(std::move(a), b->scalar);
  SetExpr e;
  e.kind = Kind::Sum;
  e.a = std::move(a);
  e.b = std::move(b);
  return node(std::move(e));
}

ExprPtr SetExpr::diff(ExprPtr a, ExprPtr b) {
  if (is_scalar(a) && is_scalar(b)) return literal(a->scalar - b->scalar);
  if (is_scalar(b)) return shift(std::move(a), -b->scalar);
  if (is_scalar(a)) return shift(negate(std::move(b)), a->scalar);
  SetExpr e;
  e.kind = Kind::Diff;
  e.a = std::move(a);
  e.b = std::move(b);
  return node(std::move(e));
}

ExprPtr SetExpr::product(ExprPtr a, ExprPtr b) {
  if (is_scalar(a) && is_scalar(b)) return literal(a->scalar * b->scalar);
  if (is_scalar(a)) return dilate(std::move(b), a->scalar);
  if (is_scalar(b)) return dilate(std::move(a), b->scalar);
  SetExpr e;
  e.kind = Kind::Product;
  e.a = std::move(a);
  e.b = std::move(b);
  return node(std::move(e));
}

ExprPtr SetExpr::ratio(ExprPtr a, ExprPtr b) {
  if (is_scalar(b) && !b->scalar.is_zero()) {
    if (is_scalar(a)) return literal(a->scalar / b->scalar);
    return dilate(std::move(a), b->scalar.recip());
  }
  SetExpr e;  // a zero scalar divisor stays a Ratio and fails at eval time
  e.kind = Kind::Ratio;
  e.a = std::move(a);
  e.b = std::move(b);
  return node(std::move(e));
}

ExprPtr SetExpr::kfold(ExprPtr a, int k) {
  if (k < 1) throw PreconditionError("k-fold", "exponent must be a positive integer");
  if (k == 1) return a;
  SetExpr e;
  e.kind = Kind::KFold;
  e.k = k;
  e.a = std::move(a);
  return node(std::move(e));
}

ExprPtr SetExpr::shift(ExprPtr a, Rat c) {
  if (c.is_zero()) return a;
  if (is_scalar(a)) return literal(a->scalar + c);
  if (a->kind == Kind::Shift) {
    Rat total = a->scalar + c;
    ExprPtr inner = a->a;
    return shift(std::move(inner), std::move(total));
  }
  SetExpr e;
  e.kind = Kind::Shift;
  e.scalar = std::move(c);
  e.a = std::move(a);
  return node(std::move(e));
}

ExprPtr SetExpr::dilate(ExprPtr a, Rat c) {
  if (is_scalar(a)) return literal(a->scalar * c);
  if (c == Rat(1)) return a;
  if (c == Rat(-1)) return negate(std::move(a));
  SetExpr e;
  e.kind = Kind::Dilate;
  e.scalar = std::move(c);
  e.a = std::move(a);
  return node(std::move(e));
}

ExprPtr SetExpr::negate(ExprPtr a) {
  if (is_scalar(a)) return literal(-a->scalar);
  if (a->kind == Kind::Negate) return a->a;
  SetExpr e;
  e.kind = Kind::Negate;
  e.a = std::move(a);
  return node(std::move(e));
}

ExprPtr SetExpr::unite(ExprPtr a, ExprPtr b) {
  SetExpr e;
  e.kind = Kind::Union;
  e.a = std::move(a);
  e.b = std::move(b);
  return node(std::move(e));
}

ExprPtr SetExpr::map_apply(ConvexMap m, ExprPtr a) {
  SetExpr e;
  e.kind = Kind::Map;
  e.map = std::move(m);
  e.a = std::move(a);
  return node(std::move(e));
}

ExprPtr SetExpr::eltwise_pow(ExprPtr a, int k) {
  if (k < 1) throw PreconditionError("power", "exponent must be a positive integer");
  if (k == 1) return a;
  return map_apply(ConvexMap::pow(k), std::move(a));
}

bool expr_equal(const SetExpr& a, const SetExpr& b) {
  if (a.kind != b.kind || a.name != b.name || !(a.scalar == b.scalar) || a.k != b.k) {
    return false;
  }
  if (a.map.has_value() != b.map.has_value()) return false;
  if (a.map && !(*a.map == *b.map)) return false;
  if ((a.a == nullptr) != (b.a == nullptr) || (a.b == nullptr) != (b.b == nullptr)) {
    return false;
  }
  if (a.a && !expr_equal(*a.a, *b.a)) return false;
  if (a.b && !expr_equal(*a.b, *b.b)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// printing

namespace {

// precedence levels: 1 sum, 2 term, 3 unary/postfix, 4 atom
int precedence(const SetExpr& e) {
  switch (e.kind) {
    case SetExpr::Kind::Sum:
    case SetExpr::Kind::Diff:
    case SetExpr::Kind::Shift:
      return 1;
    case SetExpr::Kind::Product:
    case SetExpr::Kind::Ratio:
    case SetExpr::Kind::Dilate:
      return 2;
    case SetExpr::Kind::Negate:
      return 3;
    case SetExpr::Kind::KFold:
      return 3;
    case SetExpr::Kind::Map:
      return e.map->kind() == ConvexMap::Kind::Pow ? 3 : 4;
    default:
      return 4;
  }
}

void print(const SetExpr& e, int min_prec, std::ostream& os) {
  const int prec = precedence(e);
  const bool parens = prec < min_prec;
  if (parens) os << "(";
  switch (e.kind) {
    case SetExpr::Kind::Var:
      os << e.name;
      break;
    case SetExpr::Kind::Scalar:
      os << e.scalar.str();
      break;
    case SetExpr::Kind::Sum:
      print(*e.a, 1, os);
      os << "+";
      print(*e.b, 2, os);
      break;
    case SetExpr::Kind::Diff:
      print(*e.a, 1, os);
      os << "-";
      print(*e.b, 2, os);
      break;
    case SetExpr::Kind::Shift:
      print(*e.a, 1, os);
      os << (e.scalar.sign() > 0 ? "+" : "-") << e.scalar.abs().str();
      break;
    case SetExpr::Kind::Product:
      print(*e.a, 2, os);
      os << "*";
      print(*e.b, 3, os);
      break;
    case SetExpr::Kind::Ratio:
      print(*e.a, 2, os);
      os << "/";
      print(*e.b, 3, os);
      break;
    case SetExpr::Kind::Dilate:
      os << e.scalar.str() << "*";
      print(*e.a, 3, os);
      break;
    case SetExpr::Kind::Negate:
      os << "-";
      print(*e.a, 4, os);
      break;
    case SetExpr::Kind::KFold:
      print(*e.a, 4, os);
      os << "^(" << e.k << ")";
      break;
    case SetExpr::Kind::Map:
      if (e.map->kind() == ConvexMap::Kind::Pow) {
        print(*e.a, 4, os);
        os << "^" << e.map->as_poly().degree();
      } else {
        os << "apply(" << e.map->str() << ", ";
        print(*e.a, 1, os);
        os << ")";
      }
      break;
    case SetExpr::Kind::Union:
      os << "union(";
      print(*e.a, 1, os);
      os << ", ";
      print(*e.b, 1, os);
      os << ")";
      break;
  }
  if (parens) os << ")";
}

}  // namespace

std::string expr_text(const SetExpr& e) {
  std::ostringstream os;
  print(e, 1, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
    }
    return std::string(text.substr(start, pos - start));
  }

  Rat number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected a number", pos);
    return Rat(mpz_class(std::string(text.substr(start, pos - start))), 1);
  }

  int integer() {
    Rat n = number();
    if (!n.is_integer() || !n.num().fits_sint_p()) throw ParseError("expected a small integer", pos);
    return static_cast<int>(n.num().get_si());
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (true) {
      if (eat('+')) {
        lhs = SetExpr::sum(std::move(lhs), term());
      } else if (eat('-')) {
        lhs = SetExpr::diff(std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (true) {
      if (eat('*')) {
        lhs = SetExpr::product(std::move(lhs), factor());
      } else if (eat('/')) {
        lhs = SetExpr::ratio(std::move(lhs), factor());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    if (eat('-')) return SetExpr::negate(postfix());
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr base = atom();
    if (eat('^')) {
      if (eat('(')) {
        const std::size_t at = pos;
        const int k = integer();
        expect(')');
        if (k < 1) throw ParseError("k-fold exponent must be a positive integer", at);
        return SetExpr::kfold(std::move(base), k);
      }
      const std::size_t at = pos;
      const int k = integer();
      if (k < 1) throw ParseError("power must be a positive integer", at);
      return SetExpr::eltwise_pow(std::move(base), k);
    }
    return base;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of expression", pos);
    const char c = text[pos];
    if (c == '(') {
      ++pos;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return SetExpr::literal(number());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t at = pos;
      std::string name = ident();
      if (name == "apply") {
        expect('(');
        skip_ws();
        const std::size_t spec_start = pos;
        while (pos < text.size() && text[pos] != ',') ++pos;
        if (pos >= text.size()) throw ParseError("apply(...) needs a map and an expression", at);
        std::string spec(text.substr(spec_start, pos - spec_start));
        while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.back()))) {
          spec.pop_back();
        }
        ++pos;  // ','
        ExprPtr inner = expr();
        expect(')');
        try {
          return SetExpr::map_apply(ConvexMap::parse(spec), std::move(inner));
        } catch (const ParseError&) {
          throw ParseError("bad map spec '" + spec + "'", spec_start);
        }
      }
      if (name == "union") {
        expect('(');
        ExprPtr lhs = expr();
        expect(',');
        ExprPtr rhs = expr();
        expect(')');
        return SetExpr::unite(std::move(lhs), std::move(rhs));
      }
      return SetExpr::var(std::move(name));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
};

}  // namespace

ExprPtr parse_expr(std::string_view text) {
  Parser p{text};
  ExprPtr e = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return e;
}

// ---------------------------------------------------------------------------
// evaluation

RSet eval(const SetExpr& e, const Bindings& bindings, const EvalOptions& opt) {
  switch (e.kind) {
    case SetExpr::Kind::Var: {
      auto it = bindings.find(e.name);
      if (it == bindings.end()) throw BindError(e.name);
      return it->second;
    }
    case SetExpr::Kind::Scalar:
      return RSet::singleton(e.scalar);
    case SetExpr::Kind::Sum:
      return set_add(eval(*e.a, bindings, opt), eval(*e.b, bindings, opt), opt);
    case SetExpr::Kind::Diff:
      return set_sub(eval(*e.a, bindings, opt), eval(*e.b, bindings, opt), opt);
    case SetExpr::Kind::Product:
      return set_mul(eval(*e.a, bindings, opt), eval(*e.b, bindings, opt), opt);
    case SetExpr::Kind::Ratio:
      return set_div(eval(*e.a, bindings, opt), eval(*e.b, bindings, opt), opt);
    case SetExpr::Kind::KFold:
      if (e.k < 1) throw PreconditionError("k-fold", "exponent must be a positive integer");
      return set_kfold_product(eval(*e.a, bindings, opt), e.k, opt);
    case SetExpr::Kind::Shift:
      return set_shift(eval(*e.a, bindings, opt), e.scalar);
    case SetExpr::Kind::Dilate:
      return set_dilate(eval(*e.a, bindings, opt), e.scalar);
    case SetExpr::Kind::Negate:
      return set_negate(eval(*e.a, bindings, opt));
    case SetExpr::Kind::Union:
      return set_union(eval(*e.a, bindings, opt), eval(*e.b, bindings, opt), opt);
    case SetExpr::Kind::Map: {
      const ConvexMap& m = *e.map;
      return set_map(eval(*e.a, bindings, opt), [&m](const Rat& x) { return m.apply(x); });
    }
  }
  throw Error("unreachable");
}

}  // namespace sqlab

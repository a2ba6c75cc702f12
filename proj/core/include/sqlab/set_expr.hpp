#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "sqlab/convexity.hpp"
#include "sqlab/errors.hpp"
#include "sqlab/rset.hpp"

namespace sqlab {

/// A set-expression variable is not bound at evaluation time.
class BindError : public Error {
 public:
  explicit BindError(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct SetExpr;
using ExprPtr = std::shared_ptr<const SetExpr>;

/// Expression tree over named sets. Scalar literals are singleton sets;
/// the smart constructors fold scalar arithmetic and turn scalar-set sums
/// and products into shift and dilate nodes, so trees round-trip through
/// text exactly.
struct SetExpr {
  enum class Kind {
    Var,      // named set
    Scalar,   // singleton {scalar}
    Sum,      // A + B
    Diff,     // A - B
    Product,  // A * B
    Ratio,    // A / B (0 must not occur in B at evaluation time)
    KFold,    // A^(k), k-fold product with repetition
    Shift,    // A + scalar
    Dilate,   // scalar * A
    Negate,   // -A
    Union,    // union(A, B)
    Map,      // elementwise convex-map image
  };

  Kind kind = Kind::Var;
  std::string name;              // Var
  Rat scalar;                    // Scalar / Shift / Dilate
  int k = 0;                     // KFold
  std::optional<ConvexMap> map;  // Map
  ExprPtr a, b;

  static ExprPtr var(std::string name);
  static ExprPtr literal(Rat value);
  static ExprPtr sum(ExprPtr a, ExprPtr b);
  static ExprPtr diff(ExprPtr a, ExprPtr b);
  static ExprPtr product(ExprPtr a, ExprPtr b);
  static ExprPtr ratio(ExprPtr a, ExprPtr b);
  static ExprPtr kfold(ExprPtr a, int k);
  static ExprPtr shift(ExprPtr a, Rat c);
  static ExprPtr dilate(ExprPtr a, Rat c);
  static ExprPtr negate(ExprPtr a);
  static ExprPtr unite(ExprPtr a, ExprPtr b);
  static ExprPtr map_apply(ConvexMap m, ExprPtr a);
  /// Elementwise power x -> x^k as a Map node (k >= 2; k == 1 folds away).
  static ExprPtr eltwise_pow(ExprPtr a, int k);
};

bool expr_equal(const SetExpr& a, const SetExpr& b);

/// Canonical text; parse_expr(expr_text(e)) reproduces e exactly.
std::string expr_text(const SetExpr& e);
inline std::string expr_text(const ExprPtr& e) { return expr_text(*e); }

/// Grammar:
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := ['-'] postfix
///   postfix := atom ['^' ('(' INT ')' | INT)]   -- ^(k) k-fold product,
///                                                  ^k elementwise power
///   atom    := NAME | RATIONAL | '(' expr ')'
///            | 'apply' '(' MAPSPEC ',' expr ')' | 'union' '(' expr ',' expr ')'
/// Scalars act elementwise: c*X dilates, X+c shifts.
ExprPtr parse_expr(std::string_view text);

using Bindings = std::map<std::string, RSet>;

/// Exact evaluation. Deterministic for every jobs setting and evaluation
/// order. Throws BindError, DivisionByZeroError, SizeLimitError.
RSet eval(const SetExpr& e, const Bindings& bindings, const EvalOptions& opt = {});
inline RSet eval(const ExprPtr& e, const Bindings& b, const EvalOptions& o = {}) {
  return eval(*e, b, o);
}

}  // namespace sqlab

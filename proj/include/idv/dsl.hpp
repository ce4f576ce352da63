#pragma once

// The identity description language: tokenizer, recursive-descent parser,
// validator and the evaluator binding expressions to the special-function,
// quadrature and summation engines.
//
// File grammar (whitespace-insensitive, '#' comments):
//   file        := identity+
//   identity    := "identity" STRING "{" param* constraint* hint* note?
//                  "lhs" "=" expr ";" "rhs" "=" expr ";" sample+ status? "}"
//   param       := "param" IDENT "in" domain ";"
//   domain      := "Real" "(" num "," num ")" | "Int" "(" int "," int ")"
//                | "Complex" "(" num "," num "," num "," num ")"
//   constraint  := "constraint" expr "=" expr ";"
//   hint        := "hint" IDENT ( "(" expr ")" )? ";"
//   note        := "note" STRING ";"
//   sample      := "sample" IDENT "=" cexpr ("," IDENT "=" cexpr)* ";"
//   status      := "status" ("verify" | "ambiguous" | "known_discrepancy") ";"
// Expressions use ^ (right-assoc) > unary - > * / > + -, complex literals as
// a + b*I, quantifiers Integral/Sum/Prod(var, lo, hi, body), bounds may be
// inf / -inf. Sample values are constant expressions.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "idv/numerics.hpp"

namespace idv::dsl {

// ---------------------------------------------------------------------------
// tokens

enum class TokKind { ident, number, string, punct, op, keyword, eof };

struct Token {
  TokKind kind = TokKind::eof;
  std::string text;
  double num = 0.0;
  int line = 1, col = 1;
};

class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" +
                           std::to_string(col)),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_, col_;
};

std::vector<Token> tokenize(const std::string& text);

// ---------------------------------------------------------------------------
// expression AST

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class NodeKind {
  literal,      // lit
  constant_ref, // name (pi, I, inf, EulerGamma, Catalan, Glaisher)
  var_ref,      // name: parameter or quantifier-bound variable
  neg,          // args[0]
  add, sub, mul, div, pow,  // args[0], args[1]
  call,         // name + args
  integral,     // var; args = {lo, hi, body}
  sum,          // var; args = {lo, hi, body}
  prod          // var; args = {lo, hi, body}
};

struct Expr {
  NodeKind kind = NodeKind::literal;
  Cplx lit{0.0, 0.0};
  std::string name;          // call target / var / constant / quantifier var
  std::vector<ExprPtr> args;
  int line = 0, col = 0;
};

// known function table: name -> {min arity, max arity}
const std::map<std::string, std::pair<int, int>>& function_table();

// parse a standalone expression (the `eval` CLI entry)
ExprPtr parse_expression(const std::string& text);

// canonical fully-parenthesized rendering; reparses to an identical tree
std::string pretty_print(const ExprPtr& e);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// ---------------------------------------------------------------------------
// identities

enum class DomainKind { real_interval, int_range, complex_rect };

struct ParamDecl {
  std::string name;
  DomainKind kind = DomainKind::real_interval;
  double lo = 0.0, hi = 0.0;        // real part bounds
  double im_lo = 0.0, im_hi = 0.0;  // complex_rect only
};

struct Constraint {
  ExprPtr lhs, rhs;
};

struct Hint {
  std::string name;   // oscillatory, alternating, branch_sensitive,
                      // conditional, ambiguous, typo_corrected
  ExprPtr arg;        // oscillatory frequency expression, else null
};

struct SamplePoint {
  std::vector<std::pair<std::string, Cplx>> bindings;
  std::string display;  // source rendering, used in reports
};

enum class ExpectedStatus { verify, ambiguous, known_discrepancy };

struct Identity {
  std::string id;
  ExprPtr lhs, rhs;
  std::vector<ParamDecl> params;
  std::vector<Constraint> constraints;
  std::vector<Hint> hints;
  std::vector<SamplePoint> samples;
  ExpectedStatus expected = ExpectedStatus::verify;
  std::string note;
  std::string file;
  int line = 0;

  bool has_hint(const std::string& name) const;
};

// parse a registry file (one or more identity blocks)
std::vector<Identity> parse_identities(const std::string& text,
                                       const std::string& filename);

// ---------------------------------------------------------------------------
// validation

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;  // syntactically zero denominators etc.
  bool ok() const { return errors.empty(); }
};

// scope resolution, arity checks already done at parse time; folds numeric
// constants, rewrites Coth(u) - 1 into the cancellation-free kernel and
// verifies every sample point against domains and constraints
ValidationReport validate(Identity& ident);

// expression-level validation against a set of free parameter names
ValidationReport validate_expr(const ExprPtr& e,
                               const std::vector<std::string>& params);

// constant folding used by the validator; exposed for the fold-consistency
// property test
ExprPtr fold_constants(const ExprPtr& e);

// ---------------------------------------------------------------------------
// evaluation

struct EvalStats {
  long special_calls = 0;
  long quadrature_calls = 0;
  long summation_calls = 0;
  long node_visits = 0;
};

using Bindings = std::vector<std::pair<std::string, Cplx>>;

// error wrapper carrying the AST path of the failing node
class eval_error : public std::runtime_error {
public:
  eval_error(const std::string& what, std::string breadcrumb)
      : std::runtime_error(what + " [at " + breadcrumb + "]"),
        breadcrumb_(std::move(breadcrumb)) {}
  const std::string& breadcrumb() const { return breadcrumb_; }

private:
  std::string breadcrumb_;
};

EvalResult evaluate(const ExprPtr& e, const Bindings& bindings,
                    const EngineConfig& cfg, EvalStats* stats = nullptr);

}  // namespace idv::dsl

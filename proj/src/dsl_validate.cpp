#include <set>
#include <sstream>

#include "idv/dsl.hpp"

namespace idv::dsl {
namespace {

Cplx constant_value(const std::string& name) {
  if (name == "pi") return {kPi.hi, 0.0};
  if (name == "I") return {0.0, 1.0};
  if (name == "inf") return {kInf, 0.0};
  if (name == "EulerGamma") return {kEulerGamma.hi, 0.0};
  if (name == "Catalan") return {kCatalan.hi, 0.0};
  if (name == "Glaisher") return {kGlaisher.hi, 0.0};
  return {kNan, kNan};
}

ExprPtr clone_with(const Expr& base, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>(base);
  e->args = std::move(args);
  return e;
}

// arithmetic used by folding; shared with the evaluator so folded and
// unfolded trees produce bit-identical values
Cplx fold_binary(NodeKind k, Cplx a, Cplx b) {
  switch (k) {
    case NodeKind::add: return a + b;
    case NodeKind::sub: return a - b;
    case NodeKind::mul: return a * b;
    case NodeKind::div: return a / b;
    case NodeKind::pow: return complex_pow(a, b);
    default: return {kNan, kNan};
  }
}

void scope_check(const ExprPtr& e, std::vector<std::string>& scope,
                 const std::set<std::string>& params,
                 std::vector<std::string>& errors,
                 std::vector<std::string>& warnings) {
  switch (e->kind) {
    case NodeKind::literal:
    case NodeKind::constant_ref:
      return;
    case NodeKind::var_ref: {
      for (const std::string& s : scope)
        if (s == e->name) return;
      if (params.count(e->name)) return;
      std::ostringstream os;
      os << "unbound variable '" << e->name << "' at " << e->line << ":"
         << e->col;
      errors.push_back(os.str());
      return;
    }
    case NodeKind::div: {
      scope_check(e->args[0], scope, params, errors, warnings);
      scope_check(e->args[1], scope, params, errors, warnings);
      const Expr& den = *e->args[1];
      if (den.kind == NodeKind::literal && std::abs(den.lit) == 0.0) {
        std::ostringstream os;
        os << "denominator is syntactically zero at " << e->line << ":"
           << e->col;
        warnings.push_back(os.str());
      }
      return;
    }
    case NodeKind::integral:
    case NodeKind::sum:
    case NodeKind::prod: {
      // bounds may reference only outer scopes
      scope_check(e->args[0], scope, params, errors, warnings);
      scope_check(e->args[1], scope, params, errors, warnings);
      scope.push_back(e->name);
      scope_check(e->args[2], scope, params, errors, warnings);
      scope.pop_back();
      return;
    }
    default:
      for (const ExprPtr& a : e->args)
        scope_check(a, scope, params, errors, warnings);
      return;
  }
}

// Coth(u) - 1 and its mirror images become the cancellation-free kernel
// 2/(e^{2u} - 1); the summation design requires this for every
// exponentially-clustered cotangent series
ExprPtr rewrite_coth(const ExprPtr& e);

bool is_coth_call(const ExprPtr& e) {
  return e->kind == NodeKind::call && e->name == "Coth";
}

bool is_one(const ExprPtr& e) {
  return e->kind == NodeKind::literal && e->lit == Cplx(1.0, 0.0);
}

ExprPtr rewrite_coth(const ExprPtr& e) {
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  for (const ExprPtr& a : e->args) args.push_back(rewrite_coth(a));
  if (e->kind == NodeKind::sub) {
    // Coth(u) - 1  ->  __coth_m1(u)
    if (is_coth_call(args[0]) && is_one(args[1])) {
      auto c = std::make_shared<Expr>(*args[0]);
      c->name = "__coth_m1";
      return c;
    }
    // 1 - Coth(u)  ->  -__coth_m1(u)
    if (is_one(args[0]) && is_coth_call(args[1])) {
      auto c = std::make_shared<Expr>(*args[1]);
      c->name = "__coth_m1";
      auto n = std::make_shared<Expr>();
      n->kind = NodeKind::neg;
      n->line = e->line;
      n->col = e->col;
      n->args = {c};
      return n;
    }
  }
  if (e->kind == NodeKind::add) {
    // -1 + Coth(u) and Coth(u) + (-1)
    auto neg_one = [](const ExprPtr& x) {
      return x->kind == NodeKind::neg && is_one(x->args[0]);
    };
    if (is_coth_call(args[0]) && neg_one(args[1])) {
      auto c = std::make_shared<Expr>(*args[0]);
      c->name = "__coth_m1";
      return c;
    }
    if (neg_one(args[0]) && is_coth_call(args[1])) {
      auto c = std::make_shared<Expr>(*args[1]);
      c->name = "__coth_m1";
      return c;
    }
  }
  return clone_with(*e, std::move(args));
}

ExprPtr fold_node(const ExprPtr& e, std::vector<ExprPtr>& args, bool all_lit);

}  // namespace

ExprPtr fold_constants(const ExprPtr& e) {
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  bool all_lit = true;
  for (const ExprPtr& a : e->args) {
    args.push_back(fold_constants(a));
    all_lit = all_lit && args.back()->kind == NodeKind::literal;
  }
  try {
    return fold_node(e, args, all_lit);
  } catch (const std::exception&) {
    // a folding step hit a domain error; leave the node for runtime
    return clone_with(*e, std::move(args));
  }
}

namespace {

ExprPtr fold_node(const ExprPtr& e, std::vector<ExprPtr>& args, bool all_lit) {
  switch (e->kind) {
    case NodeKind::constant_ref: {
      auto lit = std::make_shared<Expr>();
      lit->kind = NodeKind::literal;
      lit->lit = constant_value(e->name);
      lit->line = e->line;
      lit->col = e->col;
      return lit;
    }
    case NodeKind::neg:
      if (all_lit) {
        auto lit = std::make_shared<Expr>(*args[0]);
        lit->lit = -args[0]->lit;
        return lit;
      }
      break;
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul:
    case NodeKind::div:
    case NodeKind::pow:
      if (all_lit) {
        auto lit = std::make_shared<Expr>();
        lit->kind = NodeKind::literal;
        lit->line = e->line;
        lit->col = e->col;
        lit->lit = fold_binary(e->kind, args[0]->lit, args[1]->lit);
        if (is_finite(lit->lit) ||
            std::abs(args[0]->lit) == kInf ||
            std::abs(args[1]->lit) == kInf)
          return lit;
      }
      break;
    case NodeKind::call:
      // a handful of pure elementary functions fold (used by sample values)
      if (all_lit &&
          (e->name == "Sqrt" || e->name == "Exp" || e->name == "Log")) {
        auto lit = std::make_shared<Expr>();
        lit->kind = NodeKind::literal;
        lit->line = e->line;
        lit->col = e->col;
        lit->lit = e->name == "Sqrt"  ? complex_sqrt(args[0]->lit)
                   : e->name == "Exp" ? std::exp(args[0]->lit)
                                      : complex_log(args[0]->lit);
        return lit;
      }
      break;
    default:
      break;
  }
  return clone_with(*e, std::move(args));
}

}  // namespace

ValidationReport validate_expr(const ExprPtr& e,
                               const std::vector<std::string>& params) {
  ValidationReport rep;
  std::set<std::string> pset(params.begin(), params.end());
  std::vector<std::string> scope;
  scope_check(e, scope, pset, rep.errors, rep.warnings);
  return rep;
}

ValidationReport validate(Identity& ident) {
  ValidationReport rep;
  std::set<std::string> pset;
  for (const ParamDecl& p : ident.params) {
    if (!pset.insert(p.name).second)
      rep.errors.push_back("duplicate parameter '" + p.name + "'");
    Cplx cv = constant_value(p.name);
    if (!std::isnan(cv.real()))
      rep.errors.push_back("parameter '" + p.name +
                           "' shadows a built-in constant");
  }
  std::vector<std::string> scope;
  scope_check(ident.lhs, scope, pset, rep.errors, rep.warnings);
  scope_check(ident.rhs, scope, pset, rep.errors, rep.warnings);
  for (const Constraint& c : ident.constraints) {
    scope_check(c.lhs, scope, pset, rep.errors, rep.warnings);
    scope_check(c.rhs, scope, pset, rep.errors, rep.warnings);
  }
  for (const Hint& h : ident.hints) {
    static const std::set<std::string> known = {
        "oscillatory",  "alternating", "branch_sensitive",
        "conditional",  "ambiguous",   "typo_corrected"};
    if (!known.count(h.name))
      rep.errors.push_back("unknown hint '" + h.name + "'");
    if (h.arg) scope_check(h.arg, scope, pset, rep.errors, rep.warnings);
  }
  // samples: bindings must cover the declared parameters exactly and sit in
  // their domains; constraints must hold at every sample
  for (std::size_t si = 0; si < ident.samples.size(); ++si) {
    const SamplePoint& sp = ident.samples[si];
    std::set<std::string> seen;
    for (const auto& [name, value] : sp.bindings) {
      if (!pset.count(name)) {
        rep.errors.push_back("sample binds undeclared parameter '" + name +
                             "'");
        continue;
      }
      seen.insert(name);
      for (const ParamDecl& p : ident.params) {
        if (p.name != name) continue;
        bool ok = true;
        switch (p.kind) {
          case DomainKind::real_interval:
            ok = std::abs(value.imag()) < 1e-12 && value.real() >= p.lo &&
                 value.real() <= p.hi;
            break;
          case DomainKind::int_range:
            ok = std::abs(value.imag()) < 1e-12 &&
                 std::abs(value.real() - std::round(value.real())) < 1e-9 &&
                 value.real() >= p.lo && value.real() <= p.hi;
            break;
          case DomainKind::complex_rect:
            ok = value.real() >= p.lo && value.real() <= p.hi &&
                 value.imag() >= p.im_lo && value.imag() <= p.im_hi;
            break;
        }
        if (!ok) {
          std::ostringstream os;
          os << "sample " << si + 1 << ": value of '" << name
             << "' outside its declared domain";
          rep.errors.push_back(os.str());
        }
      }
    }
    for (const ParamDecl& p : ident.params)
      if (!seen.count(p.name)) {
        std::ostringstream os;
        os << "sample " << si + 1 << " does not bind parameter '" << p.name
           << "'";
        rep.errors.push_back(os.str());
      }
    if (!rep.errors.empty()) continue;
    for (std::size_t ci = 0; ci < ident.constraints.size(); ++ci) {
      const Constraint& c = ident.constraints[ci];
      Bindings b(sp.bindings.begin(), sp.bindings.end());
      EngineConfig cfg;
      try {
        EvalResult l = evaluate(c.lhs, b, cfg);
        EvalResult r = evaluate(c.rhs, b, cfg);
        double scale = std::max({1.0, std::abs(l.value), std::abs(r.value)});
        if (std::abs(l.value - r.value) > 1e-13 * scale) {
          std::ostringstream os;
          os << "sample " << si + 1 << " (" << sp.display
             << ") violates constraint " << ci + 1 << ": |"
             << pretty_print(c.lhs) << " - " << pretty_print(c.rhs)
             << "| = " << std::abs(l.value - r.value);
          rep.errors.push_back(os.str());
        }
      } catch (const std::exception& ex) {
        rep.errors.push_back(std::string("constraint evaluation failed: ") +
                             ex.what());
      }
    }
  }
  if (!rep.ok()) return rep;
  // rewrite and fold once validation passed
  ident.lhs = fold_constants(rewrite_coth(ident.lhs));
  ident.rhs = fold_constants(rewrite_coth(ident.rhs));
  return rep;
}

}  // namespace idv::dsl

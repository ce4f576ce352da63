#include <sstream>

#include "idv/dsl.hpp"

namespace idv::dsl {
namespace {

ExprPtr make(NodeKind k, int line, int col) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->line = line;
  e->col = col;
  return e;
}

ExprPtr make_lit(Cplx v, int line, int col) {
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::literal;
  e->lit = v;
  e->line = line;
  e->col = col;
  return e;
}

class Parser {
public:
  Parser(std::vector<Token> toks, std::string file)
      : toks_(std::move(toks)), file_(std::move(file)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& get() { return toks_[pos_++]; }

  bool at_punct(const char* s) const {
    return peek().kind == TokKind::punct && peek().text == s;
  }
  bool at_op(const char* s) const {
    return peek().kind == TokKind::op && peek().text == s;
  }
  bool at_keyword(const char* s) const {
    return peek().kind == TokKind::keyword && peek().text == s;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw parse_error("expected " + expected + ", found '" +
                          (t.kind == TokKind::eof ? "<eof>" : t.text) + "'",
                      t.line, t.col);
  }

  void expect_punct(const char* s) {
    if (!at_punct(s)) fail(std::string("'") + s + "'");
    get();
  }

  std::string expect_ident() {
    if (peek().kind != TokKind::ident) fail("identifier");
    return get().text;
  }

  std::string expect_string() {
    if (peek().kind != TokKind::string) fail("string literal");
    return get().text;
  }

  // expr := addsub
  ExprPtr parse_expr() { return parse_addsub(); }

  ExprPtr parse_addsub() {
    ExprPtr left = parse_muldiv();
    while (at_op("+") || at_op("-")) {
      bool plus = peek().text == "+";
      const Token& t = get();
      ExprPtr right = parse_muldiv();
      auto e = make(plus ? NodeKind::add : NodeKind::sub, t.line, t.col);
      const_cast<Expr*>(e.get())->args = {left, right};
      left = e;
    }
    return left;
  }

  ExprPtr parse_muldiv() {
    ExprPtr left = parse_unary();
    while (at_op("*") || at_op("/")) {
      bool mul = peek().text == "*";
      const Token& t = get();
      ExprPtr right = parse_unary();
      auto e = make(mul ? NodeKind::mul : NodeKind::div, t.line, t.col);
      const_cast<Expr*>(e.get())->args = {left, right};
      left = e;
    }
    return left;
  }

  // unary minus binds looser than ^
  ExprPtr parse_unary() {
    if (at_op("-")) {
      const Token& t = get();
      ExprPtr inner = parse_unary();
      auto e = make(NodeKind::neg, t.line, t.col);
      const_cast<Expr*>(e.get())->args = {inner};
      return e;
    }
    return parse_pow();
  }

  ExprPtr parse_pow() {
    ExprPtr base = parse_primary();
    if (at_op("^")) {
      const Token& t = get();
      ExprPtr exp = parse_unary();  // right-assoc, exponent may be signed
      auto e = make(NodeKind::pow, t.line, t.col);
      const_cast<Expr*>(e.get())->args = {base, exp};
      return e;
    }
    return base;
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    if (t.kind == TokKind::number) {
      get();
      return make_lit(Cplx(t.num, 0.0), t.line, t.col);
    }
    if (at_punct("(")) {
      get();
      ExprPtr inner = parse_expr();
      expect_punct(")");
      return inner;
    }
    if (t.kind == TokKind::ident) {
      std::string name = get().text;
      if (name == "Integral" || name == "Sum" || name == "Prod")
        return parse_quantifier(name, t.line, t.col);
      if (at_punct("(")) return parse_call(name, t.line, t.col);
      bool is_const = name == "pi" || name == "I" || name == "inf" ||
                      name == "EulerGamma" || name == "Catalan" ||
                      name == "Glaisher";
      auto e = make(is_const ? NodeKind::constant_ref : NodeKind::var_ref,
                    t.line, t.col);
      const_cast<Expr*>(e.get())->name = name;
      return e;
    }
    fail("expression");
  }

  ExprPtr parse_quantifier(const std::string& which, int line, int col) {
    expect_punct("(");
    std::string var = expect_ident();
    expect_punct(",");
    ExprPtr lo = parse_expr();
    expect_punct(",");
    ExprPtr hi = parse_expr();
    expect_punct(",");
    ExprPtr body = parse_expr();
    expect_punct(")");
    NodeKind k = which == "Integral" ? NodeKind::integral
                 : which == "Sum"    ? NodeKind::sum
                                     : NodeKind::prod;
    auto e = make(k, line, col);
    Expr* w = const_cast<Expr*>(e.get());
    w->name = var;
    w->args = {lo, hi, body};
    return e;
  }

  ExprPtr parse_call(const std::string& name, int line, int col) {
    const auto& table = function_table();
    auto it = table.find(name);
    if (it == table.end())
      throw parse_error("unknown function '" + name + "'", line, col);
    expect_punct("(");
    std::vector<ExprPtr> args;
    if (!at_punct(")")) {
      args.push_back(parse_expr());
      while (at_punct(",")) {
        get();
        args.push_back(parse_expr());
      }
    }
    expect_punct(")");
    int n = static_cast<int>(args.size());
    if (n < it->second.first || n > it->second.second) {
      std::ostringstream os;
      os << name << " expects ";
      if (it->second.first == it->second.second)
        os << it->second.first;
      else
        os << it->second.first << " to " << it->second.second;
      os << " arguments, got " << n;
      throw parse_error(os.str(), line, col);
    }
    auto e = make(NodeKind::call, line, col);
    Expr* w = const_cast<Expr*>(e.get());
    w->name = name;
    w->args = std::move(args);
    return e;
  }

  // ------------------------------------------------------------------
  // identity blocks

  std::vector<Identity> parse_file() {
    std::vector<Identity> out;
    while (peek().kind != TokKind::eof) out.push_back(parse_identity());
    if (out.empty())
      throw parse_error("file contains no identity blocks", 1, 1);
    return out;
  }

  Identity parse_identity() {
    if (!at_keyword("identity")) fail("'identity'");
    const Token& head = get();
    Identity id;
    id.file = file_;
    id.line = head.line;
    id.id = expect_string();
    expect_punct("{");
    while (at_keyword("param")) {
      get();
      ParamDecl p;
      p.name = expect_ident();
      if (!at_keyword("in")) fail("'in'");
      get();
      std::string dom = expect_ident();
      expect_punct("(");
      std::vector<double> nums;
      nums.push_back(parse_signed_number());
      while (at_punct(",")) {
        get();
        nums.push_back(parse_signed_number());
      }
      expect_punct(")");
      if (dom == "Real" && nums.size() == 2) {
        p.kind = DomainKind::real_interval;
        p.lo = nums[0];
        p.hi = nums[1];
      } else if (dom == "Int" && nums.size() == 2) {
        p.kind = DomainKind::int_range;
        p.lo = nums[0];
        p.hi = nums[1];
      } else if (dom == "Complex" && nums.size() == 4) {
        p.kind = DomainKind::complex_rect;
        p.lo = nums[0];
        p.hi = nums[1];
        p.im_lo = nums[2];
        p.im_hi = nums[3];
      } else {
        throw parse_error("bad domain '" + dom + "'", head.line, head.col);
      }
      expect_punct(";");
      id.params.push_back(std::move(p));
    }
    while (at_keyword("constraint")) {
      get();
      Constraint c;
      c.lhs = parse_expr();
      expect_punct("=");
      c.rhs = parse_expr();
      expect_punct(";");
      id.constraints.push_back(std::move(c));
    }
    while (at_keyword("hint")) {
      get();
      Hint h;
      h.name = expect_ident();
      if (at_punct("(")) {
        get();
        h.arg = parse_expr();
        expect_punct(")");
      }
      expect_punct(";");
      id.hints.push_back(std::move(h));
    }
    if (at_keyword("note")) {
      get();
      id.note = expect_string();
      expect_punct(";");
    }
    if (!at_keyword("lhs")) fail("'lhs'");
    get();
    expect_punct("=");
    id.lhs = parse_expr();
    expect_punct(";");
    if (!at_keyword("rhs")) fail("'rhs'");
    get();
    expect_punct("=");
    id.rhs = parse_expr();
    expect_punct(";");
    while (at_keyword("sample")) {
      const Token& st = get();
      SamplePoint sp;
      std::ostringstream disp;
      bool first = true;
      while (true) {
        std::string pname = expect_ident();
        expect_punct("=");
        ExprPtr v = parse_expr();
        ExprPtr folded = fold_constants(v);
        if (folded->kind != NodeKind::literal)
          throw parse_error("sample value for '" + pname +
                                "' is not a constant expression",
                            st.line, st.col);
        if (!first) disp << ", ";
        disp << pname << "=" << pretty_print(folded);
        sp.bindings.emplace_back(pname, folded->lit);
        first = false;
        if (at_punct(",")) {
          get();
          continue;
        }
        break;
      }
      expect_punct(";");
      sp.display = disp.str();
      id.samples.push_back(std::move(sp));
    }
    if (at_keyword("status")) {
      get();
      std::string s = expect_ident();
      if (s == "verify")
        id.expected = ExpectedStatus::verify;
      else if (s == "ambiguous")
        id.expected = ExpectedStatus::ambiguous;
      else if (s == "known_discrepancy")
        id.expected = ExpectedStatus::known_discrepancy;
      else
        fail("status verify|ambiguous|known_discrepancy");
      expect_punct(";");
    }
    expect_punct("}");
    if (id.samples.empty())
      throw parse_error("identity '" + id.id + "' has no sample points",
                        head.line, head.col);
    return id;
  }

  double parse_signed_number() {
    double sign = 1.0;
    while (at_op("-") || at_op("+")) {
      if (get().text == "-") sign = -sign;
    }
    if (peek().kind == TokKind::number) return sign * get().num;
    if (peek().kind == TokKind::ident && peek().text == "inf") {
      get();
      return sign * kInf;
    }
    fail("number");
  }

private:
  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;
};

}  // namespace

const std::map<std::string, std::pair<int, int>>& function_table() {
  static const std::map<std::string, std::pair<int, int>> table = {
      {"Gamma", {1, 1}},        {"GammaInc", {2, 2}},
      {"HurwitzZeta", {2, 3}},  {"HurwitzZetaDs", {2, 2}},
      {"LerchPhi", {3, 4}},     {"LerchPhiDs", {3, 3}},
      {"StieltjesGamma", {2, 2}}, {"PolyGamma", {2, 2}},
      {"QDigamma", {2, 2}},     {"QPochhammer", {3, 3}},
      {"Hyp1F1", {3, 3}},       {"Hyp2F1", {4, 4}},
      {"Hyp3F3", {7, 7}},       {"LaguerreL", {3, 3}},
      {"GegenbauerC", {3, 3}},  {"EulerE", {2, 2}},
      {"BesselJ", {2, 2}},      {"BetaInc", {3, 3}},
      {"ExpIntE", {2, 2}},      {"Ei", {1, 1}},
      {"PolyLog", {2, 3}},      {"PolyLogDs", {2, 2}},
      {"Gd", {1, 1}},           {"Log", {1, 1}},
      {"Exp", {1, 1}},          {"Sin", {1, 1}},
      {"Cos", {1, 1}},          {"Tan", {1, 1}},
      {"Cot", {1, 1}},          {"Sec", {1, 1}},
      {"Csc", {1, 1}},          {"Sinh", {1, 1}},
      {"Cosh", {1, 1}},         {"Tanh", {1, 1}},
      {"Coth", {1, 1}},         {"Sech", {1, 1}},
      {"Csch", {1, 1}},         {"ArcTan", {1, 1}},
      {"ArcTanh", {1, 1}},      {"Sqrt", {1, 1}},
      {"Abs", {1, 1}},          {"Conj", {1, 1}},
      {"Re", {1, 1}},           {"Im", {1, 1}},
      {"Floor", {1, 1}},        {"Harmonic", {1, 1}},
      {"__coth_m1", {1, 1}},  // internal, produced by the validator rewrite
  };
  return table;
}

ExprPtr parse_expression(const std::string& text) {
  Parser p(tokenize(text), "<expr>");
  ExprPtr e = p.parse_expr();
  if (p.peek().kind != TokKind::eof)
    throw parse_error("trailing input after expression", p.peek().line,
                      p.peek().col);
  return e;
}

std::vector<Identity> parse_identities(const std::string& text,
                                       const std::string& filename) {
  Parser p(tokenize(text), filename);
  return p.parse_file();
}

bool Identity::has_hint(const std::string& name) const {
  for (const Hint& h : hints)
    if (h.name == name) return true;
  return false;
}

// ---------------------------------------------------------------------------
// printing and structural comparison

namespace {

void print_rec(const ExprPtr& e, std::ostream& os) {
  switch (e->kind) {
    case NodeKind::literal: {
      double re = e->lit.real(), im = e->lit.imag();
      os << "(";
      os.precision(17);
      if (im == 0.0) {
        if (re == kInf)
          os << "inf";
        else if (re == -kInf)
          os << "(-inf)";
        else
          os << re;
      } else {
        os << "(" << re << ")+(" << im << ")*I";
      }
      os << ")";
      return;
    }
    case NodeKind::constant_ref:
    case NodeKind::var_ref:
      os << e->name;
      return;
    case NodeKind::neg:
      os << "(-";
      print_rec(e->args[0], os);
      os << ")";
      return;
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul:
    case NodeKind::div:
    case NodeKind::pow: {
      const char* opc = e->kind == NodeKind::add   ? "+"
                        : e->kind == NodeKind::sub ? "-"
                        : e->kind == NodeKind::mul ? "*"
                        : e->kind == NodeKind::div ? "/"
                                                   : "^";
      os << "(";
      print_rec(e->args[0], os);
      os << opc;
      print_rec(e->args[1], os);
      os << ")";
      return;
    }
    case NodeKind::call: {
      os << e->name << "(";
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        if (i) os << ",";
        print_rec(e->args[i], os);
      }
      os << ")";
      return;
    }
    case NodeKind::integral:
    case NodeKind::sum:
    case NodeKind::prod: {
      os << (e->kind == NodeKind::integral ? "Integral"
             : e->kind == NodeKind::sum    ? "Sum"
                                           : "Prod");
      os << "(" << e->name << ",";
      print_rec(e->args[0], os);
      os << ",";
      print_rec(e->args[1], os);
      os << ",";
      print_rec(e->args[2], os);
      os << ")";
      return;
    }
  }
}

}  // namespace

std::string pretty_print(const ExprPtr& e) {
  std::ostringstream os;
  print_rec(e, os);
  return os.str();
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind) return false;
  if (a->kind == NodeKind::literal) {
    // exact; negative zero counts as zero
    return a->lit.real() == b->lit.real() && a->lit.imag() == b->lit.imag();
  }
  if (a->name != b->name) return false;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  return true;
}

}  // namespace idv::dsl

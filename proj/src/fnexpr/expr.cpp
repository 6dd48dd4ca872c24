#include "fnexpr/expr.hpp"

#include <atomic>
#include <cctype>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "numeric/error.hpp"

namespace pfc {

Expr derive(Expr e, int var);

namespace {

size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

size_t hash_q(const Rational& q) {
  size_t h = mpz_size(q.get_num_mpz_t()) ? mpz_getlimbn(q.get_num_mpz_t(), 0) : 0;
  h = mix(h, static_cast<size_t>(mpz_sgn(q.get_num_mpz_t()) + 1));
  h = mix(h, mpz_getlimbn(q.get_den_mpz_t(), 0));
  return mix(h, mpz_size(q.get_num_mpz_t()));
}

bool same_branch(const InverseBranch* a, const InverseBranch* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->f == b->f && a->var == b->var && a->lo == b->lo && a->hi == b->hi &&
         a->increasing == b->increasing;
}

bool same(const Node& x, const Node& y) {
  return x.op == y.op && x.a == y.a && x.b == y.b && x.n == y.n && x.value == y.value &&
         same_branch(x.inv, y.inv);
}

class InternTable {
 public:
  Expr intern(Node proto) {
    size_t h = mix(static_cast<size_t>(proto.op), reinterpret_cast<size_t>(proto.a));
    h = mix(h, reinterpret_cast<size_t>(proto.b));
    h = mix(h, static_cast<size_t>(proto.n));
    if (proto.op == Op::Const) h = mix(h, hash_q(proto.value));
    if (proto.inv) {
      h = mix(h, reinterpret_cast<size_t>(proto.inv->f));
      h = mix(h, hash_q(proto.inv->lo));
      h = mix(h, hash_q(proto.inv->hi));
    }
    proto.hash = h;
    std::lock_guard<std::mutex> lock(mu_);
    auto& bucket = table_[h];
    for (Node* n : bucket)
      if (same(*n, proto)) return n;
    Node* n = new Node(std::move(proto));
    n->id = next_id_++;
    bucket.push_back(n);
    return n;
  }

  const InverseBranch* intern_branch(InverseBranch br) {
    std::lock_guard<std::mutex> lock(mu_);
    for (auto* b : branches_)
      if (same_branch(b, &br)) return b;
    auto* b = new InverseBranch(std::move(br));
    branches_.push_back(b);
    return b;
  }

  size_t size() {
    std::lock_guard<std::mutex> lock(mu_);
    return next_id_;
  }

 private:
  std::mutex mu_;
  std::unordered_map<size_t, std::vector<Node*>> table_;
  std::vector<InverseBranch*> branches_;
  uint64_t next_id_ = 0;
};

InternTable& table() {
  static InternTable* t = new InternTable();
  return *t;
}

Expr make(Op op, Expr a = nullptr, Expr b = nullptr, long n = 0) {
  Node p;
  p.op = op;
  p.a = a;
  p.b = b;
  p.n = n;
  return table().intern(std::move(p));
}

// Exact q^(p/r) when it is rational.
std::optional<Rational> rational_power(const Rational& base, const Rational& e) {
  if (e.get_den() == 1) {
    if (!e.get_num().fits_slong_p()) return std::nullopt;
    long k = e.get_num().get_si();
    if (base == 0 && k < 0) return std::nullopt;
    return pow_q(base, k);
  }
  if (base == 1) return Rational(1);
  if (base == 0) return e > 0 ? std::optional<Rational>(Rational(0)) : std::nullopt;
  if (base < 0) return std::nullopt;
  if (!e.get_den().fits_ulong_p() || !e.get_num().fits_slong_p()) return std::nullopt;
  unsigned long root = e.get_den().get_ui();
  BigInt rn, rd;
  if (!mpz_root(rn.get_mpz_t(), base.get_num_mpz_t(), root)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), base.get_den_mpz_t(), root)) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  return pow_q(r, e.get_num().get_si());
}

}  // namespace

std::optional<Rational> exact_rational_power(const Rational& base, const Rational& e) {
  return rational_power(base, e);
}

namespace ex {

Expr constant(const Rational& q) {
  Node p;
  p.op = Op::Const;
  p.value = q;
  p.value.canonicalize();
  return table().intern(std::move(p));
}

Expr constant(long v) { return constant(Rational(v)); }

Expr var(int index) {
  if (index < 0) fail(ErrorCode::InvalidArgument, "negative variable index");
  return make(Op::Var, nullptr, nullptr, index);
}

bool is_const(Expr e) { return e->op == Op::Const; }
bool is_const(Expr e, const Rational& q) { return e->op == Op::Const && e->value == q; }

Expr add(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) return constant(a->value + b->value);
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  if (b->op == Op::Neg) return sub(a, b->a);
  if (a->op == Op::Neg) return sub(b, a->a);
  return make(Op::Add, a, b);
}

Expr sub(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) return constant(a->value - b->value);
  if (is_const(b, 0)) return a;
  if (a == b) return constant(0L);
  if (is_const(a, 0)) return neg(b);
  if (b->op == Op::Neg) return add(a, b->a);
  return make(Op::Sub, a, b);
}

Expr mul(Expr a, Expr b) {
  if (is_const(b) && !is_const(a)) std::swap(a, b);
  if (is_const(a) && is_const(b)) return constant(a->value * b->value);
  if (is_const(a, 0)) return a;
  if (is_const(a, 1)) return b;
  if (is_const(a, -1)) return neg(b);
  if (is_const(a) && b->op == Op::Mul && is_const(b->a)) return mul(constant(a->value * b->a->value), b->b);
  if (is_const(a) && b->op == Op::Neg) return mul(constant(-a->value), b->a);
  return make(Op::Mul, a, b);
}

Expr div(Expr a, Expr b) {
  if (is_const(b, 0)) fail(ErrorCode::Domain, "division by constant zero");
  if (is_const(a) && is_const(b)) return constant(a->value / b->value);
  if (is_const(a, 0)) return a;
  if (is_const(b, 1)) return a;
  if (is_const(b)) return mul(constant(1 / b->value), a);
  if (a == b) return constant(1L);
  return make(Op::Div, a, b);
}

Expr neg(Expr a) {
  if (is_const(a)) return constant(-a->value);
  if (a->op == Op::Neg) return a->a;
  if (a->op == Op::Sub) return sub(a->b, a->a);
  if (a->op == Op::Mul && is_const(a->a)) return mul(constant(-a->a->value), a->b);
  return make(Op::Neg, a);
}

Expr exp(Expr a) {
  if (is_const(a, 0)) return constant(1L);
  return make(Op::Exp, a);
}

Expr log(Expr a) {
  if (is_const(a)) {
    if (a->value <= 0) fail(ErrorCode::Domain, "log of a nonpositive constant");
    if (a->value == 1) return constant(0L);
  }
  return make(Op::Log, a);
}

Expr sin(Expr a) {
  if (is_const(a, 0)) return constant(0L);
  return make(Op::Sin, a);
}

Expr cos(Expr a) {
  if (is_const(a, 0)) return constant(1L);
  return make(Op::Cos, a);
}

Expr pow_int(Expr a, long n) {
  if (n == 0) return constant(1L);
  if (n == 1) return a;
  if (is_const(a)) {
    if (a->value == 0 && n < 0) fail(ErrorCode::Domain, "negative power of constant zero");
    return constant(pow_q(a->value, n));
  }
  if (a->op == Op::PowInt) return pow_int(a->a, a->n * n);
  return make(Op::PowInt, a, nullptr, n);
}

Expr pow(Expr a, Expr b) {
  if (is_const(b) && b->value.get_den() == 1 && b->value.get_num().fits_slong_p())
    return pow_int(a, b->value.get_num().get_si());
  if (is_const(a, 1)) return constant(1L);
  if (is_const(a) && a->value <= 0) fail(ErrorCode::Domain, "pow with a nonpositive constant base");
  if (is_const(a) && is_const(b)) {
    if (auto r = rational_power(a->value, b->value)) return constant(*r);
  }
  return make(Op::Pow, a, b);
}

Expr inverse(Expr f, int var, const Rational& lo, const Rational& hi, bool increasing, Expr arg) {
  if (f == ex::var(var)) return arg;
  if (lo >= hi) fail(ErrorCode::InvalidArgument, "inverse branch must be a nondegenerate interval");
  InverseBranch br{f, nullptr, var, lo, hi, increasing};
  br.df = pfc::derive(f, var);
  Node p;
  p.op = Op::Inv;
  p.a = arg;
  p.inv = table().intern_branch(std::move(br));
  return table().intern(std::move(p));
}

}  // namespace ex

int arity(Expr e) {
  std::unordered_set<Expr> seen;
  int best = 0;
  std::function<void(Expr)> walk = [&](Expr n) {
    if (!n || !seen.insert(n).second) return;
    if (n->op == Op::Var) best = std::max(best, static_cast<int>(n->n) + 1);
    walk(n->a);
    walk(n->b);
  };
  walk(e);
  return best;
}

bool depends_on(Expr e, int var) {
  std::unordered_set<Expr> seen;
  std::function<bool(Expr)> walk = [&](Expr n) -> bool {
    if (!n || !seen.insert(n).second) return false;
    if (n->op == Op::Var) return n->n == var;
    return walk(n->a) || walk(n->b);
  };
  return walk(e);
}

size_t dag_size(Expr e) {
  std::unordered_set<Expr> seen;
  std::function<void(Expr)> walk = [&](Expr n) {
    if (!n || !seen.insert(n).second) return;
    walk(n->a);
    walk(n->b);
    if (n->inv) {
      walk(n->inv->f);
    }
  };
  walk(e);
  return seen.size();
}

size_t interned_count() { return table().size(); }

namespace {

std::string var_name(long i) {
  static const char* names[] = {"x", "y", "z"};
  if (i < 3) return names[i];
  return "x" + std::to_string(i + 1);
}

int prec_of(Expr e) {
  switch (e->op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::PowInt:
    case Op::Pow:
      return 4;
    case Op::Const:
      if (e->value < 0) return 3;
      if (e->value.get_den() != 1) return 2;
      return 5;
    default:
      return 5;
  }
}

std::string print(Expr e, int parent) {
  std::string s;
  switch (e->op) {
    case Op::Const:
      s = e->value.get_str();
      break;
    case Op::Var:
      s = var_name(e->n);
      break;
    case Op::Add:
      s = print(e->a, 1) + " + " + print(e->b, 1);
      break;
    case Op::Sub:
      s = print(e->a, 1) + " - " + print(e->b, 2);
      break;
    case Op::Mul:
      s = print(e->a, 2) + "*" + print(e->b, 2);
      break;
    case Op::Div:
      s = print(e->a, 2) + "/" + print(e->b, 3);
      break;
    case Op::Neg:
      s = "-" + print(e->a, 3);
      break;
    case Op::PowInt:
      s = print(e->a, 5) + "^" + (e->n < 0 ? "(" + std::to_string(e->n) + ")" : std::to_string(e->n));
      break;
    case Op::Pow:
      s = print(e->a, 5) + "^" + print(e->b, 5);
      break;
    case Op::Exp:
      s = "exp(" + print(e->a, 0) + ")";
      break;
    case Op::Log:
      s = "log(" + print(e->a, 0) + ")";
      break;
    case Op::Sin:
      s = "sin(" + print(e->a, 0) + ")";
      break;
    case Op::Cos:
      s = "cos(" + print(e->a, 0) + ")";
      break;
    case Op::Inv:
      s = "inv[" + print(e->inv->f, 0) + "; " + e->inv->lo.get_str() + ", " + e->inv->hi.get_str() +
          "](" + print(e->a, 0) + ")";
      break;
  }
  if (prec_of(e) < parent) return "(" + s + ")";
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : t_(text) {}

  Expr run() {
    Expr e = parse_sum();
    skip_ws();
    if (pos_ != t_.size()) err("unexpected '" + std::string(1, t_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void err(const std::string& msg) {
    fail(ErrorCode::Parse, "expression '" + std::string(t_) + "': " + msg + " at offset " + std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < t_.size() && t_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat_pow() {
    skip_ws();
    if (pos_ < t_.size() && t_[pos_] == '^') {
      ++pos_;
      return true;
    }
    if (pos_ + 1 < t_.size() && t_[pos_] == '*' && t_[pos_ + 1] == '*') {
      pos_ += 2;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    Expr e = parse_product();
    for (;;) {
      if (eat('+'))
        e = ex::add(e, parse_product());
      else if (eat('-'))
        e = ex::sub(e, parse_product());
      else
        return e;
    }
  }

  Expr parse_product() {
    Expr e = parse_unary();
    for (;;) {
      skip_ws();
      if (pos_ + 1 < t_.size() && t_[pos_] == '*' && t_[pos_ + 1] == '*') return e;
      if (eat('*'))
        e = ex::mul(e, parse_unary());
      else if (eat('/'))
        e = ex::div(e, parse_unary());
      else
        return e;
    }
  }

  Expr parse_unary() {
    if (eat('-')) return ex::neg(parse_unary());
    if (eat('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (eat_pow()) {
      Expr e = parse_unary_power();
      return ex::pow(base, e);
    }
    return base;
  }

  // exponent: allows a leading sign, right associative
  Expr parse_unary_power() {
    if (eat('-')) return ex::neg(parse_unary_power());
    if (eat('+')) return parse_unary_power();
    return parse_power();
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= t_.size()) err("unexpected end of input");
    char c = t_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_sum();
      if (!eat(')')) err("expected ')'");
      return e;
    }
    if (c == '~' || std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      if (c == '~') ++pos_;
      while (pos_ < t_.size() && (std::isdigit(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '.')) ++pos_;
      if (pos_ < t_.size() && (t_[pos_] == 'e' || t_[pos_] == 'E') && t_[start] == '~') {
        ++pos_;
        if (pos_ < t_.size() && (t_[pos_] == '+' || t_[pos_] == '-')) ++pos_;
        while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
      }
      return ex::constant(parse_rational(t_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '_')) ++pos_;
      std::string id(t_.substr(start, pos_ - start));
      if (eat('(')) {
        Expr arg = parse_sum();
        if (!eat(')')) err("expected ')' after argument of " + id);
        if (id == "exp") return ex::exp(arg);
        if (id == "log" || id == "ln") return ex::log(arg);
        if (id == "sin") return ex::sin(arg);
        if (id == "cos") return ex::cos(arg);
        if (id == "sqrt") return ex::pow(arg, ex::constant(Rational(1, 2)));
        pos_ = start;
        err("unknown function '" + id + "'");
      }
      if (id == "x") return ex::var(0);
      if (id == "y") return ex::var(1);
      if (id == "z") return ex::var(2);
      if (id.size() > 1 && id[0] == 'x') {
        bool digits = true;
        for (size_t i = 1; i < id.size(); ++i) digits &= std::isdigit(static_cast<unsigned char>(id[i])) != 0;
        if (digits) {
          int k = std::stoi(id.substr(1));
          if (k >= 1) return ex::var(k - 1);
        }
      }
      pos_ = start;
      err("unknown identifier '" + id + "'");
    }
    err("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view t_;
  size_t pos_ = 0;
};

}  // namespace

std::string to_string(Expr e) { return print(e, 0); }

Expr parse_expr(std::string_view text) { return Parser(text).run(); }

}  // namespace pfc

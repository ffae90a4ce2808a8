#include "g235/expr.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <set>
#include <unordered_set>

#include "g235/errors.hpp"
#include "node.hpp"

namespace g235 {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_rational(const Rational& q) {
  std::size_t h = std::hash<long>{}(mpz_get_si(q.get_num_mpz_t()));
  h = mix(h, std::hash<long>{}(mpz_get_si(q.get_den_mpz_t())));
  h = mix(h, mpz_size(q.get_num_mpz_t()));
  return h;
}

std::shared_ptr<detail::Node> new_node(Op op) {
  auto n = std::make_shared<detail::Node>();
  n->op = op;
  return n;
}

void finish_hash(detail::Node& n) {
  std::size_t h = static_cast<std::size_t>(n.op) * 0x100000001b3ULL;
  switch (n.op) {
    case Op::Const: h = mix(h, hash_rational(n.value)); break;
    case Op::Var: h = mix(h, static_cast<std::size_t>(n.index)); break;
    case Op::Pow: h = mix(h, static_cast<std::size_t>(n.exponent + 1000003)); break;
    case Op::Func: h = mix(h, static_cast<std::size_t>(n.fn) + 17); break;
    default: break;
  }
  for (const auto& a : n.args) h = mix(h, a.hash());
  n.hash = h;
}

bool shallow_equal(const detail::Node& a, const detail::Node& b) {
  if (a.op != b.op || a.hash != b.hash || a.args.size() != b.args.size()) return false;
  switch (a.op) {
    case Op::Const:
      if (a.value != b.value) return false;
      break;
    case Op::Var:
      if (a.index != b.index) return false;
      break;
    case Op::Pow:
      if (a.exponent != b.exponent) return false;
      break;
    case Op::Func:
      if (a.fn != b.fn) return false;
      break;
    default: break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (a.args[i].id() != b.args[i].id()) return false;
  }
  return true;
}

// Hash-consing: structurally equal nodes are one node, so every memo table
// keyed by node identity also hits on independently rebuilt subexpressions.
class InternTable {
 public:
  std::shared_ptr<const detail::Node> intern(std::shared_ptr<detail::Node> n) {
    finish_hash(*n);
    std::lock_guard<std::mutex> lock(mutex_);
    auto range = table_.equal_range(n->hash);
    for (auto it = range.first; it != range.second;) {
      if (auto live = it->second.lock()) {
        if (shallow_equal(*live, *n)) return live;
        ++it;
      } else {
        it = table_.erase(it);
      }
    }
    table_.emplace(n->hash, n);
    if (table_.size() > sweep_at_) sweep();
    return n;
  }

 private:
  void sweep() {
    for (auto it = table_.begin(); it != table_.end();) {
      if (it->second.expired()) it = table_.erase(it);
      else ++it;
    }
    sweep_at_ = std::max<std::size_t>(1u << 16, 2 * table_.size());
  }

  std::mutex mutex_;
  std::unordered_multimap<std::size_t, std::weak_ptr<const detail::Node>> table_;
  std::size_t sweep_at_ = 1u << 16;
};

std::shared_ptr<const detail::Node> intern(std::shared_ptr<detail::Node> n) {
  static InternTable* table = new InternTable;  // outlives every static Expr
  return table->intern(std::move(n));
}

const Expr& zero_expr() {
  static const Expr z{Rational(0)};
  return z;
}

}  // namespace

// --- Chart ------------------------------------------------------------------

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c); });
}

Chart::Chart(std::vector<std::string> names) {
  if (names.size() != kDim) {
    throw InvariantViolation("a chart needs exactly 5 coordinate names, got " +
                             std::to_string(names.size()));
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& n = names[i];
    if (!is_identifier(n)) throw InvariantViolation("invalid coordinate name '" + n + "'");
    for (auto f : {Fn::Sin, Fn::Cos, Fn::Exp, Fn::Ln, Fn::Sqrt}) {
      if (n == function_name(f)) throw InvariantViolation("coordinate name '" + n + "' is a function name");
    }
    if (!seen.insert(n).second) throw InvariantViolation("duplicate coordinate name '" + n + "'");
    names_[i] = n;
  }
}

Chart::Chart() : names_{"x", "y", "p", "q", "z"} {}

Chart Chart::monge() { return Chart({"x", "y", "p", "q", "z"}); }

int Chart::index_of(std::string_view name) const {
  for (int i = 0; i < kDim; ++i) {
    if (names_[static_cast<std::size_t>(i)] == name) return i;
  }
  return -1;
}

std::string_view function_name(Fn f) {
  switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Exp: return "exp";
    case Fn::Ln: return "ln";
    case Fn::Sqrt: return "sqrt";
  }
  return "?";
}

// --- raw nodes --------------------------------------------------------------

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(int v) : Expr(Rational(v)) {}
Expr::Expr(long v) : Expr(Rational(v)) {}

Expr::Expr(const Rational& v) {
  auto n = new_node(Op::Const);
  n->value = v;
  n->value.canonicalize();
  node_ = intern(std::move(n));
}

Expr Expr::var(int index) {
  if (index < 0 || index >= kDim) throw ChartMismatch("coordinate index out of range");
  auto n = new_node(Op::Var);
  n->index = index;
  return Expr(intern(std::move(n)));
}

Expr Expr::make_add(std::vector<Expr> terms) {
  if (terms.empty()) return Expr();
  if (terms.size() == 1) return terms.front();
  auto n = new_node(Op::Add);
  n->args = std::move(terms);
  return Expr(intern(std::move(n)));
}

Expr Expr::make_mul(std::vector<Expr> factors) {
  if (factors.empty()) return Expr(1);
  if (factors.size() == 1) return factors.front();
  auto n = new_node(Op::Mul);
  n->args = std::move(factors);
  return Expr(intern(std::move(n)));
}

Expr Expr::make_neg(Expr e) {
  auto n = new_node(Op::Neg);
  n->args = {std::move(e)};
  return Expr(intern(std::move(n)));
}

Expr Expr::make_div(Expr num, Expr den) {
  if (den.is_zero()) throw DomainError("division by the literal constant 0");
  auto n = new_node(Op::Div);
  n->args = {std::move(num), std::move(den)};
  return Expr(intern(std::move(n)));
}

Expr Expr::make_pow(Expr base, int exponent) {
  auto n = new_node(Op::Pow);
  n->exponent = exponent;
  n->args = {std::move(base)};
  return Expr(intern(std::move(n)));
}

Expr Expr::make_func(Fn f, Expr arg) {
  auto n = new_node(Op::Func);
  n->fn = f;
  n->args = {std::move(arg)};
  return Expr(intern(std::move(n)));
}

Op Expr::op() const { return node_->op; }
const Rational& Expr::value() const { return node_->value; }
int Expr::index() const { return node_->index; }
int Expr::exponent() const { return node_->exponent; }
Fn Expr::fn() const { return node_->fn; }
std::span<const Expr> Expr::args() const { return node_->args; }
std::size_t Expr::hash() const { return node_->hash; }
bool Expr::is_zero() const { return node_->op == Op::Const && sgn(node_->value) == 0; }
bool Expr::is_one() const { return node_->op == Op::Const && node_->value == 1; }

bool same(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return true;
  if (a.hash() != b.hash() || a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Const: return a.value() == b.value();
    case Op::Var: return a.index() == b.index();
    case Op::Pow:
      if (a.exponent() != b.exponent()) return false;
      break;
    case Op::Func:
      if (a.fn() != b.fn()) return false;
      break;
    default: break;
  }
  auto aa = a.args();
  auto ba = b.args();
  if (aa.size() != ba.size()) return false;
  for (std::size_t i = 0; i < aa.size(); ++i) {
    if (!same(aa[i], ba[i])) return false;
  }
  return true;
}

// --- folding arithmetic -------------------------------------------------------

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_const() && b.is_const()) return Expr(Rational(a.value() + b.value()));
  if (b.op() == Op::Neg && b.arg(0).id() == a.id()) return Expr();
  if (a.op() == Op::Neg && a.arg(0).id() == b.id()) return Expr();
  return Expr::make_add({a, b});
}

Expr operator-(const Expr& a) {
  if (a.is_const()) return Expr(Rational(-a.value()));
  if (a.op() == Op::Neg) return a.arg(0);
  return Expr::make_neg(a);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.id() == b.id()) return Expr();
  if (a.is_const() && b.is_const()) return Expr(Rational(a.value() - b.value()));
  return Expr::make_add({a, -b});
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_const() && b.is_const()) return Expr(Rational(a.value() * b.value()));
  if (a.is_const() && a.value() == -1) return -b;
  if (b.is_const() && b.value() == -1) return -a;
  if (a.op() == Op::Neg && b.op() == Op::Neg) return a.arg(0) * b.arg(0);
  if (a.op() == Op::Neg) return -(a.arg(0) * b);
  if (b.op() == Op::Neg) return -(a * b.arg(0));
  if (b.is_const()) return Expr::make_mul({b, a});
  return Expr::make_mul({a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DomainError("division by the literal constant 0");
  if (a.is_zero()) return Expr();
  if (b.is_one()) return a;
  if (a.id() == b.id()) return Expr(1);
  if (a.is_const() && b.is_const()) return Expr(Rational(a.value() / b.value()));
  if (b.is_const()) return Expr(Rational(1 / b.value())) * a;
  if (a.op() == Op::Neg) return -(a.arg(0) / b);
  if (b.op() == Op::Neg) return -(a / b.arg(0));
  return Expr::make_div(a, b);
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  if (base.is_const()) {
    if (base.is_zero()) {
      if (exponent < 0) throw DomainError("negative power of the literal constant 0");
      return Expr();
    }
    Rational r(1);
    Rational b = exponent > 0 ? base.value() : Rational(1 / base.value());
    for (int i = 0; i < std::abs(exponent); ++i) r *= b;
    return Expr(r);
  }
  if (base.op() == Op::Pow) return pow(base.arg(0), base.exponent() * exponent);
  return Expr::make_pow(base, exponent);
}

Expr sin(const Expr& e) { return e.is_zero() ? Expr() : Expr::make_func(Fn::Sin, e); }
Expr cos(const Expr& e) { return e.is_zero() ? Expr(1) : Expr::make_func(Fn::Cos, e); }
Expr exp(const Expr& e) { return e.is_zero() ? Expr(1) : Expr::make_func(Fn::Exp, e); }
Expr ln(const Expr& e) {
  if (e.is_one()) return Expr();
  if (e.is_const() && sgn(e.value()) <= 0) throw DomainError("ln of a non-positive constant");
  return Expr::make_func(Fn::Ln, e);
}
Expr sqrt(const Expr& e) {
  if (e.is_zero() || e.is_one()) return e;
  if (e.is_const() && sgn(e.value()) < 0) throw DomainError("sqrt of a negative constant");
  return Expr::make_func(Fn::Sqrt, e);
}

Expr sum(std::span<const Expr> terms) {
  std::vector<Expr> kept;
  Rational c(0);
  for (const auto& t : terms) {
    if (t.is_const()) {
      c += t.value();
    } else {
      kept.push_back(t);
    }
  }
  if (sgn(c) != 0) kept.push_back(Expr(c));
  if (kept.empty()) return Expr();
  if (kept.size() == 1) return kept.front();
  if (kept.size() == 2) return kept[0] + kept[1];
  return Expr::make_add(std::move(kept));
}

std::size_t dag_size(const Expr& e) {
  std::unordered_set<const void*> seen;
  std::vector<Expr> stack{e};
  while (!stack.empty()) {
    Expr cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur.id()).second) continue;
    for (const auto& a : cur.args()) stack.push_back(a);
  }
  return seen.size();
}

}  // namespace g235

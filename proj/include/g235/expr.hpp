#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace g235 {

using Rational = mpq_class;

/// Every chart in this library is five-dimensional.
inline constexpr int kDim = 5;

/// Chart coordinates of a point, in chart order.
using Point = std::array<double, kDim>;

/// Names of the five coordinates of a local chart.
class Chart {
 public:
  /// Throws InvariantViolation unless there are exactly five distinct valid identifiers.
  explicit Chart(std::vector<std::string> names);
  /// The Monge chart.
  Chart();

  /// The chart (x, y, p, q, z) used for Monge equations.
  static Chart monge();

  /// -1 when `name` is not a coordinate of this chart.
  int index_of(std::string_view name) const;
  const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
  const std::array<std::string, kDim>& names() const { return names_; }

  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  std::array<std::string, kDim> names_;
};

bool is_identifier(std::string_view s);

enum class Op : std::uint8_t { Const, Var, Add, Mul, Neg, Div, Pow, Func };
enum class Fn : std::uint8_t { Sin, Cos, Exp, Ln, Sqrt };

std::string_view function_name(Fn f);

namespace detail {
struct Node;
}

/// Immutable expression DAG node handle. Copies share structure; nodes are
/// never mutated after construction, so values can be shared across threads.
///
/// The arithmetic operators fold constants and drop neutral elements as they
/// build, which keeps derived expressions from carrying dead `0*...` terms.
/// The raw node factories (`make_*`) build exactly the node asked for.
class Expr {
 public:
  Expr();  // the constant 0
  Expr(int v);
  Expr(long v);
  Expr(const Rational& v);

  static Expr var(int index);
  static Expr make_add(std::vector<Expr> terms);
  static Expr make_mul(std::vector<Expr> factors);
  static Expr make_neg(Expr e);
  static Expr make_div(Expr num, Expr den);
  static Expr make_pow(Expr base, int exponent);
  static Expr make_func(Fn f, Expr arg);

  Op op() const;
  const Rational& value() const;  // Const only
  int index() const;              // Var only
  int exponent() const;           // Pow only
  Fn fn() const;                  // Func only
  std::span<const Expr> args() const;
  const Expr& arg(std::size_t i) const { return args()[i]; }

  std::size_t hash() const;
  /// Identity of the underlying node; equal ids imply equal expressions.
  const void* id() const { return node_.get(); }

  bool is_const() const { return op() == Op::Const; }
  bool is_zero() const;
  bool is_one() const;

 private:
  explicit Expr(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;
};

/// Structural equality of the trees (no algebraic reasoning).
bool same(const Expr& a, const Expr& b);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
inline Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
inline Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
inline Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr exp(const Expr& e);
Expr ln(const Expr& e);
Expr sqrt(const Expr& e);

/// Sum of a list, skipping literal zeros.
Expr sum(std::span<const Expr> terms);
inline Expr sum(std::initializer_list<Expr> terms) {
  return sum(std::span<const Expr>(terms.begin(), terms.size()));
}

/// Number of distinct nodes reachable from `e`.
std::size_t dag_size(const Expr& e);

}  // namespace g235

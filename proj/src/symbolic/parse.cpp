#include <cctype>

#include "g235/symbolic.hpp"

namespace g235 {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Chart& chart) : text_(text), chart_(chart) {}

  Expr parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    Expr e = expr();
    skip_ws();
    if (!at_end()) throw ParseError(std::string("unexpected '") + peek() + "'", pos_);
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(Expr::make_neg(term()));
      } else {
        break;
      }
    }
    return Expr::make_add(std::move(terms));
  }

  Expr term() {
    Expr acc = factor();
    std::vector<Expr> run{acc};
    for (;;) {
      if (accept('*')) {
        run.push_back(factor());
      } else if (accept('/')) {
        Expr lhs = Expr::make_mul(std::move(run));
        std::size_t at = pos_;
        Expr rhs = factor();
        if (rhs.is_zero()) throw ParseError("division by literal zero", at);
        run = {Expr::make_div(lhs, rhs)};
      } else {
        break;
      }
    }
    return Expr::make_mul(std::move(run));
  }

  Expr factor() {
    Expr b = base();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) throw ParseError("expected integer exponent", start);
      if (pos_ - start > 6) throw ParseError("exponent too large", start);
      int n = std::stoi(std::string(text_.substr(start, pos_ - start)));
      return Expr::make_pow(b, n);
    }
    return b;
  }

  Expr base() {
    skip_ws();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (c == '-') {
      ++pos_;
      return Expr::make_neg(base());
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      std::string id(text_.substr(start, pos_ - start));
      for (auto f : {Fn::Sin, Fn::Cos, Fn::Exp, Fn::Ln, Fn::Sqrt}) {
        if (id == function_name(f)) {
          if (!accept('(')) throw ParseError("expected '(' after " + id, pos_);
          Expr arg = expr();
          if (!accept(')')) throw ParseError("expected ')'", pos_);
          return Expr::make_func(f, arg);
        }
      }
      int idx = chart_.index_of(id);
      if (idx < 0) throw UnknownIdentifier(id, start);
      return Expr::var(idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr number() {
    std::size_t start = pos_;
    std::string digits;
    std::size_t frac_digits = 0;
    bool dot = false;
    while (!at_end()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
        if (dot) ++frac_digits;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) throw ParseError("malformed number", start);
    mpz_class num(digits, 10);
    mpz_class den(1);
    for (std::size_t i = 0; i < frac_digits; ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return Expr(q);
  }

  std::string_view text_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text, const Chart& chart) {
  return Parser(text, chart).parse();
}

}  // namespace g235

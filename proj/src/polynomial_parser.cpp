// Recursive-descent parser for polynomial text.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | identifier | '(' expr ')'
//
// Division is only allowed by a nonzero constant, which covers rational
// literals such as 3/2 as well as forms like x^2*y/2.

#include <cctype>

#include "poissoncoh/gradedpoly.hpp"

namespace poissoncoh {
namespace {

class Parser {
 public:
  Parser(std::string_view src, const WeightedContext& ctx) : src_(src), ctx_(ctx) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (accept('+'))
        p += term();
      else if (accept('-'))
        p -= term();
      else
        return p;
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    for (;;) {
      if (accept('*')) {
        p *= unary();
      } else if (accept('/')) {
        skip_ws();
        std::size_t at = pos_;
        auto divisor = unary().constant_value();
        if (!divisor) throw ParseError("division by a non-constant", at);
        if (is_zero(*divisor)) throw ParseError("division by zero", at);
        p *= Rational(1) / *divisor;
      } else {
        return p;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        throw ParseError("expected non-negative integer exponent", at);
      Integer k = integer();
      if (k > 1'000'000) throw ParseError("exponent too large", at);
      return base.pow(static_cast<unsigned>(k.get_ui()));
    }
    return base;
  }

  Integer integer() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return Integer(std::string(src_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return Polynomial::constant(ctx_.size(), Rational(integer()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string name(src_.substr(start, pos_ - start));
      auto idx = ctx_.index_of(name);
      if (!idx) throw UnknownVariable(name, start);
      return Polynomial::variable(ctx_.size(), *idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view src_;
  const WeightedContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view source, const WeightedContext& ctx) {
  Polynomial p = Parser(source, ctx).parse();
  if (p.is_zero()) return Polynomial(ctx.size());
  return p;
}

}  // namespace poissoncoh

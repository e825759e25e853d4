/* Copyright 2026 The phodge Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef PHODGE_SCALAR_PARSE_HPP
#define PHODGE_SCALAR_PARSE_HPP

#include <cctype>
#include <optional>
#include <string>

#include "phodge/padic.hpp"

namespace phodge {

/// A square root of -1 in Z_q: the Hensel lift of the residue root with the
/// smallest index. Requires p odd and -1 a square in F_q.
inline PadicScalar sqrt_minus_one(const Context& ctx) {
  if (ctx->p() == 2) throw ValidationError("'i' is not available for p = 2");
  if (ctx->q() > 1000000) throw ValidationError("residue field too large to search for sqrt(-1)");
  const long q = ctx->q().get_si();
  for (long idx = 0; idx < q; ++idx) {
    FqElement a = FqElement::from_index(ctx, idx);
    if (a * a + FqElement::one(ctx) != FqElement::zero(ctx)) continue;
    PadicScalar x = naive_lift(a);
    const PadicScalar one = PadicScalar::one(ctx);
    const PadicScalar two = PadicScalar::from_integer(ctx, 2);
    for (int iter = 0; iter < 200; ++iter) {
      PadicScalar f = x * x + one;
      if (f.is_zero()) break;
      x = x - f / (two * x);
    }
    return x;
  }
  throw ValidationError("-1 is not a square in F_" + ctx->q().get_str() + "; 'i' is unavailable");
}

namespace detail {

// Recursive-descent evaluator for scalar expressions:
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' ['-'] integer)?
//   atom  := integer | 'p' | 'g' | 'i' | 'O' '(' expr ')' | '(' expr ')'
// 'g' is the generator of Z_q, 'i' a square root of -1, O(p^k) the zero
// known to precision k.
class ScalarParser {
 public:
  ScalarParser(const Context& ctx, const std::string& text) : ctx_(ctx), s_(text) {}

  PadicScalar parse() {
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v.scalar(ctx_);
  }
  bool saw_big_o() const { return saw_o_; }

 private:
  // Rational subexpressions are kept exact so that p^-k and quotients do not
  // lose precision before they meet a genuinely p-adic quantity.
  struct Value {
    std::optional<Rational> exact;
    std::optional<PadicScalar> approx;
    PadicScalar scalar(const Context& ctx) const {
      return exact ? PadicScalar::from_rational(ctx, *exact) : *approx;
    }
  };
  static Value exact_value(Rational r) { return Value{std::move(r), std::nullopt}; }
  static Value approx_value(PadicScalar x) { return Value{std::nullopt, std::move(x)}; }

  [[noreturn]] void fail(const std::string& why) const {
    throw ValidationError("cannot parse scalar '" + s_ + "' at offset " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Integer integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(s_.substr(start, pos_ - start));
  }
  Value combine(const Value& a, const Value& b, char op) {
    if (a.exact && b.exact) {
      switch (op) {
        case '+': return exact_value(*a.exact + *b.exact);
        case '-': return exact_value(*a.exact - *b.exact);
        case '*': return exact_value(*a.exact * *b.exact);
        default:
          if (*b.exact == 0) fail("division by zero");
          return exact_value(*a.exact / *b.exact);
      }
    }
    PadicScalar x = a.scalar(ctx_), y = b.scalar(ctx_);
    switch (op) {
      case '+': return approx_value(x + y);
      case '-': return approx_value(x - y);
      case '*': return approx_value(x * y);
      default:
        if (y.is_zero()) fail("division by zero");
        return approx_value(x / y);
    }
  }
  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+')) {
        v = combine(v, term(), '+');
      } else if (eat('-')) {
        v = combine(v, term(), '-');
      } else {
        return v;
      }
    }
  }
  Value term() {
    Value v = unary();
    for (;;) {
      if (eat('*')) {
        v = combine(v, unary(), '*');
      } else if (eat('/')) {
        v = combine(v, unary(), '/');
      } else {
        return v;
      }
    }
  }
  Value unary() {
    if (eat('-')) {
      Value v = unary();
      if (v.exact) return exact_value(-*v.exact);
      return approx_value(-*v.approx);
    }
    return power();
  }
  Value power() {
    Value base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    Integer e = integer();
    if (!e.fits_slong_p() || e > 100000) fail("exponent too large");
    long k = e.get_si();
    if (base.exact) {
      if (neg && *base.exact == 0) fail("division by zero");
      Rational r = 1;
      for (long j = 0; j < k; ++j) r *= *base.exact;
      return exact_value(neg ? Rational(1 / r) : r);
    }
    if (neg && base.approx->is_zero()) fail("division by zero");
    return approx_value(base.approx->pow(neg ? -k : k));
  }
  Value atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return exact_value(Rational(integer()));
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 'p') {
      ++pos_;
      return exact_value(Rational(ctx_->p()));
    }
    if (c == 'g') {
      ++pos_;
      if (ctx_->degree() == 1) return exact_value(Rational(0));
      return approx_value(PadicScalar::generator(ctx_));
    }
    if (c == 'i') {
      ++pos_;
      return approx_value(sqrt_minus_one(ctx_));
    }
    if (c == 'O') {
      ++pos_;
      saw_o_ = true;
      if (!eat('(')) fail("expected '(' after O");
      Value v = expr();
      if (!eat(')')) fail("expected ')'");
      PadicScalar x = v.scalar(ctx_);
      if (x.is_zero()) return approx_value(x);
      return approx_value(PadicScalar::zero_to(ctx_, x.valuation().value()));
    }
    fail("unexpected character");
  }

  const Context& ctx_;
  std::string s_;
  size_t pos_ = 0;
  bool saw_o_ = false;
};

}  // namespace detail

/// Parses scalar expressions such as "7", "-3/4", "(p+1)*i", "p^2*(1 + 2*g)"
/// and the serialized form "5^3 * (4 + 1*g) + O(5^9)".
/// The text is evaluated in a context with extra digits (negative powers of p
/// and divisions eat precision), then truncated to ctx.
inline PadicScalar parse_scalar(const Context& ctx, const std::string& text) {
  const long n = ctx->precision();
  for (long extra = 32;; extra *= 4) {
    const long work_prec = std::min<long>(n + extra, 100000);
    const Context work = make_context(ctx->p(), ctx->degree(), work_prec);
    detail::ScalarParser parser(work, text);
    const PadicScalar x = parser.parse();
    if (x.precision() >= n || parser.saw_big_o() || work_prec == 100000) return x.lift_to(ctx);
  }
}

}  // namespace phodge

#endif  // PHODGE_SCALAR_PARSE_HPP

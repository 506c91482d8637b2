#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "ratfunc.hpp"

namespace unirat {

// Recursive-descent parser for
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | identifier | '(' expr ')'
// Rationals a/b arise from division of integer literals.
template <class C>
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, Universe u, CoefField f,
                   std::map<std::string, std::string> aliases = {})
      : s_(text), u_(std::move(u)), f_(f), aliases_(std::move(aliases)) {}

  RatFunc<C> parse() {
    skip_ws();
    if (at_end()) error("empty expression");
    auto r = expr();
    skip_ws();
    if (!at_end()) error(std::string("unexpected character '") + s_[pos_] + "'");
    return r;
  }

 private:
  using R = RatFunc<C>;
  using P = MultiPoly<C>;

  R expr() {
    R acc = term();
    for (;;) {
      skip_ws();
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }
  R term() {
    R acc = unary();
    for (;;) {
      skip_ws();
      if (peek('*')) {
        ++pos_;
        acc *= unary();
      } else if (peek('/')) {
        std::size_t at = pos_++;
        R d = unary();
        if (d.is_zero()) error_at(at, "division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }
  R unary() {
    skip_ws();
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }
  R power() {
    R base = primary();
    skip_ws();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      if (at_end() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        error("exponent must be a non-negative integer");
      std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      auto digits = s_.substr(start, pos_ - start);
      if (digits.size() > 6) error_at(start, "exponent too large");
      int k = std::stoi(std::string(digits));
      if (base.is_zero() && k == 0) return one();
      return base.pow(k);
    }
    return base;
  }
  R primary() {
    skip_ws();
    if (at_end()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      R r = expr();
      skip_ws();
      if (!peek(')')) error("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits(s_.substr(start, pos_ - start));
      if constexpr (std::is_same_v<C, Rational>) {
        return R(P::constant(u_, f_, Rational(Integer(digits))));
      } else {
        Integer z(digits);
        Integer m = z % f_.characteristic();
        return R(P::constant(u_, f_, static_cast<long>(m.get_si())));
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto it = aliases_.find(name);
      if (it != aliases_.end()) name = it->second;
      auto idx = u_.find(name);
      if (!idx) {
        auto [l, col] = line_col(start);
        throw Error(ErrorCode::UnknownVariable,
                    std::to_string(l) + ":" + std::to_string(col) + ": unknown variable '" + name + "'");
      }
      return R(P::variable(u_, f_, *idx));
    }
    error(std::string("unexpected character '") + c + "'");
  }

  R one() const { return R(P::constant(u_, f_, 1)); }
  bool at_end() const { return pos_ >= s_.size(); }
  bool peek(char c) const { return !at_end() && s_[pos_] == c; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::pair<int, int> line_col(std::size_t at) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') ++line, col = 1;
      else ++col;
    }
    return {line, col};
  }
  [[noreturn]] void error(const std::string& msg) const { error_at(pos_, msg); }
  [[noreturn]] void error_at(std::size_t at, const std::string& msg) const {
    auto [l, c] = line_col(at);
    throw ParseError(msg, l, c);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  Universe u_;
  CoefField f_;
  std::map<std::string, std::string> aliases_;
};

template <class C = Rational>
RatFunc<C> parse_expression(std::string_view text, const Universe& u,
                            CoefField f = CoefField::rationals(),
                            const std::map<std::string, std::string>& aliases = {}) {
  return ExpressionParser<C>(text, u, f, aliases).parse();
}

// Parses an expression that must be a polynomial.
template <class C = Rational>
MultiPoly<C> parse_polynomial(std::string_view text, const Universe& u,
                              CoefField f = CoefField::rationals(),
                              const std::map<std::string, std::string>& aliases = {}) {
  auto r = parse_expression<C>(text, u, f, aliases);
  if (!r.is_polynomial()) throw ParseError("expected a polynomial, got a rational function", 1, 1);
  return r.num();
}

// "a,b,c" -> {"a","b","c"} with whitespace trimmed.
inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& x : out) {
    auto b = x.find_first_not_of(" \t\n");
    auto e = x.find_last_not_of(" \t\n");
    x = b == std::string::npos ? "" : x.substr(b, e - b + 1);
  }
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

}  // namespace unirat

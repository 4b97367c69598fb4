#pragma once

// Text grammar for polynomials, exact rationals everywhere:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := primary ['^' exponent]
//   primary:= rational | variable | '(' expr ')'
// Variables are X1..Xd (plain X allowed when d = 1) and the distinguished
// variable (Y or T). Exponents are integers, or rationals in parentheses:
// X1^(3/2), X1^(-1). Powers of parenthesized expressions must be
// nonnegative integers. Round-trips with poly_to_text.

#include <qopolar/error.hpp>
#include <qopolar/rational.hpp>
#include <qopolar/sparse_poly.hpp>

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>
#include <vector>

namespace qopolar {

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string& text, std::size_t d, std::string main_var)
      : s_(text), d_(d), main_(std::move(main_var)) {}

  SparsePoly parse() {
    SparsePoly p = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) err("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void err(const std::string& msg) const {
    fail(errc::parse_error,
         "polynomial syntax error at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  SparsePoly parse_expr() {
    SparsePoly acc = SparsePoly::zero(d_, main_);
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    acc += parse_term() * Rat(neg ? -1 : 1);
    while (true) {
      if (eat('+'))
        acc += parse_term();
      else if (eat('-'))
        acc -= parse_term();
      else
        break;
    }
    return acc;
  }

  SparsePoly parse_term() {
    SparsePoly acc = parse_factor();
    while (eat('*')) acc = acc * parse_factor();
    return acc;
  }

  SparsePoly parse_factor() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      SparsePoly inner = parse_expr();
      if (!eat(')')) err("expected ')'");
      if (eat('^')) {
        Rat e = parse_exponent();
        if (!is_integer(e) || e < 0) err("power of a parenthesized expression must be a nonnegative integer");
        return inner.pow(e.get_num().get_ui());
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rat v = parse_rational_token();
      SparsePoly p = SparsePoly::constant(d_, v, main_);
      if (eat('^')) {
        Rat e = parse_exponent();
        if (!is_integer(e) || e < 0) err("power of a constant must be a nonnegative integer");
        return p.pow(e.get_num().get_ui());
      }
      return p;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_variable();
    err("expected a number, variable or '('");
  }

  SparsePoly parse_variable() {
    skip_ws();
    std::size_t start = pos_;
    std::string name;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) name += s_[pos_++];
    Rat e(1);
    if (eat('^')) e = parse_exponent();
    if (name == main_) {
      if (!is_integer(e) || e < 0) err("exponent of " + main_ + " must be a nonnegative integer");
      return SparsePoly::main_power(d_, static_cast<long>(e.get_num().get_si()), main_);
    }
    std::size_t idx = 0;
    if (name == "X" && d_ == 1)
      idx = 0;
    else if (name.size() >= 2 && name[0] == 'X') {
      for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) {
          pos_ = start;
          err("unknown variable '" + name + "'");
        }
        idx = idx * 10 + static_cast<std::size_t>(name[i] - '0');
      }
      if (idx < 1 || idx > d_) {
        pos_ = start;
        err("variable index out of range in '" + name + "' (dimension " + std::to_string(d_) + ")");
      }
      --idx;
    } else {
      pos_ = start;
      err("unknown variable '" + name + "'");
    }
    SparsePoly p(d_, main_);
    std::vector<Rat> x(d_, Rat(0));
    x[idx] = e;
    p.add_term(x, 0, Rat(1));
    return p;
  }

  Rat parse_exponent() {
    skip_ws();
    if (eat('(')) {
      bool neg = eat('-');
      Rat v = parse_rational_token();
      if (!eat(')')) err("expected ')' after exponent");
      return neg ? -v : v;
    }
    bool neg = eat('-');
    Rat v = parse_rational_token();
    return neg ? -v : v;
  }

  Rat parse_rational_token() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) err("expected a number");
    std::string num = s_.substr(start, pos_ - start);
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::size_t dstart = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == dstart) err("expected a denominator");
      return parse_rat(num + "/" + s_.substr(dstart, pos_ - dstart));
    }
    return parse_rat(num);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  std::size_t d_;
  std::string main_;
};

}  // namespace detail

inline SparsePoly parse_polynomial(const std::string& text, std::size_t d,
                                   const std::string& main_var = "Y") {
  return detail::PolyParser(text, d, main_var).parse();
}

inline std::string poly_to_text(const SparsePoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  // highest distinguished degree first, then reverse-lex on X exponents
  const auto& terms = p.terms();
  std::vector<const std::pair<const SparsePoly::Key, Rat>*> order;
  for (const auto& t : terms) order.push_back(&t);
  std::sort(order.begin(), order.end(), [&](auto* a, auto* b) {
    std::size_t d_ = p.xdim();
    if (a->first[d_] != b->first[d_]) return a->first[d_] > b->first[d_];
    return a->first > b->first;
  });
  bool first = true;
  for (auto* t : order) {
    const auto& key = t->first;
    Rat c = t->second;
    bool neg = c < 0;
    if (neg) c = -c;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < p.xdim(); ++i) {
      if (key[i] == 0) continue;
      Rat e = ratio(Int(key[i]), p.denom());
      if (!factors.empty()) factors += "*";
      factors += p.xdim() == 1 ? "X" : ("X" + std::to_string(i + 1));
      if (e != 1) factors += is_integer(e) && e > 0 ? "^" + to_string(e) : "^(" + to_string(e) + ")";
    }
    if (key[p.xdim()] != 0) {
      if (!factors.empty()) factors += "*";
      factors += p.main_var();
      if (key[p.xdim()] != 1) factors += "^" + std::to_string(key[p.xdim()]);
    }
    if (factors.empty())
      out += to_string(c);
    else if (c == 1)
      out += factors;
    else
      out += to_string(c) + "*" + factors;
  }
  return out;
}

}  // namespace qopolar

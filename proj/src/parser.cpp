#include "torus/parser.hpp"

#include <cctype>

#include "torus/errors.hpp"

namespace torus {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const FieldPtr& field) : text_(text), field_(field) {}

  MultiPoly run() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ < text_.size()) fail({"'+'", "'-'", "'*'", "'^'", "end of input"});
    return p;
  }

 private:
  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        acc += term();
      } else if (peek() == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    for (;;) {
      skip_ws();
      if (peek() != '*') return acc;
      ++pos_;
      acc = acc * factor();
    }
  }

  MultiPoly factor() {
    MultiPoly b = base();
    skip_ws();
    if (peek() != '^') return b;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail({"unsigned integer"});
    std::string digits = read_digits();
    if (digits.size() > 3 || std::stoi(digits) > kMaxExponent)
      throw OverflowError("exponent " + digits + " at offset " + std::to_string(start) + " exceeds " +
                          std::to_string(kMaxExponent));
    return b.pow(std::stoi(digits));
  }

  MultiPoly base() {
    skip_ws();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return MultiPoly::constant(field_, Scalar(rational()));
    switch (c) {
      case 'a':
        ++pos_;
        return MultiPoly::constant(field_, Scalar::root());
      case 'x':
        ++pos_;
        return MultiPoly::variable(field_, Var::X);
      case 'y':
        ++pos_;
        return MultiPoly::variable(field_, Var::Y);
      case 'z':
        ++pos_;
        return MultiPoly::variable(field_, Var::Z);
      case '(': {
        ++pos_;
        MultiPoly inner = expr();
        skip_ws();
        if (peek() != ')') fail({"')'", "'+'", "'-'", "'*'", "'^'"});
        ++pos_;
        return inner;
      }
      case '-':
        ++pos_;
        return -factor();
      default:
        fail({"number", "'a'", "'x'", "'y'", "'z'", "'('", "'-'"});
    }
  }

  Rational rational() {
    Rational r{mpz_class(read_digits())};
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail({"unsigned integer"});
      const std::size_t at = pos_;
      mpz_class den(read_digits());
      if (den == 0) throw SyntaxError(at, {"nonzero denominator"}, "zero denominator at offset " + std::to_string(at));
      r /= Rational(den);
    }
    r.canonicalize();
    return r;
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string msg = "syntax error at offset " + std::to_string(pos_) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
    if (pos_ < text_.size()) {
      msg += "; found '";
      msg += text_[pos_];
      msg += "'";
    } else {
      msg += "; found end of input";
    }
    throw SyntaxError(pos_, std::move(expected), msg);
  }

  std::string_view text_;
  const FieldPtr& field_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Monomial& m) {
  static constexpr char kNames[] = {'x', 'y', 'z'};
  std::string out;
  for (int v = 0; v < 3; ++v) {
    if (m.e[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += kNames[v];
    if (m.e[v] > 1) out += "^" + std::to_string(m.e[v]);
  }
  return out;
}

std::string rational_factor(const Rational& r) {
  return r.get_den() == 1 ? r.get_str() : "(" + r.get_str() + ")";
}

}  // namespace

MultiPoly parse(std::string_view text, const FieldPtr& field) { return Parser(text, field).run(); }

std::string serialize(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const Scalar& c = t.coeff;
    const std::string mono = monomial_text(t.mono);
    bool negative = false;
    std::string body;
    if (c.is_rational() || sgn(c.p) == 0) {
      const bool rational = c.is_rational();
      const Rational& v = rational ? c.p : c.q;
      negative = sgn(v) < 0;
      const Rational mag = abs(v);
      std::string coeff;
      if (rational) {
        if (mag != 1 || mono.empty()) coeff = mono.empty() ? mag.get_str() : rational_factor(mag);
      } else {
        coeff = mag == 1 ? "a" : rational_factor(mag) + "*a";
      }
      body = coeff;
      if (!mono.empty()) body += (body.empty() ? "" : "*") + mono;
    } else {
      body = "(" + to_string(c) + ")";
      if (!mono.empty()) body += "*" + mono;
    }
    if (first) {
      out += negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
    first = false;
  }
  return out;
}

}  // namespace torus

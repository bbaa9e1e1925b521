#include "torus/scalar.hpp"

#include <cmath>
#include <stdexcept>

#include "torus/errors.hpp"

namespace torus {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  Rational r;
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
  if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Field::Field(Rational m) : m_(std::move(m)) {
  m_.canonicalize();
  if (sgn(m_) <= 0) throw std::invalid_argument("field parameter m must be positive");
  m_double_ = m_.get_d();
  sqrt_m_ = std::sqrt(m_double_);
  m_is_square_ = mpz_perfect_square_p(m_.get_num_mpz_t()) != 0 &&
                 mpz_perfect_square_p(m_.get_den_mpz_t()) != 0;
  if (m_is_square_) {
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), m_.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), m_.get_den_mpz_t());
    root_ = Rational(num, den);
  }
}

Scalar Field::real_form(const Scalar& a) const {
  if (!m_is_square_ || a.is_rational()) return a;
  return Scalar(Rational(a.p + a.q * root_));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (a.is_rational() && b.is_rational()) return Scalar(Rational(a.p * b.p));
  return Scalar(a.p * b.p + a.q * b.q * m_, a.p * b.q + a.q * b.p);
}

Scalar Field::inverse(const Scalar& a) const {
  if (a.is_rational()) {
    if (sgn(a.p) == 0) throw ZeroDivisor("division by zero scalar");
    return Scalar(Rational(1 / a.p));
  }
  Rational norm = a.p * a.p - a.q * a.q * m_;
  if (sgn(norm) == 0) throw ZeroDivisor("scalar " + to_string(a) + " is a zero divisor for square m");
  return Scalar(a.p / norm, -a.q / norm);
}

int Field::sign(const Scalar& a) const {
  const int sp = sgn(a.p);
  const int sq = sgn(a.q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  const int cmp = ::cmp(a.p * a.p, a.q * a.q * m_);
  if (cmp > 0) return sp;
  if (cmp < 0) return sq;
  return 0;
}

double Field::to_double(const Scalar& a) const {
  if (a.is_rational()) return a.p.get_d();
  return a.p.get_d() + a.q.get_d() * sqrt_m_;
}

namespace {

std::string root_part(const Rational& q) {
  if (q == 1) return "a";
  if (q == -1) return "-a";
  if (q.get_den() == 1) return q.get_str() + "*a";
  return "(" + q.get_str() + ")*a";
}

}  // namespace

std::string to_string(const Scalar& s) {
  if (s.is_rational()) return s.p.get_str();
  if (sgn(s.p) == 0) return root_part(s.q);
  std::string out = s.p.get_str();
  Rational mag = abs(s.q);
  out += sgn(s.q) < 0 ? " - " : " + ";
  out += root_part(mag);
  return out;
}

}  // namespace torus

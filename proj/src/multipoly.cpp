#include "torus/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "torus/errors.hpp"

namespace torus {

namespace {

void normalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_before(a.mono, b.mono); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Scalar sum = std::move(terms[i].coeff);
    while (j < terms.size() && terms[j].mono == terms[i].mono) {
      sum += terms[j].coeff;
      ++j;
    }
    if (!sum.is_zero()) {
      terms[out].mono = terms[i].mono;
      terms[out].coeff = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

// Merge b (scaled by sign) into a; both sorted.
std::vector<Term> merge(const std::vector<Term>& a, std::span<const Term> b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && grlex_before(a[i].mono, b[j].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grlex_before(b[j].mono, a[i].mono)) {
      out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
      ++j;
    } else {
      Scalar c = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back(Term{a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly::MultiPoly(FieldPtr field, std::vector<Term> terms) : field_(std::move(field)), terms_(std::move(terms)) {
  normalize(terms_);
}

MultiPoly MultiPoly::constant(const FieldPtr& field, const Scalar& c) {
  return monomial(field, c, Monomial{});
}

MultiPoly MultiPoly::variable(const FieldPtr& field, Var v) {
  Monomial m;
  m[v] = 1;
  return monomial(field, Scalar(1), m);
}

MultiPoly MultiPoly::monomial(const FieldPtr& field, const Scalar& c, const Monomial& m) {
  MultiPoly p(field);
  if (!c.is_zero()) p.terms_.push_back(Term{m, c});
  return p;
}

void MultiPoly::check_field(const MultiPoly& o) const {
  if (!same_field(field_, o.field_)) throw std::invalid_argument("polynomials over different fields");
}

int MultiPoly::degree_in(Var v) const {
  int d = kZeroDegree;
  for (const auto& t : terms_) d = std::max(d, t.mono[v]);
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.front().mono.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.mono.degree() == d; });
}

Scalar MultiPoly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return grlex_before(t.mono, key); });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return Scalar();
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_field(o);
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_field(o);
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

MultiPoly operator-(const MultiPoly& a) {
  MultiPoly out = a;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_field(b);
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  const Field& f = *a.field_;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) terms.push_back(Term{ta.mono * tb.mono, f.mul(ta.coeff, tb.coeff)});
  return MultiPoly(a.field_, std::move(terms));
}

MultiPoly operator*(const Scalar& c, const MultiPoly& a) {
  MultiPoly out(a.field_);
  if (c.is_zero()) return out;
  out.terms_.reserve(a.terms_.size());
  const Field& f = *a.field_;
  for (const auto& t : a.terms_) {
    Scalar v = f.mul(c, t.coeff);
    if (!v.is_zero()) out.terms_.push_back(Term{t.mono, std::move(v)});
  }
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

MultiPoly MultiPoly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative exponent");
  MultiPoly result = constant(field_, Scalar(1));
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

MultiPoly differentiate(const MultiPoly& p, Var v) {
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    const int e = t.mono[v];
    if (e == 0) continue;
    Monomial m = t.mono;
    m[v] = e - 1;
    terms.push_back(Term{m, t.coeff * Rational(e)});
  }
  return MultiPoly(p.field(), std::move(terms));
}

MultiPoly homogeneous_component(const MultiPoly& p, int d) {
  std::vector<Term> terms;
  for (const auto& t : p.terms())
    if (t.mono.degree() == d) terms.push_back(t);
  return MultiPoly(p.field(), std::move(terms));
}

MultiPoly coefficient_in(const MultiPoly& p, Var v, int k) {
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    if (t.mono[v] != k) continue;
    Monomial m = t.mono;
    m[v] = 0;
    terms.push_back(Term{m, t.coeff});
  }
  return MultiPoly(p.field(), std::move(terms));
}

MultiPoly substitute(const MultiPoly& p, Var v, const MultiPoly& q) {
  const int top = p.degree_in(v);
  MultiPoly result(p.field());
  if (top < 0) return result;
  // Horner in v.
  for (int k = top; k >= 0; --k) {
    result = result * q + coefficient_in(p, v, k);
  }
  return result;
}

MultiPoly shift(const MultiPoly& p, const Monomial& m) {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back(Term{t.mono * m, t.coeff});
  return MultiPoly(p.field(), std::move(terms));
}

std::optional<MultiPoly> divide_by_variable(const MultiPoly& p, Var v) {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    if (t.mono[v] == 0) return std::nullopt;
    Monomial m = t.mono;
    m[v] -= 1;
    terms.push_back(Term{m, t.coeff});
  }
  return MultiPoly(p.field(), std::move(terms));
}

Scalar eval_exact(const MultiPoly& p, const ExactPoint& pt) {
  const Field& f = *p.field();
  // Powers are cached per variable since degrees are small.
  std::array<std::vector<Scalar>, 3> powers;
  for (int v = 0; v < 3; ++v) {
    const int top = std::max(0, p.degree_in(static_cast<Var>(v)));
    powers[v].reserve(top + 1);
    powers[v].push_back(Scalar(1));
    for (int k = 1; k <= top; ++k) powers[v].push_back(f.mul(powers[v].back(), pt[v]));
  }
  Scalar sum;
  for (const auto& t : p.terms()) {
    Scalar term = t.coeff;
    for (int v = 0; v < 3; ++v)
      if (t.mono.e[v] > 0) term = f.mul(term, powers[v][t.mono.e[v]]);
    sum += term;
  }
  return sum;
}

double eval_float(const MultiPoly& p, const Eigen::Vector3d& pt) { return FloatPoly(p)(pt); }

std::optional<MultiPoly> divide_exact(const MultiPoly& dividend, const MultiPoly& divisor, Var v) {
  if (!same_field(dividend.field(), divisor.field()))
    throw std::invalid_argument("polynomials over different fields");
  if (divisor.is_zero()) throw MalformedDivisor("division by the zero polynomial");
  const int d = divisor.degree_in(v);
  const MultiPoly lead = coefficient_in(divisor, v, d);
  if (!lead.is_constant()) throw MalformedDivisor("leading coefficient of divisor is not a scalar");
  const Field& f = *dividend.field();
  const Scalar lead_inv = f.inverse(lead.constant_term());

  MultiPoly quotient(dividend.field());
  MultiPoly rem = dividend;
  while (!rem.is_zero()) {
    const int k = rem.degree_in(v);
    if (k < d) break;
    Monomial step;
    step[v] = k - d;
    MultiPoly t = shift(lead_inv * coefficient_in(rem, v, k), step);
    quotient += t;
    rem -= t * divisor;
  }
  if (!rem.is_zero()) return std::nullopt;
  return quotient;
}

FloatPoly::FloatPoly(const MultiPoly& p) : degree_(p.degree()) {
  coeffs_.reserve(p.size());
  monos_.reserve(p.size());
  for (const auto& t : p.terms()) {
    coeffs_.push_back(p.field()->to_double(t.coeff));
    monos_.push_back(t.mono);
  }
}

double FloatPoly::operator()(const Eigen::Vector3d& pt) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    double v = coeffs_[i];
    for (int k = 0; k < 3; ++k) {
      const int e = monos_[i].e[k];
      if (e == 0) continue;
      double base = pt[k], acc = 1.0;
      for (int r = e; r > 0; r >>= 1) {
        if (r & 1) acc *= base;
        base *= base;
      }
      v *= acc;
    }
    sum += v;
  }
  return sum;
}

}  // namespace torus

#include "torus/unipoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

#include "torus/errors.hpp"

namespace torus {

UniPoly::UniPoly(FieldPtr field, std::vector<Scalar> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  // square m: fold q sqrt(m) into p
  for (auto& c : c_) c = field_->real_form(c);
  trim();
}

UniPoly UniPoly::linear_root(const FieldPtr& field, const Scalar& root) {
  return UniPoly(field, {-root, Scalar(1)});
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar UniPoly::eval(const Scalar& t) const {
  Scalar acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_->mul(acc, t) + *it;
  return acc;
}

double UniPoly::eval(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + field_->to_double(*it);
  return acc;
}

std::vector<double> UniPoly::to_double() const {
  std::vector<double> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(field_->to_double(c));
  return out;
}

UniPoly UniPoly::derivative() const {
  std::vector<Scalar> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
  return UniPoly(field_, std::move(d));
}

UniPoly UniPoly::monic() const {
  if (c_.empty()) return *this;
  const Scalar inv = field_->inverse(c_.back());
  std::vector<Scalar> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(field_->mul(c, inv));
  return UniPoly(field_, std::move(out));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return UniPoly(a.field_, std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  return UniPoly(a.field_, std::move(out));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly(a.field_);
  std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.field_->mul(a.c_[i], b.c_[j]);
  return UniPoly(a.field_, std::move(out));
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  const Field& f = *a.field();
  const Scalar lead_inv = f.inverse(b.leading());
  std::vector<Scalar> rem = a.coeffs();
  const int db = b.degree();
  std::vector<Scalar> quot(std::max(0, a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    if (rem[k].is_zero()) continue;
    const Scalar factor = f.mul(rem[k], lead_inv);
    quot[k - db] = factor;
    for (int i = 0; i <= db; ++i) rem[k - db + i] -= f.mul(factor, b.coeffs()[i]);
  }
  return {UniPoly(a.field(), std::move(quot)), UniPoly(a.field(), std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<UniPoly> squarefree_decomposition(const UniPoly& u) {
  std::vector<UniPoly> out;
  if (u.degree() < 1) return out;
  const UniPoly du = u.derivative();
  const UniPoly a0 = gcd(u, du);
  UniPoly b = divmod(u, a0).first;
  UniPoly c = divmod(du, a0).first;
  UniPoly d = c - b.derivative();
  while (b.degree() > 0) {
    UniPoly a = gcd(b, d);
    out.push_back(a);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
  }
  return out;
}

int root_multiplicity(const UniPoly& u, const Scalar& root) {
  if (u.is_zero()) throw PreconditionError("multiplicity of a root of the zero polynomial");
  const UniPoly lin = UniPoly::linear_root(u.field(), root);
  UniPoly cur = u;
  int k = 0;
  while (cur.degree() >= 1) {
    auto [q, r] = divmod(cur, lin);
    if (!r.is_zero()) break;
    cur = std::move(q);
    ++k;
  }
  return k;
}

std::vector<LineRestriction> restrict_to_line(const MultiPoly& p) {
  std::map<std::pair<int, int>, std::vector<Scalar>, std::greater<>> groups;
  for (const auto& t : p.terms()) {
    const int alpha = t.mono.e[0] + t.mono.e[1];
    auto& coeffs = groups[{alpha, t.mono.e[2]}];
    const auto j = static_cast<std::size_t>(t.mono.e[1]);
    if (coeffs.size() <= j) coeffs.resize(j + 1);
    coeffs[j] += t.coeff;
  }
  std::vector<LineRestriction> out;
  out.reserve(groups.size());
  for (auto& [key, coeffs] : groups)
    out.push_back(LineRestriction{key.first, key.second, UniPoly(p.field(), std::move(coeffs))});
  return out;
}

double root_bound(const UniPoly& u) {
  if (u.degree() < 1) return 0.0;
  const auto c = u.to_double();
  const double lead = std::abs(c.back());
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, std::abs(c[i]) / lead);
  return 1.0 + m;
}

namespace {

using Dense = std::vector<double>;

constexpr double kDropTol = 1e-9;
constexpr double kRefineTol = 1e-12;

void trim_dense(Dense& p, double scale) {
  for (auto& c : p)
    if (std::abs(c) <= kDropTol * scale) c = 0.0;
  while (!p.empty() && p.back() == 0.0) p.pop_back();
}

void normalize_dense(Dense& p) {
  double m = 0.0;
  for (double c : p) m = std::max(m, std::abs(c));
  if (m > 0)
    for (auto& c : p) c /= m;
}

Dense dense_rem(Dense a, const Dense& b) {
  const int db = static_cast<int>(b.size()) - 1;
  double scale = 0.0;
  for (double c : a) scale = std::max(scale, std::abs(c));
  for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
    const double f = a[k] / b.back();
    for (int i = 0; i <= db; ++i) a[k - db + i] -= f * b[i];
    a[k] = 0.0;
  }
  a.resize(std::max(0, db));
  trim_dense(a, scale);
  return a;
}

double dense_eval(const Dense& p, double t) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double dense_scale(const Dense& p, double t) {
  double acc = 0.0, pw = 1.0;
  const double at = std::max(1.0, std::abs(t));
  for (double c : p) {
    acc += std::abs(c) * pw;
    pw *= at;
  }
  return acc;
}

class SturmChain {
 public:
  explicit SturmChain(Dense p) {
    normalize_dense(p);
    chain_.push_back(p);
    Dense d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<double>(i));
    normalize_dense(d);
    chain_.push_back(d);
    while (chain_.back().size() > 1) {
      Dense r = dense_rem(chain_[chain_.size() - 2], chain_.back());
      if (r.empty()) break;
      for (auto& c : r) c = -c;
      normalize_dense(r);
      chain_.push_back(std::move(r));
    }
  }

  const Dense& base() const { return chain_.front(); }

  /// Sign variations at t, nullopt when some chain value is within noise of zero.
  std::optional<int> variations(double t) const {
    int count = 0, last = 0;
    for (const auto& p : chain_) {
      const double v = dense_eval(p, t);
      if (std::abs(v) <= kDropTol * dense_scale(p, t)) return std::nullopt;
      const int s = v > 0 ? 1 : -1;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  /// Variations at t, nudging t (inside [lo, hi] when given) until signs are resolved.
  std::pair<double, int> resolved(double t, double width) const {
    static constexpr double kNudges[] = {0.0, 1e-7, -1e-7, 1e-5, -1e-5, 1e-3, -1e-3};
    for (double n : kNudges) {
      const double probe = t + n * std::max(std::abs(width), 1e-9);
      if (auto v = variations(probe)) return {probe, *v};
    }
    throw IllConditioned("Sturm signs unresolved near t = " + std::to_string(t));
  }

 private:
  std::vector<Dense> chain_;
};

double bisect(const Dense& p, double a, double b) {
  double fa = dense_eval(p, a);
  for (int it = 0; it < 200 && (b - a) > kRefineTol * std::max(1.0, std::abs(a)); ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = dense_eval(p, mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (fa > 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

void isolate(const SturmChain& chain, double lo, double hi, std::vector<double>& roots) {
  const double width = hi - lo;
  auto [a, va] = chain.resolved(lo, width);
  auto [b, vb] = chain.resolved(hi, width);

  struct Interval {
    double a, b;
    int va, vb;
  };
  std::vector<Interval> stack{{a, b, va, vb}};
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    const int count = iv.va - iv.vb;
    if (count <= 0) continue;
    if (count == 1) {
      roots.push_back(bisect(chain.base(), iv.a, iv.b));
      continue;
    }
    if (iv.b - iv.a < kRefineTol * std::max(1.0, std::abs(iv.a)))
      throw IllConditioned("root cluster below resolution near t = " + std::to_string(iv.a));
    auto [mid, vm] = chain.resolved(0.5 * (iv.a + iv.b), 0.01 * (iv.b - iv.a));
    stack.push_back({mid, iv.b, vm, iv.vb});
    stack.push_back({iv.a, mid, iv.va, vm});
  }
}

std::optional<Rational> rationalize(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents h/k.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  std::vector<Rational> convergents{Rational(h, k)};
  for (int i = 0; i < 24 && frac > 1e-13; ++i) {
    const double inv = 1.0 / frac;
    const long a = static_cast<long>(std::floor(inv));
    frac = inv - static_cast<double>(a);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    if (k > 1000000000) break;
    Rational r(h, k);
    r.canonicalize();
    convergents.push_back(r);
  }
  for (const auto& r : convergents)
    if (std::abs(r.get_d() - x) <= 1e-9 * std::max(1.0, std::abs(x))) return r;
  return std::nullopt;
}

}  // namespace

std::vector<RealRoot> real_roots(const UniPoly& u, double lo, double hi) {
  if (u.is_zero()) throw PreconditionError("real_roots of the zero polynomial");
  if (!(lo <= hi)) throw std::invalid_argument("empty root interval");
  std::vector<RealRoot> out;
  const auto factors = squarefree_decomposition(u);
  const Rational lo_exact(lo), hi_exact(hi);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    UniPoly s = factors[i];
    if (s.degree() < 1) continue;
    const int mult = static_cast<int>(i) + 1;
    // Endpoint roots are detected exactly and deflated so Sturm never sees them.
    for (const Rational& end : {lo_exact, hi_exact}) {
      if (s.degree() >= 1 && s.eval(Scalar(end)).is_zero()) {
        out.push_back(RealRoot{end.get_d(), mult});
        s = divmod(s, UniPoly::linear_root(s.field(), Scalar(end))).first;
      }
      if (lo == hi) break;
    }
    if (s.degree() < 1 || lo == hi) continue;
    Dense dense = s.to_double();
    SturmChain chain(dense);
    std::vector<double> roots;
    isolate(chain, lo, hi, roots);
    for (double r : roots) {
      if (r < lo || r > hi) {
        if (r < lo - 1e-10 || r > hi + 1e-10) continue;
        r = std::clamp(r, lo, hi);
      }
      out.push_back(RealRoot{r, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  return out;
}

std::vector<ExactRoot> exact_roots(const UniPoly& u, double lo, double hi) {
  std::vector<ExactRoot> out;
  const Field& f = *u.field();
  for (const auto& root : real_roots(u, lo, hi)) {
    std::vector<Scalar> candidates;
    if (auto r = rationalize(root.value)) candidates.emplace_back(*r);
    if (auto r = rationalize(root.value / f.sqrt_m())) candidates.emplace_back(Rational(0), *r);
    for (const auto& c : candidates) {
      if (!u.eval(c).is_zero()) continue;
      out.push_back(ExactRoot{c, root_multiplicity(u, c)});
      break;
    }
  }
  return out;
}

}  // namespace torus

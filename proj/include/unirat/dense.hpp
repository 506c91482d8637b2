#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"

namespace unirat {

// Dense univariate polynomial over a field-like element type F. F must offer
// zero_like(), one_like(), is_zero(), mul_int(long), inverse() and the usual
// arithmetic operators. Coefficients are stored low to high.
template <class F>
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(std::vector<F> c) : c_(std::move(c)) { trim(); }

  static DensePoly constant(const F& c) { return DensePoly(std::vector<F>{c}); }
  static DensePoly monomial(const F& c, unsigned k) {
    std::vector<F> v(k + 1, c.zero_like());
    v[k] = c;
    return DensePoly(std::move(v));
  }
  // x as a polynomial, with `proto` supplying the coefficient domain.
  static DensePoly x(const F& proto) { return monomial(proto.one_like(), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<F>& coeffs() const { return c_; }
  const F& operator[](std::size_t i) const { return c_[i]; }
  const F& lc() const { return c_.back(); }
  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : c_.front().zero_like(); }

  DensePoly operator-() const {
    DensePoly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
    if (a.c_.size() < b.c_.size()) return b + a;
    auto r = a.c_;
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return DensePoly(std::move(r));
  }
  friend DensePoly operator-(const DensePoly& a, const DensePoly& b) { return a + (-b); }
  friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
    if (a.is_zero() || b.is_zero()) return DensePoly();
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, a.c_[0].zero_like());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return DensePoly(std::move(r));
  }
  DensePoly& operator+=(const DensePoly& o) { return *this = *this + o; }
  DensePoly& operator-=(const DensePoly& o) { return *this = *this - o; }
  DensePoly& operator*=(const DensePoly& o) { return *this = *this * o; }

  DensePoly scale(const F& s) const {
    if (s.is_zero()) return DensePoly();
    DensePoly r(*this);
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }
  DensePoly monic() const {
    if (is_zero()) return *this;
    return scale(lc().inverse());
  }
  DensePoly pow(unsigned k) const {
    DensePoly result = constant(c_.empty() ? F() : c_[0].one_like()), base = *this;
    if (is_zero()) return k ? DensePoly() : result;
    while (k) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return result;
  }

  friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<F> c_;
};

template <class F>
std::pair<DensePoly<F>, DensePoly<F>> divmod(const DensePoly<F>& a, const DensePoly<F>& b) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "univariate division by zero");
  if (a.degree() < b.degree()) return {DensePoly<F>(), a};
  auto r = a.coeffs();
  F inv = b.lc().inverse();
  int db = b.degree();
  std::vector<F> q(a.degree() - db + 1, a.lc().zero_like());
  for (int k = a.degree(); k >= db; --k) {
    if (r[k].is_zero()) continue;
    F c = r[k] * inv;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= c * b[j];
    q[k - db] = c;
  }
  r.resize(db);
  return {DensePoly<F>(std::move(q)), DensePoly<F>(std::move(r))};
}

template <class F>
DensePoly<F> operator%(const DensePoly<F>& a, const DensePoly<F>& b) { return divmod(a, b).second; }

template <class F>
DensePoly<F> derivative(const DensePoly<F>& p) {
  if (p.degree() < 1) return DensePoly<F>();
  std::vector<F> r;
  for (int k = 1; k <= p.degree(); ++k) r.push_back(p[k].mul_int(k));
  return DensePoly<F>(std::move(r));
}

// Monic gcd (zero if both are zero).
template <class F>
DensePoly<F> gcd(DensePoly<F> a, DensePoly<F> b) {
  while (!b.is_zero()) {
    // a nonzero constant remainder settles the gcd without inverting it
    if (b.degree() == 0) return DensePoly<F>::constant(b.lc().one_like());
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// (g, s, t) with s*a + t*b = g, g monic.
template <class F>
std::tuple<DensePoly<F>, DensePoly<F>, DensePoly<F>> ext_gcd(const DensePoly<F>& a, const DensePoly<F>& b) {
  using P = DensePoly<F>;
  const F& proto = a.is_zero() ? b.lc() : a.lc();
  P r0 = a, r1 = b, s0 = P::constant(proto.one_like()), s1, t0, t1 = P::constant(proto.one_like());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
    auto t = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  F inv = r0.lc().inverse();
  return {r0.scale(inv), s0.scale(inv), t0.scale(inv)};
}

template <class F>
F evaluate(const DensePoly<F>& p, const F& x) {
  if (p.is_zero()) return x.zero_like();
  F acc = p.lc();
  for (int k = p.degree() - 1; k >= 0; --k) acc = acc * x + p[k];
  return acc;
}

// p(q(x))
template <class F>
DensePoly<F> compose(const DensePoly<F>& p, const DensePoly<F>& q) {
  if (p.is_zero()) return p;
  DensePoly<F> acc = DensePoly<F>::constant(p.lc());
  for (int k = p.degree() - 1; k >= 0; --k) acc = acc * q + DensePoly<F>::constant(p[k]);
  return acc;
}

// Square-free decomposition over a field of characteristic 0 (Yun).
template <class F>
std::vector<std::pair<DensePoly<F>, unsigned>> squarefree_decomposition(const DensePoly<F>& p) {
  std::vector<std::pair<DensePoly<F>, unsigned>> out;
  if (p.degree() < 1) return out;
  auto a = p.monic();
  auto b = derivative(a);
  auto c = gcd(a, b);
  auto w = divmod(a, c).first;
  auto y = divmod(b, c).first;
  auto z = y - derivative(w);
  unsigned i = 1;
  while (w.degree() > 0) {
    auto g = gcd(w, z);
    if (g.degree() > 0) out.push_back({g, i});
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = y - derivative(w);
    ++i;
  }
  return out;
}

template <class F>
std::string to_string(const DensePoly<F>& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int k = p.degree(); k >= 0; --k) {
    if (p[k].is_zero()) continue;
    auto c = to_string(p[k]);
    bool compound = c.find_first_of("+- ", 1) != std::string::npos;
    std::string term;
    if (k == 0) {
      term = compound ? "(" + c + ")" : c;
    } else {
      std::string mono = var + (k > 1 ? "^" + std::to_string(k) : "");
      if (c == "1") term = mono;
      else if (c == "-1") term = "-" + mono;
      else term = (compound ? "(" + c + ")" : c) + "*" + mono;
    }
    if (s.empty()) s = term;
    else if (term[0] == '-') s += " - " + term.substr(1);
    else s += " + " + term;
  }
  return s;
}

}  // namespace unirat

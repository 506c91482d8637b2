#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcd.hpp"

namespace unirat {

// Reduced quotient num/den with den having lex-leading coefficient 1.
template <class C>
class RatFunc {
 public:
  using Poly = MultiPoly<C>;

  RatFunc() = default;
  RatFunc(Poly num)  // NOLINT: polynomials embed implicitly
      : num_(std::move(num)), den_(num_.one()) {}
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFunc from_reduced(Poly num, Poly den) {
    RatFunc r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const Universe& universe() const { return num_.universe(); }
  const CoefField& field() const { return num_.field(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  RatFunc zero_like() const { return RatFunc(num_.zero()); }
  RatFunc one_like() const { return RatFunc(num_.one()); }
  RatFunc constant_like(long c) const { return RatFunc(num_.constant_like(num_.make_coef(c))); }
  RatFunc mul_int(long k) const { return from_reduced_scaled(num_.scale(num_.make_coef(k)), den_); }

  RatFunc operator-() const { return from_reduced(-num_, den_); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return add(a, b, false); }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return add(a, b, true); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return a.zero_like();
    if (a.is_polynomial() && b.is_polynomial()) return from_reduced(a.num_ * b.num_, a.den_);
    auto g1 = gcd(a.num_, b.den_);
    auto g2 = gcd(b.num_, a.den_);
    auto n = divide_exact(a.num_, g1) * divide_exact(b.num_, g2);
    auto d = divide_exact(a.den_, g2) * divide_exact(b.den_, g1);
    return from_reduced_scaled(std::move(n), std::move(d));
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of the zero rational function");
    return from_reduced_scaled(den_, num_);
  }
  RatFunc pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    return from_reduced(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  void normalize() {
    num_.check_compatible(den_);
    if (den_.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator");
    if (num_.is_zero()) {
      den_ = num_.one();
      return;
    }
    if (!den_.is_constant()) {
      auto g = gcd(num_, den_);
      if (!g.is_one()) {
        num_ = divide_exact(num_, g);
        den_ = divide_exact(den_, g);
      }
    }
    scale_den();
  }
  void scale_den() {
    if (!CoefOps<C>::is_one(den_.leading_coefficient())) {
      auto inv = CoefOps<C>::inverse(den_.leading_coefficient());
      num_ = num_.scale(inv);
      den_ = den_.scale(inv);
    }
  }
  // num, den already coprime; only rescale.
  static RatFunc from_reduced_scaled(Poly n, Poly d) {
    RatFunc r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    if (r.num_.is_zero()) r.den_ = r.num_.one();
    else r.scale_den();
    return r;
  }
  static RatFunc add(const RatFunc& a, const RatFunc& b, bool sub) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return sub ? -b : b;
    if (a.den_ == b.den_) {
      auto n = sub ? a.num_ - b.num_ : a.num_ + b.num_;
      if (a.is_polynomial()) return from_reduced(std::move(n), a.den_);
      return RatFunc(std::move(n), a.den_);
    }
    auto g = gcd(a.den_, b.den_);
    auto ad = divide_exact(a.den_, g), bd = divide_exact(b.den_, g);
    auto n = sub ? a.num_ * bd - b.num_ * ad : a.num_ * bd + b.num_ * ad;
    if (n.is_zero()) return a.zero_like();
    auto d = ad * b.den_;
    if (g.is_one()) return from_reduced_scaled(std::move(n), std::move(d));
    auto h = gcd(n, g);
    if (!h.is_one()) {
      n = divide_exact(n, h);
      d = divide_exact(d, h);
    }
    return from_reduced_scaled(std::move(n), std::move(d));
  }

  Poly num_;
  Poly den_;
};

using RatQ = RatFunc<Rational>;

template <class C>
std::string to_string(const RatFunc<C>& r) {
  if (r.is_polynomial()) return to_string(r.num());
  auto wrap = [](const MultiPoly<C>& p) {
    auto s = to_string(p);
    return p.nterms() > 1 || s.find_first_of("*/") != std::string::npos ? "(" + s + ")" : s;
  };
  return wrap(r.num()) + "/" + wrap(r.den());
}

template <class C>
std::ostream& operator<<(std::ostream& os, const RatFunc<C>& r) { return os << to_string(r); }

template <class C>
RatFunc<C> remap(const RatFunc<C>& r, const Universe& target) {
  return RatFunc<C>::from_reduced(remap(r.num(), target), remap(r.den(), target));
}

// Substitutes images[i] (rational functions over a common target universe)
// for variable i of p, using a single common denominator per variable.
template <class C>
RatFunc<C> substitute(const MultiPoly<C>& p, const std::vector<RatFunc<C>>& images,
                      const Universe& target) {
  if (images.size() != p.nvars()) fail(ErrorCode::InvalidArgument, "substitute: wrong number of bindings");
  const CoefField& f = p.field();
  using Poly = MultiPoly<C>;
  if (p.is_zero()) return RatFunc<C>(Poly(target, f));
  std::vector<unsigned> maxdeg(p.nvars(), 0);
  for (std::size_t i = 0; i < p.nvars(); ++i) maxdeg[i] = p.degree(i);
  std::vector<std::vector<Poly>> npow(p.nvars()), dpow(p.nvars());
  auto pw = [&](std::vector<Poly>& cache, const Poly& base, unsigned k) -> const Poly& {
    if (cache.empty()) cache.push_back(Poly::constant(target, f, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * base);
    return cache[k];
  };
  Poly num(target, f);
  for (const auto& t : p.terms()) {
    auto term = Poly::constant(target, f, t.coef);
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (!maxdeg[i]) continue;
      unsigned e = t.mono[i];
      if (e) term *= pw(npow[i], images[i].num(), e);
      if (maxdeg[i] - e && !images[i].is_polynomial()) term *= pw(dpow[i], images[i].den(), maxdeg[i] - e);
    }
    num += term;
  }
  Poly den = Poly::constant(target, f, 1);
  for (std::size_t i = 0; i < p.nvars(); ++i)
    if (maxdeg[i] && !images[i].is_polynomial()) den *= pw(dpow[i], images[i].den(), maxdeg[i]);
  return RatFunc<C>(std::move(num), std::move(den));
}

template <class C>
RatFunc<C> substitute(const RatFunc<C>& r, const std::vector<RatFunc<C>>& images, const Universe& target) {
  auto d = substitute(r.den(), images, target);
  if (d.is_zero()) fail(ErrorCode::DivisionByZero, "denominator vanishes under substitution");
  return substitute(r.num(), images, target) / d;
}

// Name-keyed bindings; unbound variables map to the same-named variable of
// `target` (identity binding).
template <class C>
std::vector<RatFunc<C>> resolve_bindings(const Universe& source, const CoefField& f,
                                         const std::map<std::string, RatFunc<C>>& bindings,
                                         const Universe& target) {
  std::vector<RatFunc<C>> images;
  images.reserve(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    auto it = bindings.find(source.name(i));
    if (it != bindings.end()) {
      if (!(it->second.universe() == target))
        fail(ErrorCode::UniverseMismatch, "binding for '" + source.name(i) + "' lives in another universe");
      images.push_back(it->second);
    } else if (auto j = target.find(source.name(i))) {
      images.push_back(RatFunc<C>(MultiPoly<C>::variable(target, f, *j)));
    } else {
      images.push_back(RatFunc<C>(MultiPoly<C>(target, f)));  // only valid for absent variables
    }
  }
  return images;
}

template <class C>
RatFunc<C> substitute(const MultiPoly<C>& p, const std::map<std::string, RatFunc<C>>& bindings,
                      const Universe& target) {
  auto sup = p.support();
  for (std::size_t i = 0; i < p.nvars(); ++i)
    if (sup[i] && !bindings.count(p.universe().name(i)) && !target.contains(p.universe().name(i)))
      fail(ErrorCode::UnknownVariable, "no binding for variable '" + p.universe().name(i) + "'");
  auto images = resolve_bindings(p.universe(), p.field(), bindings, target);
  for (std::size_t i = 0; i < images.size(); ++i)
    if (!sup[i]) images[i] = RatFunc<C>(MultiPoly<C>(target, p.field()));
  return substitute(p, images, target);
}

template <class C>
RatFunc<C> substitute(const RatFunc<C>& r, const std::map<std::string, RatFunc<C>>& bindings,
                      const Universe& target) {
  auto d = substitute(r.den(), bindings, target);
  if (d.is_zero()) fail(ErrorCode::DivisionByZero, "denominator vanishes under substitution");
  return substitute(r.num(), bindings, target) / d;
}

}  // namespace unirat

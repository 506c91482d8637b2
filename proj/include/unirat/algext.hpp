#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dense.hpp"
#include "ratfunc.hpp"

namespace unirat {

using UPolyE = DensePoly<RatQ>;  // univariate over E = Q(t_1..t_n)

namespace detail {

// f with denominators cleared, as a polynomial in tags + x (x last).
inline QPoly cleared_numerator(const UPolyE& f, const Universe& big) {
  const auto& tags = f.lc().universe();
  std::size_t xv = tags.size();
  QPoly D = QPoly::constant(tags, CoefField::rationals(), 1);
  for (const auto& c : f.coeffs())
    if (!c.den().is_constant()) D = lcm(D, c.den());
  QPoly F(big, CoefField::rationals());
  for (int k = 0; k <= f.degree(); ++k) {
    if (f[k].is_zero()) continue;
    F += remap(f[k].num() * divide_exact(D, f[k].den()), big) *
         QPoly::variable(big, CoefField::rationals(), xv, static_cast<unsigned>(k));
  }
  return F;
}

inline UPolyE from_cleared(const QPoly& g, const Universe& tags) {
  std::vector<RatQ> cs;
  for (const auto& c : coefficients_in(g, tags.size())) cs.push_back(RatQ(remap(c, tags)));
  return UPolyE(std::move(cs));
}

}  // namespace detail

// Monic gcd over E computed in the polynomial ring Q[tags, x].
inline UPolyE gcd(const UPolyE& a, const UPolyE& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return UPolyE::constant(a.lc().one_like());
  const auto& tags = a.lc().universe();
  auto big = tags.extended({fresh_name(tags, "_x")});
  auto g = gcd(detail::cleared_numerator(a, big), detail::cleared_numerator(b, big));
  return detail::from_cleared(primitive_part_in(g, tags.size()), tags).monic();
}

// E[z]/(p) with E = Q(tags) and p monic of positive degree.
class AlgExt {
 public:
  AlgExt(Universe tags, UPolyE minpoly, std::string alpha_name = "alpha")
      : tags_(std::move(tags)), p_(minpoly.monic()), name_(std::move(alpha_name)) {
    if (p_.degree() < 1) fail(ErrorCode::InvalidArgument, "extension polynomial must have positive degree");
    for (const auto& c : p_.coeffs())
      if (!(c.universe() == tags_)) fail(ErrorCode::UniverseMismatch, "extension coefficients outside the tag field");
  }

  const Universe& tags() const { return tags_; }
  const UPolyE& minpoly() const { return p_; }
  int degree() const { return p_.degree(); }
  const std::string& alpha_name() const { return name_; }

  RatQ base_zero() const { return RatQ(QPoly(tags_)); }
  RatQ base_one() const { return RatQ(QPoly::constant(tags_, CoefField::rationals(), 1)); }
  RatQ base_const(long c) const { return RatQ(QPoly::constant(tags_, CoefField::rationals(), c)); }

 private:
  Universe tags_;
  UPolyE p_;
  std::string name_;
};

using AlgExtPtr = std::shared_ptr<const AlgExt>;

class AlgExtElem {
 public:
  AlgExtElem() = default;
  AlgExtElem(AlgExtPtr ext, std::vector<RatQ> coeffs) : ext_(std::move(ext)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) > ext_->degree()) {
      auto r = UPolyE(c_) % ext_->minpoly();
      c_ = r.coeffs();
    }
    c_.resize(ext_->degree(), ext_->base_zero());
  }
  static AlgExtElem from_poly(AlgExtPtr ext, const UPolyE& p) {
    auto r = p % ext->minpoly();
    return AlgExtElem(std::move(ext), r.coeffs());
  }
  static AlgExtElem from_base(AlgExtPtr ext, const RatQ& c) { return AlgExtElem(std::move(ext), {c}); }
  static AlgExtElem generator(AlgExtPtr ext) {
    if (ext->degree() == 1) return from_poly(ext, UPolyE::x(ext->base_one()));
    return AlgExtElem(ext, {ext->base_zero(), ext->base_one()});
  }

  const AlgExtPtr& ext() const { return ext_; }
  const std::vector<RatQ>& coeffs() const { return c_; }
  const RatQ& operator[](std::size_t i) const { return c_[i]; }
  UPolyE as_poly() const { return UPolyE(c_); }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return true;
  }
  // In E (no alpha terms).
  bool is_base() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }
  bool is_one() const { return is_base() && c_[0].is_one(); }

  AlgExtElem zero_like() const { return AlgExtElem(ext_, {}); }
  AlgExtElem one_like() const { return from_base(ext_, ext_->base_one()); }
  AlgExtElem mul_int(long k) const {
    auto r = *this;
    for (auto& c : r.c_) c = c.mul_int(k);
    return r;
  }

  AlgExtElem operator-() const {
    auto r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend AlgExtElem operator+(const AlgExtElem& a, const AlgExtElem& b) {
    check(a, b);
    auto r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend AlgExtElem operator-(const AlgExtElem& a, const AlgExtElem& b) {
    check(a, b);
    auto r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  friend AlgExtElem operator*(const AlgExtElem& a, const AlgExtElem& b) {
    check(a, b);
    if (a.is_base()) return b.scale(a.c_[0]);
    if (b.is_base()) return a.scale(b.c_[0]);
    return from_poly(a.ext_, a.as_poly() * b.as_poly());
  }
  friend AlgExtElem operator/(const AlgExtElem& a, const AlgExtElem& b) { return a * b.inverse(); }
  AlgExtElem& operator+=(const AlgExtElem& o) { return *this = *this + o; }
  AlgExtElem& operator-=(const AlgExtElem& o) { return *this = *this - o; }
  AlgExtElem& operator*=(const AlgExtElem& o) { return *this = *this * o; }

  AlgExtElem scale(const RatQ& s) const {
    auto r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
  }
  AlgExtElem pow(unsigned k) const {
    AlgExtElem result = one_like(), base = *this;
    while (k) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return result;
  }

  // Inverse via the extended Euclidean algorithm against the modulus.
  AlgExtElem inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero in an algebraic extension");
    if (is_base()) return from_base(ext_, c_[0].inverse());
    auto [g, s, t] = ext_gcd(as_poly(), ext_->minpoly());
    if (g.degree() > 0)
      fail(ErrorCode::IntegrityFailure, "element is a zero divisor: the extension polynomial is reducible");
    return from_poly(ext_, s);
  }

  friend bool operator==(const AlgExtElem& a, const AlgExtElem& b) { return a.ext_ == b.ext_ && a.c_ == b.c_; }

 private:
  static void check(const AlgExtElem& a, const AlgExtElem& b) {
    if (a.ext_ != b.ext_) fail(ErrorCode::FieldMismatch, "elements of different algebraic extensions");
  }

  AlgExtPtr ext_;
  std::vector<RatQ> c_;
};

inline std::string to_string(const AlgExtElem& a) {
  if (a.is_base()) return to_string(a[0]);
  return to_string(a.as_poly(), a.ext()->alpha_name());
}

using UPolyExt = DensePoly<AlgExtElem>;  // univariate over E[alpha]

inline UPolyExt embed(const AlgExtPtr& ext, const UPolyE& p) {
  std::vector<AlgExtElem> c;
  for (const auto& x : p.coeffs()) c.push_back(AlgExtElem::from_base(ext, x));
  return UPolyExt(std::move(c));
}

// f(x + c)
inline UPolyExt shift(const UPolyExt& f, const AlgExtElem& c) {
  return compose(f, UPolyExt({c, c.one_like()}));
}

namespace detail {

// lcm of the denominators of a list of rational functions.
inline QPoly common_denominator(const std::vector<const RatQ*>& xs, const Universe& u) {
  QPoly d = QPoly::constant(u, CoefField::rationals(), 1);
  for (auto* x : xs)
    if (!x->den().is_constant()) d = lcm(d, x->den());
  return d;
}

}  // namespace detail

// Norm N(f) = Res_t(p(t), f(t, x)) as a polynomial over E.
inline UPolyE norm_of(const UPolyExt& f) {
  if (f.is_zero()) return UPolyE();
  const auto& ext = f.lc().ext();
  const auto& tags = ext->tags();
  auto a_name = fresh_name(tags, "_a");
  auto big0 = tags.extended({a_name});
  auto x_name = fresh_name(big0, "_x");
  auto big = big0.extended({x_name});
  std::size_t av = tags.size(), xv = tags.size() + 1;
  auto Q = CoefField::rationals();

  std::vector<const RatQ*> fden, pden;
  for (const auto& c : f.coeffs())
    for (const auto& r : c.coeffs()) fden.push_back(&r);
  for (const auto& r : ext->minpoly().coeffs()) pden.push_back(&r);
  QPoly D = detail::common_denominator(fden, tags);
  QPoly Dp = detail::common_denominator(pden, tags);

  auto lift_coeff = [&](const RatQ& r, const QPoly& den) {
    return remap(r.num() * divide_exact(den, r.den()), big);
  };
  QPoly F(big, Q);
  for (int k = 0; k <= f.degree(); ++k)
    for (int j = 0; j < ext->degree(); ++j) {
      const auto& r = f[k][j];
      if (r.is_zero()) continue;
      F += lift_coeff(r, D) * QPoly::variable(big, Q, av, j) * QPoly::variable(big, Q, xv, k);
    }
  QPoly P(big, Q);
  for (int j = 0; j <= ext->degree(); ++j) {
    const auto& r = ext->minpoly()[j];
    if (r.is_zero()) continue;
    P += lift_coeff(r, Dp) * QPoly::variable(big, Q, av, j);
  }
  QPoly R = resultant(P, F, av);
  unsigned fa = F.degree(av);
  QPoly scale = Dp.pow(fa) * D.pow(static_cast<unsigned>(ext->degree()));
  RatQ sc(scale);
  auto cs = coefficients_in(R, xv);
  std::vector<RatQ> out;
  for (auto& c : cs) out.push_back(RatQ(remap(c, tags)) / sc);
  return UPolyE(std::move(out));
}

}  // namespace unirat

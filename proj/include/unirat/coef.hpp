#pragma once

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>

#include <gmpxx.h>

#include "errors.hpp"

namespace unirat {

using Integer = mpz_class;
using Rational = mpq_class;

// Element of Z/pZ. A modulus of 0 marks an integer literal that has not been
// bound to a field yet; it adopts the modulus of the first bound operand.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t v) : v_(v) {}  // NOLINT: implicit literal
  Fp(std::int64_t v, std::uint32_t p) : v_(reduce(v, p)), p_(p) {}

  std::uint32_t modulus() const { return p_; }
  std::int64_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    auto p = join(a, b);
    return p ? Fp(a.v_ + b.v_, p) : Fp(a.v_ + b.v_);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    auto p = join(a, b);
    return p ? Fp(a.v_ - b.v_, p) : Fp(a.v_ - b.v_);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    auto p = join(a, b);
    if (!p) return Fp(a.v_ * b.v_);
    std::int64_t x = reduce(a.v_, p), y = reduce(b.v_, p);
    return Fp(static_cast<std::int64_t>((static_cast<unsigned __int128>(x) * y) % p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse_with(a.p_); }
  Fp operator-() const { return p_ ? Fp(-v_, p_) : Fp(-v_); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    auto p = join(a, b);
    if (!p) return a.v_ == b.v_;
    return reduce(a.v_, p) == reduce(b.v_, p);
  }

  Fp inverse() const { return inverse_with(0); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

 private:
  static std::int64_t reduce(std::int64_t v, std::uint32_t p) {
    if (!p) return v;
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return r < 0 ? r + p : r;
  }
  static std::uint32_t join(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_)
      fail(ErrorCode::FieldMismatch, "prime field moduli differ");
    return a.p_ ? a.p_ : b.p_;
  }
  Fp inverse_with(std::uint32_t other) const {
    std::uint32_t p = p_ ? p_ : other;
    if (!p) fail(ErrorCode::InvalidArgument, "inverse of an unbound F_p literal");
    std::int64_t a = reduce(v_, p);
    if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in F_p");
    std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1) {
      std::int64_t q = r0 / r1;
      std::int64_t t = r0 - q * r1; r0 = r1; r1 = t;
      t = s0 - q * s1; s0 = s1; s1 = t;
    }
    return Fp(s0, p);
  }

  std::int64_t v_ = 0;
  std::uint32_t p_ = 0;
};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class CoefField {
 public:
  enum class Kind { Rationals, PrimeField };

  static CoefField rationals() { return CoefField(); }
  static CoefField prime(std::uint32_t p) {
    if (p > (1u << 31) || !is_prime_u64(p))
      fail(ErrorCode::InvalidArgument, "modulus " + std::to_string(p) + " is not a prime <= 2^31");
    CoefField f;
    f.kind_ = Kind::PrimeField;
    f.p_ = p;
    return f;
  }

  Kind kind() const { return kind_; }
  bool is_rationals() const { return kind_ == Kind::Rationals; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const { return is_rationals() ? "QQ" : "GF(" + std::to_string(p_) + ")"; }

  friend bool operator==(const CoefField&, const CoefField&) = default;

 private:
  Kind kind_ = Kind::Rationals;
  std::uint32_t p_ = 0;
};

// Per-type coefficient helpers used by the generic polynomial code.
template <class C>
struct CoefOps;

template <>
struct CoefOps<Rational> {
  static Rational from_int(long n, const CoefField&) { return Rational(n); }
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  static bool is_one(const Rational& c) { return c == 1; }
  static Rational inverse(const Rational& c) {
    if (sgn(c) == 0) fail(ErrorCode::DivisionByZero, "division by zero");
    return 1 / c;
  }
  static std::string to_string(const Rational& c) { return c.get_str(); }
  static bool is_negative(const Rational& c) { return sgn(c) < 0; }
};

template <>
struct CoefOps<Fp> {
  static Fp from_int(long n, const CoefField& f) { return Fp(n, f.characteristic()); }
  static bool is_zero(const Fp& c) { return c.is_zero(); }
  static bool is_one(const Fp& c) { return c.is_one(); }
  static Fp inverse(const Fp& c) { return c.inverse(); }
  static std::string to_string(const Fp& c) { return std::to_string(c.value()); }
  static bool is_negative(const Fp&) { return false; }
};

template <class C>
bool coef_is_zero(const C& c) { return CoefOps<C>::is_zero(c); }

}  // namespace unirat

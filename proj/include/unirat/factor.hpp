#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "algext.hpp"
#include "gcd.hpp"

namespace unirat {

// unit * prod factor^mult
template <class P, class U>
struct Factorization {
  U unit;
  std::vector<std::pair<P, unsigned>> factors;

  std::size_t count() const {
    std::size_t n = 0;
    for (const auto& f : factors) n += f.second;
    return n;
  }
};

// ---------------------------------------------------------------- F_p[x]

// Dense univariate polynomial over Z/pZ, coefficients low to high in [0, p).
class UPolyZp {
 public:
  UPolyZp() = default;
  UPolyZp(std::uint64_t p, std::vector<std::uint64_t> c) : p_(p), c_(std::move(c)) {
    for (auto& x : c_) x %= p_;
    trim();
  }
  static UPolyZp from_signed(std::uint64_t p, const std::vector<long>& c) {
    std::vector<std::uint64_t> v;
    for (long x : c) {
      long r = x % static_cast<long>(p);
      v.push_back(static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(p) : r));
    }
    return UPolyZp(p, v);
  }

  std::uint64_t modulus() const { return p_; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::uint64_t lc() const { return c_.back(); }
  std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  friend bool operator==(const UPolyZp& a, const UPolyZp& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> c_;
};

inline std::string to_string(const UPolyZp& f, const std::string& var = "x") {
  if (f.is_zero()) return "0";
  std::string s;
  for (int k = f.degree(); k >= 0; --k) {
    if (f[k] == 0) continue;
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    std::string term = (f[k] == 1 && k > 0) ? mono : std::to_string(f[k]) + (k > 0 ? "*" + mono : "");
    s += (s.empty() ? "" : " + ") + term;
  }
  return s;
}

namespace detail::zp {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;

inline void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const Vec& a) { return static_cast<int>(a.size()) - 1; }
inline u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
inline u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}
inline u64 invm(u64 a, u64 p) {
  if (a % p == 0) fail(ErrorCode::DivisionByZero, "inverse of zero modulo p");
  return powm(a, p - 2, p);
}

inline Vec add(const Vec& a, const Vec& b, u64 p) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}
inline Vec sub(const Vec& a, const Vec& b, u64 p) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}
inline Vec mul(const Vec& a, const Vec& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
      if (acc[i + j] >> 120) acc[i + j] %= p;
    }
  }
  Vec r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<u64>(acc[i] % p);
  trim(r);
  return r;
}
inline Vec scale(const Vec& a, u64 s, u64 p) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulm(a[i], s, p);
  trim(r);
  return r;
}
inline Vec monic(const Vec& a, u64 p) { return a.empty() ? a : scale(a, invm(a.back(), p), p); }

inline std::pair<Vec, Vec> divmod(const Vec& a, const Vec& b, u64 p) {
  if (b.empty()) fail(ErrorCode::DivisionByZero, "polynomial division by zero modulo p");
  if (a.size() < b.size()) return {{}, a};
  Vec r = a;
  u64 inv = invm(b.back(), p);
  int db = deg(b);
  Vec q(a.size() - b.size() + 1, 0);
  for (int k = deg(a); k >= db; --k) {
    u64 c = mulm(r[k], inv, p);
    if (!c) continue;
    q[k - db] = c;
    for (int j = 0; j <= db; ++j) r[k - db + j] = (r[k - db + j] + p - mulm(c, b[j], p)) % p;
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}
inline Vec mod(const Vec& a, const Vec& b, u64 p) { return divmod(a, b, p).second; }
inline Vec quo(const Vec& a, const Vec& b, u64 p) { return divmod(a, b, p).first; }

inline Vec gcd(Vec a, Vec b, u64 p) {
  while (!b.empty()) {
    Vec r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

// (g, s, t) with s*a + t*b = g monic.
inline std::tuple<Vec, Vec, Vec> ext_gcd(const Vec& a, const Vec& b, u64 p) {
  Vec r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    Vec s = sub(s0, mul(q, s1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s);
    Vec t = sub(t0, mul(q, t1, p), p);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  u64 inv = invm(r0.back(), p);
  return {scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)};
}

inline Vec derivative(const Vec& a, u64 p) {
  Vec r;
  for (std::size_t k = 1; k < a.size(); ++k) r.push_back(mulm(a[k], k % p, p));
  trim(r);
  return r;
}

// base^e mod f, e given as a GMP integer.
inline Vec powmod(Vec base, const mpz_class& e, const Vec& f, u64 p) {
  Vec r{1};
  r = mod(r, f, p);
  base = mod(base, f, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mod(mul(r, r, p), f, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, base, p), f, p);
  }
  return r;
}

// Square-free factorization of a monic polynomial, including p-th power parts.
inline std::vector<std::pair<Vec, unsigned>> squarefree(const Vec& f, u64 p) {
  std::vector<std::pair<Vec, unsigned>> out;
  if (deg(f) < 1) return out;
  Vec c = gcd(f, derivative(f, p), p);
  Vec w = quo(f, c, p);
  unsigned i = 1;
  while (deg(w) > 0) {
    Vec y = gcd(w, c, p);
    Vec fac = quo(w, y, p);
    if (deg(fac) > 0) out.push_back({fac, i});
    w = y;
    c = quo(c, y, p);
    ++i;
  }
  if (deg(c) > 0) {
    Vec root;
    for (std::size_t k = 0; k < c.size(); k += p) root.push_back(c[k]);
    for (auto& [g, m] : squarefree(root, p)) out.push_back({g, m * static_cast<unsigned>(p)});
  }
  return out;
}

// Distinct-degree factorization of a square-free monic polynomial.
inline std::vector<std::pair<Vec, int>> distinct_degree(Vec f, u64 p) {
  std::vector<std::pair<Vec, int>> out;
  Vec x{0, 1};
  Vec h = mod(x, f, p);
  int d = 0;
  mpz_class pe(static_cast<unsigned long>(p));
  while (deg(f) >= 2 * (d + 1)) {
    ++d;
    h = powmod(h, pe, f, p);
    Vec g = gcd(f, sub(h, x, p), p);
    if (deg(g) > 0) {
      out.push_back({g, d});
      f = quo(f, g, p);
      h = mod(h, f, p);
    }
  }
  if (deg(f) > 0) out.push_back({f, deg(f)});
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus); trace map for p = 2.
inline void equal_degree(const Vec& f, int d, u64 p, std::mt19937_64& rng, std::vector<Vec>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  std::uniform_int_distribution<u64> coef(0, p - 1);
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  for (;;) {
    Vec a(deg(f));
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (deg(a) < 1) continue;
    Vec b;
    if (p == 2) {
      Vec t = a, acc = a;
      for (int i = 1; i < d; ++i) {
        t = mod(mul(t, t, p), f, p);
        acc = add(acc, t, p);
      }
      b = acc;
    } else {
      b = sub(powmod(a, e, f, p), Vec{1}, p);
    }
    Vec g = gcd(f, b, p);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      equal_degree(g, d, p, rng, out);
      equal_degree(quo(f, g, p), d, p, rng, out);
      return;
    }
  }
}

inline bool vec_less(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

// Monic irreducible factors of a square-free monic polynomial.
inline std::vector<Vec> factor_squarefree(const Vec& f, u64 p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec> out;
  for (auto& [g, d] : distinct_degree(f, p)) equal_degree(g, d, p, rng, out);
  std::sort(out.begin(), out.end(), vec_less);
  return out;
}

}  // namespace detail::zp

// Complete factorization over F_p: monic irreducible factors with multiplicities.
inline Factorization<UPolyZp, std::uint64_t> factor_univar_primefield(const UPolyZp& f, std::uint64_t seed = 1) {
  namespace zp = detail::zp;
  std::uint64_t p = f.modulus();
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
  if (p < 2 || p > (1ull << 31) || !is_prime_u64(p)) fail(ErrorCode::InvalidArgument, "modulus must be a prime <= 2^31");
  Factorization<UPolyZp, std::uint64_t> out;
  out.unit = f.lc();
  auto m = zp::monic(f.coeffs(), p);
  std::vector<std::pair<zp::Vec, unsigned>> all;
  for (auto& [g, mult] : zp::squarefree(m, p))
    for (auto& h : zp::factor_squarefree(g, p, seed)) all.push_back({h, mult});
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return zp::vec_less(a.first, b.first);
    return a.second < b.second;
  });
  for (auto& [h, mult] : all) out.factors.push_back({UPolyZp(p, h), mult});
  return out;
}

// ---------------------------------------------------------------- Z[x]

namespace detail::zx {

using Vec = std::vector<Integer>;

inline void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const Vec& a) { return static_cast<int>(a.size()) - 1; }

inline Vec mul_naive(const Vec& a, const Vec& b) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  trim(r);
  return r;
}

// Product of polynomials with non-negative coefficients by packing each into
// one big integer, so GMP's fast multiplication does the work.
inline Vec mul_packed(const Vec& a, const Vec& b) {
  std::size_t ba = 0, bb = 0;
  for (const auto& c : a) ba = std::max(ba, mpz_sizeinbase(c.get_mpz_t(), 2));
  for (const auto& c : b) bb = std::max(bb, mpz_sizeinbase(c.get_mpz_t(), 2));
  std::size_t n = std::min(a.size(), b.size());
  std::size_t slot = ba + bb + 2;
  while ((std::size_t{1} << (slot - ba - bb - 1)) <= n) ++slot;
  auto pack = [slot](const Vec& v) {
    Integer r = 0;
    for (std::size_t k = v.size(); k-- > 0;) {
      mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), slot);
      r += v[k];
    }
    return r;
  };
  Integer prod = pack(a) * pack(b);
  Vec r(a.size() + b.size() - 1);
  for (std::size_t k = 0; k < r.size(); ++k) {
    mpz_fdiv_r_2exp(r[k].get_mpz_t(), prod.get_mpz_t(), slot);
    mpz_fdiv_q_2exp(prod.get_mpz_t(), prod.get_mpz_t(), slot);
  }
  trim(r);
  return r;
}

inline Vec mul(const Vec& a, const Vec& b) {
  if (a.empty() || b.empty()) return {};
  if (std::min(a.size(), b.size()) < 16) return mul_naive(a, b);
  bool nonneg = true;
  for (const auto& c : a) nonneg = nonneg && c >= 0;
  for (const auto& c : b) nonneg = nonneg && c >= 0;
  if (nonneg) return mul_packed(a, b);
  // split into positive and negative parts
  auto split = [](const Vec& v, Vec& pos, Vec& neg) {
    pos.assign(v.size(), 0);
    neg.assign(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) (v[i] >= 0 ? pos[i] : neg[i]) = abs(v[i]);
    trim(pos);
    trim(neg);
  };
  Vec ap, an, bp, bn;
  split(a, ap, an);
  split(b, bp, bn);
  auto m = [](const Vec& x, const Vec& y) { return (x.empty() || y.empty()) ? Vec{} : mul_packed(x, y); };
  Vec pos = m(ap, bp), neg = m(ap, bn), pos2 = m(an, bn), neg2 = m(an, bp);
  Vec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < pos.size(); ++i) r[i] += pos[i];
  for (std::size_t i = 0; i < pos2.size(); ++i) r[i] += pos2[i];
  for (std::size_t i = 0; i < neg.size(); ++i) r[i] -= neg[i];
  for (std::size_t i = 0; i < neg2.size(); ++i) r[i] -= neg2[i];
  trim(r);
  return r;
}
inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}
inline Vec add(const Vec& a, const Vec& b) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}
inline Vec scale(const Vec& a, const Integer& s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  trim(r);
  return r;
}
// Reduce to [0, m).
inline Vec reduce(const Vec& a, const Integer& m) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
  trim(r);
  return r;
}
// Reduce to (-m/2, m/2].
inline Vec symmetric(const Vec& a, const Integer& m) {
  Vec r = reduce(a, m);
  Integer half = m / 2;
  for (auto& c : r)
    if (c > half) c -= m;
  trim(r);
  return r;
}
inline Integer content(const Vec& a) {
  Integer g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}
// Content 1 and positive leading coefficient.
inline Vec primitive(const Vec& a) {
  if (a.empty()) return a;
  Integer g = content(a);
  if (a.back() < 0) g = -g;
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_divexact(r[i].get_mpz_t(), a[i].get_mpz_t(), g.get_mpz_t());
  return r;
}

// Division by a monic polynomial modulo m (coefficients in [0, m)).
inline std::pair<Vec, Vec> divmod_monic(const Vec& a, const Vec& b, const Integer& m) {
  if (a.size() < b.size()) return {{}, reduce(a, m)};
  Vec r = reduce(a, m);
  r.resize(a.size(), 0);
  int db = deg(b);
  Vec q(a.size() - b.size() + 1, 0);
  for (int k = deg(a); k >= db; --k) {
    Integer c;
    mpz_fdiv_r(c.get_mpz_t(), r[k].get_mpz_t(), m.get_mpz_t());
    if (c == 0) continue;
    q[k - db] = c;
    for (int j = 0; j < db; ++j) mpz_submul(r[k - db + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
  }
  r.resize(db);
  return {reduce(q, m), reduce(r, m)};
}

// Exact division over Z.
inline std::optional<Vec> divide(const Vec& a, const Vec& b) {
  if (b.empty()) return std::nullopt;
  if (a.empty()) return Vec{};
  if (a.size() < b.size()) return std::nullopt;
  Vec r = a;
  int db = deg(b);
  Vec q(a.size() - b.size() + 1, 0);
  for (int k = deg(a); k >= db; --k) {
    if (r[k] == 0) continue;
    if (!mpz_divisible_p(r[k].get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    Integer c;
    mpz_divexact(c.get_mpz_t(), r[k].get_mpz_t(), b.back().get_mpz_t());
    q[k - db] = c;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= c * b[j];
  }
  for (const auto& c : r)
    if (c != 0) return std::nullopt;
  trim(q);
  return q;
}

inline detail::zp::Vec to_zp(const Vec& a, std::uint64_t p) {
  detail::zp::Vec r(a.size());
  Integer m(static_cast<unsigned long>(p)), t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_fdiv_r(t.get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
    r[i] = t.get_ui();
  }
  detail::zp::trim(r);
  return r;
}
inline Vec from_zp(const detail::zp::Vec& a) {
  Vec r;
  for (auto c : a) r.push_back(Integer(static_cast<unsigned long>(c)));
  return r;
}

// Quadratic Hensel step (modulus m -> m^2): f = g*h mod m, s*g + t*h = 1 mod m, h monic.
inline void hensel_step(const Vec& f, Vec& g, Vec& h, Vec& s, Vec& t, const Integer& m) {
  Integer m2 = m * m;
  Vec e = reduce(sub(f, mul(g, h)), m2);
  auto [q, r] = divmod_monic(mul(s, e), h, m2);
  Vec g2 = reduce(add(add(g, mul(t, e)), mul(q, g)), m2);
  Vec h2 = reduce(add(h, r), m2);
  Vec b = reduce(sub(add(mul(s, g2), mul(t, h2)), Vec{1}), m2);
  auto [c, d] = divmod_monic(mul(s, b), h2, m2);
  s = reduce(sub(s, d), m2);
  t = reduce(sub(sub(t, mul(t, b)), mul(c, g2)), m2);
  g = std::move(g2);
  h = std::move(h2);
}

inline Integer norm_bound(const Vec& f) {
  Integer ss = 0;
  for (const auto& c : f) ss += c * c;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), ss.get_mpz_t());
  r += 1;
  Integer two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(deg(f)));
  return abs(f.back()) * two_n * r;
}

inline std::uint64_t next_prime(std::uint64_t p) {
  do ++p;
  while (!is_prime_u64(p));
  return p;
}

// Irreducible factors of a square-free primitive f with positive leading
// coefficient: good prime, modular factorization, Hensel lifting, subset
// recombination with trial division.
inline std::vector<Vec> zassenhaus(const Vec& f) {
  namespace zp = detail::zp;
  if (deg(f) <= 1) return {f};
  std::uint64_t p = 3;
  for (;; p = next_prime(p)) {
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), static_cast<unsigned long>(p))) continue;
    auto fp = to_zp(f, p);
    if (zp::deg(zp::gcd(fp, zp::derivative(fp, p), p)) == 0) break;
  }
  auto fp = zp::monic(to_zp(f, p), p);
  auto u = zp::factor_squarefree(fp, p, 0x9e3779b97f4a7c15ull);
  if (u.size() == 1) return {f};

  Integer B = 2 * norm_bound(f) + 1;
  Integer P(static_cast<unsigned long>(p));
  std::vector<Integer> mods{P};
  while (mods.back() <= B) mods.push_back(mods.back() * mods.back());
  Integer M = mods.back();

  // sequential two-factor lifting: cur = lc*u_i * (u_{i+1}..u_r)
  std::vector<Vec> lifted;
  Vec cur = f;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    zp::Vec rest{1};
    for (std::size_t j = i + 1; j < u.size(); ++j) rest = zp::mul(rest, u[j], p);
    std::uint64_t lcp = mpz_fdiv_ui(cur.back().get_mpz_t(), static_cast<unsigned long>(p));
    zp::Vec g0 = zp::scale(u[i], lcp, p);
    auto [one, s0, t0] = zp::ext_gcd(g0, rest, p);
    Vec g = from_zp(g0), h = from_zp(rest), s = from_zp(s0), t = from_zp(t0);
    for (std::size_t k = 0; k + 1 < mods.size(); ++k) hensel_step(cur, g, h, s, t, mods[k]);
    Integer inv;
    Integer lcg = g.back();
    mpz_invert(inv.get_mpz_t(), lcg.get_mpz_t(), M.get_mpz_t());
    lifted.push_back(reduce(scale(g, inv), M));
    cur = h;
  }
  lifted.push_back(cur);

  std::vector<Vec> out;
  Vec fs = f;
  std::vector<std::size_t> T(lifted.size());
  for (std::size_t i = 0; i < T.size(); ++i) T[i] = i;
  std::size_t s = 1;
  while (2 * s <= T.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    Integer b = fs.back();
    Integer bf0 = b * fs[0];
    for (;;) {
      // constant-coefficient pre-test, then the full product
      Integer c0 = b;
      for (auto i : idx) c0 = c0 * (lifted[T[i]].empty() ? Integer(0) : lifted[T[i]][0]) % M;
      mpz_fdiv_r(c0.get_mpz_t(), c0.get_mpz_t(), M.get_mpz_t());
      if (c0 > M / 2) c0 -= M;
      bool pass = bf0 == 0 || (c0 != 0 && mpz_divisible_p(bf0.get_mpz_t(), c0.get_mpz_t()));
      if (pass) {
        Vec g{b};
        for (auto i : idx) g = reduce(mul(g, lifted[T[i]]), M);
        g = primitive(symmetric(g, M));
        if (auto q = divide(fs, g)) {
          out.push_back(g);
          fs = primitive(*q);
          std::vector<std::size_t> rest;
          for (std::size_t k = 0; k < T.size(); ++k)
            if (std::find(idx.begin(), idx.end(), k) == idx.end()) rest.push_back(T[k]);
          T = rest;
          found = true;
          break;
        }
      }
      // next s-subset of [0, |T|)
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == T.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (deg(fs) > 0) out.push_back(fs);
  return out;
}

}  // namespace detail::zx

// ---------------------------------------------------------------- Q[x], Q[x_1..x_n]

using QFactorization = Factorization<QPoly, Rational>;

struct FactorOptions {
  // Largest univariate degree produced by Kronecker substitution.
  std::uint64_t kronecker_max_degree = 4000;
};

namespace detail {

inline std::string canonical_key(const QPoly& p) { return to_string(p); }

// Sort factors by total degree, then text; merge equal factors.
inline void canonicalize(QFactorization& F) {
  std::map<std::string, std::pair<QPoly, unsigned>> merged;
  for (auto& [f, m] : F.factors) {
    auto key = canonical_key(f);
    auto it = merged.find(key);
    if (it == merged.end()) merged.emplace(key, std::make_pair(f, m));
    else it->second.second += m;
  }
  F.factors.clear();
  for (auto& [k, fm] : merged) F.factors.push_back(fm);
  std::stable_sort(F.factors.begin(), F.factors.end(), [](const auto& a, const auto& b) {
    auto da = a.first.total_degree(), db = b.first.total_degree();
    if (da != db) return da < db;
    return canonical_key(a.first) < canonical_key(b.first);
  });
}

// unit such that unit * prod factor^mult == f (compared via lex-leading coefficients)
inline Rational unit_for(const QPoly& f, const QFactorization& F) {
  Rational u = f.leading_coefficient();
  for (const auto& [g, m] : F.factors)
    for (unsigned k = 0; k < m; ++k) u /= g.leading_coefficient();
  return u;
}

inline zx::Vec to_zx(const QPoly& f, std::size_t v) {
  zx::Vec r(f.degree(v) + 1, 0);
  for (const auto& t : f.terms()) r[t.mono[v]] = t.coef.get_num();
  return r;
}

inline QPoly from_zx(const zx::Vec& a, const Universe& u, std::size_t v) {
  std::vector<QPoly::Term> terms;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    Monomial m(u.size());
    m[v] = static_cast<unsigned>(k);
    terms.push_back({m, Rational(a[k])});
  }
  return QPoly::from_terms(u, CoefField::rationals(), terms);
}

// Irreducible factors (with multiplicity) of an integer-primitive polynomial
// in the single variable v.
inline std::vector<std::pair<QPoly, unsigned>> factor_univariate_primitive(const QPoly& f, std::size_t v) {
  std::vector<std::pair<QPoly, unsigned>> out;
  // square-free modulo a prime not dividing lc implies square-free over Q
  auto z0 = zx::primitive(to_zx(f, v));
  std::uint64_t p = 3;
  for (int tries = 0; tries < 16; ++tries, p = zx::next_prime(p)) {
    if (mpz_divisible_ui_p(z0.back().get_mpz_t(), static_cast<unsigned long>(p))) continue;
    auto fp = zx::to_zp(z0, p);
    if (zp::deg(zp::gcd(fp, zp::derivative(fp, p), p)) == 0) {
      for (const auto& h : zx::zassenhaus(z0)) out.push_back({from_zx(h, f.universe(), v), 1});
      return out;
    }
  }
  auto sq = squarefree_decomposition(f, v);
  for (const auto& [g, m] : sq.factors) {
    auto z = zx::primitive(to_zx(integer_primitive(g), v));
    for (const auto& h : zx::zassenhaus(z)) out.push_back({from_zx(h, f.universe(), v), m});
  }
  return out;
}

// Kronecker substitution with mixed radix (d_i + 1), univariate factoring and
// recombination by trial division. g is integer-primitive and square-free.
inline std::vector<QPoly> kronecker_factor(const QPoly& g, const FactorOptions& opt) {
  auto vars = g.support_list();
  std::vector<unsigned> d;
  std::vector<std::uint64_t> w;
  std::uint64_t weight = 1;
  for (auto v : vars) {
    d.push_back(g.degree(v));
    w.push_back(weight);
    if (weight > opt.kronecker_max_degree) break;
    weight *= g.degree(v) + 1;
  }
  if (d.size() < vars.size() || weight - 1 > opt.kronecker_max_degree)
    fail(ErrorCode::BudgetExceeded, "Kronecker substitution degree exceeds the configured budget");

  zx::Vec image(weight, 0);
  for (const auto& t : g.terms()) {
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) e += t.mono[vars[i]] * w[i];
    image[e] = t.coef.get_num();
  }
  zx::trim(image);

  auto back = [&](const zx::Vec& h) {
    std::vector<QPoly::Term> terms;
    for (std::size_t e = 0; e < h.size(); ++e) {
      if (h[e] == 0) continue;
      Monomial m(g.nvars());
      for (std::size_t i = 0; i < vars.size(); ++i) m[vars[i]] = static_cast<unsigned>((e / w[i]) % (d[i] + 1));
      terms.push_back({m, Rational(h[e])});
    }
    return QPoly::from_terms(g.universe(), CoefField::rationals(), terms);
  };

  auto x = Universe(std::vector<std::string>{"_k"});
  std::vector<zx::Vec> H;
  for (const auto& [h, m] : factor_univariate_primitive(from_zx(image, x, 0), 0))
    for (unsigned k = 0; k < m; ++k) H.push_back(to_zx(h, 0));
  if (H.size() <= 1) return {g};

  std::vector<QPoly> out;
  QPoly cur = g;
  std::vector<std::size_t> T(H.size());
  for (std::size_t i = 0; i < T.size(); ++i) T[i] = i;
  std::size_t s = 1;
  while (2 * s <= T.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      zx::Vec prod{1};
      for (auto i : idx) prod = zx::mul(prod, H[T[i]]);
      auto cand = back(prod);
      if (!cand.is_constant()) {
        if (auto q = exact_divide(cur, cand)) {
          out.push_back(integer_primitive(cand));
          cur = *q;
          std::vector<std::size_t> rest;
          for (std::size_t k = 0; k < T.size(); ++k)
            if (std::find(idx.begin(), idx.end(), k) == idx.end()) rest.push_back(T[k]);
          T = rest;
          found = true;
          break;
        }
      }
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == T.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (!cur.is_constant()) out.push_back(integer_primitive(cur));
  return out;
}

inline void factor_multivar_rec(const QPoly& f0, unsigned mult, const FactorOptions& opt,
                                std::vector<std::pair<QPoly, unsigned>>& out) {
  if (f0.is_constant()) return;
  QPoly f = integer_primitive(f0);
  // monomial factors
  Monomial low = f.terms().front().mono;
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < low.size(); ++i) low[i] = std::min(low[i], t.mono[i]);
  if (!low.is_one()) {
    for (std::size_t i = 0; i < low.size(); ++i)
      if (low[i]) out.push_back({f.variable_like(i), low[i] * mult});
    f = divide_exact(f, QPoly::monomial(f.universe(), f.field(), low, Rational(1)));
    if (f.is_constant()) return;
  }
  auto vars = f.support_list();
  if (vars.size() == 1) {
    for (auto& [g, m] : factor_univariate_primitive(f, vars[0])) out.push_back({g, m * mult});
    return;
  }
  std::size_t v = vars[0];
  auto cont = content_in(f, v);
  if (!cont.is_constant()) {
    factor_multivar_rec(cont, mult, opt, out);
    f = divide_exact(f, cont);
  }
  auto sq = squarefree_decomposition(f, v);
  for (const auto& [g, m] : sq.factors)
    for (auto& h : kronecker_factor(integer_primitive(g), opt)) out.push_back({h, m * mult});
}

}  // namespace detail

// Complete factorization in Q[x_1..x_n]; factors integer-primitive with
// positive lex-leading coefficient.
inline QFactorization factor_multivar(const QPoly& f, const FactorOptions& opt = {}) {
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
  QFactorization F;
  detail::factor_multivar_rec(f, 1, opt, F.factors);
  detail::canonicalize(F);
  F.unit = detail::unit_for(f, F);
  return F;
}

// Complete factorization of a univariate polynomial over Q.
inline QFactorization factor_univar_rationals(const QPoly& f) {
  if (f.support_list().size() > 1) fail(ErrorCode::InvalidArgument, "expected a univariate polynomial");
  return factor_multivar(f);
}

inline QPoly expand(const QFactorization& F, const Universe& u) {
  QPoly r = QPoly::constant(u, CoefField::rationals(), F.unit);
  for (const auto& [g, m] : F.factors) r *= g.pow(m);
  return r;
}

// ---------------------------------------------------------------- E[x], E = Q(t)

using EFactorization = Factorization<UPolyE, RatQ>;

// Monic irreducible factors over E, via the polynomial ring Q[t][x].
inline EFactorization factor_over_base(const UPolyE& f, const FactorOptions& opt = {}) {
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
  EFactorization out;
  out.unit = f.lc();
  if (f.degree() == 0) return out;
  const auto& tags = f.lc().universe();
  auto xname = fresh_name(tags, "_x");
  auto big = tags.extended({xname});
  std::size_t xv = tags.size();
  std::vector<const RatQ*> ptrs;
  for (const auto& c : f.coeffs()) ptrs.push_back(&c);
  QPoly D = detail::common_denominator(ptrs, tags);
  QPoly F(big, CoefField::rationals());
  for (int k = 0; k <= f.degree(); ++k) {
    if (f[k].is_zero()) continue;
    F += remap(f[k].num() * divide_exact(D, f[k].den()), big) *
         QPoly::variable(big, CoefField::rationals(), xv, static_cast<unsigned>(k));
  }
  auto QF = factor_multivar(F, opt);
  for (const auto& [g, m] : QF.factors) {
    if (!g.involves(xv)) continue;
    std::vector<RatQ> cs;
    for (const auto& c : coefficients_in(g, xv)) cs.push_back(RatQ(remap(c, tags)));
    out.factors.push_back({UPolyE(std::move(cs)).monic(), m});
  }
  return out;
}

// ---------------------------------------------------------------- E[alpha][x]

using ExtFactorization = Factorization<UPolyExt, AlgExtElem>;

inline bool is_squarefree(const UPolyE& n) { return gcd(n, derivative(n)).degree() == 0; }

// Smallest c in 0, 1, -1, 2, -2, ... with N(f(x - c*alpha)) square-free.
inline long find_squarefree_shift(const UPolyExt& f, int max_tries = 64) {
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "shift search on the zero polynomial");
  auto alpha = AlgExtElem::generator(f.lc().ext());
  for (int k = 0; k < max_tries; ++k) {
    long c = (k + 1) / 2 * (k % 2 ? 1 : -1);
    auto g = c == 0 ? f : shift(f, alpha.mul_int(-c));
    if (is_squarefree(norm_of(g))) return c;
  }
  fail(ErrorCode::IntegrityFailure, "no square-free norm shift found; the input is not square-free");
}

namespace detail {

inline std::string ext_key(const UPolyExt& f) { return to_string(f, "x"); }

// Trager's algorithm on a monic square-free f, given a shift c with
// N(f(x - c*alpha)) square-free.
inline std::vector<UPolyExt> trager_squarefree(const UPolyExt& f, long c, const FactorOptions& opt) {
  if (f.degree() <= 1) return {f};
  auto alpha = AlgExtElem::generator(f.lc().ext());
  auto g = c == 0 ? f : shift(f, alpha.mul_int(-c));
  auto N = norm_of(g);
  auto NF = factor_over_base(N, opt);
  if (NF.factors.size() == 1) return {f};
  std::vector<UPolyExt> out;
  for (const auto& [h, m] : NF.factors) {
    auto gj = gcd(g, embed(f.lc().ext(), h));
    if (gj.degree() < 1) continue;
    out.push_back(c == 0 ? gj : shift(gj, alpha.mul_int(c)).monic());
  }
  return out;
}

}  // namespace detail

// Complete factorization over E[alpha]: monic factors, unit = leading coefficient.
inline ExtFactorization factor_over_extension(const UPolyExt& f, const FactorOptions& opt = {}) {
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
  ExtFactorization out;
  out.unit = f.lc();
  auto m = f.monic();
  if (m.degree() == 1) {
    out.factors.push_back({m, 1});
    return out;
  }
  // a square-free shifted norm certifies that f is square-free, avoiding Yun over E[alpha]
  std::optional<long> c;
  try {
    c = find_squarefree_shift(m, 6);
  } catch (const Error&) {
  }
  if (c) {
    for (auto& g : detail::trager_squarefree(m, *c, opt)) out.factors.push_back({g, 1});
  } else {
    for (const auto& [s, k] : squarefree_decomposition(m)) {
      long cs = s.degree() > 1 ? find_squarefree_shift(s) : 0;
      for (auto& g : detail::trager_squarefree(s, cs, opt)) out.factors.push_back({g, k});
    }
  }
  std::stable_sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return detail::ext_key(a.first) < detail::ext_key(b.first);
  });
  return out;
}

// Roots of f lying in E[alpha] (from its linear factors).
inline std::vector<AlgExtElem> roots_in_extension(const ExtFactorization& F) {
  std::vector<AlgExtElem> out;
  for (const auto& [g, m] : F.factors)
    if (g.degree() == 1) out.push_back(-g[0]);
  return out;
}

}  // namespace unirat

#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <unirat/groebner.hpp>
#include <unirat/parse.hpp>

namespace unirat::testing {

inline Universe U(std::initializer_list<const char*> names) {
  std::vector<std::string> v(names.begin(), names.end());
  return Universe(v);
}

inline QPoly P(const Universe& u, const std::string& s) { return parse_polynomial<Rational>(s, u); }
inline RatQ R(const Universe& u, const std::string& s) { return parse_expression<Rational>(s, u); }

// Random polynomial with small integer coefficients.
inline QPoly random_poly(std::mt19937_64& rng, const Universe& u, unsigned max_deg, unsigned max_terms,
                         int coef_range = 5) {
  std::uniform_int_distribution<int> deg(0, static_cast<int>(max_deg));
  std::uniform_int_distribution<int> cf(-coef_range, coef_range);
  std::uniform_int_distribution<unsigned> nt(1, max_terms);
  std::vector<QPoly::Term> terms;
  unsigned n = nt(rng);
  for (unsigned k = 0; k < n; ++k) {
    Monomial m(u.size());
    unsigned budget = static_cast<unsigned>(deg(rng));
    for (std::size_t i = 0; i < u.size() && budget; ++i) {
      std::uniform_int_distribution<unsigned> e(0, budget);
      m[i] = e(rng);
      budget -= m[i];
    }
    terms.push_back({m, Rational(cf(rng))});
  }
  return QPoly::from_terms(u, CoefField::rationals(), terms);
}

// Determinant over Q by Gaussian elimination (independent of the PRS code).
inline Rational determinant(std::vector<std::vector<Rational>> a) {
  std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Sylvester-matrix resultant of two dense univariate polynomials (low to high).
inline Rational sylvester_resultant(const std::vector<Rational>& f, const std::vector<Rational>& g) {
  std::size_t m = f.size() - 1, n = g.size() - 1;
  std::size_t N = m + n;
  if (N == 0) return 1;
  std::vector<std::vector<Rational>> S(N, std::vector<Rational>(N, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) S[i][i + j] = f[m - j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) S[n + i][i + j] = g[n - j];
  return determinant(S);
}

}  // namespace unirat::testing

namespace unirat::testing {

// Solvability of A x = b over Q (independent Gaussian elimination).
inline bool solvable(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    std::swap(b[piv], b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rational f = A[i][c] / A[r][c];
      for (std::size_t k = c; k < cols; ++k) A[i][k] -= f * A[r][k];
      b[i] -= f * b[r];
    }
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return false;
  return true;
}

inline std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned deg) {
  std::vector<Monomial> out;
  Monomial m(nvars);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == nvars) {
      out.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m[i] = e;
      rec(i + 1, left - e);
    }
    m[i] = 0;
  };
  rec(0, deg);
  return out;
}

// Brute-force membership: p = sum c_i g_i with deg c_i <= bound.
inline bool member_by_cofactors(const QPoly& p, const std::vector<QPoly>& gens, unsigned bound) {
  auto mons = monomials_up_to(p.nvars(), bound);
  std::vector<QPoly> cols;
  for (const auto& g : gens)
    for (const auto& m : mons) cols.push_back(g.mul_term(m, Rational(1)));
  std::map<Monomial, std::size_t> rowidx;
  auto row = [&](const Monomial& m) {
    auto it = rowidx.find(m);
    if (it != rowidx.end()) return it->second;
    auto k = rowidx.size();
    rowidx[m] = k;
    return k;
  };
  for (const auto& c : cols)
    for (const auto& t : c.terms()) row(t.mono);
  for (const auto& t : p.terms()) row(t.mono);
  std::vector<std::vector<Rational>> A(rowidx.size(), std::vector<Rational>(cols.size(), 0));
  std::vector<Rational> b(rowidx.size(), 0);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& t : cols[j].terms()) A[rowidx[t.mono]][j] = t.coef;
  for (const auto& t : p.terms()) b[rowidx[t.mono]] = t.coef;
  return solvable(A, b);
}

inline std::vector<long> divisors(long n) {
  std::vector<long> out;
  n = std::labs(n);
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// Irreducibility over Q of an integer polynomial of degree <= 4 by exhaustive
// search for factors of degree 1 and 2 with coefficients inside the Mignotte bound.
inline bool q_irreducible_bruteforce(const std::vector<long>& f) {
  int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return n == 1;
  auto eval_divides = [&](const std::vector<long>& g) {
    // long division over Q with an integer check at the end
    std::vector<Rational> r(f.begin(), f.end());
    int dg = static_cast<int>(g.size()) - 1;
    for (int k = n; k >= dg; --k) {
      Rational c = r[k] / g[dg];
      for (int j = 0; j <= dg; ++j) r[k - dg + j] -= c * g[j];
    }
    for (const auto& c : r)
      if (c != 0) return false;
    return true;
  };
  if (f[0] == 0) return false;
  for (long a : divisors(f[n]))
    for (long c : divisors(f[0]))
      for (long s : {1L, -1L})
        if (eval_divides({s * c, a})) return false;
  if (n < 4) return true;
  long norm2 = 0;
  for (long c : f) norm2 += c * c;
  long B = 2 * (static_cast<long>(std::sqrt(static_cast<double>(norm2))) + 1);
  for (long a : divisors(f[n]))
    for (long c : divisors(f[0]))
      for (long s : {1L, -1L})
        for (long b = -B; b <= B; ++b)
          if (eval_divides({s * c, b, a})) return false;
  return true;
}

}  // namespace unirat::testing

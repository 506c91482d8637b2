#pragma once

#include <optional>

#include <vector>

#include "poly.hpp"

namespace unirat {

namespace detail {

template <class C>
using Coeffs = std::vector<MultiPoly<C>>;

template <class C>
void trim(Coeffs<C>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

template <class C>
int deg(const Coeffs<C>& a) { return static_cast<int>(a.size()) - 1; }

// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b on coefficient vectors.
template <class C>
Coeffs<C> prem(Coeffs<C> a, const Coeffs<C>& b) {
  int db = deg(b);
  int e = deg(a) - db + 1;
  if (e <= 0) return a;
  const auto& lb = b.back();
  while (deg(a) >= db) {
    int shift = deg(a) - db;
    MultiPoly<C> la = a.back();
    for (auto& c : a) c *= lb;
    for (int k = 0; k <= db; ++k) a[k + shift] -= la * b[k];
    trim(a);
    --e;
  }
  if (e > 0) {
    auto s = lb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c *= s;
  }
  return a;
}

template <class C>
Coeffs<C> divide_all(const Coeffs<C>& a, const MultiPoly<C>& d) {
  Coeffs<C> r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(divide_exact(c, d));
  return r;
}

}  // namespace detail

template <class C>
MultiPoly<C> gcd(const MultiPoly<C>& a, const MultiPoly<C>& b);

// gcd of the coefficients of p viewed as a polynomial in v.
template <class C>
MultiPoly<C> content_in(const MultiPoly<C>& p, std::size_t v) {
  if (p.is_zero()) return p;
  auto cs = coefficients_in(p, v);
  MultiPoly<C> g = p.zero();
  // smallest coefficients first keeps the intermediate gcds small
  std::sort(cs.begin(), cs.end(), [](const auto& x, const auto& y) { return x.nterms() < y.nterms(); });
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return p.one();
  }
  return g;
}

template <class C>
MultiPoly<C> primitive_part_in(const MultiPoly<C>& p, std::size_t v) {
  if (p.is_zero()) return p;
  return divide_exact(p, content_in(p, v));
}

// Pseudo-remainder of a by b with respect to v.
template <class C>
MultiPoly<C> prem(const MultiPoly<C>& a, const MultiPoly<C>& b, std::size_t v) {
  a.check_compatible(b);
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "pseudo-remainder by zero");
  auto r = detail::prem(coefficients_in(a, v), coefficients_in(b, v));
  return from_coefficients(r, v, a.universe(), a.field());
}

// Resultant with respect to v via the subresultant PRS.
template <class C>
MultiPoly<C> resultant(const MultiPoly<C>& a, const MultiPoly<C>& b, std::size_t v) {
  a.check_compatible(b);
  if (v >= a.nvars()) fail(ErrorCode::UnknownVariable, "resultant variable out of range");
  if (a.is_zero() || b.is_zero()) return a.zero();
  auto A = coefficients_in(a, v), B = coefficients_in(b, v);
  int da = detail::deg(A), db = detail::deg(B);
  if (da == 0) return A[0].pow(static_cast<unsigned>(db));
  if (db == 0) return B[0].pow(static_cast<unsigned>(da));
  MultiPoly<C> sign = a.one();
  if (da < db) {
    std::swap(A, B);
    std::swap(da, db);
    if ((da & 1) && (db & 1)) sign = -sign;
  }
  MultiPoly<C> g = a.one(), h = a.one();
  while (detail::deg(B) > 0) {
    int delta = detail::deg(A) - detail::deg(B);
    if ((detail::deg(A) & 1) && (detail::deg(B) & 1)) sign = -sign;
    auto R = detail::prem(A, B);
    A = std::move(B);
    if (R.empty()) return a.zero();
    auto denom = g * h.pow(static_cast<unsigned>(delta));
    B = detail::divide_all(R, denom);
    g = A.back();
    // h = g^delta / h^(delta-1)
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = divide_exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  // B is a nonzero constant in v
  int dA = detail::deg(A);
  auto res = B[0].pow(static_cast<unsigned>(dA));
  if (dA > 1) res = divide_exact(res, h.pow(static_cast<unsigned>(dA - 1)));
  else if (dA == 0) res = a.one();
  return sign * res;
}

template <class C>
MultiPoly<C> resultant(const MultiPoly<C>& a, const MultiPoly<C>& b, const std::string& v) {
  return resultant(a, b, a.universe().index(v));
}

namespace detail {

// gcd of two polynomials both primitive in v and of positive degree in v.
template <class C>
MultiPoly<C> primitive_gcd(const MultiPoly<C>& a, const MultiPoly<C>& b, std::size_t v) {
  auto A = coefficients_in(a, v), B = coefficients_in(b, v);
  if (deg(A) < deg(B)) std::swap(A, B);
  MultiPoly<C> g = a.one(), h = a.one();
  for (;;) {
    int delta = deg(A) - deg(B);
    auto R = prem(A, B);
    if (R.empty()) break;
    if (deg(R) == 0) return a.one();
    A = std::move(B);
    B = divide_all(R, g * h.pow(static_cast<unsigned>(delta)));
    g = A.back();
    if (delta == 1) h = g;
    else if (delta > 1)
      h = divide_exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
  }
  return primitive_part_in(from_coefficients(B, v, a.universe(), a.field()), v);
}

// Heuristic gcd over Z (Char, Geddes and Gonnet): evaluate one variable at a
// large integer, recurse, and rebuild the gcd from its xi-adic expansion.
// Returns the gcd in Z[vars] including the integer content, or nullopt.
inline std::optional<QPoly> gcd_heuristic(const QPoly& a, const QPoly& b, int depth = 0) {
  auto integer_content = [](const QPoly& p) {
    Integer g = 0;
    for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
    return g;
  };
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  Integer ca = integer_content(a), cb = integer_content(b), c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  QPoly A = a.scale(Rational(1) / Rational(ca)), B = b.scale(Rational(1) / Rational(cb));
  std::vector<std::size_t> vars;
  auto sa = A.support(), sb = B.support();
  for (std::size_t v = 0; v < sa.size(); ++v)
    if (sa[v] || sb[v]) vars.push_back(v);
  if (vars.empty()) return A.constant_like(Rational(c));
  if (depth > 6) return std::nullopt;
  std::size_t v = vars.back();
  auto max_coef = [](const QPoly& p) {
    Integer m = 0;
    for (const auto& t : p.terms()) m = std::max(m, Integer(abs(t.coef.get_num())));
    return m;
  };
  Integer xi = 2 * std::min(max_coef(A), max_coef(B)) + 29;
  unsigned dmax = std::max(A.degree(v), B.degree(v));
  auto eval = [&](const QPoly& p) {
    std::vector<QPoly::Term> terms;
    std::vector<Integer> pw{1};
    for (const auto& t : p.terms()) {
      while (pw.size() <= t.mono[v]) pw.push_back(pw.back() * xi);
      Monomial m = t.mono;
      m[v] = 0;
      terms.push_back({m, Rational(t.coef.get_num() * pw[t.mono[v]])});
    }
    return QPoly::from_terms(p.universe(), p.field(), terms);
  };
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * (dmax + 1) > 40000) return std::nullopt;
    auto ea = eval(A), eb = eval(B);
    auto gamma = (ea.is_zero() || eb.is_zero()) ? std::nullopt : gcd_heuristic(ea, eb, depth + 1);
    if (gamma) {
      // xi-adic reconstruction with symmetric remainders
      std::vector<QPoly::Term> terms;
      QPoly rest = *gamma;
      Integer half = xi / 2;
      for (unsigned k = 0; !rest.is_zero(); ++k) {
        std::vector<QPoly::Term> digit, next;
        for (const auto& t : rest.terms()) {
          Integer n = t.coef.get_num(), r;
          mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), xi.get_mpz_t());
          if (r > half) r -= xi;
          if (r != 0) {
            Monomial m = t.mono;
            m[v] = k;
            terms.push_back({m, Rational(r)});
          }
          Integer q = (n - r) / xi;
          if (q != 0) next.push_back({t.mono, Rational(q)});
        }
        rest = QPoly::from_terms(rest.universe(), rest.field(), next);
        if (k > dmax + 1) break;
      }
      if (rest.is_zero() && !terms.empty()) {
        QPoly G = QPoly::from_terms(A.universe(), A.field(), terms);
        G = integer_primitive(G);
        if (exact_divide(A, G) && exact_divide(B, G)) return G.scale(Rational(c));
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

}  // namespace detail

// Greatest common divisor, normalized with lex-leading coefficient 1.
template <class C>
MultiPoly<C> gcd(const MultiPoly<C>& a0, const MultiPoly<C>& b0) {
  a0.check_compatible(b0);
  if (a0.is_zero()) return make_monic(b0);
  if (b0.is_zero()) return make_monic(a0);
  if (a0.is_constant() || b0.is_constant()) return a0.one();
  if (auto q = exact_divide(a0, b0)) return make_monic(b0);
  if (auto q = exact_divide(b0, a0)) return make_monic(a0);
  if constexpr (std::is_same_v<C, Rational>) {
    if (auto g = detail::gcd_heuristic(integer_primitive(a0), integer_primitive(b0))) return make_monic(*g);
  }

  MultiPoly<C> a = a0, b = b0;
  auto sa = a.support(), sb = b.support();
  // A variable occurring in only one argument cannot occur in the gcd.
  for (std::size_t v = 0; v < sa.size(); ++v) {
    if (sa[v] && !sb[v]) return gcd(content_in(a, v), b);
    if (sb[v] && !sa[v]) return gcd(a, content_in(b, v));
  }
  // choose the shared variable of least maximal degree
  std::size_t best = sa.size();
  unsigned best_deg = 0;
  for (std::size_t v = 0; v < sa.size(); ++v) {
    if (!sa[v]) continue;
    unsigned d = std::max(a.degree(v), b.degree(v));
    if (best == sa.size() || d < best_deg) best = v, best_deg = d;
  }
  auto ca = content_in(a, best), cb = content_in(b, best);
  auto c = gcd(ca, cb);
  auto pa = divide_exact(a, ca), pb = divide_exact(b, cb);
  MultiPoly<C> g = a.one();
  if (pa.involves(best) && pb.involves(best)) g = detail::primitive_gcd(pa, pb, best);
  return make_monic(c * g);
}

template <class C>
MultiPoly<C> lcm(const MultiPoly<C>& a, const MultiPoly<C>& b) {
  if (a.is_zero() || b.is_zero()) return a.zero();
  return make_monic(divide_exact(a, gcd(a, b)) * b);
}

// Scale so the leading coefficient in v has lex-leading coefficient 1.
template <class C>
MultiPoly<C> monic_in(const MultiPoly<C>& p, std::size_t v) {
  if (p.is_zero()) return p;
  return p.scale(CoefOps<C>::inverse(leading_coeff_in(p, v).leading_coefficient()));
}

template <class C>
struct SquarefreeDecomposition {
  MultiPoly<C> content;  // part free of the main variable, including the unit
  std::vector<std::pair<MultiPoly<C>, unsigned>> factors;
};

// Yun's algorithm in v. Over F_p an inseparable part raises Inseparable.
template <class C>
SquarefreeDecomposition<C> squarefree_decomposition(const MultiPoly<C>& p, std::size_t v) {
  if (v >= p.nvars()) fail(ErrorCode::UnknownVariable, "square-free variable out of range");
  SquarefreeDecomposition<C> out;
  if (p.is_zero()) fail(ErrorCode::InvalidArgument, "square-free decomposition of zero");
  auto cont = content_in(p, v);
  auto a = divide_exact(p, cont);
  if (!a.involves(v)) {
    out.content = p;
    return out;
  }
  // keep a with monic lex-leading coefficient; fold the scalar into content
  C lc = leading_coeff_in(a, v).leading_coefficient();
  a = monic_in(a, v);
  out.content = cont.scale(lc);

  auto b = derivative(a, v);
  if (b.is_zero()) fail(ErrorCode::Inseparable, "polynomial is inseparable in the main variable");
  auto c = gcd(a, b);
  auto w = divide_exact(a, c);
  auto y = divide_exact(b, c);
  auto z = y - derivative(w, v);
  unsigned i = 1;
  while (w.involves(v)) {
    auto g = gcd(w, z);
    if (g.involves(v)) out.factors.push_back({monic_in(g, v), i});
    w = divide_exact(w, g);
    y = divide_exact(z, g);
    z = y - derivative(w, v);
    ++i;
  }
  // verify reconstruction degree; a shortfall means a p-th power was missed
  unsigned total = 0;
  for (const auto& [f, m] : out.factors) total += f.degree(v) * m;
  if (total != a.degree(v)) fail(ErrorCode::Inseparable, "polynomial has an inseparable factor in the main variable");
  return out;
}

template <class C>
SquarefreeDecomposition<C> squarefree_decomposition(const MultiPoly<C>& p, const std::string& v) {
  return squarefree_decomposition(p, p.universe().index(v));
}

}  // namespace unirat

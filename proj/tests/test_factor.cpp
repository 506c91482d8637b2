#include <gtest/gtest.h>

#include <set>

#include <unirat/factor.hpp>

#include "helpers.hpp"

using namespace unirat;
using namespace unirat::testing;

namespace {

// ------------------------------------------------------------ oracles

// All monic polynomials of degree d over F_p.
std::vector<UPolyZp> monic_polys(std::uint64_t p, int d) {
  std::vector<UPolyZp> out;
  std::vector<std::uint64_t> c(d + 1, 0);
  c[d] = 1;
  for (;;) {
    out.push_back(UPolyZp(p, c));
    int i = 0;
    while (i < d && ++c[i] == p) c[i++] = 0;
    if (i == d) break;
  }
  return out;
}

// Long division over F_p (independent of the library).
bool zp_divides(const UPolyZp& g, const UPolyZp& f) {
  std::uint64_t p = f.modulus();
  auto r = f.coeffs();
  int dg = g.degree();
  for (int k = static_cast<int>(r.size()) - 1; k >= dg; --k) {
    std::uint64_t c = r[k];
    if (!c) continue;
    for (int j = 0; j <= dg; ++j) r[k - dg + j] = (r[k - dg + j] + p * p - c * g[j]) % p;
  }
  for (auto c : r)
    if (c) return false;
  return true;
}

bool zp_irreducible_bruteforce(const UPolyZp& f) {
  for (int d = 1; 2 * d <= f.degree(); ++d)
    for (const auto& g : monic_polys(f.modulus(), d))
      if (zp_divides(g, f)) return false;
  return true;
}

QPoly from_coeffs(const Universe& u, const std::vector<long>& c) {
  QPoly r(u);
  for (std::size_t k = 0; k < c.size(); ++k) r += QPoly::variable(u, CoefField::rationals(), 0, k).scale(Rational(c[k]));
  return r;
}

// ------------------------------------------------------------ F_p

TEST(FactorFp, Examples) {
  auto f = factor_univar_primefield(UPolyZp(2, {1, 0, 1}));
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors[0].first, UPolyZp(2, {1, 1}));
  EXPECT_EQ(f.factors[0].second, 2u);

  for (std::uint64_t p : {2, 3, 7}) {
    auto x = factor_univar_primefield(UPolyZp(p, {0, 1}));
    ASSERT_EQ(x.factors.size(), 1u);
    EXPECT_EQ(x.factors[0].first, UPolyZp(p, {0, 1}));
  }

  auto g = factor_univar_primefield(UPolyZp(5, {1, 0, 0, 0, 1}));
  ASSERT_EQ(g.factors.size(), 2u);
  int found = 0;
  for (const auto& q : monic_polys(5, 2))
    if (zp_divides(q, UPolyZp(5, {1, 0, 0, 0, 1})) && zp_irreducible_bruteforce(q)) {
      ++found;
      EXPECT_TRUE(q == g.factors[0].first || q == g.factors[1].first);
    }
  EXPECT_EQ(found, 2);
  for (const auto& [h, m] : g.factors) EXPECT_EQ(h.degree(), 2);
}

TEST(FactorFp, InseparableParts) {
  // (x+1)^3 (x^2+x+2) over F_3, where (x+1)^3 = x^3 + 1
  auto f = factor_univar_primefield(UPolyZp(3, {2, 1, 1, 2, 1, 1}));
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, UPolyZp(3, {1, 1}));
  EXPECT_EQ(f.factors[0].second, 3u);
  EXPECT_EQ(f.factors[1].first, UPolyZp(3, {2, 1, 1}));
}

TEST(FactorFp, RandomAgainstBruteForce) {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    std::uniform_int_distribution<std::uint64_t> c(0, p - 1);
    for (int it = 0; it < 100; ++it) {
      std::vector<std::uint64_t> v(1 + rng() % 5);
      for (auto& x : v) x = c(rng);
      v.back() = 1 + c(rng) % (p - 1);
      UPolyZp f(p, v);
      if (f.degree() < 1) continue;
      auto F = factor_univar_primefield(f, it);
      // reconstruction
      std::vector<std::uint64_t> prod{F.unit};
      for (const auto& [h, m] : F.factors) {
        EXPECT_TRUE(zp_irreducible_bruteforce(h));
        EXPECT_EQ(h.lc(), 1u);
        for (unsigned k = 0; k < m; ++k) {
          std::vector<std::uint64_t> r(prod.size() + h.degree(), 0);
          for (std::size_t i = 0; i < prod.size(); ++i)
            for (int j = 0; j <= h.degree(); ++j) r[i + j] = (r[i + j] + prod[i] * h[j]) % p;
          prod = r;
        }
      }
      EXPECT_EQ(UPolyZp(p, prod), f);
    }
  }
}

// ------------------------------------------------------------ Q

TEST(FactorQ, Examples) {
  auto u = U({"x"});
  auto F = factor_univar_rationals(P(u, "x^2 - 1"));
  ASSERT_EQ(F.factors.size(), 2u);
  EXPECT_EQ(F.factors[0].first, P(u, "x + 1"));
  EXPECT_EQ(F.factors[1].first, P(u, "x - 1"));

  auto G = factor_univar_rationals(P(u, "x^4 + 1"));
  ASSERT_EQ(G.factors.size(), 1u);
  EXPECT_TRUE(q_irreducible_bruteforce({1, 0, 0, 0, 1}));

  auto H = factor_univar_rationals(P(u, "6*x^2 + 5*x + 1"));
  ASSERT_EQ(H.factors.size(), 2u);
  // rational roots -1/2 and -1/3
  std::set<std::string> roots;
  for (const auto& [h, m] : H.factors) {
    ASSERT_EQ(h.degree(0), 1u);
    Rational r = -h.constant_term() / h.leading_coefficient();
    roots.insert(r.get_str());
    EXPECT_EQ(evaluate(P(u, "6*x^2 + 5*x + 1"), {r}), 0);
  }
  EXPECT_EQ(roots, (std::set<std::string>{"-1/2", "-1/3"}));
  EXPECT_EQ(expand(H, u), P(u, "6*x^2 + 5*x + 1"));

  auto K = factor_univar_rationals(P(u, "-3/2*x^3 + 3/2*x"));
  EXPECT_EQ(K.factors.size(), 3u);
  EXPECT_EQ(expand(K, u), P(u, "-3/2*x^3 + 3/2*x"));
}

TEST(FactorQ, SwinnertonDyerStyleManyModularFactors) {
  auto u = U({"x"});
  // x^4 - 10x^2 + 1 splits into quadratics or linears modulo every prime
  auto F = factor_univar_rationals(P(u, "x^4 - 10*x^2 + 1"));
  EXPECT_EQ(F.factors.size(), 1u);
  auto G = factor_univar_rationals(P(u, "(x^4 - 10*x^2 + 1)*(x^2 - 2)*(x^3 - x + 7)"));
  EXPECT_EQ(G.factors.size(), 3u);
  auto H = factor_univar_rationals(P(u, "x^8 - 40*x^6 + 352*x^4 - 960*x^2 + 576"));
  EXPECT_EQ(H.factors.size(), 1u);
}

TEST(FactorQ, RandomAgainstBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(-5, 5);
  auto u = U({"x"});
  int reducible = 0;
  for (int it = 0; it < 100; ++it) {
    QPoly f;
    if (it % 2) {
      std::vector<long> a(1 + rng() % 3), b(1 + rng() % 3);
      for (auto& x : a) x = c(rng);
      for (auto& x : b) x = c(rng);
      a.back() = a.back() ? a.back() : 1;
      b.back() = b.back() ? b.back() : 2;
      f = from_coeffs(u, a) * from_coeffs(u, b);
    } else {
      std::vector<long> a(2 + rng() % 4);
      for (auto& x : a) x = c(rng);
      a.back() = a.back() ? a.back() : 3;
      f = from_coeffs(u, a);
    }
    if (f.is_constant()) continue;
    auto F = factor_univar_rationals(f);
    EXPECT_EQ(expand(F, u), f);
    if (F.count() > 1) ++reducible;
    for (const auto& [h, m] : F.factors) {
      std::vector<long> hc(h.degree(0) + 1, 0);
      for (const auto& t : h.terms()) hc[t.mono[0]] = t.coef.get_num().get_si();
      if (hc.size() <= 5) EXPECT_TRUE(q_irreducible_bruteforce(hc)) << to_string(h);
    }
  }
  EXPECT_GT(reducible, 20);
}

// ------------------------------------------------------------ multivariate

TEST(FactorMultivar, Examples) {
  auto u = U({"x", "y", "z"});
  auto F = factor_multivar(P(u, "x^2 - y^2"));
  ASSERT_EQ(F.factors.size(), 2u);
  EXPECT_EQ(expand(F, u), P(u, "x^2 - y^2"));

  auto G = factor_multivar(P(u, "x^2 + y^2"));
  ASSERT_EQ(G.factors.size(), 1u);
  EXPECT_EQ(G.factors[0].second, 1u);

  auto H = factor_multivar(P(u, "(x + 2*y - z)^2 * (x + 2*y - z)"));
  ASSERT_EQ(H.factors.size(), 1u);
  EXPECT_EQ(H.factors[0].first, P(u, "x + 2*y - z"));
  EXPECT_EQ(H.factors[0].second, 3u);

  auto K = factor_multivar(P(u, "6*x^3*y - 6*x*y^3 + 12*x^2*y*z"));
  EXPECT_EQ(expand(K, u), P(u, "6*x^3*y - 6*x*y^3 + 12*x^2*y*z"));
  EXPECT_EQ(K.count(), 3u);
}

TEST(FactorMultivar, BudgetIsReported) {
  auto u = U({"x", "y", "z"});
  FactorOptions opt;
  opt.kronecker_max_degree = 20;
  try {
    factor_multivar(P(u, "x^5*y^5 + z^5 + x*y*z + 1"), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(FactorMultivar, RandomReconstruction) {
  std::mt19937_64 rng(17);
  auto u = U({"x", "y", "z"});
  for (int it = 0; it < 100; ++it) {
    std::vector<QPoly> parts;
    int k = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < k; ++j) {
      auto g = random_poly(rng, u, 2, 3, 4);
      if (!g.is_constant()) parts.push_back(g);
    }
    if (parts.empty()) continue;
    QPoly f = parts[0];
    for (std::size_t j = 1; j < parts.size(); ++j) f *= parts[j];
    auto F = factor_multivar(f);
    EXPECT_EQ(expand(F, u), f);
    EXPECT_GE(F.count(), parts.size());
    for (const auto& [h, m] : F.factors) EXPECT_EQ(integer_primitive(h), h);
  }
}

// ------------------------------------------------------------ E[alpha]

UPolyE upoly(const Universe& tags, std::vector<std::string> cs) {
  std::vector<RatQ> v;
  for (const auto& c : cs) v.push_back(R(tags, c));
  return UPolyE(std::move(v));
}

AlgExtPtr exam_ext() {
  auto tags = U({"t1", "t2"});
  return std::make_shared<AlgExt>(tags, upoly(tags, {"-3*t1 - t2 + 2", "0", "-4", "0", "1"}));
}

UPolyExt reconstruct(const ExtFactorization& F) {
  UPolyExt r = UPolyExt::constant(F.unit);
  for (const auto& [g, m] : F.factors) r *= g.pow(m);
  return r;
}

TEST(FactorExtension, RunningExample) {
  auto E = exam_ext();
  auto a = AlgExtElem::generator(E);
  auto one = a.one_like();
  auto p = embed(E, E->minpoly());
  auto F = factor_over_extension(p);
  ASSERT_EQ(F.factors.size(), 3u);
  EXPECT_EQ(F.factors[0].first, UPolyExt({a, one}));
  EXPECT_EQ(F.factors[1].first, UPolyExt({-a, one}));
  EXPECT_EQ(F.factors[2].first, UPolyExt({a * a - one.mul_int(4), a.zero_like(), one}));
  EXPECT_EQ(reconstruct(F), p);

  UPolyExt g({a * a - one.mul_int(4), a.zero_like(), one});
  auto G = factor_over_extension(g);
  ASSERT_EQ(G.factors.size(), 1u);
  long c = find_squarefree_shift(g);
  EXPECT_NE(c, 0);
  // the shift by 3 also gives a square-free (and irreducible) norm
  auto n3 = norm_of(shift(g, a.mul_int(-3)));
  EXPECT_TRUE(is_squarefree(n3));
  EXPECT_EQ(factor_over_base(n3).factors.size(), 1u);
}

TEST(FactorExtension, SqrtExamples) {
  auto tags = U({"t"});
  auto E = std::make_shared<AlgExt>(tags, upoly(tags, {"-t", "0", "1"}));
  auto a = AlgExtElem::generator(E);
  auto one = a.one_like();
  auto F = factor_over_extension(embed(E, E->minpoly()));
  ASSERT_EQ(F.factors.size(), 2u);
  EXPECT_EQ(roots_in_extension(F).size(), 2u);
  EXPECT_EQ(find_squarefree_shift(UPolyExt({-a, one})), 0);
  // coefficients in E: the unshifted norm is a square
  EXPECT_EQ(find_squarefree_shift(embed(E, upoly(tags, {"-t - 1", "0", "1"}))), 1);
}

// f = prod (x - r_i) * (x^2 - alpha) over Q(t)[sqrt t], or * (x^2 - t*alpha) over
// the cube root; x^2 - alpha has no root since t^(1/4) has degree 4 over Q(t).
TEST(FactorExtension, RandomInstances) {
  std::mt19937_64 rng(23);
  auto tags = U({"t"});
  auto uvt = U({"t"});
  for (int deg : {2, 3}) {
    std::vector<std::string> pc(deg + 1, "0");
    pc[0] = "-t";
    pc[deg] = "1";
    auto E = std::make_shared<AlgExt>(tags, upoly(tags, pc));
    auto a = AlgExtElem::generator(E);
    auto one = a.one_like();
    int iters = deg == 2 ? 60 : 40;
    for (int it = 0; it < iters; ++it) {
      std::vector<AlgExtElem> roots;
      int nr = static_cast<int>(rng() % 3);
      for (int k = 0; k < nr; ++k) {
        std::vector<RatQ> c;
        for (int j = 0; j < deg; ++j) c.push_back(RatQ(random_poly(rng, uvt, 1, 2, 2)));
        roots.push_back(AlgExtElem(E, c));
      }
      UPolyExt f = UPolyExt::constant(one);
      for (const auto& r : roots) f *= UPolyExt({-r, one});
      bool tail = it % 2 == 0 || roots.empty();
      if (tail) f *= UPolyExt({-a, a.zero_like(), one});
      if (f.degree() < 1) continue;
      auto F = factor_over_extension(f);
      EXPECT_EQ(reconstruct(F), f);

      std::set<std::string> distinct;
      for (const auto& r : roots) distinct.insert(to_string(r));
      std::size_t linear = 0;
      for (const auto& [g, m] : F.factors) linear += g.degree() == 1;
      EXPECT_EQ(linear, distinct.size());
      for (const auto& r : roots_in_extension(F)) EXPECT_TRUE(evaluate(f, r).is_zero());

      for (std::size_t i = 0; i < F.factors.size(); ++i)
        for (std::size_t j = i + 1; j < F.factors.size(); ++j)
          EXPECT_EQ(gcd(F.factors[i].first, F.factors[j].first).degree(), 0);
      for (const auto& [g, m] : F.factors) {
        if (g.degree() < 2) continue;
        EXPECT_EQ(factor_over_base(norm_of(g)).factors.size(), 1u);
      }
    }
  }
}

TEST(FactorBase, OverRationalFunctionField) {
  auto tags = U({"t"});
  auto f = upoly(tags, {"-t^2", "0", "1"});  // x^2 - t^2
  auto F = factor_over_base(f);
  ASSERT_EQ(F.factors.size(), 2u);
  auto g = upoly(tags, {"-1/t", "0", "1"});  // x^2 - 1/t irreducible
  EXPECT_EQ(factor_over_base(g).factors.size(), 1u);
  auto h = upoly(tags, {"1/(t+1)", "1/t"});
  auto H = factor_over_base(h);
  ASSERT_EQ(H.factors.size(), 1u);
  EXPECT_EQ(H.factors[0].first.scale(H.unit), h);
}

}  // namespace

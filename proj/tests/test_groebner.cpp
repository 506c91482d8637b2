#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace unirat;
using namespace unirat::testing;

namespace {

const char* kF1 = "-y^2*x - y^4 + 2*x + 2*y^2 - 1";
const char* kF2 = "4*y^4 - 10*y^2 + 5 + 3*y^2*x - 6*x";

using K = MonomialOrder::Kind;

// Tag order {x,y} > {t1,t2}: grevlex on the ambient block, lex on the tags.
MonomialOrder tag_order() { return MonomialOrder::block({{{0, 1}, K::GrevLex}, {{2, 3}, K::Lex}}); }

GroebnerBasis<Rational> exam_basis() {
  auto u = U({"x", "y", "t1", "t2"});
  Ideal<Rational> I({P(u, std::string("t1 - (") + kF1 + ")"), P(u, std::string("t2 - (") + kF2 + ")")});
  return buchberger(I, tag_order());
}

bool contains_up_to_scalar(const GroebnerBasis<Rational>& G, const QPoly& p) {
  for (const auto& g : G.basis())
    if (integer_primitive(g) == integer_primitive(p)) return true;
  return false;
}

TEST(Buchberger, SingleGenerator) {
  auto u = U({"x"});
  auto G = buchberger(Ideal<Rational>({P(u, "x")}), MonomialOrder::lex(1));
  ASSERT_EQ(G.basis().size(), 1u);
  EXPECT_EQ(G.basis()[0], P(u, "x"));
  EXPECT_TRUE(G.reduced());
}

TEST(Buchberger, RunningExampleTagBasis) {
  auto G = exam_basis();
  auto u = G.universe();
  EXPECT_TRUE(contains_up_to_scalar(G, P(u, "-3*t1 + y^4 - 4*y^2 + 2 - t2")));
  EXPECT_TRUE(contains_up_to_scalar(G, P(u, "3*x*t1 + x*t2 + 2*x + 4*y^2*t1 + y^2*t2 + 3*y^2 - 2*t1 - 2")));
  EXPECT_TRUE(contains_up_to_scalar(G, P(u, "y^2*x - 2*x + 2*y^2 + 4*t1 + t2 - 1")));
  EXPECT_TRUE(spolys_reduce_to_zero(G));

  // with lex inside the ambient block the basis is exactly the printed one
  Ideal<Rational> I({P(u, std::string("t1 - (") + kF1 + ")"), P(u, std::string("t2 - (") + kF2 + ")")});
  auto L = buchberger(I, MonomialOrder::block({{{0, 1}, K::Lex}, {{2, 3}, K::Lex}}));
  EXPECT_EQ(L.basis().size(), 3u);
  EXPECT_TRUE(contains_up_to_scalar(L, P(u, "-3*t1 + y^4 - 4*y^2 + 2 - t2")));
  EXPECT_TRUE(contains_up_to_scalar(L, P(u, "3*x*t1 + x*t2 + 2*x + 4*y^2*t1 + y^2*t2 + 3*y^2 - 2*t1 - 2")));
  EXPECT_TRUE(contains_up_to_scalar(L, P(u, "y^2*x - 2*x + 2*y^2 + 4*t1 + t2 - 1")));
}

TEST(Buchberger, LexBasisHasQuadraticInX) {
  auto u = U({"y", "x", "t1", "t2"});
  Ideal<Rational> I({P(u, std::string("t1 - (") + kF1 + ")"), P(u, std::string("t2 - (") + kF2 + ")")});
  auto G = buchberger(I, MonomialOrder::lex(4));
  bool found = false;
  for (const auto& g : G.basis())
    if (!g.involves(0) && g.degree(1) == 2) found = true;
  EXPECT_TRUE(found);
  EXPECT_TRUE(spolys_reduce_to_zero(G));
}

TEST(NormalForm, Examples) {
  auto G = exam_basis();
  auto u = G.universe();
  for (const auto& g : G.basis()) EXPECT_TRUE(normal_form(g, G).is_zero());
  auto comb = P(u, "x*y + t1") * G.basis()[0] + P(u, "y^3 - 7") * G.basis()[1];
  EXPECT_TRUE(normal_form(comb, G).is_zero());
  EXPECT_EQ(normal_form(P(u, "1"), G), P(u, "1"));

  auto nf = normal_form(P(u, "y^4"), G);
  EXPECT_EQ(nf.degree(0), 0u);
  EXPECT_LE(nf.degree(1), 2u);
  EXPECT_EQ(nf, P(u, "4*y^2 - 2 + 3*t1 + t2"));
}

TEST(Elimination, Examples) {
  auto G = exam_basis();
  EXPECT_TRUE(elimination_ideal(G, std::vector<std::string>{"t1", "t2"}).empty());
  auto all = elimination_ideal(G, std::vector<std::string>{"x", "y", "t1", "t2"});
  EXPECT_EQ(all.size(), G.basis().size());

  auto u = U({"x", "y", "t"});
  auto H = buchberger(Ideal<Rational>({P(u, "x-t"), P(u, "y-t^2")}), MonomialOrder::lex(3));
  auto e = elimination_ideal(H, std::vector<std::string>{"y", "t"});
  bool found = false;
  for (const auto& g : e)
    if (integer_primitive(g) == integer_primitive(P(u, "y-t^2"))) found = true;
  EXPECT_TRUE(found);

  auto Hg = buchberger(Ideal<Rational>({P(u, "x-t")}), MonomialOrder::grevlex(3));
  EXPECT_THROW(elimination_ideal(Hg, std::vector<std::string>{"y", "t"}), Error);
}

TEST(IdealMember, Examples) {
  auto u = U({"x"});
  EXPECT_TRUE(ideal_member(P(u, "x^2+x"), Ideal<Rational>({P(u, "x")})));
  EXPECT_FALSE(ideal_member(P(u, "1"), Ideal<Rational>({P(u, "x")})));
  auto w = U({"X", "Y", "Z"});
  EXPECT_TRUE(ideal_member(P(w, "X^2+Y^2"), Ideal<Rational>({P(w, "X^2+Y^2")})));
  EXPECT_TRUE(ideal_member(P(w, "(X^2+Y^2)*(Z-1)"), Ideal<Rational>({P(w, "X^2+Y^2")})));
  EXPECT_FALSE(ideal_member(P(w, "X+Y"), Ideal<Rational>({P(w, "X^2+Y^2")})));
}

TEST(Buchberger, BudgetIsEnforced) {
  auto u = U({"x", "y", "z"});
  Ideal<Rational> I({P(u, "x^3 - y*z + 1"), P(u, "y^3 - x*z - 2"), P(u, "z^3 - x*y + 3")});
  GroebnerOptions opt;
  opt.max_pairs = 2;
  try {
    buchberger(I, MonomialOrder::lex(3), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Buchberger, PropertiesOnRandomIdeals) {
  std::mt19937_64 rng(31);
  auto u = U({"x", "y", "z"});
  std::vector<MonomialOrder> orders{MonomialOrder::lex(3), MonomialOrder::grevlex(3),
                                    MonomialOrder::block({{{0}, K::GrevLex}, {{1, 2}, K::Lex}})};
  for (int it = 0; it < 30; ++it) {
    std::vector<QPoly> gens;
    for (int k = 0; k < 2 + it % 2; ++k) {
      auto g = random_poly(rng, u, 2, 3, 3);
      if (!g.is_zero()) gens.push_back(g);
    }
    if (gens.empty()) continue;
    for (const auto& o : orders) {
      auto G = buchberger(Ideal<Rational>(gens), o);
      EXPECT_TRUE(spolys_reduce_to_zero(G));
      for (const auto& g : gens) EXPECT_TRUE(normal_form(g, G).is_zero());
      auto p = random_poly(rng, u, 3, 4);
      auto nf = normal_form(p, G);
      EXPECT_EQ(normal_form(nf, G), nf);
      // reducedness: no term divisible by another leading monomial
      for (std::size_t i = 0; i < G.basis().size(); ++i)
        for (std::size_t j = 0; j < G.basis().size(); ++j) {
          if (i == j) continue;
          for (const auto& t : G.basis()[i].terms()) EXPECT_FALSE(G.leading_monomials()[j].divides(t.mono));
        }
    }
  }
}

TEST(IdealMember, AgreesWithCofactorSearch) {
  std::mt19937_64 rng(41);
  auto u = U({"x", "y", "z"});
  int members = 0, nonmembers = 0;
  for (int it = 0; it < 24; ++it) {
    std::vector<QPoly> gens;
    for (int k = 0; k < 2; ++k) {
      auto g = random_poly(rng, u, 2, 3, 3);
      if (g.is_constant()) g += P(u, "x*y");
      gens.push_back(g);
    }
    QPoly p = random_poly(rng, u, 1, 2) * gens[0] + random_poly(rng, u, 1, 2) * gens[1];
    if (it % 2) p += random_poly(rng, u, 2, 2);
    bool lib = ideal_member(p, Ideal<Rational>(gens));
    bool oracle = member_by_cofactors(p, gens, 2);
    if (oracle) EXPECT_TRUE(lib);
    if (!lib) EXPECT_FALSE(oracle);
    if (lib && !oracle) EXPECT_TRUE(member_by_cofactors(p, gens, 4));
    (lib ? members : nonmembers)++;
  }
  EXPECT_GT(members, 0);
  EXPECT_GT(nonmembers, 0);
}

TEST(Elimination, VanishesOnCommonZeros) {
  std::mt19937_64 rng(51);
  auto u = U({"x", "y", "z", "w"});
  auto order = MonomialOrder::block({{{0, 1}, K::GrevLex}, {{2, 3}, K::GrevLex}});
  std::uniform_int_distribution<int> pt(-3, 3);
  for (int it = 0; it < 12; ++it) {
    std::vector<Rational> point{Rational(pt(rng)), Rational(pt(rng)), Rational(pt(rng)) / 2, Rational(pt(rng))};
    std::vector<QPoly> gens;
    for (int k = 0; k < 3; ++k) {
      auto g = random_poly(rng, u, 2, 3, 3);
      g -= g.constant_like(evaluate(g, point));
      if (!g.is_zero()) gens.push_back(g);
    }
    if (gens.empty()) continue;
    auto G = buchberger(Ideal<Rational>(gens), order);
    for (const auto& e : elimination_ideal(G, std::vector<bool>{false, false, true, true})) {
      EXPECT_FALSE(e.involves(0) || e.involves(1));
      EXPECT_EQ(evaluate(e, point), 0);
    }
  }
}

TEST(Dimension, MonomialIdealHelpers) {
  // (x^2, y^3) in K[x,y]: zero dimensional with 6 standard monomials
  std::vector<Monomial> lms{{2, 0}, {0, 3}};
  EXPECT_EQ(monomial_dimension(lms, {0, 1}), 0);
  EXPECT_EQ(standard_monomial_count(lms, {0, 1}).value(), 6u);
  // (x*y): dimension 1, infinitely many standard monomials
  std::vector<Monomial> xy{{1, 1}};
  EXPECT_EQ(monomial_dimension(xy, {0, 1}), 1);
  EXPECT_FALSE(standard_monomial_count(xy, {0, 1}).has_value());
  EXPECT_EQ(monomial_dimension({}, {0, 1}), 2);
  // (x^2, x*y, y^2): 1, x, y
  std::vector<Monomial> m3{{2, 0}, {1, 1}, {0, 2}};
  EXPECT_EQ(standard_monomial_count(m3, {0, 1}).value(), 3u);
}

TEST(Fp, GroebnerOverPrimeField) {
  auto u = U({"x", "y", "t1", "t2"});
  auto f = CoefField::prime(5);
  auto G = buchberger(Ideal<Fp>({parse_polynomial<Fp>("t1 - x", u, f), parse_polynomial<Fp>("t2 - y^5", u, f)}),
                      tag_order());
  EXPECT_TRUE(spolys_reduce_to_zero(G));
  EXPECT_TRUE(elimination_ideal(G, std::vector<std::string>{"t1", "t2"}).empty());
}

}  // namespace

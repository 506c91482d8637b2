#include <gtest/gtest.h>

#include <array>
#include <set>

#include <unirat/subfields.hpp>

#include "helpers.hpp"

using namespace unirat;
using namespace unirat::testing;

namespace {

const char* kF1 = "-y^2*x - y^4 + 2*x + 2*y^2 - 1";
const char* kF2 = "4*y^4 - 10*y^2 + 5 + 3*y^2*x - 6*x";

Presentation sweedler() { return parse_presentation({"x", "y"}, {kF1, kF2}); }
Presentation one_var(const std::string& f) { return parse_presentation({"x"}, {f}); }

// cyclic quartic: invariant under u = (x + 1)/(1 - x), which has order 4
const char* kCyclic = "x - 1/x + (x + 1)/(1 - x) + (x - 1)/(x + 1)";
// S3 acting by x -> 1/x, x -> -1 - x
const char* kS3 = "(x^2 + x + 1)^3/(x^2 + x)^2";

std::multiset<int> degrees(const ExtFactorization& F) {
  std::multiset<int> out;
  for (const auto& [g, m] : F.factors)
    for (unsigned k = 0; k < m; ++k) out.insert(g.degree());
  return out;
}

UPolyExt product(const ExtFactorization& F) {
  auto acc = UPolyExt::constant(F.unit);
  for (const auto& [g, m] : F.factors) acc *= g.pow(m);
  return acc;
}

bool member(const RatQ& c, const Presentation& P) { return membership_express(c, tag_basis(P)).has_value(); }

// Q(a) = Q(b) by mutual membership of generators.
bool same_field(const Presentation& A, const Presentation& B) {
  for (const auto& g : A.generators())
    if (!member(g, B)) return false;
  for (const auto& g : B.generators())
    if (!member(g, A)) return false;
  return true;
}

Presentation lifted(const IntermediateField& F, const Presentation& P) {
  return Presentation(P.ambient(), F.generators_ambient);
}

// Mobius maps as integer-scaled 2x2 matrices, composed and normalized.
using Mat = std::array<Rational, 4>;

Mat normalize(Mat m) {
  Rational s = m[2] != 0 ? m[2] : m[3];
  for (auto& e : m) e /= s;
  return m;
}

Mat compose(const Mat& p, const Mat& q) {
  return normalize({p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
                    p[2] * q[1] + p[3] * q[3]});
}

// Number of subgroups of a finite group given by its elements, by closing
// every subset under composition.
std::size_t subgroup_count(const std::vector<Mat>& G) {
  std::set<std::set<Mat>> found;
  for (std::uint32_t mask = 1; mask < (1u << G.size()); ++mask) {
    std::set<Mat> H;
    for (std::size_t i = 0; i < G.size(); ++i)
      if (mask >> i & 1) H.insert(G[i]);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Mat> cur(H.begin(), H.end());
      for (const auto& a : cur)
        for (const auto& b : cur)
          if (H.insert(compose(a, b)).second) grew = true;
    }
    found.insert(H);
  }
  return found.size();
}

std::vector<Mat> as_matrices(const std::vector<Mobius>& G) {
  std::vector<Mat> out;
  for (const auto& m : G) out.push_back(normalize({m.a, m.b, m.c, m.d}));
  return out;
}

// Brute force over small integer matrices: all u with f(u) = f.
std::set<Mat> small_mobius_oracle(const RatQ& f, int range) {
  std::set<Mat> out;
  const auto& u = f.universe();
  for (int a = -range; a <= range; ++a)
    for (int b = -range; b <= range; ++b)
      for (int c = -range; c <= range; ++c)
        for (int d = -range; d <= range; ++d) {
          if (a * d - b * c == 0) continue;
          Mobius m{a, b, c, d};
          if (substitute(f, {m.apply(u)}, u) == f) out.insert(normalize({Rational(a), Rational(b), Rational(c), Rational(d)}));
        }
  return out;
}

}  // namespace

TEST(Rewrite, RunningExample) {
  auto D = rewrite_presentation(sweedler());
  EXPECT_EQ(D.tags().names(), (std::vector<std::string>{"t1", "t2"}));
  EXPECT_EQ(to_string(D.alpha_ambient), "y");
  EXPECT_EQ(to_string(D.p_alpha(), "z"), "z^4 - 4*z^2 + (-3*t1 - t2 + 2)");
  EXPECT_TRUE(D.beta_trivial());
  EXPECT_EQ(D.degree, 4u);
  // x maps to an element of E[alpha] satisfying x's defining relation
  auto x = D.x_images[0];
  auto y = D.x_images[1];
  EXPECT_EQ(y, D.alpha());
  EXPECT_EQ(D.to_extension(sweedler().generators()[0]), AlgExtElem::from_base(D.ext, R(D.tags(), "t1")));
  EXPECT_TRUE((y * y * x - x.mul_int(2) + (y * y).mul_int(2) + AlgExtElem::from_base(D.ext, R(D.tags(), "4*t1 + t2 - 1")))
                  .is_zero());
}

TEST(Rewrite, Identity) {
  auto D = rewrite_presentation(parse_presentation({"x", "y"}, {"x", "y"}));
  EXPECT_EQ(D.p_alpha().degree(), 1);
  EXPECT_EQ(D.degree, 1u);
}

TEST(Rewrite, SquareAndCube) {
  auto D = rewrite_presentation(parse_presentation({"x"}, {"x^2", "x^3"}));
  EXPECT_EQ(D.basis_index, std::vector<std::size_t>{0});
  EXPECT_EQ(to_string(D.alpha_ambient), "x");
  EXPECT_EQ(to_string(D.p_alpha(), "z"), "z^2 - t1");
  EXPECT_EQ(D.beta_minpoly.degree(), 2);
  EXPECT_EQ(D.degree, 1u);
  EXPECT_EQ(D.to_ambient(D.beta), R(D.presentation.ambient().vars(), "x^3"));
}

TEST(Rewrite, NotAlgebraic) {
  try {
    rewrite_presentation(parse_presentation({"x", "y"}, {"x + y"}));
    FAIL() << "expected NOT_ALGEBRAIC";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAlgebraic);
  }
}

TEST(Rewrite, RoundTrip) {
  for (auto P : {sweedler(), one_var(kCyclic), parse_presentation({"x", "y"}, {"x^2", "y^2"})}) {
    auto D = rewrite_presentation(P);
    const auto& amb = P.ambient();
    for (std::size_t i = 0; i < amb.nvars(); ++i)
      EXPECT_TRUE(amb.equal(D.to_ambient(D.x_images[i]), RatQ(amb.variable(i))));
    EXPECT_TRUE(evaluate(embed(D.ext, D.beta_minpoly), D.beta).is_zero());
    EXPECT_EQ(D.p_alpha().degree() % D.beta_minpoly.degree(), 0);
  }
}

TEST(Factor, RunningExampleBothRoutes) {
  auto D = rewrite_presentation(sweedler());
  auto p = embed(D.ext, D.p_alpha());
  auto T = factor_over_extension(p);
  auto K = D.factor_p_alpha();
  EXPECT_EQ(degrees(T), (std::multiset<int>{1, 1, 2}));
  EXPECT_EQ(product(T), p);
  ASSERT_EQ(T.factors.size(), K.factors.size());
  for (std::size_t i = 0; i < T.factors.size(); ++i) EXPECT_EQ(T.factors[i].first, K.factors[i].first);
  EXPECT_EQ(to_string(T.factors[2].first, "z"), "z^2 + (alpha^2 - 4)");
}

TEST(Inclusion, PowersOfAlpha) {
  auto D = rewrite_presentation(sweedler());
  auto a = D.alpha();
  auto a2 = a * a;
  auto w = subfield_inclusion(a2, a);
  ASSERT_TRUE(w);
  ASSERT_EQ(w->size(), 4u);
  EXPECT_TRUE((*w)[2].is_one());
  EXPECT_TRUE((*w)[0].is_zero() && (*w)[1].is_zero() && (*w)[3].is_zero());
  auto self = subfield_inclusion(a2, a2);
  ASSERT_TRUE(self);
  EXPECT_TRUE((*self)[1].is_one());
  EXPECT_FALSE(subfield_inclusion(a, a2));
  auto t = AlgExtElem::from_base(D.ext, R(D.tags(), "t1/t2"));
  auto c = subfield_inclusion(t, a2);
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[0], R(D.tags(), "t1/t2"));
}

TEST(Blocks, RunningExample) {
  auto D = rewrite_presentation(sweedler());
  auto F = factor_over_extension(embed(D.ext, D.p_alpha()));
  auto lin = linear_factor_blocks(F);
  ASSERT_EQ(lin.size(), 1u);
  EXPECT_EQ(lin[0].size(), 2);
  std::set<std::string> roots;
  for (const auto& r : lin[0].roots) roots.insert(to_string(r));
  EXPECT_EQ(roots, (std::set<std::string>{"alpha", "-alpha"}));
  // (z - alpha)(z^2 + alpha^2 - 4) has degree 3, which does not divide 4
  auto cand = combination_candidates(F);
  ASSERT_EQ(cand.size(), 1u);
  EXPECT_EQ(cand[0].size(), 2);
  EXPECT_EQ(factor_combination_blocks(F).size(), 1u);
  auto L = block_to_field(lin[0], D.ext);
  EXPECT_EQ(to_string(L.block_poly, "z"), "z^2 - alpha^2");
  EXPECT_EQ(L.degree_over_E, 2u);
  EXPECT_FALSE(L.trivial());
}

TEST(Blocks, TrivialFields) {
  auto D = rewrite_presentation(sweedler());
  auto bottom = block_to_field(embed(D.ext, D.p_alpha()));
  EXPECT_TRUE(bottom.is_bottom_E());
  EXPECT_TRUE(bottom.trivial());
  auto top = block_to_field(UPolyExt({-D.alpha(), D.alpha().one_like()}));
  EXPECT_TRUE(top.is_top());
  EXPECT_EQ(top.degree_over_E, 4u);
}

TEST(Blocks, OnlyTrivialRoot) {
  auto D = rewrite_presentation(one_var("x^3 + x"));
  auto F = D.factor_p_alpha();
  EXPECT_EQ(degrees(F), (std::multiset<int>{1, 2}));
  EXPECT_TRUE(linear_factor_blocks(F).empty());
  EXPECT_TRUE(factor_combination_blocks(F).empty());
}

TEST(Blocks, DegreeSixCombinations) {
  // (x^3 + x)^2 = (x^2)(x^2 + 1)^2 decomposes through x^2 and x^3 + x
  auto D = rewrite_presentation(one_var("(x^3 + x)^2"));
  auto F = D.factor_p_alpha();
  ASSERT_EQ(degrees(F), (std::multiset<int>{1, 1, 2, 2}));
  // oracle: sizes 1 + (sum over subsets of the other factors) dividing 6, below 6
  std::vector<int> others{1, 2, 2};
  std::multiset<int> expect;
  for (int mask = 1; mask < 8; ++mask) {
    int s = 1;
    for (int i = 0; i < 3; ++i)
      if (mask >> i & 1) s += others[i];
    if (s < 6 && 6 % s == 0) expect.insert(s);
  }
  std::multiset<int> got;
  for (const auto& b : combination_candidates(F)) got.insert(b.size());
  EXPECT_EQ(got, expect);
  EXPECT_EQ(expect, (std::multiset<int>{2, 3, 3}));
  std::multiset<int> valid;
  for (const auto& b : factor_combination_blocks(F)) valid.insert(b.size());
  EXPECT_EQ(valid, (std::multiset<int>{2, 3}));
}

TEST(Blocks, SubsetBudget) {
  auto D = rewrite_presentation(one_var("(x^3 + x)^2"));
  auto F = D.factor_p_alpha();
  SubfieldOptions opt;
  opt.max_subsets = 4;
  try {
    combination_candidates(F, opt);
    FAIL() << "expected BUDGET_EXCEEDED";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Lattice, RunningExample) {
  auto P = sweedler();
  auto L = intermediate_fields(P);
  ASSERT_EQ(L.fields.size(), 3u);
  ASSERT_EQ(L.proper().size(), 1u);
  const auto& M = L.fields[1];
  EXPECT_EQ(M.degree_over_base, 2u);
  ASSERT_EQ(M.generators_ambient.size(), 3u);
  EXPECT_EQ(M.generators_ambient[0], P.generators()[0]);
  EXPECT_EQ(M.generators_ambient[1], P.generators()[1]);
  const auto& v = P.ambient().vars();
  EXPECT_TRUE(subfield_inclusion(L.diagram.alpha() * L.diagram.alpha(), M.primitive).has_value());
  EXPECT_TRUE(same_field(lifted(M, P), parse_presentation({"x", "y"}, {"x", "y^2"})));
  EXPECT_TRUE(same_field(lifted(M, P), Presentation(P.ambient(), {P.generators()[0], P.generators()[1], R(v, "y^2")})));
  EXPECT_FALSE(member(R(v, "y"), lifted(M, P)));
  EXPECT_EQ(L.hasse_edges, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}}));
  EXPECT_FALSE(is_normal_extension(P));
}

TEST(Lattice, TrivialExtension) {
  auto L = intermediate_fields(parse_presentation({"x", "y"}, {"x", "y"}));
  EXPECT_EQ(L.fields.size(), 1u);
  EXPECT_TRUE(L.hasse_edges.empty());
}

TEST(Lattice, QuarticChain) {
  auto P = one_var("x^4");
  auto L = intermediate_fields(P);
  ASSERT_EQ(L.fields.size(), 3u);
  EXPECT_TRUE(same_field(lifted(L.fields[1], P), one_var("x^2")));
  EXPECT_EQ(L.hasse_edges, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}}));
}

TEST(Lattice, PolynomialDecompositions) {
  auto P = one_var("(x^3 + x)^2");
  auto L = intermediate_fields(P);
  ASSERT_EQ(L.fields.size(), 4u);
  // sorted by degree over the bottom: [Q(x^3 + x) : Q(f)] = 2, [Q(x^2) : Q(f)] = 3
  EXPECT_TRUE(same_field(lifted(L.fields[1], P), one_var("x^3 + x")));
  EXPECT_TRUE(same_field(lifted(L.fields[2], P), one_var("x^2")));
  auto Q = one_var("x^6 + x^3");
  auto M = intermediate_fields(Q);
  ASSERT_EQ(M.fields.size(), 3u);
  EXPECT_TRUE(same_field(lifted(M.fields[1], Q), one_var("x^3")));
}

TEST(Lattice, NormalCountsMatchSubgroups) {
  for (const char* f : {"x^2", "x^2 + 1/x^2", kCyclic, kS3, "x^3 + 1/x^3"}) {
    SCOPED_TRACE(f);
    auto P = one_var(f);
    auto G = monodromy_fix_group(P.generators()[0]);
    auto L = intermediate_fields(P);
    auto N = normality(P);
    if (N.normal) EXPECT_EQ(L.fields.size(), subgroup_count(as_matrices(G)));
  }
  EXPECT_EQ(intermediate_fields(one_var(kCyclic)).fields.size(), 3u);
  EXPECT_EQ(intermediate_fields(one_var("x^2 + 1/x^2")).fields.size(), 5u);
  EXPECT_EQ(intermediate_fields(one_var(kS3)).fields.size(), 6u);
  // Q(x, y) over Q(x^2, y^2) has group V4
  auto V = intermediate_fields(parse_presentation({"x", "y"}, {"x^2", "y^2"}));
  EXPECT_EQ(V.fields.size(), 5u);
}

TEST(Lattice, DegreeBookkeeping) {
  std::vector<Presentation> cases{sweedler(),
                                  one_var("x^4"),
                                  one_var(kCyclic),
                                  one_var("(x^3 + x)^2"),
                                  one_var(kS3),
                                  parse_presentation({"x", "y"}, {"x^2", "y^2"}),
                                  parse_presentation({"x", "y"}, {"x + y", "x*y"}),
                                  parse_presentation({"x"}, {"x^4", "x^6"})};
  for (const auto& P : cases) {
    auto L = intermediate_fields(P);
    const auto& D = L.diagram;
    auto top = static_cast<std::uint64_t>(D.p_alpha().degree());
    auto bottom = L.fields.front().degree_over_E;
    EXPECT_EQ(top / bottom, D.degree);
    for (std::size_t i = 0; i < L.fields.size(); ++i) {
      const auto& F = L.fields[i];
      EXPECT_EQ(F.index_in_top * F.degree_over_base, top / bottom);
      EXPECT_EQ(F.generators_ambient.size(), static_cast<std::size_t>(D.trdeg() + 1));
      EXPECT_EQ(top % F.block_poly.degree(), 0u);
      auto Fp = lifted(F, P);
      for (const auto& g : P.generators()) EXPECT_TRUE(member(g, Fp));
      if (i > 0) EXPECT_FALSE(subfield_inclusion(F.primitive, D.beta).has_value());
    }
    // Hasse edges generate exactly the inclusions among reported fields
    std::size_t k = L.fields.size();
    std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
    for (auto [a, b] : L.hasse_edges) reach[a][b] = true;
    for (std::size_t m = 0; m < k; ++m)
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
          if (reach[a][m] && reach[m][b]) reach[a][b] = true;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (a != b) EXPECT_EQ(reach[a][b], field_contains(L.fields[b], L.fields[a]));
  }
}

TEST(Mobius, Examples) {
  auto names = [](const std::vector<Mobius>& G) {
    std::vector<std::string> out;
    for (const auto& m : G) out.push_back(to_string(m));
    return out;
  };
  auto x = Universe({"x"});
  EXPECT_EQ(names(monodromy_fix_group(R(x, "x^2"))), (std::vector<std::string>{"-x", "x"}));
  EXPECT_EQ(names(monodromy_fix_group(R(x, "x^3 + x"))), (std::vector<std::string>{"x"}));
  EXPECT_EQ(names(monodromy_fix_group(R(x, "x + 1/x"))), (std::vector<std::string>{"x", "1/x"}));
  EXPECT_EQ(monodromy_fix_group(R(x, kCyclic)).size(), 4u);
}

TEST(Mobius, SmallCoefficientOracle) {
  auto x = Universe({"x"});
  for (const char* f : {"x^2", "x^3 + x", "x + 1/x", "x^2 + 1/x^2", kCyclic, kS3, "x^4 - 2*x^2"}) {
    SCOPED_TRACE(f);
    auto g = R(x, f);
    auto G = as_matrices(monodromy_fix_group(g));
    std::set<Mat> mine(G.begin(), G.end());
    EXPECT_EQ(mine, small_mobius_oracle(g, 2));
  }
}

TEST(Normality, Examples) {
  EXPECT_FALSE(is_normal_extension(sweedler()));
  auto t = Universe({"t"});
  EXPECT_TRUE(is_normal_extension(UPolyE({R(t, "-t"), R(t, "0"), R(t, "1")})));
  EXPECT_FALSE(is_normal_extension(UPolyE({R(t, "-t"), R(t, "0"), R(t, "0"), R(t, "1")})));
  auto N = normality(one_var("x^2"));
  EXPECT_TRUE(N.normal);
  EXPECT_EQ(N.degree, 2u);
  EXPECT_EQ(N.mobius, std::optional<std::uint64_t>(2));
}

TEST(Normality, RoutesAgreeOnSmallDegrees) {
  for (const char* f : {"x", "x^2", "x^2 + x", "x^3", "x^3 + x", "x^3 - 3*x", "x^4", "x^4 + x^2", "x^4 + x",
                        "x + 1/x", "(x^2 + 1)/(x - 1)", "x^2 + 1/x^2", "x^3 + 1/x", kCyclic, "1/(x^4 + 1)",
                        "(x^3 + 1)/x"}) {
    SCOPED_TRACE(f);
    auto P = one_var(f);
    auto N = normality(P);
    ASSERT_TRUE(N.mobius.has_value());
    EXPECT_EQ(N.normal, *N.mobius == N.degree);
    auto D = rewrite_presentation(P);
    bool split = true;
    for (const auto& [g, m] : D.factor_p_alpha().factors) split = split && g.degree() == 1;
    EXPECT_EQ(N.normal, split);
  }
}

TEST(ReduceDimension, Identity) {
  auto R1 = reduce_dimension(parse_presentation({"x"}, {"x^2", "x^3"}));
  EXPECT_TRUE(R1.identity());
  auto R2 = reduce_dimension(parse_presentation({"x", "y"}, {"x + y", "x*y"}));
  EXPECT_TRUE(R2.identity());
  EXPECT_EQ(R2.vars.size(), 2u);
}

TEST(ReduceDimension, Product) {
  auto P = parse_presentation({"x", "y"}, {"x*y"});
  auto Rd = reduce_dimension(P);
  ASSERT_EQ(Rd.steps.size(), 1u);
  EXPECT_EQ(Rd.vars.names(), std::vector<std::string>{"x"});
  unsigned nu = Rd.steps[0].nu;
  EXPECT_GE(nu, 3u);
  EXPECT_EQ(Rd.images[0], RatQ(QPoly::variable(Rd.vars, CoefField::rationals(), 0, 1 + nu)));
  EXPECT_EQ(trdeg_groebner(tag_basis(Presentation(Ambient(Rd.vars), Rd.images))), 1);
}

TEST(ReduceDimension, PreservesTrdeg) {
  for (auto P : {parse_presentation({"x", "y", "z"}, {"x*y", "z"}), parse_presentation({"x", "y", "z"}, {"x + y + z"}),
                 parse_presentation({"x", "y", "z"}, {"x*y + z", "x^2*y^2 + z^2", "y*z/x"}),
                 parse_presentation({"x", "y"}, {"x^2 + y^2", "(x^2 + y^2)^2"})}) {
    auto before = trdeg_groebner(tag_basis(P));
    auto Rd = reduce_dimension(P);
    EXPECT_EQ(Rd.vars.size(), static_cast<std::size_t>(before));
    for (const auto& s : Rd.steps) EXPECT_EQ(s.trdeg, before);
    EXPECT_EQ(trdeg_groebner(tag_basis(Presentation(Ambient(Rd.vars), Rd.images))), before);
  }
}

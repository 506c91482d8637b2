#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dense.hpp"
#include "presentation.hpp"

namespace unirat {

// Groebner basis of (t_i*D_i - N_i) + relations + (1 - w*lcm(D_i)) in
// K[x, w, t] under Block([x, w] grevlex, [t] lex). The saturation variable w
// is present only when some generator has a nonconstant denominator. The basis
// is computed on first use and shared between copies.
template <class C>
class TagBasis {
 public:
  using Poly = MultiPoly<C>;

  TagBasis(FieldPresentation<C> P, std::vector<Poly> gens, MonomialOrder order, GroebnerOptions opt, Universe u,
           std::size_t nblock)
      : P_(std::move(P)), u_(std::move(u)), nblock_(nblock), lazy_(std::make_shared<Lazy>()) {
    lazy_->gens = std::move(gens);
    lazy_->order = std::move(order);
    lazy_->opt = opt;
  }

  const FieldPresentation<C>& presentation() const { return P_; }
  const GroebnerBasis<C>& gb() const {
    std::call_once(lazy_->once, [&] {
      auto G = buchberger(Ideal<C>(lazy_->gens), lazy_->order, lazy_->opt);
      if (G.is_unit_ideal())
        fail(ErrorCode::IntegrityFailure, "tag ideal is the unit ideal: a generator denominator vanishes");
      lazy_->gb = std::make_unique<GroebnerBasis<C>>(std::move(G));
    });
    return *lazy_->gb;
  }
  bool computed() const { return lazy_->gb != nullptr; }
  const Universe& universe() const { return u_; }
  // Ambient variables followed by the saturation variable, if any.
  std::size_t ambient_block_size() const { return nblock_; }
  bool has_saturation() const { return nblock_ > P_.n(); }
  std::size_t tag_index(std::size_t i) const { return nblock_ + i; }

  std::vector<std::size_t> ambient_block() const {
    std::vector<std::size_t> v(nblock_);
    for (std::size_t i = 0; i < nblock_; ++i) v[i] = i;
    return v;
  }
  std::vector<std::size_t> tag_vars() const {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < P_.m(); ++i) v.push_back(nblock_ + i);
    return v;
  }
  bool tag_only(const Poly& g) const {
    for (std::size_t i = 0; i < nblock_; ++i)
      if (g.involves(i)) return false;
    return true;
  }
  // G intersected with K[t]: the algebraic relations among the generators.
  std::vector<Poly> tag_relations() const {
    std::vector<Poly> out;
    for (const auto& g : gb().basis())
      if (!g.is_zero() && tag_only(g)) out.push_back(g);
    return out;
  }

 private:
  struct Lazy {
    std::once_flag once;
    std::vector<Poly> gens;
    MonomialOrder order;
    GroebnerOptions opt;
    std::unique_ptr<GroebnerBasis<C>> gb;
  };
  FieldPresentation<C> P_;
  Universe u_;
  std::size_t nblock_;
  std::shared_ptr<Lazy> lazy_;
};

namespace detail {

template <class C>
MonomialOrder tag_order(std::size_t nblock, std::size_t ntail) {
  MonomialOrder::Block a, b;
  a.inner = MonomialOrder::Kind::GrevLex;
  b.inner = MonomialOrder::Kind::Lex;
  for (std::size_t i = 0; i < nblock; ++i) a.vars.push_back(i);
  for (std::size_t i = 0; i < ntail; ++i) b.vars.push_back(nblock + i);
  std::vector<MonomialOrder::Block> blocks;
  if (!a.vars.empty()) blocks.push_back(a);
  if (!b.vars.empty()) blocks.push_back(b);
  return MonomialOrder::block(blocks);
}

template <class C>
MultiPoly<C> common_den(const std::vector<RatFunc<C>>& gens, const Universe& u, const CoefField& f) {
  auto D = MultiPoly<C>::constant(u, f, 1);
  for (const auto& g : gens)
    if (!g.den().is_constant()) D = lcm(D, g.den());
  return D;
}

}  // namespace detail

template <class C>
TagBasis<C> tag_basis(const FieldPresentation<C>& P, const GroebnerOptions& opt = {}) {
  using Poly = MultiPoly<C>;
  const auto& amb = P.ambient();
  const auto& f = P.field();
  auto D = detail::common_den(P.generators(), amb.vars(), f);
  bool sat = !D.is_constant();
  std::vector<std::string> names = amb.vars().names();
  if (sat) names.push_back(fresh_name(amb.vars().extended(P.tags().names()), "w"));
  std::size_t nblock = names.size();
  for (const auto& t : P.tags().names()) names.push_back(t);
  Universe u(names);

  std::vector<Poly> gens;
  for (std::size_t i = 0; i < P.m(); ++i) {
    const auto& g = P.generators()[i];
    auto t = Poly::variable(u, f, nblock + i);
    gens.push_back(t * remap(g.den(), u) - remap(g.num(), u));
  }
  for (const auto& r : amb.relations()) gens.push_back(remap(r, u));
  if (sat) gens.push_back(Poly::variable(u, f, nblock - 1) * remap(D, u) - Poly::constant(u, f, 1));
  if (gens.empty()) gens.push_back(Poly(u, f));
  auto order = detail::tag_order<C>(nblock, P.m());
  return TagBasis<C>(P, std::move(gens), std::move(order), opt, std::move(u), nblock);
}

// Transcendence degree of K(f_1..f_m) over K.
template <class C>
int trdeg_groebner(const TagBasis<C>& T) {
  std::vector<Monomial> lms;
  const auto& G = T.gb();
  for (std::size_t k = 0; k < G.basis().size(); ++k)
    if (T.tag_only(G.basis()[k])) lms.push_back(G.leading_monomials()[k]);
  return monomial_dimension(lms, T.tag_vars());
}

// [K(x) : K(f_1..f_m)], or nullopt when the extension is transcendental.
// Counted as the standard monomials in the ambient block over the tag field.
template <class C>
std::optional<std::uint64_t> algebraic_degree(const TagBasis<C>& T) {
  std::vector<Monomial> lms;
  const auto& G = T.gb();
  for (std::size_t k = 0; k < G.basis().size(); ++k) {
    if (T.tag_only(G.basis()[k])) continue;
    Monomial m = G.leading_monomials()[k];
    for (auto v : T.tag_vars()) m[v] = 0;
    lms.push_back(m);
  }
  return standard_monomial_count(lms, T.ambient_block());
}

template <class C>
using TagPoly = DensePoly<RatFunc<C>>;  // univariate over the tag field K(t)

// Elimination ideal of K[z, t] for z -> c, as polynomials over [z, tags].
template <class C>
struct Adjoined {
  Universe zt;                        // z followed by the tags
  std::vector<MultiPoly<C>> basis;    // reduced lex basis of the kernel, z > t
  std::vector<Monomial> leading;      // leading monomials in `zt`
};

template <class C>
Adjoined<C> adjoin(const RatFunc<C>& c, const TagBasis<C>& T, const GroebnerOptions& opt = {}) {
  using Poly = MultiPoly<C>;
  const auto& P = T.presentation();
  const auto& amb = P.ambient();
  const auto& f = P.field();
  if (!(c.universe() == amb.vars())) fail(ErrorCode::UniverseMismatch, "element outside the ambient universe");
  auto cr = amb.reduce(c);
  bool sat = !cr.den().is_constant();

  std::vector<std::string> names;
  for (std::size_t i = 0; i < T.ambient_block_size(); ++i) names.push_back(T.universe().name(i));
  Universe taken = T.universe();
  std::string vname, zname = fresh_name(taken, "z");
  taken = taken.extended({zname});
  if (sat) {
    vname = fresh_name(taken, "v");
    names.push_back(vname);
  }
  std::size_t nblock = names.size();
  names.push_back(zname);
  for (const auto& t : P.tags().names()) names.push_back(t);
  Universe u(names);

  std::vector<Poly> gens;
  for (const auto& g : T.gb().basis()) gens.push_back(remap(g, u));
  auto z = Poly::variable(u, f, nblock);
  gens.push_back(z * remap(cr.den(), u) - remap(cr.num(), u));
  if (sat) gens.push_back(Poly::variable(u, f, nblock - 1) * remap(cr.den(), u) - Poly::constant(u, f, 1));
  auto G = buchberger(Ideal<C>(gens), detail::tag_order<C>(nblock, P.m() + 1), opt);

  std::vector<std::string> ztn{zname};
  for (const auto& t : P.tags().names()) ztn.push_back(t);
  Adjoined<C> out{Universe(ztn), {}, {}};
  for (std::size_t k = 0; k < G.basis().size(); ++k) {
    const auto& g = G.basis()[k];
    bool inside = !g.is_zero();
    for (std::size_t i = 0; i < nblock && inside; ++i) inside = !g.involves(i);
    if (!inside) continue;
    out.basis.push_back(remap(g, out.zt));
    Monomial m(out.zt.size());
    for (std::size_t i = 0; i < out.zt.size(); ++i) m[i] = G.leading_monomials()[k][nblock + i];
    out.leading.push_back(m);
  }
  return out;
}

namespace detail {

template <class C>
TagPoly<C> as_tag_poly(const MultiPoly<C>& g, const Universe& tags) {
  std::vector<RatFunc<C>> cs;
  for (const auto& c : coefficients_in(g, 0)) cs.push_back(RatFunc<C>(remap(c, tags)));
  return TagPoly<C>(std::move(cs));
}

}  // namespace detail

// Monic minimal polynomial of c over K(f_1..f_m), or nullopt if c is
// transcendental over it. When the f_i are algebraically dependent the
// coefficients are representatives modulo the tag relations.
template <class C>
std::optional<TagPoly<C>> minimal_polynomial(const RatFunc<C>& c, const TagBasis<C>& T,
                                             const GroebnerOptions& opt = {}) {
  auto A = adjoin(c, T, opt);
  const MultiPoly<C>* best = nullptr;
  for (const auto& g : A.basis) {
    auto d = g.degree(0);
    if (d == 0) continue;
    if (!best || d < best->degree(0)) best = &g;
  }
  if (!best) return std::nullopt;
  return detail::as_tag_poly(*best, T.presentation().tags()).monic();
}

// Expression g(t) with g(f_1..f_m) = c, or nullopt when c is not in K(f).
template <class C>
std::optional<RatFunc<C>> membership_express(const RatFunc<C>& c, const TagBasis<C>& T,
                                             const GroebnerOptions& opt = {}) {
  const auto& P = T.presentation();
  const auto& tags = P.tags();
  // a generator is returned as its own tag
  for (std::size_t i = 0; i < P.m(); ++i)
    if (P.ambient().equal(c, P.generators()[i]))
      return RatFunc<C>(MultiPoly<C>::variable(tags, P.field(), i));
  if (c.is_constant()) {
    C v = c.num().constant_term() * CoefOps<C>::inverse(c.den().constant_term());
    return RatFunc<C>(MultiPoly<C>::constant(tags, P.field(), v));
  }
  auto mp = minimal_polynomial(c, T, opt);
  if (!mp || mp->degree() != 1) return std::nullopt;
  auto g = -(*mp)[0];
  if (!P.ambient().equal(P.substitute_tags(g), c))
    fail(ErrorCode::IntegrityFailure, "membership expression fails back-substitution");
  return g;
}

// True iff c satisfies a monic polynomial over the subalgebra K[f_1..f_m].
template <class C>
bool is_integral(const RatFunc<C>& c, const TagBasis<C>& T, const GroebnerOptions& opt = {}) {
  auto A = adjoin(c, T, opt);
  for (const auto& m : A.leading) {
    bool pure = m[0] > 0;
    for (std::size_t i = 1; i < m.size() && pure; ++i) pure = m[i] == 0;
    if (pure) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Jacobian criterion

template <class C>
struct JacobianReport {
  std::vector<std::vector<RatFunc<C>>> matrix;  // rows: generators, then relations
  int rank = 0;
  int trdeg = 0;            // n - rank: transcendence degree of K(x) over K(f)
  int ambient_trdeg = 0;    // of K(x) over K
  std::vector<std::size_t> basis_vars;
  bool separable_certified = false;
  std::optional<int> groebner_trdeg;  // of K(f) over K, when cross-checked
};

struct JacobianOptions {
  bool cross_check = false;  // compare against the Groebner transcendence degree
  GroebnerOptions groebner;
};

namespace detail {

template <class C>
RatFunc<C> partial(const RatFunc<C>& g, std::size_t v) {
  const auto& N = g.num();
  const auto& D = g.den();
  if (g.is_polynomial()) return RatFunc<C>(derivative(N, v));
  return RatFunc<C>(derivative(N, v) * D - N * derivative(D, v), D * D);
}

// Rank over QF(K[x]/I) by Gaussian elimination; zero tests modulo I.
template <class C>
int matrix_rank(std::vector<std::vector<RatFunc<C>>> a, const AmbientField<C>& amb) {
  int r = 0;
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && amb.is_zero(a[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    auto inv = a[r][c].inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (amb.is_zero(a[i][c])) continue;
      auto fct = a[i][c] * inv;
      for (std::size_t k = c + 1; k < cols; ++k) a[i][k] = amb.reduce(a[i][k] - fct * a[r][k]);
      a[i][c] = a[i][c].zero_like();
    }
    ++r;
  }
  return r;
}

template <class C>
std::vector<std::vector<RatFunc<C>>> columns(const std::vector<std::vector<RatFunc<C>>>& a,
                                             const std::vector<std::size_t>& cols) {
  std::vector<std::vector<RatFunc<C>>> out;
  for (const auto& row : a) {
    std::vector<RatFunc<C>> r;
    for (auto c : cols) r.push_back(row[c]);
    out.push_back(std::move(r));
  }
  return out;
}

// Calls fn on k-subsets of {0..n-1} in lexicographic order until it returns true.
template <class Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  if (k > n) return false;
  while (true) {
    if (fn(s)) return true;
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

}  // namespace detail

// Jacobian of C = {g_l(y) - g_l(x)} (plus relations) with respect to y, at y = x.
template <class C>
std::vector<std::vector<RatFunc<C>>> jacobian_matrix(const FieldPresentation<C>& P) {
  const auto& amb = P.ambient();
  std::vector<std::vector<RatFunc<C>>> M;
  for (const auto& g : P.generators()) {
    std::vector<RatFunc<C>> row;
    for (std::size_t j = 0; j < P.n(); ++j) row.push_back(amb.reduce(detail::partial(g, j)));
    M.push_back(std::move(row));
  }
  for (const auto& r : amb.relations()) {
    std::vector<RatFunc<C>> row;
    for (std::size_t j = 0; j < P.n(); ++j) row.push_back(amb.reduce(RatFunc<C>(derivative(r, j))));
    M.push_back(std::move(row));
  }
  return M;
}

template <class C>
JacobianReport<C> jacobian_trdeg(const FieldPresentation<C>& P, const JacobianOptions& opt = {}) {
  const auto& amb = P.ambient();
  JacobianReport<C> rep;
  rep.matrix = jacobian_matrix(P);
  rep.rank = rep.matrix.empty() ? 0 : detail::matrix_rank(rep.matrix, amb);
  int n = static_cast<int>(P.n());
  rep.trdeg = n - rep.rank;
  rep.ambient_trdeg = amb.trdeg();
  rep.separable_certified = P.field().is_rationals();
  if (opt.cross_check) {
    rep.groebner_trdeg = trdeg_groebner(tag_basis(P, opt.groebner));
    rep.separable_certified = rep.trdeg == rep.ambient_trdeg - *rep.groebner_trdeg;
  }
  // lexicographically first column set J with a nonsingular minor of full size
  std::vector<std::size_t> J;
  if (rep.rank == 0) {
    J.clear();
  } else {
    detail::for_each_subset(P.n(), static_cast<std::size_t>(rep.rank), [&](const std::vector<std::size_t>& s) {
      if (detail::matrix_rank(detail::columns(rep.matrix, s), amb) != rep.rank) return false;
      J = s;
      return true;
    });
  }
  std::vector<bool> inJ(P.n(), false);
  for (auto j : J) inJ[j] = true;
  for (std::size_t i = 0; i < P.n(); ++i)
    if (!inJ[i]) rep.basis_vars.push_back(i);
  return rep;
}

// Separating transcendence basis {x_i : i not in J}.
template <class C>
std::vector<std::size_t> separating_basis(const FieldPresentation<C>& P, const JacobianOptions& opt = {}) {
  auto rep = jacobian_trdeg(P, opt);
  if (!rep.separable_certified)
    fail(ErrorCode::Inseparable, "Jacobian rank " + std::to_string(rep.rank) +
                                     " does not certify a separating basis (extension may be inseparable)");
  return rep.basis_vars;
}

// True when `basis` is a separating transcendence basis per the Jacobian
// criterion: the complementary columns carry a nonsingular minor of size rank.
template <class C>
bool is_separating_basis(const FieldPresentation<C>& P, const std::vector<std::size_t>& basis) {
  const auto& amb = P.ambient();
  auto M = jacobian_matrix(P);
  int rank = M.empty() ? 0 : detail::matrix_rank(M, amb);
  if (static_cast<int>(basis.size()) != static_cast<int>(P.n()) - rank) return false;
  std::vector<bool> in(P.n(), false);
  for (auto b : basis) {
    if (b >= P.n() || in[b]) return false;
    in[b] = true;
  }
  std::vector<std::size_t> J;
  for (std::size_t i = 0; i < P.n(); ++i)
    if (!in[i]) J.push_back(i);
  if (J.empty()) return rank == 0;
  return detail::matrix_rank(detail::columns(M, J), amb) == rank;
}

// ---------------------------------------------------------------------------
// Uni-multivariate decomposition p_i = q_i(f)

struct UniMultiDecomposition {
  QPoly f;               // over the input universe, no constant term, integer-primitive
  std::vector<QPoly> q;  // univariate in `t`
};

namespace detail {

// q with p = q(f), or nullopt if p is not a polynomial in f.
inline std::optional<QPoly> expand_in(const QPoly& p, const QPoly& f, const Universe& tu) {
  auto Q = CoefField::rationals();
  QPoly q(tu, Q), r = p;
  std::vector<QPoly> pw{QPoly::constant(p.universe(), Q, 1)};
  const auto& lf = f.lead().mono;
  std::size_t v = 0;
  while (lf[v] == 0) ++v;
  while (!r.is_constant()) {
    const auto& lr = r.lead().mono;
    if (lr[v] % lf[v]) return std::nullopt;
    unsigned k = lr[v] / lf[v];
    while (pw.size() <= k) pw.push_back(pw.back() * f);
    const auto& fk = pw[k];
    if (!(fk.lead().mono == lr)) return std::nullopt;
    Rational a = r.leading_coefficient() / fk.leading_coefficient();
    r -= fk.scale(a);
    q += QPoly::variable(tu, Q, 0, k).scale(a);
  }
  return q + QPoly::constant(tu, Q, r.constant_term());
}

}  // namespace detail

// If the Jacobian of (p_1..p_k) has rank 1, returns f and q_i with p_i = q_i(f);
// f is read from gcd_i(p_i(u) - p_i(x)) = c*(f(u) - f(x)).
inline std::optional<UniMultiDecomposition> uni_multivariate_decompose(const std::vector<QPoly>& ps) {
  if (ps.empty()) fail(ErrorCode::InvalidArgument, "no polynomials given");
  const auto& u = ps[0].universe();
  for (const auto& p : ps) {
    if (!(p.universe() == u)) fail(ErrorCode::UniverseMismatch, "polynomials over different universes");
    if (!p.field().is_rationals())
      fail(ErrorCode::Unsupported, "uni-multivariate decomposition requires characteristic 0");
  }
  auto Q = CoefField::rationals();
  std::vector<RatQ> nonconst;
  for (const auto& p : ps)
    if (!p.is_constant()) nonconst.push_back(RatQ(p));
  if (nonconst.empty()) fail(ErrorCode::InvalidArgument, "all polynomials are constant");
  Presentation P(Ambient(u, Q), nonconst);
  if (detail::matrix_rank(jacobian_matrix(P), P.ambient()) != 1) return std::nullopt;

  // big universe: x..., u...
  std::vector<std::string> names = u.names();
  Universe taken = u;
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto n = fresh_name(taken, u.name(i) + "_u");
    taken = taken.extended({n});
    names.push_back(n);
  }
  Universe big(names);
  std::vector<QPoly> xs, us, zero_x;
  for (std::size_t i = 0; i < u.size(); ++i) {
    xs.push_back(QPoly::variable(big, Q, i));
    us.push_back(QPoly::variable(big, Q, u.size() + i));
  }
  QPoly g(big, Q);
  for (const auto& r : nonconst) {
    auto d = compose(r.num(), us) - compose(r.num(), xs);
    g = g.is_zero() ? d : gcd(g, d);
  }
  // f(u) - f(0), renamed back to x
  std::vector<QPoly> img(big.size(), QPoly(u, Q));
  for (std::size_t i = 0; i < u.size(); ++i) img[u.size() + i] = QPoly::variable(u, Q, i);
  auto f = compose(g, img);
  f -= QPoly::constant(u, Q, f.constant_term());
  if (f.is_zero()) fail(ErrorCode::IntegrityFailure, "decomposition gcd is constant");
  f = integer_primitive(f);

  Universe tu({"t"});
  UniMultiDecomposition out{f, {}};
  for (const auto& p : ps) {
    auto q = detail::expand_in(p, f, tu);
    if (!q) fail(ErrorCode::IntegrityFailure, "p_i is not a polynomial in the recovered f");
    if (!(compose(*q, std::vector<QPoly>{f}) == p))
      fail(ErrorCode::IntegrityFailure, "decomposition fails substitution check");
    out.q.push_back(*q);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Infinitely many intermediate fields when trdeg K(f) < trdeg K(x)

template <class C>
struct InfiniteFamily {
  std::size_t var;         // ambient index of x_i, transcendental over K(f)
  std::string var_name;
  std::string description;  // K(f_1, ..., f_m, x_i^k), k >= 1
  std::vector<RatFunc<C>> generators(const FieldPresentation<C>& P, unsigned k) const {
    auto g = P.generators();
    g.push_back(RatFunc<C>(P.ambient().variable(var).pow(k)));
    return g;
  }
};

template <class C>
std::optional<InfiniteFamily<C>> infinite_family_witness(const TagBasis<C>& T, const GroebnerOptions& opt = {}) {
  const auto& P = T.presentation();
  if (trdeg_groebner(T) >= P.ambient().trdeg()) return std::nullopt;
  for (std::size_t i = 0; i < P.n(); ++i) {
    if (minimal_polynomial(RatFunc<C>(P.ambient().variable(i)), T, opt)) continue;
    const auto& name = P.ambient().vars().name(i);
    std::string d = std::string(P.field().is_rationals() ? "Q" : P.field().name()) + "(";
    for (std::size_t k = 0; k < P.m(); ++k) d += "f" + std::to_string(k + 1) + ", ";
    d += name + "^k), k = 1, 2, ...";
    return InfiniteFamily<C>{i, name, d};
  }
  fail(ErrorCode::IntegrityFailure, "no ambient variable is transcendental over a field of lower degree");
}

}  // namespace unirat

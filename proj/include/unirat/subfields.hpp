#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "factor.hpp"
#include "unirational.hpp"

namespace unirat {

struct SubfieldOptions {
  GroebnerOptions groebner;
  FactorOptions factor;
  // Factor subsets examined when combining non-linear factors.
  std::uint64_t max_subsets = 4096;
  // Candidates tried per primitive-element search.
  int max_primitive_tries = 32;
};

namespace detail {

// 1, -1, 2, -2, ... for k = 1, 2, 3, 4, ...
inline long small_int(int k) { return (k + 1) / 2 * (k % 2 ? 1 : -1); }

inline std::vector<RatQ> coords(const AlgExtElem& a) { return a.coeffs(); }

}  // namespace detail

// E-linear span of elements of E[alpha], kept in echelon form. Each row also
// records its expression in the independent elements inserted so far.
class ESpan {
 public:
  explicit ESpan(AlgExtPtr ext) : ext_(std::move(ext)) {}

  const AlgExtPtr& ext() const { return ext_; }
  std::size_t size() const { return elems_.size(); }
  const std::vector<AlgExtElem>& elements() const { return elems_; }

  // Adds v when it is independent of the span; returns whether it was added.
  bool insert(const AlgExtElem& v) {
    auto r = detail::coords(v);
    std::vector<RatQ> combo(elems_.size() + 1, ext_->base_zero());
    combo.back() = ext_->base_one();
    reduce(r, combo, -1);
    auto p = pivot(r);
    if (!p) return false;
    auto inv = r[*p].inverse();
    for (auto& x : r) x *= inv;
    for (auto& x : combo) x *= inv;
    rows_.push_back({std::move(r), std::move(combo), *p});
    elems_.push_back(v);
    return true;
  }

  bool contains(const AlgExtElem& v) const { return express(v).has_value(); }

  // Coefficients c with v = sum c_i * elements()[i], or nullopt.
  std::optional<std::vector<RatQ>> express(const AlgExtElem& v) const {
    auto r = detail::coords(v);
    std::vector<RatQ> combo(elems_.size(), ext_->base_zero());
    reduce(r, combo, 1);
    if (pivot(r)) return std::nullopt;
    return combo;
  }

 private:
  struct Row {
    std::vector<RatQ> v;
    std::vector<RatQ> combo;
    std::size_t pivot;
  };

  // r -= k * row for every row; combo accumulates sign * k * row.combo.
  void reduce(std::vector<RatQ>& r, std::vector<RatQ>& combo, int sign) const {
    for (const auto& row : rows_) {
      if (r[row.pivot].is_zero()) continue;
      auto k = r[row.pivot];
      for (std::size_t j = 0; j < r.size(); ++j)
        if (!row.v[j].is_zero()) r[j] -= k * row.v[j];
      for (std::size_t j = 0; j < row.combo.size(); ++j) {
        if (row.combo[j].is_zero()) continue;
        if (sign > 0) combo[j] += k * row.combo[j];
        else combo[j] -= k * row.combo[j];
      }
    }
  }
  static std::optional<std::size_t> pivot(const std::vector<RatQ>& r) {
    for (std::size_t j = 0; j < r.size(); ++j)
      if (!r[j].is_zero()) return j;
    return std::nullopt;
  }

  AlgExtPtr ext_;
  std::vector<Row> rows_;
  std::vector<AlgExtElem> elems_;
};

// Minimal polynomial of a over E, by linear dependence of its powers.
inline UPolyE minpoly_over_base(const AlgExtElem& a) {
  const auto& ext = a.ext();
  ESpan S(ext);
  auto p = a.one_like();
  for (int k = 0; k <= ext->degree(); ++k) {
    if (auto c = S.express(p)) {
      std::vector<RatQ> m(static_cast<std::size_t>(k) + 1, ext->base_zero());
      for (int j = 0; j < k; ++j) m[j] = -(*c)[j];
      m[k] = ext->base_one();
      return UPolyE(std::move(m));
    }
    S.insert(p);
    p *= a;
  }
  fail(ErrorCode::IntegrityFailure, "powers of an element stay independent beyond the extension degree");
}

inline int degree_over_base(const AlgExtElem& a) { return minpoly_over_base(a).degree(); }

// E-basis of the subalgebra E[gens] of E[alpha] (a field, being finite dimensional).
inline ESpan field_span(const std::vector<AlgExtElem>& gens, const AlgExtPtr& ext) {
  ESpan S(ext);
  S.insert(AlgExtElem::from_base(ext, ext->base_one()));
  for (std::size_t i = 0; i < S.size(); ++i) {
    auto e = S.elements()[i];
    for (const auto& g : gens) S.insert(e * g);
  }
  return S;
}

// Element generating E[gens] over E, given its dimension: a single generator
// when one works, else sum_j c^j * g_j for c = 1, -1, 2, -2, ...
inline AlgExtElem primitive_element(const std::vector<AlgExtElem>& gens, int dim, const AlgExtPtr& ext,
                                    int max_tries = 32) {
  for (const auto& g : gens)
    if (degree_over_base(g) == dim) return g;
  for (int k = 1; k <= max_tries; ++k) {
    long c = detail::small_int(k);
    auto acc = AlgExtElem::from_base(ext, ext->base_zero());
    long w = 1;
    for (const auto& g : gens) {
      acc += g.mul_int(w);
      w *= c;
    }
    if (degree_over_base(acc) == dim) return acc;
  }
  fail(ErrorCode::BudgetExceeded, "primitive element search exceeded " + std::to_string(max_tries) + " candidates");
}

// Coefficients a_0..a_{l-1} with beta = sum a_j gamma^j, l = [E[gamma]:E];
// nullopt when beta is not in E[gamma]. The witness is checked by substitution.
inline std::optional<std::vector<RatQ>> subfield_inclusion(const AlgExtElem& beta, const AlgExtElem& gamma) {
  if (beta.ext() != gamma.ext()) fail(ErrorCode::FieldMismatch, "elements of different algebraic extensions");
  const auto& ext = beta.ext();
  int l = degree_over_base(gamma);
  ESpan S(ext);
  auto p = gamma.one_like();
  for (int j = 0; j < l; ++j) {
    S.insert(p);
    p *= gamma;
  }
  auto c = S.express(beta);
  if (!c) return std::nullopt;
  auto acc = beta.zero_like();
  auto q = gamma.one_like();
  for (int j = 0; j < l; ++j) {
    acc += q.scale((*c)[j]);
    q *= gamma;
  }
  if (!(acc == beta)) fail(ErrorCode::IntegrityFailure, "inclusion witness fails substitution");
  return c;
}

// ---------------------------------------------------------------------------
// Rewriting K(f) ⊂ K(x) as E[beta] ⊂ E[alpha].

struct ExtensionDiagram {
  Presentation presentation;
  std::vector<std::size_t> basis_index;  // generators forming the separating basis
  std::vector<RatQ> sep_basis;           // their values, tagged t_i in E
  Presentation base;                     // K(sep_basis) with the tags of E
  RatQ alpha_ambient;                    // primitive element of K(x) over K(sep_basis)
  AlgExtPtr ext;                         // E[z]/(p_alpha)
  std::vector<AlgExtElem> x_images;      // ambient variables in E[alpha]
  std::vector<AlgExtElem> gen_images;    // generators in E[alpha]
  AlgExtElem beta;                       // primitive element of the bottom field over E
  UPolyE beta_minpoly;
  std::uint64_t degree = 1;              // [K(x) : K(f)]

  const Universe& tags() const { return ext->tags(); }
  const UPolyE& p_alpha() const { return ext->minpoly(); }
  int trdeg() const { return static_cast<int>(sep_basis.size()); }
  AlgExtElem alpha() const { return AlgExtElem::generator(ext); }
  bool beta_trivial() const { return beta_minpoly.degree() == 1; }

  // c(x) as an element of E[alpha].
  AlgExtElem to_extension(const RatQ& c) const {
    if (!(c.universe() == presentation.ambient().vars()))
      fail(ErrorCode::UniverseMismatch, "element outside the ambient universe");
    auto d = eval(c.den());
    if (d.is_zero()) fail(ErrorCode::DivisionByZero, "denominator vanishes in the extension");
    return eval(c.num()) / d;
  }

  // a with t_i -> sep_basis_i and alpha -> alpha_ambient.
  RatQ to_ambient(const AlgExtElem& a) const {
    const auto& amb = presentation.ambient();
    RatQ acc = RatQ(QPoly(amb.vars()));
    RatQ pw = acc.one_like();
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
      if (!a[k].is_zero()) acc += base.substitute_tags(a[k]) * pw;
      pw *= alpha_ambient;
    }
    return amb.reduce(acc);
  }

  // p_alpha over E[alpha]. For a rational ambient field E[alpha] is K(x), so
  // p_alpha(f; z) is factored in K[x, z] and mapped back; otherwise by norms.
  ExtFactorization factor_p_alpha(const FactorOptions& opt = {}) const {
    const auto& amb = presentation.ambient();
    if (!amb.is_rational() || ext->degree() == 1) return factor_over_extension(embed(ext, p_alpha()), opt);
    auto Q = CoefField::rationals();
    auto xz = amb.vars().extended({fresh_name(amb.vars(), "z")});
    std::size_t zv = amb.nvars();
    std::vector<RatQ> A;
    std::vector<const RatQ*> ptrs;
    for (const auto& c : p_alpha().coeffs()) A.push_back(base.substitute_tags(c));
    for (const auto& a : A) ptrs.push_back(&a);
    auto L = detail::common_denominator(ptrs, amb.vars());
    QPoly Phi(xz, Q);
    for (std::size_t k = 0; k < A.size(); ++k)
      if (!A[k].is_zero())
        Phi += remap(A[k].num() * divide_exact(L, A[k].den()), xz) * QPoly::variable(xz, Q, zv, k);
    ExtFactorization out;
    out.unit = alpha().one_like();
    auto prod = UPolyExt::constant(out.unit);
    for (const auto& [g, m] : factor_multivar(Phi, opt).factors) {
      if (g.degree(zv) == 0) continue;
      auto cs = coefficients_in(g, zv);
      auto lead = remap(cs.back(), amb.vars());
      std::vector<AlgExtElem> h;
      for (const auto& c : cs) h.push_back(to_extension(RatQ(remap(c, amb.vars()), lead)));
      UPolyExt hp(std::move(h));
      out.factors.push_back({hp, m});
      prod *= hp.pow(m);
    }
    if (!(prod == embed(ext, p_alpha())))
      fail(ErrorCode::IntegrityFailure, "factors over K(x) do not multiply back to p_alpha");
    std::stable_sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
      if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
      return detail::ext_key(a.first) < detail::ext_key(b.first);
    });
    return out;
  }

 private:
  AlgExtElem eval(const QPoly& p) const {
    auto acc = AlgExtElem::from_base(ext, ext->base_zero());
    std::vector<std::vector<AlgExtElem>> pw(x_images.size());
    for (const auto& t : p.terms()) {
      auto term = AlgExtElem::from_base(ext, RatQ(QPoly::constant(tags(), CoefField::rationals(), t.coef)));
      for (std::size_t i = 0; i < x_images.size(); ++i) {
        unsigned e = t.mono[i];
        if (!e) continue;
        auto& c = pw[i];
        if (c.empty()) c.push_back(x_images[i].one_like());
        while (c.size() <= e) c.push_back(c.back() * x_images[i]);
        term *= c[e];
      }
      acc += term;
    }
    return acc;
  }
};

namespace detail {

// g(tags, a) -> element of E[alpha], a being the last variable of g's universe.
inline AlgExtElem tagged_to_extension(const RatQ& g, const AlgExtPtr& ext) {
  const auto& tags = ext->tags();
  std::size_t av = tags.size();
  auto as_elem = [&](const QPoly& p) {
    std::vector<RatQ> cs;
    for (const auto& c : coefficients_in(p, av)) cs.push_back(RatQ(remap(c, tags)));
    return AlgExtElem::from_poly(ext, UPolyE(std::move(cs)));
  };
  return as_elem(g.num()) / as_elem(g.den());
}

inline Presentation sub_presentation(const Presentation& P, const std::vector<RatQ>& gens,
                                     std::vector<std::string> tag_names = {}) {
  return Presentation(P.ambient(), gens, false, std::move(tag_names));
}

// trdeg K(gens) over K in characteristic 0, by Jacobian rank.
inline int trdeg_of(const Presentation& P, const std::vector<RatQ>& gens) {
  if (gens.empty()) return 0;
  auto rep = jacobian_trdeg(sub_presentation(P, gens));
  return rep.ambient_trdeg - rep.trdeg;
}

}  // namespace detail

// Builds the diagram E ⊂ E[beta] ⊂ E[alpha] for an algebraic extension
// K(x)/K(f_1..f_m) in characteristic 0.
inline ExtensionDiagram rewrite_presentation(const Presentation& P, const SubfieldOptions& opt = {}) {
  const auto& amb = P.ambient();
  if (!P.field().is_rationals()) fail(ErrorCode::Unsupported, "the subfield pipeline works over Q");
  if (P.m() == 0) fail(ErrorCode::NotAlgebraic, "no generators: K(x) is transcendental over K");
  int d = amb.trdeg();
  auto J = jacobian_trdeg(P);
  if (J.trdeg != 0) fail(ErrorCode::NotAlgebraic, "K(x) has transcendence degree " + std::to_string(J.trdeg) +
                                                      " over the generated field");
  ExtensionDiagram D{P, {}, {}, P, RatQ(), nullptr, {}, {}, AlgExtElem(), UPolyE(), 1};

  // separating basis: lexicographically first independent subset of the generators
  detail::for_each_subset(P.m(), static_cast<std::size_t>(d), [&](const std::vector<std::size_t>& s) {
    std::vector<RatQ> g;
    for (auto i : s) g.push_back(P.generators()[i]);
    if (detail::trdeg_of(P, g) != d) return false;
    D.basis_index = s;
    D.sep_basis = g;
    return true;
  });
  if (D.basis_index.size() != static_cast<std::size_t>(d))
    fail(ErrorCode::IntegrityFailure, "no independent subset of the generators of full size");
  std::vector<std::string> tnames;
  for (auto i : D.basis_index) tnames.push_back(P.tags().name(i));
  D.base = detail::sub_presentation(P, D.sep_basis, tnames);
  auto T = tag_basis(D.base, opt.groebner);
  auto deg = algebraic_degree(T);
  if (!deg) fail(ErrorCode::NotAlgebraic, "separating basis is not a transcendence basis");
  int total = static_cast<int>(*deg);

  // primitive element of K(x) over K(sep_basis)
  std::vector<RatQ> cand;
  for (std::size_t i = 0; i < amb.nvars(); ++i) cand.push_back(RatQ(amb.variable(i)));
  for (int k = 1; k <= opt.max_primitive_tries && amb.nvars() > 1; ++k) {
    long c = detail::small_int(k);
    RatQ acc = RatQ(QPoly(amb.vars()));
    long w = 1;
    for (std::size_t i = 0; i < amb.nvars(); ++i) {
      acc += RatQ(amb.variable(i)).mul_int(w);
      w *= c;
    }
    cand.push_back(acc);
  }
  std::optional<TagPoly<Rational>> p;
  for (const auto& a : cand) {
    if (amb.is_zero(a)) continue;
    auto mp = minimal_polynomial(a, T, opt.groebner);
    if (mp && mp->degree() == total) {
      D.alpha_ambient = a;
      p = mp;
      break;
    }
  }
  if (!p) fail(ErrorCode::BudgetExceeded, "no primitive element of K(x) found among the candidates");
  auto used = amb.vars().extended(D.base.tags().names());
  D.ext = std::make_shared<const AlgExt>(D.base.tags(), *p, "alpha");

  // ambient variables in E[alpha] through K(x) = K(sep_basis, alpha)
  if (total == 1) {
    for (std::size_t i = 0; i < amb.nvars(); ++i) {
      auto e = membership_express(RatQ(amb.variable(i)), T, opt.groebner);
      if (!e) fail(ErrorCode::IntegrityFailure, "variable not in a degree-one extension");
      D.x_images.push_back(AlgExtElem::from_base(D.ext, *e));
    }
  } else {
    auto withz = tnames;
    withz.push_back(fresh_name(used, "a"));
    auto gens = D.sep_basis;
    gens.push_back(D.alpha_ambient);
    auto Q = detail::sub_presentation(P, gens, withz);
    auto TQ = tag_basis(Q, opt.groebner);
    for (std::size_t i = 0; i < amb.nvars(); ++i) {
      auto xi = RatQ(amb.variable(i));
      if (amb.equal(xi, D.alpha_ambient)) {
        D.x_images.push_back(D.alpha());
        continue;
      }
      auto e = membership_express(xi, TQ, opt.groebner);
      if (!e) fail(ErrorCode::IntegrityFailure, "variable not expressible in the primitive element");
      D.x_images.push_back(detail::tagged_to_extension(*e, D.ext));
    }
  }
  for (const auto& g : P.generators()) D.gen_images.push_back(D.to_extension(g));
  for (std::size_t k = 0; k < D.basis_index.size(); ++k) {
    auto t = AlgExtElem::from_base(D.ext, RatQ(QPoly::variable(D.tags(), CoefField::rationals(), k)));
    if (!(D.gen_images[D.basis_index[k]] == t))
      fail(ErrorCode::IntegrityFailure, "separating basis does not map to the tags");
  }

  // bottom field E[beta]
  std::vector<AlgExtElem> rest;
  for (std::size_t j = 0; j < P.m(); ++j)
    if (std::find(D.basis_index.begin(), D.basis_index.end(), j) == D.basis_index.end())
      rest.push_back(D.gen_images[j]);
  int dim = static_cast<int>(field_span(rest, D.ext).size());
  if (rest.empty()) {
    D.beta = AlgExtElem::from_base(D.ext, RatQ(QPoly::variable(D.tags(), CoefField::rationals(), 0)));
  } else {
    D.beta = primitive_element(rest, dim, D.ext, opt.max_primitive_tries);
  }
  D.beta_minpoly = minpoly_over_base(D.beta);
  if (total % dim != 0) fail(ErrorCode::IntegrityFailure, "bottom degree does not divide the extension degree");
  D.degree = static_cast<std::uint64_t>(total / dim);
  return D;
}

// ---------------------------------------------------------------------------
// Blocks and fields.

// Roots of p_alpha inside E[alpha] plus the non-split factors taken along.
struct Block {
  std::vector<AlgExtElem> roots;
  std::vector<UPolyExt> factors;

  int size() const {
    int s = static_cast<int>(roots.size());
    for (const auto& f : factors) s += f.degree();
    return s;
  }
  // prod (z - r) * prod factors
  UPolyExt polynomial(const AlgExtPtr& ext) const {
    auto one = AlgExtElem::from_base(ext, ext->base_one());
    UPolyExt h = UPolyExt::constant(one);
    for (const auto& r : roots) h *= UPolyExt({-r, one});
    for (const auto& f : factors) h *= f;
    return h;
  }
};

namespace detail {

inline std::string elem_key(const AlgExtElem& a) { return to_string(a); }

inline std::string block_key(const Block& b) {
  std::vector<std::string> ks;
  for (const auto& r : b.roots) ks.push_back(elem_key(r));
  for (const auto& f : b.factors) ks.push_back("[" + to_string(f, "z") + "]");
  std::sort(ks.begin(), ks.end());
  std::string s;
  for (const auto& k : ks) s += k + ";";
  return s;
}

// sigma_r(a) for the E-automorphism alpha -> r.
inline AlgExtElem apply_root_map(const AlgExtElem& a, const AlgExtElem& r) {
  auto acc = a.zero_like();
  auto pw = a.one_like();
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
    if (!a[k].is_zero()) acc += pw.scale(a[k]);
    pw *= r;
  }
  return acc;
}

inline void sort_blocks(std::vector<Block>& v) {
  std::stable_sort(v.begin(), v.end(), [](const Block& a, const Block& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return block_key(a) < block_key(b);
  });
}

}  // namespace detail

// Subgroups of the root-map group generated by subsets of the roots of
// p_alpha in E[alpha]; each non-trivial subgroup H gives the block {sigma(alpha)}.
inline std::vector<Block> linear_factor_blocks(const ExtFactorization& F) {
  auto roots = roots_in_extension(F);
  if (roots.size() < 2) return {};
  // roots are compared by their canonical text
  auto key = [](const AlgExtElem& a) { return detail::elem_key(a); };
  auto closure = [&](std::vector<AlgExtElem> gens) {
    std::map<std::string, AlgExtElem> H;
    auto alpha = AlgExtElem::generator(roots[0].ext());
    H.emplace(key(alpha), alpha);
    for (const auto& g : gens) H.emplace(key(g), g);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<AlgExtElem> cur;
      for (const auto& [k, v] : H) cur.push_back(v);
      for (const auto& a : cur)
        for (const auto& b : cur) {
          auto c = detail::apply_root_map(a, b);  // sigma_b(sigma_a(alpha))
          if (H.emplace(key(c), c).second) grew = true;
        }
    }
    return H;
  };
  std::map<std::string, std::vector<AlgExtElem>> groups;
  std::vector<std::vector<AlgExtElem>> frontier{{}};
  std::set<std::string> seen{key(AlgExtElem::generator(roots[0].ext())) + ";"};
  while (!frontier.empty()) {
    std::vector<std::vector<AlgExtElem>> next;
    for (const auto& H : frontier)
      for (const auto& r : roots) {
        auto gens = H;
        gens.push_back(r);
        auto G = closure(gens);
        std::string k;
        std::vector<AlgExtElem> elems;
        for (const auto& [kk, v] : G) {
          k += kk + ";";
          elems.push_back(v);
        }
        if (seen.insert(k).second) {
          groups.emplace(k, elems);
          next.push_back(elems);
        }
      }
    frontier = std::move(next);
  }
  std::vector<Block> out;
  for (const auto& [k, g] : groups) out.push_back(Block{g, {}});
  detail::sort_blocks(out);
  return out;
}

// (z - alpha) times subsets of the other factors whose total degree is a
// proper divisor of deg p_alpha, before validation.
inline std::vector<Block> combination_candidates(const ExtFactorization& F, const SubfieldOptions& opt = {}) {
  if (F.factors.empty()) return {};
  const auto& ext = F.factors.front().first.lc().ext();
  auto alpha = AlgExtElem::generator(ext);
  int n = 0;
  std::vector<UPolyExt> others;
  bool found = false;
  for (const auto& [g, m] : F.factors) {
    n += g.degree() * static_cast<int>(m);
    for (unsigned k = 0; k < m; ++k) {
      if (!found && g.degree() == 1 && -g[0] == alpha) {
        found = true;
        continue;
      }
      others.push_back(g);
    }
  }
  if (!found) fail(ErrorCode::InvalidArgument, "factorization lacks the factor z - alpha");
  if (others.size() >= 63 || (std::uint64_t{1} << others.size()) > opt.max_subsets)
    fail(ErrorCode::BudgetExceeded, "factor subsets exceed the budget of " + std::to_string(opt.max_subsets));
  std::vector<Block> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << others.size()); ++mask) {
    Block b{{alpha}, {}};
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      if (others[i].degree() == 1) b.roots.push_back(-others[i][0]);
      else b.factors.push_back(others[i]);
    }
    int s = b.size();
    if (s < n && n % s == 0) out.push_back(std::move(b));
  }
  detail::sort_blocks(out);
  return out;
}

// Field E[a_0..a_{k-1}] for h(z) = sum a_j z^j in E[alpha][z].
struct IntermediateField {
  UPolyExt block_poly;                    // monic h
  std::vector<AlgExtElem> generators_E;   // coefficients of h below the leading one
  AlgExtElem primitive;
  UPolyE primitive_minpoly;
  std::vector<AlgExtElem> basis;          // E-basis
  std::uint64_t degree_over_E = 1;        // [F : E]
  std::uint64_t index_in_top = 1;         // [E[alpha] : F]
  std::uint64_t degree_over_base = 1;     // [F : bottom], set by the lattice
  std::vector<RatQ> generators_ambient;   // set by lift_to_ambient

  // h is the minimal polynomial of alpha over the field
  bool consistent() const { return static_cast<std::uint64_t>(block_poly.degree()) == index_in_top; }
  bool is_top() const { return index_in_top == 1; }
  bool is_bottom_E() const { return degree_over_E == 1; }
  bool trivial() const { return is_top() || is_bottom_E(); }
};

inline IntermediateField block_to_field(const UPolyExt& h0, const SubfieldOptions& opt = {}) {
  if (h0.degree() < 1) fail(ErrorCode::InvalidArgument, "block polynomial must have positive degree");
  auto h = h0.monic();
  const auto& ext = h.lc().ext();
  IntermediateField L;
  L.block_poly = h;
  for (int j = 0; j < h.degree(); ++j)
    if (!h[j].is_base()) L.generators_E.push_back(h[j]);
  auto S = field_span(L.generators_E, ext);
  L.basis = S.elements();
  L.degree_over_E = S.size();
  L.index_in_top = static_cast<std::uint64_t>(ext->degree()) / L.degree_over_E;
  if (L.generators_E.empty()) {
    L.primitive = AlgExtElem::from_base(ext, RatQ(QPoly::variable(ext->tags(), CoefField::rationals(), 0)));
  } else {
    L.primitive = primitive_element(L.generators_E, static_cast<int>(L.degree_over_E), ext, opt.max_primitive_tries);
  }
  L.primitive_minpoly = minpoly_over_base(L.primitive);
  return L;
}

inline IntermediateField block_to_field(const Block& b, const AlgExtPtr& ext, const SubfieldOptions& opt = {}) {
  return block_to_field(b.polynomial(ext), opt);
}

// Validated candidates: the coefficients generate a proper subfield over
// which the candidate is the minimal polynomial of alpha.
inline std::vector<Block> factor_combination_blocks(const ExtFactorization& F, const SubfieldOptions& opt = {}) {
  std::vector<Block> out;
  if (F.factors.empty()) return out;
  const auto& ext = F.factors.front().first.lc().ext();
  for (auto& b : combination_candidates(F, opt)) {
    auto L = block_to_field(b, ext, opt);
    if (L.consistent() && !L.trivial()) out.push_back(std::move(b));
  }
  return out;
}

// L1 ⊆ L2
inline bool field_contains(const IntermediateField& big, const IntermediateField& small) {
  if (small.degree_over_E > big.degree_over_E || big.degree_over_E % small.degree_over_E) return false;
  ESpan S(big.primitive.ext());
  for (const auto& b : big.basis) S.insert(b);
  for (const auto& b : small.basis)
    if (!S.contains(b)) return false;
  return true;
}

struct FieldLattice {
  ExtensionDiagram diagram;
  std::vector<IntermediateField> fields;  // by increasing degree; front is the bottom, back the top
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges;  // (smaller, larger)

  std::size_t bottom() const { return 0; }
  std::size_t top() const { return fields.size() - 1; }
  std::vector<std::size_t> proper() const {
    std::vector<std::size_t> v;
    for (std::size_t i = 1; i + 1 < fields.size(); ++i) v.push_back(i);
    return v;
  }
};

// Generators of a field in ambient coordinates: the separating basis plus the
// lifted primitive element; the lift is checked by mapping it back.
inline std::vector<RatQ> lift_to_ambient(const IntermediateField& F, const ExtensionDiagram& D) {
  auto out = D.sep_basis;
  auto h = D.to_ambient(F.primitive);
  if (!(D.to_extension(h) == F.primitive)) fail(ErrorCode::IntegrityFailure, "lifted generator does not map back");
  out.push_back(h);
  ESpan S(D.ext);
  for (const auto& b : F.basis) S.insert(b);
  for (const auto& g : D.gen_images)
    if (!S.contains(g)) fail(ErrorCode::IntegrityFailure, "a generator is missing from a lifted field");
  return out;
}

// All fields between K(f_1..f_m) and K(x), for an algebraic separable extension.
inline FieldLattice intermediate_fields(const Presentation& P, const SubfieldOptions& opt = {}) {
  FieldLattice out{rewrite_presentation(P, opt), {}, {}};
  const auto& D = out.diagram;
  const auto& ext = D.ext;
  auto alpha = D.alpha();
  auto one = alpha.one_like();

  // bottom E[beta] and top E[alpha]
  IntermediateField bottom;
  {
    auto S = field_span({D.beta}, ext);
    bottom.basis = S.elements();
    bottom.degree_over_E = S.size();
    bottom.index_in_top = static_cast<std::uint64_t>(ext->degree()) / bottom.degree_over_E;
    bottom.primitive = D.beta;
    bottom.primitive_minpoly = D.beta_minpoly;
    if (!D.beta.is_base()) bottom.generators_E = {D.beta};
    bottom.block_poly = embed(ext, D.p_alpha());
  }
  IntermediateField top;
  {
    top.block_poly = UPolyExt({-alpha, one});
    top.generators_E = {alpha};
    auto S = field_span({alpha}, ext);
    top.basis = S.elements();
    top.degree_over_E = S.size();
    top.index_in_top = 1;
    top.primitive = alpha;
    top.primitive_minpoly = D.p_alpha();
  }

  std::vector<IntermediateField> found;
  if (ext->degree() > 1) {
    auto F = D.factor_p_alpha(opt.factor);
    std::vector<Block> blocks = linear_factor_blocks(F);
    std::set<std::string> keys;
    for (const auto& b : blocks) keys.insert(detail::block_key(b));
    for (auto& b : factor_combination_blocks(F, opt))
      if (keys.insert(detail::block_key(b)).second) blocks.push_back(std::move(b));
    for (const auto& b : blocks) {
      auto L = block_to_field(b, ext, opt);
      if (!L.consistent() || L.trivial()) continue;
      if (L.degree_over_E <= bottom.degree_over_E || !field_contains(L, bottom)) continue;
      bool dup = false;
      for (const auto& M : found)
        if (M.degree_over_E == L.degree_over_E && field_contains(M, L)) dup = true;
      if (!dup) found.push_back(std::move(L));
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const IntermediateField& a, const IntermediateField& b) {
    if (a.degree_over_E != b.degree_over_E) return a.degree_over_E < b.degree_over_E;
    return detail::elem_key(a.primitive) < detail::elem_key(b.primitive);
  });
  out.fields.push_back(std::move(bottom));
  for (auto& L : found) out.fields.push_back(std::move(L));
  if (out.fields.front().degree_over_E < static_cast<std::uint64_t>(ext->degree()))
    out.fields.push_back(std::move(top));

  std::uint64_t bdeg = out.fields.front().degree_over_E;
  for (auto& L : out.fields) {
    if (L.degree_over_E % bdeg) fail(ErrorCode::IntegrityFailure, "field degree not a multiple of the bottom degree");
    L.degree_over_base = L.degree_over_E / bdeg;
    L.generators_ambient = lift_to_ambient(L, D);
  }
  // Hasse diagram: inclusions without an intermediate reported field
  std::size_t k = out.fields.size();
  std::vector<std::vector<bool>> inc(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && out.fields[i].degree_over_E < out.fields[j].degree_over_E)
        inc[i][j] = field_contains(out.fields[j], out.fields[i]);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (!inc[i][j]) continue;
      bool direct = true;
      for (std::size_t l = 0; l < k && direct; ++l)
        if (inc[i][l] && inc[l][j]) direct = false;
      if (direct) out.hasse_edges.push_back({i, j});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Normality and the group G(f) for n = 1.

// u(x) = (a*x + b)/(c*x + d), scaled so that c = 1, or d = 1 when c = 0.
struct Mobius {
  Rational a, b, c, d;

  RatQ apply(const Universe& u) const {
    auto x = QPoly::variable(u, CoefField::rationals(), 0);
    auto k = [&](const Rational& r) { return QPoly::constant(u, CoefField::rationals(), r); };
    return RatQ(k(a) * x + k(b), k(c) * x + k(d));
  }
  friend bool operator==(const Mobius&, const Mobius&) = default;
};

inline std::string to_string(const Mobius& m, const std::string& var = "x") {
  Universe u({var});
  return to_string(m.apply(u));
}

// All Mobius u with f(u(x)) = f(x): the roots in K(x) of
// f_N(z)*f_D(x) - f_D(z)*f_N(x), read off its factors of degree one in z.
inline std::vector<Mobius> monodromy_fix_group(const RatQ& f, const FactorOptions& opt = {}) {
  const auto& u = f.universe();
  if (u.size() != 1) fail(ErrorCode::InvalidArgument, "G(f) is defined for one variable");
  if (f.is_constant()) fail(ErrorCode::InvalidArgument, "G(f) needs a nonconstant function");
  auto Q = CoefField::rationals();
  Universe xz({u.name(0), fresh_name(u, "z")});
  auto in_z = [&](const QPoly& p) { return substitute(p, {RatQ(QPoly::variable(xz, Q, 1))}, xz).num(); };
  auto in_x = [&](const QPoly& p) { return remap(p, xz); };
  auto Phi = in_z(f.num()) * in_x(f.den()) - in_z(f.den()) * in_x(f.num());
  auto F = factor_multivar(Phi, opt);
  std::vector<Mobius> out;
  for (const auto& [g, m] : F.factors) {
    if (g.degree(1) != 1) continue;
    auto cs = coefficients_in(g, 1);  // g = cs[1]*z + cs[0]
    auto num = -cs[0], den = cs[1];
    if (num.degree(0) > 1 || den.degree(0) > 1) continue;
    auto co = [&](const QPoly& p, unsigned k) {
      return coefficients_in(p, 0).size() > k ? coefficients_in(p, 0)[k].constant_term() : Rational(0);
    };
    Mobius mb{co(num, 1), co(num, 0), co(den, 1), co(den, 0)};
    if (mb.a * mb.d - mb.b * mb.c == 0) continue;
    Rational s = mb.c != 0 ? mb.c : mb.d;
    mb.a /= s;
    mb.b /= s;
    mb.c /= s;
    mb.d /= s;
    if (!(substitute(f, {mb.apply(u)}, u) == f)) fail(ErrorCode::IntegrityFailure, "Mobius map does not fix f");
    out.push_back(mb);
  }
  std::sort(out.begin(), out.end(), [](const Mobius& p, const Mobius& q) {
    return std::tie(p.c, p.d, p.a, p.b) < std::tie(q.c, q.d, q.a, q.b);
  });
  return out;
}

struct NormalityReport {
  bool normal = false;
  std::uint64_t degree = 0;               // [K(x) : K(f)]
  std::uint64_t automorphisms = 0;        // E[beta]-automorphisms of E[alpha]
  std::optional<std::uint64_t> mobius;    // |G(f)| when n = m = 1
};

// E[alpha]/E is normal iff p_alpha splits into linear factors over E[alpha].
inline bool is_normal_extension(const UPolyE& p_alpha, const FactorOptions& opt = {}) {
  if (p_alpha.degree() < 1) fail(ErrorCode::InvalidArgument, "extension polynomial must have positive degree");
  auto ext = std::make_shared<const AlgExt>(p_alpha.lc().universe(), p_alpha);
  auto F = factor_over_extension(embed(ext, ext->minpoly()), opt);
  for (const auto& [g, m] : F.factors)
    if (g.degree() != 1) return false;
  return true;
}

// Splitting route: count roots r of p_alpha in E[alpha] with sigma_r(beta) =
// beta. For one generator in one variable |G(f)| = deg f is checked as well.
inline NormalityReport normality(const Presentation& P, const SubfieldOptions& opt = {}) {
  auto D = rewrite_presentation(P, opt);
  NormalityReport rep;
  rep.degree = D.degree;
  if (D.ext->degree() == 1) {
    rep.automorphisms = 1;
  } else {
    auto F = D.factor_p_alpha(opt.factor);
    for (const auto& r : roots_in_extension(F))
      if (detail::apply_root_map(D.beta, r) == D.beta) ++rep.automorphisms;
  }
  rep.normal = rep.automorphisms == rep.degree;
  if (P.n() == 1 && P.m() == 1 && P.ambient().is_rational()) {
    rep.mobius = monodromy_fix_group(P.generators()[0], opt.factor).size();
    if ((*rep.mobius == rep.degree) != rep.normal)
      fail(ErrorCode::IntegrityFailure, "normality routes disagree");
  }
  return rep;
}

inline bool is_normal_extension(const Presentation& P, const SubfieldOptions& opt = {}) {
  return normality(P, opt).normal;
}

// ---------------------------------------------------------------------------
// Reduction to d = trdeg variables by x_j -> x_i^nu substitutions.

struct ReductionStep {
  std::string replaced;  // x_j
  std::string by;        // x_i, as x_j -> x_i^nu
  unsigned nu = 0;
  int trdeg = 0;         // trdeg of the image field, equal to the original
};

struct DimensionReduction {
  Universe vars;                  // remaining variables
  std::vector<RatQ> images;       // Phi(f_i)
  std::vector<ReductionStep> steps;
  int trdeg = 0;
  bool identity() const { return steps.empty(); }
};

namespace detail {

// A linear change fbar_s = f_s + sum_j c_sj f_j of the independent part making
// every other generator integral over K[fbar_S]; attempt 0 is no change.
inline std::vector<RatQ> noether_change(const Presentation& P, const std::vector<std::size_t>& S, int d,
                                        const SubfieldOptions& opt) {
  const auto& g = P.generators();
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (std::find(S.begin(), S.end(), j) == S.end()) rest.push_back(j);
  for (int k = 0; k <= opt.max_primitive_tries; ++k) {
    std::vector<RatQ> fbar;
    for (std::size_t s = 0; s < S.size(); ++s) {
      RatQ acc = g[S[s]];
      if (k > 0)
        for (std::size_t j = 0; j < rest.size(); ++j) {
          long w = 1;
          for (std::size_t e = 0; e <= s + j; ++e) w *= small_int(k);
          acc += g[rest[j]].mul_int(w);
        }
      fbar.push_back(acc);
    }
    bool ok = true;
    for (const auto& f : fbar)
      if (f.is_constant()) ok = false;
    if (!ok || trdeg_of(P, fbar) != d) continue;
    auto T = tag_basis(sub_presentation(P, fbar), opt.groebner);
    for (auto j : rest)
      if (ok && !is_integral(g[j], T, opt.groebner)) ok = false;
    if (ok) return fbar;
  }
  fail(ErrorCode::BudgetExceeded, "no linear change makes the generators integral within the search budget");
}

}  // namespace detail

inline DimensionReduction reduce_dimension(const Presentation& P, const SubfieldOptions& opt = {}) {
  if (!P.ambient().is_rational()) fail(ErrorCode::Unsupported, "dimension reduction needs a rational function field");
  if (!P.field().is_rationals()) fail(ErrorCode::Unsupported, "dimension reduction needs an infinite field");
  if (P.m() == 0) fail(ErrorCode::InvalidArgument, "no generators");
  auto Q = CoefField::rationals();
  DimensionReduction out{P.ambient().vars(), P.generators(), {}, 0};
  out.trdeg = detail::trdeg_of(P, P.generators());
  int d = out.trdeg;
  while (out.vars.size() > static_cast<std::size_t>(d)) {
    Presentation cur(Ambient(out.vars), out.images);
    std::size_t n = out.vars.size();
    // step A
    std::vector<std::size_t> S;
    detail::for_each_subset(cur.m(), static_cast<std::size_t>(d), [&](const std::vector<std::size_t>& s) {
      std::vector<RatQ> g;
      for (auto i : s) g.push_back(cur.generators()[i]);
      if (detail::trdeg_of(cur, g) != d) return false;
      S = s;
      return true;
    });
    auto fbar = detail::noether_change(cur, S, d, opt);
    // step B: variables x_T independent over K(fbar), preferring the last ones
    std::vector<std::size_t> Tv;
    std::vector<std::vector<std::size_t>> subsets;
    detail::for_each_subset(n, n - static_cast<std::size_t>(d), [&](const std::vector<std::size_t>& s) {
      subsets.push_back(s);
      return false;
    });
    for (auto it = subsets.rbegin(); it != subsets.rend(); ++it) {
      auto g = fbar;
      for (auto v : *it) g.push_back(RatQ(cur.ambient().variable(v)));
      if (detail::trdeg_of(cur, g) == static_cast<int>(n)) {
        Tv = *it;
        break;
      }
    }
    if (Tv.empty()) fail(ErrorCode::IntegrityFailure, "no complementary transcendence basis among the variables");
    std::vector<std::size_t> A;
    for (std::size_t v = 0; v < n; ++v)
      if (std::find(Tv.begin(), Tv.end(), v) == Tv.end()) A.push_back(v);
    // step C
    auto gens = fbar;
    for (auto v : Tv) gens.push_back(RatQ(cur.ambient().variable(v)));
    auto B = detail::sub_presentation(cur, gens);
    auto TB = tag_basis(B, opt.groebner);
    std::uint64_t nu = n;
    QPoly den = QPoly::constant(out.vars, Q, 1);
    for (const auto& f : fbar) den = lcm(den, f.den());
    nu = std::max<std::uint64_t>(nu, den.total_degree());
    auto vz = out.vars.extended({fresh_name(out.vars.extended(B.tags().names()), "z")});
    for (auto i : A) {
      auto mp = minimal_polynomial(RatQ(cur.ambient().variable(i)), TB, opt.groebner);
      if (!mp) fail(ErrorCode::IntegrityFailure, "variable not algebraic over the chosen basis");
      std::vector<const RatQ*> ptrs;
      for (const auto& c : mp->coeffs()) ptrs.push_back(&c);
      auto L = detail::common_denominator(ptrs, B.tags());
      std::vector<RatQ> timg;
      for (const auto& g : gens) timg.push_back(remap(g, vz));
      RatQ acc = RatQ(QPoly(vz, Q));
      auto z = RatQ(QPoly::variable(vz, Q, vz.size() - 1));
      for (int k = mp->degree(); k >= 0; --k) {
        auto c = RatQ((*mp)[k].num() * divide_exact(L, (*mp)[k].den()));
        acc = acc * z + substitute(c, timg, vz);
      }
      nu = std::max<std::uint64_t>(nu, acc.num().total_degree());
    }
    nu += 1;
    // step D: x_j -> x_i^nu with x_j the last of T and x_i the first of A
    std::size_t j = Tv.back(), i = A.front();
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v)
      if (v != j) names.push_back(out.vars.name(v));
    Universe nv(names);
    std::vector<RatQ> img;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == j) img.push_back(RatQ(QPoly::variable(nv, Q, nv.index(out.vars.name(i)), static_cast<unsigned>(nu))));
      else img.push_back(RatQ(QPoly::variable(nv, Q, nv.index(out.vars.name(v)))));
    }
    std::vector<RatQ> next;
    for (const auto& f : out.images) next.push_back(substitute(f, img, nv));
    for (const auto& f : next)
      if (f.is_constant()) fail(ErrorCode::IntegrityFailure, "a generator became constant under substitution");
    Presentation after(Ambient(nv), next);
    int td = trdeg_groebner(tag_basis(after, opt.groebner));
    if (td != d) fail(ErrorCode::IntegrityFailure, "substitution lost transcendence degree");
    out.steps.push_back({out.vars.name(j), out.vars.name(i), static_cast<unsigned>(nu), td});
    out.vars = nv;
    out.images = std::move(next);
  }
  return out;
}

}  // namespace unirat

#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "poly.hpp"

namespace unirat {

inline std::uint64_t default_pair_budget() {
  if (const char* s = std::getenv("UNIRAT_BUDGET")) {
    char* end = nullptr;
    auto v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return 1000000;
}

struct GroebnerOptions {
  std::uint64_t max_pairs = default_pair_budget();
};

template <class C>
class Ideal {
 public:
  explicit Ideal(std::vector<MultiPoly<C>> gens) : gens_(std::move(gens)) {
    if (gens_.empty()) fail(ErrorCode::InvalidArgument, "an ideal needs at least one generator");
    for (const auto& g : gens_) gens_.front().check_compatible(g);
  }
  const std::vector<MultiPoly<C>>& generators() const { return gens_; }
  const Universe& universe() const { return gens_.front().universe(); }
  const CoefField& field() const { return gens_.front().field(); }

 private:
  std::vector<MultiPoly<C>> gens_;
};

template <class C>
class GroebnerBasis {
 public:
  GroebnerBasis(Universe u, CoefField f, MonomialOrder order, std::vector<MultiPoly<C>> basis,
                bool reduced, std::uint64_t pairs)
      : u_(std::move(u)), f_(f), order_(std::move(order)), basis_(std::move(basis)),
        reduced_(reduced), pairs_(pairs) {
    for (const auto& g : basis_) lms_.push_back(leading_monomial(g));
  }

  const std::vector<MultiPoly<C>>& basis() const { return basis_; }
  const MonomialOrder& order() const { return order_; }
  const Universe& universe() const { return u_; }
  const CoefField& field() const { return f_; }
  bool reduced() const { return reduced_; }
  std::uint64_t pairs_processed() const { return pairs_; }
  const std::vector<Monomial>& leading_monomials() const { return lms_; }
  bool is_unit_ideal() const { return basis_.size() == 1 && basis_[0].is_constant(); }

  Monomial leading_monomial(const MultiPoly<C>& p) const {
    const Monomial* best = nullptr;
    for (const auto& t : p.terms())
      if (!best || order_.greater(t.mono, *best)) best = &t.mono;
    return *best;
  }

 private:
  Universe u_;
  CoefField f_;
  MonomialOrder order_;
  std::vector<MultiPoly<C>> basis_;
  std::vector<Monomial> lms_;
  bool reduced_;
  std::uint64_t pairs_;
};

// Called with every basis returned by buchberger on the current thread; used
// by verification harnesses.
template <class C>
inline thread_local std::function<void(const GroebnerBasis<C>&)> groebner_observer;

namespace detail {

template <class C>
struct OrderedPoly {
  std::vector<typename MultiPoly<C>::Term> terms;  // decreasing in the active order
  const Monomial& lm() const { return terms.front().mono; }
};

template <class C>
class Reducer {
 public:
  using Term = typename MultiPoly<C>::Term;
  struct Greater {
    const MonomialOrder* o;
    bool operator()(const Monomial& a, const Monomial& b) const { return o->greater(a, b); }
  };
  using Acc = std::map<Monomial, C, Greater>;

  explicit Reducer(const MonomialOrder& o) : order_(o) {}

  OrderedPoly<C> to_ordered(const MultiPoly<C>& p) const {
    OrderedPoly<C> r;
    r.terms = p.terms();
    std::sort(r.terms.begin(), r.terms.end(),
              [&](const Term& a, const Term& b) { return order_.greater(a.mono, b.mono); });
    return r;
  }
  Acc make_acc() const { return Acc(Greater{&order_}); }

  static void add_scaled(Acc& acc, const OrderedPoly<C>& g, const Monomial& m, const C& c, std::size_t skip = 0) {
    for (std::size_t k = skip; k < g.terms.size(); ++k) {
      const auto& t = g.terms[k];
      auto mono = t.mono * m;
      auto it = acc.find(mono);
      if (it == acc.end()) {
        acc.emplace(std::move(mono), C(t.coef * c));
      } else {
        it->second += t.coef * c;
        if (coef_is_zero(it->second)) acc.erase(it);
      }
    }
  }

  // Full reduction of the accumulated polynomial by the monic reducers.
  OrderedPoly<C> reduce(Acc acc, const std::vector<const OrderedPoly<C>*>& reducers) const {
    OrderedPoly<C> rem;
    while (!acc.empty()) {
      auto it = acc.begin();
      const OrderedPoly<C>* r = nullptr;
      for (auto* g : reducers)
        if (g->lm().divides(it->first)) {
          r = g;
          break;
        }
      if (!r) {
        rem.terms.push_back({it->first, it->second});
        acc.erase(it);
        continue;
      }
      Monomial m = it->first / r->lm();
      C c = -it->second;
      acc.erase(it);
      add_scaled(acc, *r, m, c, 1);
    }
    return rem;
  }

  OrderedPoly<C> reduce(const OrderedPoly<C>& p, const std::vector<const OrderedPoly<C>*>& reducers) const {
    auto acc = make_acc();
    for (const auto& t : p.terms) acc.emplace(t.mono, t.coef);
    return reduce(std::move(acc), reducers);
  }

  OrderedPoly<C> spoly(const OrderedPoly<C>& f, const OrderedPoly<C>& g) const {
    auto L = lcm(f.lm(), g.lm());
    auto acc = make_acc();
    C one = f.terms.front().coef / f.terms.front().coef;
    add_scaled(acc, f, L / f.lm(), one, 1);
    add_scaled(acc, g, L / g.lm(), C(-one), 1);
    OrderedPoly<C> r;
    for (auto& [m, c] : acc) r.terms.push_back({m, c});
    return r;
  }

  static void make_monic(OrderedPoly<C>& p) {
    if (p.terms.empty()) return;
    C inv = CoefOps<C>::inverse(p.terms.front().coef);
    for (auto& t : p.terms) t.coef *= inv;
  }

 private:
  const MonomialOrder& order_;
};

}  // namespace detail

template <class C>
MultiPoly<C> normal_form(const MultiPoly<C>& p, const GroebnerBasis<C>& G) {
  if (!(p.universe() == G.universe())) fail(ErrorCode::UniverseMismatch, "normal form across universes");
  detail::Reducer<C> red(G.order());
  std::vector<detail::OrderedPoly<C>> gs;
  gs.reserve(G.basis().size());
  for (const auto& g : G.basis()) {
    gs.push_back(red.to_ordered(g));
    detail::Reducer<C>::make_monic(gs.back());
  }
  std::vector<const detail::OrderedPoly<C>*> ptrs;
  for (const auto& g : gs) ptrs.push_back(&g);
  auto r = red.reduce(red.to_ordered(p), ptrs);
  return MultiPoly<C>::from_terms(p.universe(), p.field(), std::move(r.terms));
}

template <class C>
GroebnerBasis<C> buchberger(const Ideal<C>& I, const MonomialOrder& order, const GroebnerOptions& opt = {}) {
  using OP = detail::OrderedPoly<C>;
  const auto& u = I.universe();
  if (order.nvars() != u.size()) fail(ErrorCode::InvalidArgument, "monomial order does not match the universe");
  detail::Reducer<C> red(order);

  std::vector<OP> polys;
  std::vector<std::uint64_t> sugar;
  std::vector<bool> active;

  struct Pair {
    std::uint64_t sugar;
    Monomial lcm;
    std::size_t i, j;
  };
  auto pair_less = [&](const Pair& a, const Pair& b) {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = order.compare(a.lcm, b.lcm);
    if (c) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  };
  std::set<Pair, decltype(pair_less)> B(pair_less);

  auto make_pair = [&](std::size_t i, std::size_t j) {
    auto L = lcm(polys[i].lm(), polys[j].lm());
    auto d = L.total_degree();
    auto si = sugar[i] - polys[i].lm().total_degree() + d;
    auto sj = sugar[j] - polys[j].lm().total_degree() + d;
    return Pair{std::max(si, sj), L, std::min(i, j), std::max(i, j)};
  };

  // Gebauer-Moeller update with the new element at index h.
  auto update = [&](std::size_t h) {
    const Monomial& lh = polys[h].lm();
    std::vector<std::size_t> G;
    for (std::size_t g = 0; g < h; ++g)
      if (active[g]) G.push_back(g);
    std::vector<Pair> Cs;
    for (auto g : G) Cs.push_back(make_pair(h, g));
    std::vector<Pair> D;
    for (std::size_t a = 0; a < Cs.size(); ++a) {
      const auto& p = Cs[a];
      std::size_t g1 = p.i == h ? p.j : p.i;
      bool keep = polys[g1].lm().coprime(lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < Cs.size() && keep; ++b)
          if (Cs[b].lcm.divides(p.lcm)) keep = false;
        for (std::size_t b = 0; b < D.size() && keep; ++b)
          if (D[b].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    // discard pairs with coprime leading monomials
    std::vector<Pair> E;
    for (const auto& p : D) {
      std::size_t g1 = p.i == h ? p.j : p.i;
      if (!polys[g1].lm().coprime(lh)) E.push_back(p);
    }
    // chain criterion on old pairs
    for (auto it = B.begin(); it != B.end();) {
      const auto& p = *it;
      if (lh.divides(p.lcm) && !(lcm(polys[p.i].lm(), lh) == p.lcm) && !(lcm(polys[p.j].lm(), lh) == p.lcm))
        it = B.erase(it);
      else
        ++it;
    }
    for (auto& p : E) B.insert(std::move(p));
    for (auto g : G)
      if (lh.divides(polys[g].lm())) active[g] = false;
    active[h] = true;
  };

  auto add = [&](OP p, std::uint64_t s) {
    detail::Reducer<C>::make_monic(p);
    s = std::max(s, p.lm().total_degree());
    polys.push_back(std::move(p));
    sugar.push_back(s);
    active.push_back(false);
    update(polys.size() - 1);
  };

  auto reducers = [&] {
    std::vector<const OP*> r;
    for (std::size_t k = 0; k < polys.size(); ++k)
      if (active[k]) r.push_back(&polys[k]);
    return r;
  };

  // seed generators in increasing leading monomial order
  std::vector<OP> seeds;
  for (const auto& g : I.generators())
    if (!g.is_zero()) seeds.push_back(red.to_ordered(g));
  std::sort(seeds.begin(), seeds.end(), [&](const OP& a, const OP& b) { return order.greater(b.lm(), a.lm()); });
  for (auto& s : seeds) {
    auto r = red.reduce(s, reducers());
    if (r.terms.empty()) continue;
    std::uint64_t sg = 0;
    for (const auto& t : s.terms) sg = std::max(sg, t.mono.total_degree());
    add(std::move(r), sg);
  }

  std::uint64_t processed = 0;
  while (!B.empty()) {
    Pair p = *B.begin();
    B.erase(B.begin());
    if (++processed > opt.max_pairs)
      fail(ErrorCode::BudgetExceeded, "Groebner basis exceeded the budget of " + std::to_string(opt.max_pairs) + " S-pairs");
    auto s = red.spoly(polys[p.i], polys[p.j]);
    if (s.terms.empty()) continue;
    auto acc = red.make_acc();
    for (auto& t : s.terms) acc.emplace(t.mono, t.coef);
    auto h = red.reduce(std::move(acc), reducers());
    if (h.terms.empty()) continue;
    add(std::move(h), p.sugar);
  }

  // interreduce the (already minimal) active set
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < polys.size(); ++k)
    if (active[k]) idx.push_back(k);
  std::vector<OP> out;
  for (auto k : idx) {
    std::vector<const OP*> others;
    for (auto j : idx)
      if (j != k) others.push_back(&polys[j]);
    auto r = red.reduce(polys[k], others);
    detail::Reducer<C>::make_monic(r);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [&](const OP& a, const OP& b) { return order.greater(b.lm(), a.lm()); });
  std::vector<MultiPoly<C>> basis;
  for (auto& o : out) basis.push_back(MultiPoly<C>::from_terms(u, I.field(), std::move(o.terms)));
  if (basis.empty()) basis.push_back(MultiPoly<C>(u, I.field()));
  GroebnerBasis<C> G(u, I.field(), order, std::move(basis), true, processed);
  if (groebner_observer<C>) groebner_observer<C>(G);
  return G;
}

// True when every S-polynomial of basis pairs reduces to zero.
template <class C>
bool spolys_reduce_to_zero(const GroebnerBasis<C>& G) {
  detail::Reducer<C> red(G.order());
  std::vector<detail::OrderedPoly<C>> gs;
  for (const auto& g : G.basis()) {
    if (g.is_zero()) continue;
    gs.push_back(red.to_ordered(g));
    detail::Reducer<C>::make_monic(gs.back());
  }
  std::vector<const detail::OrderedPoly<C>*> ptrs;
  for (const auto& g : gs) ptrs.push_back(&g);
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j) {
      auto s = red.spoly(gs[i], gs[j]);
      if (!red.reduce(s, ptrs).terms.empty()) return false;
    }
  return true;
}

// Elements of G involving only the `keep` variables.
template <class C>
std::vector<MultiPoly<C>> elimination_ideal(const GroebnerBasis<C>& G, const std::vector<bool>& keep) {
  if (keep.size() != G.universe().size()) fail(ErrorCode::InvalidArgument, "keep mask has wrong size");
  std::vector<bool> elim(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) elim[i] = !keep[i];
  if (!G.order().eliminates(elim))
    fail(ErrorCode::InvalidArgument, "monomial order does not eliminate the requested variables");
  std::vector<MultiPoly<C>> out;
  for (const auto& g : G.basis()) {
    auto s = g.support();
    bool ok = true;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] && !keep[i]) ok = false;
    if (ok && !g.is_zero()) out.push_back(g);
  }
  return out;
}

template <class C>
std::vector<MultiPoly<C>> elimination_ideal(const GroebnerBasis<C>& G, const std::vector<std::string>& keep) {
  std::vector<bool> mask(G.universe().size(), false);
  for (const auto& n : keep) mask[G.universe().index(n)] = true;
  return elimination_ideal(G, mask);
}

template <class C>
bool ideal_member(const MultiPoly<C>& p, const Ideal<C>& I, const GroebnerOptions& opt = {}) {
  auto G = buchberger(I, MonomialOrder::grevlex(I.universe().size()), opt);
  return normal_form(p, G).is_zero();
}

// Krull dimension of K[vars]/(monomials); -1 for the unit ideal.
inline int monomial_dimension(const std::vector<Monomial>& lms, const std::vector<std::size_t>& vars) {
  std::size_t n = vars.size();
  std::vector<std::uint32_t> masks;
  for (const auto& m : lms) {
    std::uint32_t mk = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (m[vars[k]]) mk |= 1u << k;
    if (mk == 0) return -1;
    masks.push_back(mk);
  }
  int best = 0;
  for (std::uint32_t S = 0; S < (1u << n); ++S) {
    int sz = __builtin_popcount(S);
    if (sz <= best) continue;
    bool indep = true;
    for (auto mk : masks)
      if ((mk & ~S) == 0) {
        indep = false;
        break;
      }
    if (indep) best = sz;
  }
  return best;
}

// Maximal independent sets of variables modulo the monomial ideal, as masks.
inline std::vector<std::vector<std::size_t>> independent_sets(const std::vector<Monomial>& lms,
                                                              const std::vector<std::size_t>& vars,
                                                              std::size_t size) {
  std::size_t n = vars.size();
  std::vector<std::uint32_t> masks;
  for (const auto& m : lms) {
    std::uint32_t mk = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (m[vars[k]]) mk |= 1u << k;
    masks.push_back(mk);
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t S = 0; S < (1u << n); ++S) {
    if (static_cast<std::size_t>(__builtin_popcount(S)) != size) continue;
    bool indep = true;
    for (auto mk : masks)
      if ((mk & ~S) == 0) indep = false;
    if (!indep) continue;
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < n; ++k)
      if (S >> k & 1) s.push_back(vars[k]);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Number of monomials in `vars` outside the monomial ideal; nullopt if infinite.
inline std::optional<std::uint64_t> standard_monomial_count(const std::vector<Monomial>& lms,
                                                            const std::vector<std::size_t>& vars) {
  if (vars.empty()) {
    for (const auto& m : lms) {
      bool one = true;
      for (auto e : m) one = one && e == 0;
      if (one) return 0;
    }
    return 1;
  }
  // restrict to generators supported on vars
  std::vector<Monomial> gens;
  for (const auto& m : lms) {
    bool inside = true;
    std::vector<bool> in(m.size(), false);
    for (auto v : vars) in[v] = true;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] && !in[i]) inside = false;
    if (inside) gens.push_back(m);
  }
  // every variable needs a pure power
  std::size_t v0 = vars.front();
  std::optional<unsigned> bound;
  for (const auto& m : gens) {
    bool pure = true;
    for (auto v : vars)
      if (v != v0 && m[v]) pure = false;
    if (pure) bound = bound ? std::min(*bound, m[v0]) : m[v0];
  }
  if (!bound) return std::nullopt;
  std::vector<std::size_t> rest(vars.begin() + 1, vars.end());
  std::uint64_t total = 0;
  for (unsigned e = 0; e < *bound; ++e) {
    std::vector<Monomial> sub;
    for (const auto& m : gens)
      if (m[v0] <= e) {
        Monomial q = m;
        q[v0] = 0;
        sub.push_back(q);
      }
    auto c = standard_monomial_count(sub, rest);
    if (!c) return std::nullopt;
    total += *c;
  }
  return total;
}

}  // namespace unirat

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coef.hpp"
#include "monomial.hpp"

namespace unirat {

// Ordered list of variable names shared by polynomials that may be combined.
class Universe {
 public:
  Universe() : names_(std::make_shared<std::vector<std::string>>()) {}
  explicit Universe(std::vector<std::string> names)
      : names_(std::make_shared<std::vector<std::string>>(std::move(names))) {
    for (std::size_t i = 0; i < names_->size(); ++i) {
      if ((*names_)[i].empty()) fail(ErrorCode::InvalidArgument, "empty variable name");
      for (std::size_t j = 0; j < i; ++j)
        if ((*names_)[i] == (*names_)[j])
          fail(ErrorCode::InvalidArgument, "duplicate variable name '" + (*names_)[i] + "'");
    }
  }

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }

  std::optional<std::size_t> find(const std::string& n) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
      if ((*names_)[i] == n) return i;
    return std::nullopt;
  }
  std::size_t index(const std::string& n) const {
    auto i = find(n);
    if (!i) fail(ErrorCode::UnknownVariable, "unknown variable '" + n + "'");
    return *i;
  }
  bool contains(const std::string& n) const { return find(n).has_value(); }

  Universe extended(const std::vector<std::string>& more) const {
    auto all = *names_;
    all.insert(all.end(), more.begin(), more.end());
    return Universe(std::move(all));
  }

  friend bool operator==(const Universe& a, const Universe& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

// Returns a fresh name based on `base` that does not clash with `u`.
inline std::string fresh_name(const Universe& u, const std::string& base) {
  if (!u.contains(base)) return base;
  for (int k = 1;; ++k) {
    auto n = base + std::to_string(k);
    if (!u.contains(n)) return n;
  }
}

template <class C>
class MultiPoly {
 public:
  using Coef = C;
  struct Term {
    Monomial mono;
    C coef;
  };

  MultiPoly() = default;
  explicit MultiPoly(Universe u, CoefField f = CoefField::rationals())
      : u_(std::move(u)), f_(f) {}

  static MultiPoly constant(Universe u, CoefField f, const C& c) {
    MultiPoly p(std::move(u), f);
    if (!coef_is_zero(c)) p.t_.push_back({Monomial(p.u_.size()), c});
    return p;
  }
  static MultiPoly constant(Universe u, CoefField f, long c) {
    auto cc = CoefOps<C>::from_int(c, f);
    return constant(std::move(u), f, cc);
  }
  static MultiPoly variable(Universe u, CoefField f, std::size_t i, unsigned k = 1) {
    MultiPoly p(std::move(u), f);
    p.t_.push_back({Monomial::variable(p.u_.size(), i, k), CoefOps<C>::from_int(1, f)});
    return p;
  }
  static MultiPoly variable(Universe u, CoefField f, const std::string& name) {
    auto i = u.index(name);
    return variable(std::move(u), f, i);
  }
  static MultiPoly monomial(Universe u, CoefField f, Monomial m, C c) {
    MultiPoly p(std::move(u), f);
    if (!coef_is_zero(c)) p.t_.push_back({std::move(m), std::move(c)});
    return p;
  }
  // Builds a polynomial from arbitrary (possibly repeated, unordered) terms.
  static MultiPoly from_terms(Universe u, CoefField f, std::vector<Term> terms) {
    MultiPoly p(std::move(u), f);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.mono > b.mono; });
    for (auto& t : terms) {
      if (!p.t_.empty() && p.t_.back().mono == t.mono) {
        p.t_.back().coef += t.coef;
        if (coef_is_zero(p.t_.back().coef)) p.t_.pop_back();
      } else if (!coef_is_zero(t.coef)) {
        p.t_.push_back(std::move(t));
      }
    }
    return p;
  }
  // Terms already strictly decreasing in lex and nonzero.
  static MultiPoly from_sorted_terms(Universe u, CoefField f, std::vector<Term> terms) {
    MultiPoly p(std::move(u), f);
    p.t_ = std::move(terms);
    return p;
  }

  const Universe& universe() const { return u_; }
  const CoefField& field() const { return f_; }
  const std::vector<Term>& terms() const { return t_; }
  std::size_t nterms() const { return t_.size(); }
  std::size_t nvars() const { return u_.size(); }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].mono.is_one()); }
  bool is_one() const { return is_constant() && !t_.empty() && CoefOps<C>::is_one(t_[0].coef); }

  C make_coef(long n) const { return CoefOps<C>::from_int(n, f_); }
  MultiPoly zero() const { return MultiPoly(u_, f_); }
  MultiPoly one() const { return constant(u_, f_, make_coef(1)); }
  MultiPoly constant_like(const C& c) const { return constant(u_, f_, c); }
  MultiPoly variable_like(std::size_t i, unsigned k = 1) const { return variable(u_, f_, i, k); }

  // Lex-leading term (variable 0 most significant).
  const Term& lead() const { return t_.front(); }
  const C& leading_coefficient() const { return t_.front().coef; }

  C constant_term() const {
    if (!t_.empty() && t_.back().mono.is_one()) return t_.back().coef;
    return make_coef(0);
  }
  C coefficient(const Monomial& m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m,
                               [](const Term& t, const Monomial& x) { return t.mono > x; });
    if (it != t_.end() && it->mono == m) return it->coef;
    return make_coef(0);
  }

  unsigned degree(std::size_t v) const {
    unsigned d = 0;
    for (const auto& t : t_) d = std::max<unsigned>(d, t.mono[v]);
    return d;
  }
  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : t_) d = std::max(d, t.mono.total_degree());
    return d;
  }
  bool involves(std::size_t v) const {
    for (const auto& t : t_)
      if (t.mono[v]) return true;
    return false;
  }
  std::vector<bool> support() const {
    std::vector<bool> s(u_.size(), false);
    for (const auto& t : t_)
      for (std::size_t i = 0; i < s.size(); ++i)
        if (t.mono[i]) s[i] = true;
    return s;
  }
  std::vector<std::size_t> support_list() const {
    auto s = support();
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i]) r.push_back(i);
    return r;
  }

  MultiPoly operator-() const {
    MultiPoly r(*this);
    for (auto& t : r.t_) t.coef = -t.coef;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    return merge(a, b, false);
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    return merge(a, b, true);
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    if (a.is_zero() || b.is_zero()) return a.zero();
    const MultiPoly& s = a.nterms() <= b.nterms() ? a : b;
    const MultiPoly& l = a.nterms() <= b.nterms() ? b : a;
    std::vector<std::vector<Term>> rows;
    rows.reserve(s.nterms());
    for (const auto& ts : s.t_) {
      std::vector<Term> row;
      row.reserve(l.nterms());
      for (const auto& tl : l.t_) {
        C c = ts.coef * tl.coef;
        if (!coef_is_zero(c)) row.push_back({ts.mono * tl.mono, std::move(c)});
      }
      rows.push_back(std::move(row));
    }
    while (rows.size() > 1) {
      std::vector<std::vector<Term>> next;
      for (std::size_t i = 0; i + 1 < rows.size(); i += 2)
        next.push_back(merge_terms(rows[i], rows[i + 1], false));
      if (rows.size() % 2) next.push_back(std::move(rows.back()));
      rows = std::move(next);
    }
    return from_sorted_terms(a.u_, a.f_, std::move(rows.front()));
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scale(const C& c) const {
    if (coef_is_zero(c)) return zero();
    MultiPoly r(*this);
    for (auto& t : r.t_) t.coef *= c;
    return r;
  }
  MultiPoly mul_term(const Monomial& m, const C& c) const {
    if (coef_is_zero(c)) return zero();
    MultiPoly r(*this);
    for (auto& t : r.t_) {
      t.mono = t.mono * m;
      t.coef *= c;
    }
    return r;
  }
  MultiPoly pow(unsigned k) const {
    MultiPoly result = one(), base = *this;
    while (k) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return result;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
      if (!(a.t_[i].mono == b.t_[i].mono) || !(a.t_[i].coef == b.t_[i].coef)) return false;
    return a.u_ == b.u_;
  }

  void check_compatible(const MultiPoly& b) const {
    if (!(u_ == b.u_)) fail(ErrorCode::UniverseMismatch, "polynomials over different variable universes");
    if (!(f_ == b.f_)) fail(ErrorCode::FieldMismatch, "polynomials over different coefficient fields");
  }

 private:
  static std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
    std::vector<Term> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      auto c = a[i].mono <=> b[j].mono;
      if (c > 0) {
        r.push_back(a[i++]);
      } else if (c < 0) {
        r.push_back(negate_b ? Term{b[j].mono, C(-b[j].coef)} : b[j]);
        ++j;
      } else {
        C s = negate_b ? C(a[i].coef - b[j].coef) : C(a[i].coef + b[j].coef);
        if (!coef_is_zero(s)) r.push_back({a[i].mono, std::move(s)});
        ++i, ++j;
      }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(negate_b ? Term{b[j].mono, C(-b[j].coef)} : b[j]);
    return r;
  }
  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool negate_b) {
    return from_sorted_terms(a.u_, a.f_, merge_terms(a.t_, b.t_, negate_b));
  }

  Universe u_;
  CoefField f_;
  std::vector<Term> t_;
};

using QPoly = MultiPoly<Rational>;
using FpPoly = MultiPoly<Fp>;

template <class C>
MultiPoly<C> operator*(const C& c, const MultiPoly<C>& p) { return p.scale(c); }

// ---------------------------------------------------------------------------
// Views in one distinguished variable.

// coefficients_in(p, v)[k] is the coefficient of v^k (free of v).
template <class C>
std::vector<MultiPoly<C>> coefficients_in(const MultiPoly<C>& p, std::size_t v) {
  std::vector<std::vector<typename MultiPoly<C>::Term>> buckets(p.is_zero() ? 0 : p.degree(v) + 1);
  for (const auto& t : p.terms()) {
    auto m = t.mono;
    auto k = m[v];
    m[v] = 0;
    buckets[k].push_back({std::move(m), t.coef});
  }
  std::vector<MultiPoly<C>> r;
  r.reserve(buckets.size());
  for (auto& b : buckets) r.push_back(MultiPoly<C>::from_terms(p.universe(), p.field(), std::move(b)));
  return r;
}

template <class C>
MultiPoly<C> from_coefficients(const std::vector<MultiPoly<C>>& cs, std::size_t v,
                               const Universe& u, const CoefField& f) {
  std::vector<typename MultiPoly<C>::Term> terms;
  for (std::size_t k = 0; k < cs.size(); ++k)
    for (const auto& t : cs[k].terms()) {
      auto m = t.mono;
      m[v] += static_cast<Monomial::Exp>(k);
      terms.push_back({std::move(m), t.coef});
    }
  return MultiPoly<C>::from_terms(u, f, std::move(terms));
}

template <class C>
MultiPoly<C> leading_coeff_in(const MultiPoly<C>& p, std::size_t v) {
  if (p.is_zero()) return p;
  auto d = p.degree(v);
  std::vector<typename MultiPoly<C>::Term> terms;
  for (const auto& t : p.terms())
    if (t.mono[v] == d) {
      auto m = t.mono;
      m[v] = 0;
      terms.push_back({std::move(m), t.coef});
    }
  return MultiPoly<C>::from_terms(p.universe(), p.field(), std::move(terms));
}

template <class C>
MultiPoly<C> derivative(const MultiPoly<C>& p, std::size_t v) {
  if (v >= p.nvars()) fail(ErrorCode::UnknownVariable, "derivative variable out of range");
  std::vector<typename MultiPoly<C>::Term> terms;
  for (const auto& t : p.terms()) {
    if (!t.mono[v]) continue;
    C c = t.coef * p.make_coef(static_cast<long>(t.mono[v]));
    if (coef_is_zero(c)) continue;
    auto m = t.mono;
    m[v] -= 1;
    terms.push_back({std::move(m), std::move(c)});
  }
  return MultiPoly<C>::from_terms(p.universe(), p.field(), std::move(terms));
}

template <class C>
MultiPoly<C> derivative(const MultiPoly<C>& p, const std::string& v) {
  return derivative(p, p.universe().index(v));
}

// Re-express p over `target`, matching variables by name.
template <class C>
MultiPoly<C> remap(const MultiPoly<C>& p, const Universe& target) {
  if (p.universe() == target) return p;
  std::vector<std::optional<std::size_t>> map(p.nvars());
  auto sup = p.support();
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    map[i] = target.find(p.universe().name(i));
    if (sup[i] && !map[i])
      fail(ErrorCode::UnknownVariable, "variable '" + p.universe().name(i) + "' missing from target universe");
  }
  std::vector<typename MultiPoly<C>::Term> terms;
  terms.reserve(p.nterms());
  for (const auto& t : p.terms()) {
    Monomial m(target.size());
    for (std::size_t i = 0; i < p.nvars(); ++i)
      if (t.mono[i]) m[*map[i]] = t.mono[i];
    terms.push_back({std::move(m), t.coef});
  }
  return MultiPoly<C>::from_terms(target, p.field(), std::move(terms));
}

// Polynomial composition: variable i of p is replaced by images[i].
template <class C>
MultiPoly<C> compose(const MultiPoly<C>& p, const std::vector<MultiPoly<C>>& images) {
  if (images.size() != p.nvars()) fail(ErrorCode::InvalidArgument, "compose: wrong number of images");
  if (images.empty()) return p;
  const auto& u = images[0].universe();
  const auto& f = images[0].field();
  std::vector<std::vector<MultiPoly<C>>> powers(p.nvars());
  auto power = [&](std::size_t i, unsigned k) -> const MultiPoly<C>& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(MultiPoly<C>::constant(u, f, 1));
    while (pw.size() <= k) pw.push_back(pw.back() * images[i]);
    return pw[k];
  };
  MultiPoly<C> acc(u, f);
  for (const auto& t : p.terms()) {
    auto term = MultiPoly<C>::constant(u, f, t.coef);
    for (std::size_t i = 0; i < p.nvars(); ++i)
      if (t.mono[i]) term *= power(i, t.mono[i]);
    acc += term;
  }
  return acc;
}

template <class C>
C evaluate(const MultiPoly<C>& p, const std::vector<C>& point) {
  C acc = p.make_coef(0);
  for (const auto& t : p.terms()) {
    C term = t.coef;
    for (std::size_t i = 0; i < p.nvars(); ++i)
      for (unsigned k = 0; k < t.mono[i]; ++k) term *= point[i];
    acc += term;
  }
  return acc;
}

// Exact quotient a / b if b divides a, nullopt otherwise.
template <class C>
std::optional<MultiPoly<C>> exact_divide(const MultiPoly<C>& a, const MultiPoly<C>& b) {
  a.check_compatible(b);
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (a.is_zero()) return a;
  if (b.is_constant()) return a.scale(CoefOps<C>::inverse(b.leading_coefficient()));
  const auto& lb = b.lead();
  C inv = CoefOps<C>::inverse(lb.coef);
  // degree guard per variable
  for (std::size_t v = 0; v < a.nvars(); ++v)
    if (b.degree(v) > a.degree(v)) return std::nullopt;
  std::vector<typename MultiPoly<C>::Term> q;
  MultiPoly<C> r = a;
  while (!r.is_zero()) {
    const auto& lr = r.lead();
    if (!lb.mono.divides(lr.mono)) return std::nullopt;
    auto m = lr.mono / lb.mono;
    C c = lr.coef * inv;
    r -= b.mul_term(m, c);
    q.push_back({std::move(m), std::move(c)});
  }
  return MultiPoly<C>::from_sorted_terms(a.universe(), a.field(), std::move(q));
}

template <class C>
MultiPoly<C> divide_exact(const MultiPoly<C>& a, const MultiPoly<C>& b) {
  auto q = exact_divide(a, b);
  if (!q) fail(ErrorCode::IntegrityFailure, "expected exact polynomial division");
  return std::move(*q);
}

// Scale so the lex-leading coefficient is 1.
template <class C>
MultiPoly<C> make_monic(const MultiPoly<C>& p) {
  if (p.is_zero()) return p;
  return p.scale(CoefOps<C>::inverse(p.leading_coefficient()));
}

// Rational content: positive rational c with p/c integer-primitive.
inline Rational rational_content(const QPoly& p) {
  if (p.is_zero()) return Rational(0);
  Integer g = 0, l = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  Rational c(g, l);
  c.canonicalize();
  return c;
}

// Integer coefficients, content 1, positive lex-leading coefficient.
inline QPoly integer_primitive(const QPoly& p) {
  if (p.is_zero()) return p;
  Rational c = rational_content(p);
  if (sgn(p.leading_coefficient()) < 0) c = -c;
  return p.scale(1 / c);
}

// Over Q: integer-primitive form; over F_p: monic. Used for display.
template <class C>
MultiPoly<C> display_normal(const MultiPoly<C>& p) {
  if constexpr (std::is_same_v<C, Rational>) return integer_primitive(p);
  else return make_monic(p);
}

// Canonical text: terms in lex-descending order, e.g. "-x^2*y + 3/2*x - 1".
template <class C>
std::string to_string(const MultiPoly<C>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool neg = CoefOps<C>::is_negative(t.coef);
    C mag = neg ? C(-t.coef) : t.coef;
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    bool unit = CoefOps<C>::is_one(mag);
    bool wrote = false;
    if (!unit || t.mono.is_one()) {
      os << CoefOps<C>::to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (!t.mono[i]) continue;
      if (wrote) os << "*";
      os << p.universe().name(i);
      if (t.mono[i] > 1) os << "^" << t.mono[i];
      wrote = true;
    }
  }
  return os.str();
}

template <class C>
std::ostream& operator<<(std::ostream& os, const MultiPoly<C>& p) { return os << to_string(p); }

}  // namespace unirat

#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "parse.hpp"
#include "ratfunc.hpp"

namespace unirat {

// K(x_1..x_n), or QF(K[x]/I) when relations are given. I is assumed prime.
template <class C>
class AmbientField {
 public:
  using Poly = MultiPoly<C>;

  AmbientField() = default;
  explicit AmbientField(Universe vars, CoefField f = CoefField::rationals(), std::vector<Poly> relations = {})
      : vars_(std::move(vars)), f_(f), rel_(std::move(relations)), cache_(std::make_shared<Cache>()) {
    for (const auto& r : rel_) {
      if (!(r.universe() == vars_)) fail(ErrorCode::UniverseMismatch, "relation outside the ambient universe");
      if (!(r.field() == f_)) fail(ErrorCode::FieldMismatch, "relation over another coefficient field");
    }
    std::erase_if(rel_, [](const Poly& r) { return r.is_zero(); });
    for (const auto& r : rel_)
      if (r.is_constant()) fail(ErrorCode::InvalidArgument, "a nonzero constant relation gives the zero ring");
  }

  const Universe& vars() const { return vars_; }
  const CoefField& field() const { return f_; }
  const std::vector<Poly>& relations() const { return rel_; }
  std::size_t nvars() const { return vars_.size(); }
  bool is_rational() const { return rel_.empty(); }

  Poly variable(std::size_t i) const { return Poly::variable(vars_, f_, i); }

  // Grevlex basis of the relation ideal, computed once.
  const GroebnerBasis<C>& relation_basis() const {
    std::call_once(cache_->once, [&] {
      std::vector<Poly> gens = rel_;
      if (gens.empty()) gens.push_back(Poly(vars_, f_));
      cache_->gb = std::make_unique<GroebnerBasis<C>>(
          buchberger(Ideal<C>(gens), MonomialOrder::grevlex(vars_.size())));
    });
    return *cache_->gb;
  }

  // Canonical representative of p modulo the relations.
  Poly reduce(const Poly& p) const {
    if (is_rational() || p.is_zero()) return p;
    return normal_form(p, relation_basis());
  }
  bool is_zero(const Poly& p) const { return reduce(p).is_zero(); }
  bool is_zero(const RatFunc<C>& r) const { return is_zero(r.num()); }
  bool equal(const RatFunc<C>& a, const RatFunc<C>& b) const { return is_zero(a - b); }

  // Representative with numerator and denominator reduced modulo the relations.
  RatFunc<C> reduce(const RatFunc<C>& r) const {
    if (is_rational()) return r;
    auto d = reduce(r.den());
    if (d.is_zero()) fail(ErrorCode::DivisionByZero, "denominator lies in the relation ideal");
    return RatFunc<C>(reduce(r.num()), d);
  }

  // Transcendence degree of the ambient field over K.
  int trdeg() const {
    if (is_rational()) return static_cast<int>(nvars());
    std::vector<std::size_t> all(nvars());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return monomial_dimension(relation_basis().leading_monomials(), all);
  }

 private:
  struct Cache {
    std::once_flag once;
    std::unique_ptr<GroebnerBasis<C>> gb;
  };
  Universe vars_;
  CoefField f_;
  std::vector<Poly> rel_;
  std::shared_ptr<Cache> cache_;
};

// Generators f_1..f_m of K(f) inside an ambient field, with tag names t_1..t_m.
template <class C>
class FieldPresentation {
 public:
  using Poly = MultiPoly<C>;

  FieldPresentation(AmbientField<C> ambient, std::vector<RatFunc<C>> gens, bool allow_constant = false,
                    std::vector<std::string> tag_names = {})
      : amb_(std::move(ambient)), gens_(std::move(gens)) {
    for (const auto& g : gens_) {
      if (!(g.universe() == amb_.vars())) fail(ErrorCode::UniverseMismatch, "generator outside the ambient universe");
      if (!(g.field() == amb_.field())) fail(ErrorCode::FieldMismatch, "generator over another coefficient field");
      if (!allow_constant && g.is_constant()) fail(ErrorCode::InvalidArgument, "constant generator " + to_string(g));
      if (!amb_.is_rational() && amb_.is_zero(g.den()))
        fail(ErrorCode::DivisionByZero, "generator denominator vanishes modulo the relations");
    }
    if (tag_names.empty()) {
      Universe taken = amb_.vars();
      for (std::size_t i = 0; i < gens_.size(); ++i) {
        auto n = fresh_name(taken, "t" + std::to_string(i + 1));
        tag_names.push_back(n);
        taken = taken.extended({n});
      }
    }
    if (tag_names.size() != gens_.size()) fail(ErrorCode::InvalidArgument, "one tag name per generator required");
    for (const auto& n : tag_names)
      if (amb_.vars().contains(n)) fail(ErrorCode::InvalidArgument, "tag '" + n + "' clashes with an ambient variable");
    tags_ = Universe(tag_names);
  }

  const AmbientField<C>& ambient() const { return amb_; }
  const std::vector<RatFunc<C>>& generators() const { return gens_; }
  const Universe& tags() const { return tags_; }
  std::size_t m() const { return gens_.size(); }
  std::size_t n() const { return amb_.nvars(); }
  const CoefField& field() const { return amb_.field(); }

  // g(t_1..t_m) -> g(f_1..f_m) in the ambient field.
  RatFunc<C> substitute_tags(const RatFunc<C>& g) const {
    auto src = g.universe();
    std::vector<RatFunc<C>> images;
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (auto k = tags_.find(src.name(i))) images.push_back(gens_[*k]);
      else if (auto j = amb_.vars().find(src.name(i))) images.push_back(RatFunc<C>(amb_.variable(*j)));
      else images.push_back(RatFunc<C>(Poly(amb_.vars(), field())));
    }
    return substitute(g, images, amb_.vars());
  }

 private:
  AmbientField<C> amb_;
  std::vector<RatFunc<C>> gens_;
  Universe tags_;
};

using Ambient = AmbientField<Rational>;
using Presentation = FieldPresentation<Rational>;

// Builds a presentation from text: variable names, generator expressions and
// relation polynomials over the same universe.
template <class C = Rational>
FieldPresentation<C> parse_presentation(const std::vector<std::string>& vars, const std::vector<std::string>& gens,
                                        const std::vector<std::string>& relations = {},
                                        CoefField f = CoefField::rationals(),
                                        const std::map<std::string, std::string>& aliases = {}) {
  Universe u(vars);
  std::vector<MultiPoly<C>> rel;
  for (const auto& r : relations) rel.push_back(parse_polynomial<C>(r, u, f, aliases));
  std::vector<RatFunc<C>> g;
  for (const auto& s : gens) g.push_back(parse_expression<C>(s, u, f, aliases));
  return FieldPresentation<C>(AmbientField<C>(u, f, rel), std::move(g));
}

}  // namespace unirat

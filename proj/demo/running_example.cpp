// Q(x, y) over Q(f1, f2): degrees, minimal polynomials and the subfield lattice.
#include <iostream>

#include <unirat/unirat.hpp>

using namespace unirat;

int main() {
  auto P = parse_presentation({"x", "y"}, {"-y^2*x - y^4 + 2*x + 2*y^2 - 1", "4*y^4 - 10*y^2 + 5 + 3*y^2*x - 6*x"});
  const auto& u = P.ambient().vars();
  auto T = tag_basis(P);

  std::cout << "trdeg Q(f)/Q      " << trdeg_groebner(T) << "\n";
  std::cout << "[Q(x,y) : Q(f)]   " << *algebraic_degree(T) << "\n";
  for (const char* c : {"x", "y", "x*y"}) {
    auto mp = minimal_polynomial(parse_expression<Rational>(c, u), T);
    std::cout << "minpoly " << c << (mp ? ": " + to_string(*mp, "z") : ": transcendental") << "\n";
  }

  auto D = rewrite_presentation(P);
  std::cout << "\np_alpha = " << to_string(D.p_alpha(), "z") << " over E = Q(t1, t2)\n";
  auto F = D.factor_p_alpha();
  for (const auto& [g, m] : F.factors) std::cout << "  factor " << to_string(g, "z") << (m > 1 ? "^" + std::to_string(m) : "") << "\n";

  auto L = intermediate_fields(P);
  std::cout << "\n" << L.fields.size() << " fields between Q(f) and Q(x, y)\n";
  for (std::size_t i = 0; i < L.fields.size(); ++i) {
    const auto& f = L.fields[i];
    std::cout << "  [" << i << "] degree " << f.degree_over_base << " over Q(f): Q(";
    for (std::size_t k = 0; k < f.generators_ambient.size(); ++k)
      std::cout << (k ? ", " : "") << to_string(f.generators_ambient[k]);
    std::cout << ")\n";
  }
  std::cout << "normal: " << (is_normal_extension(P) ? "yes" : "no") << "\n";
}

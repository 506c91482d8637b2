// One-variable fields Q(f) inside Q(x): Mobius symmetries, lattices, decompositions.
#include <iostream>

#include <unirat/unirat.hpp>

using namespace unirat;

int main() {
  Universe x({"x"});
  for (const char* f : {"x^2 + 1/x^2", "(x^2 + x + 1)^3/(x^2 + x)^2", "(x^3 + x)^2"}) {
    auto P = parse_presentation({"x"}, {f});
    std::cout << "f = " << f << "\n  G(f) = {";
    auto G = monodromy_fix_group(P.generators()[0]);
    for (std::size_t i = 0; i < G.size(); ++i) std::cout << (i ? ", " : "") << to_string(G[i]);
    auto N = normality(P);
    std::cout << "}, [Q(x) : Q(f)] = " << N.degree << (N.normal ? ", normal" : ", not normal") << "\n";
    auto L = intermediate_fields(P);
    for (auto i : L.proper()) std::cout << "  contains Q(" << to_string(L.fields[i].generators_ambient.back()) << ")\n";
  }

  // p1, p2 as polynomials in a common f
  Universe xy({"x", "y"});
  std::vector<QPoly> ps{parse_polynomial<Rational>("(x*y + 1)^2", xy), parse_polynomial<Rational>("x^3*y^3 + 3*x^2*y^2", xy)};
  if (auto d = uni_multivariate_decompose(ps)) {
    std::cout << "\n(x*y + 1)^2 and x^3*y^3 + 3*x^2*y^2 are polynomials in f = " << to_string(d->f) << ":\n";
    for (const auto& q : d->q) std::cout << "  q = " << to_string(q) << "\n";
  }
}

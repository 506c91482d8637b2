// Jacobian ranks and separating transcendence bases, including a field of positive characteristic.
#include <iostream>

#include <unirat/unirat.hpp>

using namespace unirat;

template <class C>
void report(const std::string& name, const FieldPresentation<C>& P) {
  auto rep = jacobian_trdeg(P, {true, {}});
  std::cout << name << ": rank " << rep.rank << ", trdeg K(f)/K "
            << (rep.groebner_trdeg ? std::to_string(*rep.groebner_trdeg) : "?") << ", separating basis {";
  for (std::size_t i = 0; i < rep.basis_vars.size(); ++i)
    std::cout << (i ? ", " : "") << P.ambient().vars().name(rep.basis_vars[i]);
  std::cout << "}" << (rep.separable_certified ? "" : " (not separable)") << "\n";
}

int main() {
  report("Q(x + y, x*y) in Q(x, y)", parse_presentation({"x", "y"}, {"x + y", "x*y"}));
  report("quadric cone x^2 + y^2 = 0",
         parse_presentation({"x", "y", "z"}, {"(x + 2*y - z)^3", "(x + 2*y - z)^2"}, {"x^2 + y^2"}));
  report("F_5(x, y^5) in F_5(x, y)", parse_presentation<Fp>({"x", "y"}, {"x", "y^5"}, {}, CoefField::prime(5)));
}

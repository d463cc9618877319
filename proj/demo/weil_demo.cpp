// Walk-through at p = 3, dim 2: Gauss sum, one canonical operator, and the
// Weil representation of the standard Weyl element.

#include "weil/weil.hpp"

#include <iostream>

int main()
{
  using namespace weil;
  const int p = 3;
  const auto V = SymplecticSpace::standard(p, 1);

  std::cout << "G1 = " << gauss_sum(p).to_string() << "\n";
  std::cout << "G1^2 = " << gauss_sum(p).pow(2).to_string() << "\n";

  const auto labels = enumerate_oriented_lagrangians(V);
  std::cout << labels.size() << " oriented Lagrangians\n";

  const auto L = io::parse_oriented("rows=1,0|o=1", p, 2);
  const auto M = io::parse_oriented("rows=0,1|o=1", p, 2);
  const Intertwiner T = canonical_T(V, M, L, Method::closed_form);
  std::cout << "T[" << M.to_string() << " <- " << L.to_string() << "]\n";
  for (std::size_t i = 0; i < T.mat.rows(); ++i) {
    for (std::size_t j = 0; j < T.mat.cols(); ++j)
      std::cout << "  " << T.mat(i, j).to_string();
    std::cout << "\n";
  }

  const CanonicalSpace C(V);
  const SpElement w = io::parse_sp("g=0,1;2,0", V);
  const CycMatrix rho = weil_rep(C, w).mat;
  std::cout << "rho(" << w.to_string() << ")\n";
  for (std::size_t i = 0; i < rho.rows(); ++i) {
    for (std::size_t j = 0; j < rho.cols(); ++j)
      std::cout << "  " << rho(i, j).to_string();
    std::cout << "\n";
  }
  std::cout << "rho(w)^4 == 1: " << (rho * rho * rho * rho == CycMatrix::identity(p, C.dim()) ? "yes" : "no") << "\n";
  return 0;
}

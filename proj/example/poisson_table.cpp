// Poisson homology of the Sklyanin bracket with (J1, J2, J3) = (1, 2, 5).
#include <iostream>

#include "homalg/poisson.hpp"
#include "homalg/series.hpp"

int main() {
  using namespace homalg;
  const PoissonStructure ps = sklyanin_structure(1, 2, 5);
  std::cout << "Jacobi identity holds: " << jacobi_check(ps) << '\n';
  const auto cas = sklyanin_casimirs(1, 2, 5);
  std::cout << "Casimirs: " << cas[0].to_string() << ", " << cas[1].to_string() << '\n';

  const WeightTable table = poisson_homology_dims(ps, 8);
  std::cout << table.to_text() << compare(table, 8).to_text();
}

// Hochschild homology of a Sklyanin algebra, checked against its Poincaré series.
#include <iostream>

#include "homalg/hochschild.hpp"
#include "homalg/series.hpp"

int main() {
  using namespace homalg;
  const SklyaninParams p = sklyanin_params(Rational(1, 4), Rational(1, 9));
  std::cout << "alpha = " << p.to_string() << '\n';

  const KoszulComplex kc(sklyanin_relations(p), 6);
  const HHTable table = kc.homology_dims();
  std::cout << table.to_text() << compare(table, 6).to_text();

  // The weight-4 cycles spanning HH_3 and HH_4.
  std::cout << "b(Pi) = 0: " << koszul_b(kc, cycle_pi(kc)).coeffs.empty() << '\n';
  std::cout << "b(Delta) = 0: " << koszul_b(kc, cycle_delta(kc)).coeffs.empty() << '\n';
}

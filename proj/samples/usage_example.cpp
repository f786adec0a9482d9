// Builds the three-constituent SU(3) caloron from su3_three.json and prints
// its gluing data, energy and self-dual error.
#include "caloron/assembler.hpp"
#include "caloron/fieldcalc.hpp"
#include "caloron/index_engine.hpp"
#include "caloron/io.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace caloron;
  const std::string path = argc > 1 ? argv[1] : "samples/su3_three.json";
  try {
    CaloronSpec spec = load_spec(path);
    auto a = approximate_caloron(spec);
    const Assembly& as = a->assembly();
    std::cout << "type " << as.datum.type_string() << ", " << spec.constituents.size() << " constituents\n";
    std::cout << "gluing c = " << as.c << ", R = " << as.R << ", d_min = " << as.d_min << '\n';
    Integrals I = integrate_fields(*a, grid_preset("coarse"));
    std::cout << "energy " << I.energy << " (formula " << energy_formula(as.datum, spec.omega, as.counts)
              << "), |F+|^2 " << I.sd_error_sq << '\n';
    std::cout << "moduli dimension " << moduli_dimension(as.counts) << '\n';
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return 0;
}

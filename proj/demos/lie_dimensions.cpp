// Structure and conformal algebra dimensions for the simple euclidean
// Jordan algebras, with the real forms they identify.

#include <iomanip>
#include <iostream>

#include "jk/jk.hpp"

int main() {
  struct Row {
    const char* spec;
    const char* str_form;
    const char* co_form;
  };
  const Row rows[] = {
      {"gamma:3", "so(3,1) + R", "so(4,2)"},   {"gamma:5", "so(5,1) + R", "so(6,2)"},
      {"h:3:R", "sl(3,R) + R", "sp(3,R)"},     {"h:3:C", "sl(3,C) + R", "su(3,3)"},
      {"h:3:H", "su*(6) + R", "so*(12)"},      {"h:3:O", "e6(-26) + R", "e7(-25)"},
  };
  std::cout << std::left << std::setw(9) << "algebra" << std::setw(5) << "rho" << std::setw(7) << "delta"
            << std::setw(5) << "n" << std::setw(9) << "dim str" << std::setw(8) << "dim co"
            << "real forms\n";
  for (const auto& r : rows) {
    auto alg = jk::make_algebra(r.spec);
    const int ds = jk::dim_str(alg);
    std::cout << std::left << std::setw(9) << r.spec << std::setw(5) << alg->rank() << std::setw(7) << alg->degree()
              << std::setw(5) << alg->dim() << std::setw(9) << ds << std::setw(8) << 2 * alg->dim() + ds << r.str_form
              << ",  " << r.co_form << "\n";
  }
}

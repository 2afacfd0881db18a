// Bound-state spectra E_I = -1/(2(I + nu rho/2)^2) with degeneracies from
// restriction ranks. Gamma(3) at nu = 1 is the hydrogen atom.

#include <iostream>

#include "jk/jk.hpp"

int main() {
  struct Case {
    const char* algebra;
    const char* nu;
  };
  const Case cases[] = {{"gamma:3", "1"}, {"gamma:5", "d:1"}, {"h:3:R", "1/2"}, {"h:3:C", "1"}, {"h:3:R", "2"}};
  for (const auto& c : cases) {
    jk::Spectrum s = jk::spectrum(c.algebra, c.nu, 5, true, 2024);
    jk::emit(s, jk::Format::Text, std::cout);
    std::cout << "\n";
  }
}

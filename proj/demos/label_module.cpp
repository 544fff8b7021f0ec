// Cylinder measures of a Sturmian scheme and the group they span.
//   demo_label_module [golden|silver|alpha] [depth]
#include <cstdlib>
#include <iostream>
#include <string>

#include "gaplab/gaplab.hpp"

int main(int argc, char** argv) {
  using namespace gaplab;
  const std::string which = argc > 1 ? argv[1] : "golden";
  const int depth = argc > 2 ? std::atoi(argv[2]) : 5;
  long double alpha = golden_slope();
  if (which == "silver") alpha = silver_slope();
  else if (which != "golden") alpha = std::stold(which);
  try {
    const auto scheme = CutProjectScheme::sturmian(alpha);
    for (int d = 1; d <= depth; ++d) {
      std::cout << "length " << d << ":";
      for (const auto& c : occurring_cylinders(scheme, static_cast<std::size_t>(d)))
        std::cout << ' ' << c.word << '=' << format_real(c.measure);
      std::cout << '\n';
    }
    const ModuleScan scan = cylinder_label_module(scheme, depth);
    std::cout << "basis:";
    for (double b : scan.module.basis) std::cout << ' ' << format_real(b);
    std::cout << "\nstabilized at depth " << scan.stabilization_depth << (scan.stabilized ? "" : " (not yet)") << '\n';
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
}

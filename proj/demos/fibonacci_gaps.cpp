// Gaps of the Fibonacci chain and their labels m + n*alpha.
//   demo_fibonacci_gaps [lambda] [q_small q_large]
#include <cstdlib>
#include <iostream>

#include "gaplab/gaplab.hpp"

int main(int argc, char** argv) {
  using namespace gaplab;
  VerifyConfig cfg;
  if (argc > 1) cfg.system.model = OnsiteModel{std::atof(argv[1])};
  if (argc > 3) cfg.sizes = {std::strtoul(argv[2], nullptr, 10), std::strtoul(argv[3], nullptr, 10)};
  cfg.threads = resolve_threads();
  try {
    const VerificationReport r = verify_conjecture(cfg);
    print_table(std::cout, r);
    return exit_code(r.verdict);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
}

// Pell pairs from the all-ones orbit of x_n x_{n+N} = x_{n+1} x_{n+N-1} + 1.
//   sample_pell_table [N] [count]

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "qperiod/linearise.hpp"

int main(int argc, char** argv) {
  const std::size_t N = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 3;
  const std::size_t count = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 10;
  try {
    const auto w = qperiod::pell_solutions(N, count);
    std::cout << "a^2 - " << w.D << " b^2 = " << w.target << '\n';
    for (std::size_t m = 0; m < w.pairs.size(); ++m)
      std::cout << std::setw(3) << m + 1 << "  " << w.pairs[m].first << "  " << w.pairs[m].second << '\n';
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
}

// Prints the recurrence of a named period-one quiver and its first terms from ones.
//   sample_somos_terms [preset] [count]

#include <cstdlib>
#include <iostream>

#include "qperiod/presets.hpp"
#include "qperiod/recurrence.hpp"

int main(int argc, char** argv) {
  const std::string name = argc > 1 ? argv[1] : "somos5";
  const std::size_t count = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 20;
  try {
    const auto rec = qperiod::recurrence_for(qperiod::preset(name));
    std::cout << rec.render() << '\n';
    const auto run = qperiod::iterate_ones(rec, count);
    for (const auto& t : run.terms) std::cout << qperiod::to_string(t) << '\n';
    std::cout << run.integral_prefix << " of " << count << " terms are integers\n";
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
}

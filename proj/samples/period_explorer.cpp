// Walks the mutation chain of a quiver and reports when it closes up to rotation.
//   sample_period_explorer [preset]

#include <iostream>

#include "qperiod/periodicity.hpp"
#include "qperiod/presets.hpp"

int main(int argc, char** argv) {
  using namespace qperiod;
  const std::string name = argc > 1 ? argv[1] : "hirzebruch0";
  const auto b = preset(name).mutable_block();
  std::cout << name << ":\n" << b.to_string();
  auto cur = b;
  for (std::size_t m = 1; m <= 2 * b.n(); ++m) {
    cur = mutate(cur, cyclic_vertex(static_cast<std::int64_t>(m - 1), b.n()));
    const bool closes = cur == conjugate_rho(b, static_cast<std::int64_t>(m));
    std::cout << "after " << m << " mutation(s): " << (closes ? "rotation of the start" : "new matrix") << '\n';
    if (closes) break;
  }
  if (detect_period(b) == 1u) std::cout << "layers: " << decompose_period1(b).to_string() << '\n';
}

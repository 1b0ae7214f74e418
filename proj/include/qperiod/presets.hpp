#pragma once

// Named quivers.

#include <cstddef>
#include <regex>
#include <string>
#include <vector>

#include "qperiod/ice.hpp"
#include "qperiod/periodicity.hpp"
#include "qperiod/quiver.hpp"

namespace qperiod {

class UnknownPreset : public std::invalid_argument {
 public:
  explicit UnknownPreset(const std::string& name) : std::invalid_argument("unknown preset: " + name) {}
};

inline ExchangeMatrix somos4_quiver() { return period1_from_weights({1, -2, 1}); }
inline ExchangeMatrix somos5_quiver() { return period1_from_weights({1, -1, -1, 1}); }
inline ExchangeMatrix dp3_quiver() { return period2_sigma_family(SigmaFamilySpec::from({1, -1, 1, -1, 0})).b; }
inline ExchangeMatrix hirzebruch0_quiver() { return period2_four_node(2, -2, 0).b1; }

/// Registry listing; gale_robinson entries also accept any "(N,r,s)".
inline std::vector<std::string> preset_names() {
  return {"somos4",      "somos5",     "dana_scott",         "gale_robinson(6,1,2)", "gale_robinson(6,2,3)",
          "dP1",         "dP2",        "dP3",                "hirzebruch0",          "three_cycle_double",
          "somos4_ice",  "dana_scott_ice", "gale_robinson_ice(6,1,2)"};
}

inline ExchangeMatrix preset(const std::string& name) {
  if (name == "somos4" || name == "dP1") return somos4_quiver();
  if (name == "somos5" || name == "dP2") return somos5_quiver();
  if (name == "dana_scott") return dana_scott();
  if (name == "dP3") return dp3_quiver();
  if (name == "hirzebruch0") return hirzebruch0_quiver();
  if (name == "three_cycle_double") return three_cycle_double();
  if (name == "somos4_ice") return somos4_ice();
  if (name == "dana_scott_ice") return dana_scott_ice();
  static const std::regex gr(R"((gale_robinson(?:_ice)?)\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\))");
  std::smatch m;
  if (std::regex_match(name, m, gr)) {
    const auto N = std::stoul(m[2]), r = std::stoul(m[3]), s = std::stoul(m[4]);
    return m[1] == "gale_robinson" ? gale_robinson(N, r, s) : gale_robinson_ice(N, r, s);
  }
  throw UnknownPreset(name);
}

}  // namespace qperiod

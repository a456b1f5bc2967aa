#pragma once

// Shared helpers for the unit tests and the acceptance runner.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bordered/pmc.hpp"
#include "bordered/strands.hpp"

namespace testing_support {

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline std::string golden(const std::string& name) {
  return read_file(std::string(BORDERED_GOLDEN_DIR) + "/" + name);
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) out.push_back(l);
  return out;
}

/// First valid 8-point PMC containing all of `pairs`.
inline bordered::Pmc pmc_with_pairs(int num_points, const std::vector<std::pair<int, int>>& pairs) {
  for (const auto& z : bordered::Pmc::enumerate(num_points)) {
    bool ok = true;
    for (auto [a, b] : pairs) ok = ok && z.partner(a) == b;
    if (ok) return z;
  }
  throw std::runtime_error("no PMC with the requested pairs");
}

inline bordered::StrandDiagram D(const bordered::Pmc& z, const std::string& s) {
  return bordered::parse_diagram(z, s);
}

}  // namespace testing_support

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "folcalc/foliation.hpp"
#include "folcalc/io.hpp"

namespace testing {

inline std::string data(const std::string& name) { return std::string(FOLCALC_TEST_DATA) + "/" + name; }

inline folcalc::FoliationMovie fixture(const std::string& name) {
  return folcalc::parse_fol(folcalc::read_file(data(name)));
}

inline std::vector<std::string> census_lines(int k) {
  std::istringstream in(folcalc::read_file(data("census/census-k" + std::to_string(k) + ".fol")));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

inline bool has_violation(const folcalc::ValidationReport& r, const std::string& invariant) {
  for (const auto& v : r.violations) {
    if (v.invariant == invariant) return true;
  }
  return false;
}

}  // namespace testing

#include <cstdio>
#include <iostream>
#include <string>

#include "semistream/bench/criteria.hpp"

// One line per criterion; exit status 1 if any row fails. An optional
// argument writes the JSON report there.
int main(int argc, char** argv) {
  using namespace semistream::bench;
  std::vector<CriterionResult> rows;
  for (const auto& c : criteria()) {
    rows.push_back(run_criterion(c));
    std::cout << format_line(rows.back()) << std::endl;
  }
  std::size_t passed = 0;
  for (const auto& r : rows) passed += r.passed;
  std::cout << passed << "/" << rows.size() << " criteria passed" << std::endl;
  if (argc > 1) {
    std::FILE* f = std::fopen(argv[1], "w");
    if (f == nullptr) {
      std::cerr << "cannot write " << argv[1] << "\n";
      return 1;
    }
    const std::string text = to_json(rows).dump(2) + "\n";
    std::fputs(text.c_str(), f);
    std::fclose(f);
  }
  return passed == rows.size() ? 0 : 1;
}

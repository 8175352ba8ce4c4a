#ifndef IFWB_ACCEPTANCE_HPP
#define IFWB_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ifwb {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// suite: all | encodings | classifier | rules | semantics
// max_size caps the structure sweeps (default 3, encoding domains excepted);
// seed drives the generated corpora.
std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                            int max_size = 3,
                                            uint64_t seed = 1);

// Prints one line per criterion; returns the number of failures.
int report_acceptance(const std::vector<CriterionResult>& results);

}  // namespace ifwb

#endif

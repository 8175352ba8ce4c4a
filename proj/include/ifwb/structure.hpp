#ifndef IFWB_STRUCTURE_HPP
#define IFWB_STRUCTURE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ifwb/diagnostics.hpp"

namespace ifwb {

struct Relation {
  int arity = -1;  // -1 until a tuple fixes it
  std::set<std::vector<int>> tuples;
};

// Finite relational structure over domain {0, ..., domain_size-1}.
struct Structure {
  int domain_size = 0;
  std::map<std::string, Relation> relations;
  std::map<std::string, int> constants;

  bool holds(const std::string& rel, const std::vector<int>& tuple) const;
  // Throws when a tuple is out of range, arities are inconsistent, or a
  // constant falls outside the domain.
  void validate() const;

  std::set<std::string> constant_names() const;
};

Structure structure_from_json(const std::string& json_text);
std::string structure_to_json(const Structure& m, bool pretty = false);

}  // namespace ifwb

#endif

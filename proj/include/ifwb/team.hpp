#ifndef IFWB_TEAM_HPP
#define IFWB_TEAM_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ifwb/structure.hpp"

namespace ifwb {

// Rows are kept sorted and deduplicated; each row assigns vars[i] its i-th
// entry.
struct Team {
  std::vector<std::string> vars;
  std::vector<std::vector<int>> rows;

  void normalize();
  int var_index(const std::string& v) const;  // -1 when absent
  static Team singleton_empty();              // the team {[]} over no variables
};

// Total map from rows of one team to domain elements.
struct ChoiceFunction {
  std::map<std::vector<int>, int> by_row;

  int at(const std::vector<int>& row) const;
};

// X[M/v]: every row extended (or overwritten) with every domain element.
Team duplicate(const Team& x, const std::string& v, const Structure& m);

// X[F/v]: every row extended with its chosen element.
Team supplement(const Team& x, const ChoiceFunction& f, const std::string& v);

// F is V-uniform when rows agreeing outside V get the same choice.
bool is_uniform(const ChoiceFunction& f, const Team& x,
                const std::set<std::string>& v_set);

Team team_from_json(const std::string& json_text);
std::string team_to_json(const Team& t, bool pretty = false);

}  // namespace ifwb

#endif

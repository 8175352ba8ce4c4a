#ifndef IFWB_PATTERNS_HPP
#define IFWB_PATTERNS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ifwb/tree.hpp"

namespace ifwb {

struct QuantOcc {
  Locator loc;
  QKind kind;
  std::string var;
  std::set<std::string> slash;
};

struct ConnOcc {
  Locator loc;
  Conn conn;
};

// depends[i][j]: quantifier j depends on quantifier i, i.e. i is
// superordinated to j and var(i) is not in j's slash set.
struct DependenceGraph {
  std::vector<QuantOcc> quants;
  std::vector<ConnOcc> conns;
  std::vector<std::vector<bool>> depends;
};

DependenceGraph dependence_graph(const TreePtr& t);

enum class GHSubclass { GH1And, GH1Or, GH2And, GH2Or };

std::string to_string(GHSubclass s);

// Witness locator conventions:
//   signalling           [Ax, Ey, Ez]
//   henkin               [Ax, Ey, Az, Ew]
//   generalized_henkin   [Ax, Ay, Eu, Ev] (+ connective when one exists)
//   coordinated          [Ax, Ay, Az, or, Eu, Ew]
struct PatternReport {
  bool signalling = false;
  bool henkin = false;
  bool generalized_henkin = false;
  bool coordinated = false;
  bool coordinated_first = false;
  bool coordinated_second = false;
  bool modest = false;
  bool first_order = false;
  // coordinated-like pattern mediated by a conjunction; reported in
  // diagnostics only, never as a verdict
  bool and_coordinated_suspect = false;
  std::set<GHSubclass> gh_subclasses;
  std::map<std::string, std::vector<Locator>> witnesses;
};

// Exhaustive pattern search; the tree must be regular.
PatternReport detect_patterns(const TreePtr& t);

// Re-checks a reported witness against its defining predicate.
bool witness_valid(const TreePtr& t, const std::string& family,
                   const std::vector<Locator>& locs);

// Injection from base's quantifiers and connectives into ext's witnessing
// that ext extends base: kinds and connectives agree, variables map under a
// consistent renaming, subordination is preserved, and dependence holds iff
// it held in base. Pairs are (base locator, ext locator).
std::optional<std::vector<std::pair<Locator, Locator>>> find_extension(
    const TreePtr& base, const TreePtr& ext);

struct Verdict {
  enum class Kind { FO, NPComplete, Unknown };
  Kind kind = Kind::Unknown;
  std::string problem;            // NPComplete: the table's problem family
  std::string reason;
  std::vector<Locator> witness;   // NPComplete
  std::string diagnostics;        // Unknown: the open family
};

// Decision chain over the pattern flags, from the NP-complete families down
// to the proved first-order cases; anything left open is reported Unknown.
Verdict classify(const TreePtr& t);

std::string verdict_to_json(const Verdict& v, bool pretty = false);

// The named minimal trees.
TreePtr minimal_tree(const std::string& name);  // henkin1, henkin2, signalling,
                                                // gh1_and, gh2_and, gh1_or,
                                                // gh2_or, c1, c2, c3, c1p..c6p
std::vector<std::string> minimal_tree_names();

}  // namespace ifwb

#endif

#ifndef IFWB_ENCODINGS_HPP
#define IFWB_ENCODINGS_HPP

#include <set>
#include <string>
#include <vector>

#include "ifwb/formula.hpp"
#include "ifwb/structure.hpp"

namespace ifwb {

// Literals are signed 1-based variable indices.
struct CnfInstance {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

// Ground elements carry labels 1..ground_size.
struct SetSplitInstance {
  int ground_size = 0;
  std::vector<std::vector<int>> blocks;
};

struct Graph {
  int num_vertices = 0;
  std::set<std::pair<int, int>> edges;  // one orientation per edge, no loops
};

enum class Problem { SatGh2, SatC2, SetSplitting, TwoColorability };

Problem problem_from_string(const std::string& s);  // sat-gh2 | sat-c2 |
                                                    // set-splitting | 2col
const char* to_string(Problem p);

// phi_sat, theta_sat, eta_split, xi_2col: the fixed sentences, implications
// compiled to negation normal form.
FormulaPtr builtin_sentence(const std::string& name);
bool is_builtin_sentence_name(const std::string& name);
std::vector<std::string> builtin_sentence_names();

// Instance -> structure encodings. Out-of-contract instances (a clause with
// fewer than two distinct variables for sat-gh2, an empty clause for sat-c2,
// a block smaller than two) are rejected with the violated restriction named.
Structure encode_instance(Problem p, const CnfInstance& cnf);
Structure encode_instance(const SetSplitInstance& inst);
Structure encode_instance(const Graph& g);

// Independent brute-force decisions.
bool oracle_solve(Problem p, const CnfInstance& cnf);
bool oracle_solve(const SetSplitInstance& inst);
bool oracle_solve(const Graph& g);

CnfInstance parse_dimacs(const std::string& text);
SetSplitInstance parse_set_split_json(const std::string& text);
// Header "p vertices n", then one "u v" line per edge, 0-based.
Graph parse_graph_text(const std::string& text);

}  // namespace ifwb

#endif

#include "ifwb/encodings.hpp"

#include <algorithm>
#include <json.hpp>
#include <queue>
#include <sstream>

namespace ifwb {

Problem problem_from_string(const std::string& s) {
  if (s == "sat-gh2") return Problem::SatGh2;
  if (s == "sat-c2") return Problem::SatC2;
  if (s == "set-splitting") return Problem::SetSplitting;
  if (s == "2col") return Problem::TwoColorability;
  throw PreconditionError("problem", "unknown problem '" + s + "'");
}

const char* to_string(Problem p) {
  switch (p) {
    case Problem::SatGh2: return "sat-gh2";
    case Problem::SatC2: return "sat-c2";
    case Problem::SetSplitting: return "set-splitting";
    case Problem::TwoColorability: return "2col";
  }
  return "?";
}

namespace {

Term V(const std::string& n) { return tvar(n); }
Term K(const std::string& n) { return tconst(n); }

// "a occurs in b": ~C(a) & C(b) & (P(a,b) | N(a,b))
FormulaPtr occurs_letter_in_clause(const std::string& a, const std::string& b) {
  return conj(conj(negated_atom("C", {V(a)}), atom("C", {V(b)})),
              disj(atom("P", {V(a), V(b)}), atom("N", {V(a), V(b)})));
}

// flipped orientation: a is the clause, b the letter
FormulaPtr occurs_clause_letter(const std::string& a, const std::string& b) {
  return conj(conj(atom("C", {V(a)}), negated_atom("C", {V(b)})),
              disj(atom("P", {V(a), V(b)}), atom("N", {V(a), V(b)})));
}

FormulaPtr phi_sat() {
  // psi1: O(x,y) & (P(x,y) -> u=1) & (N(x,y) -> u=0)
  FormulaPtr psi1 =
      conj(conj(occurs_letter_in_clause("x", "y"),
                implies_nnf(atom("P", {V("x"), V("y")}), equal(V("u"), K("1")))),
           implies_nnf(atom("N", {V("x"), V("y")}), equal(V("u"), K("0"))));
  // psi2: O(x,y) -> (x != v & O(v,y)); the guard keeps rows whose x does not
  // occur in y from being forced to exhibit a witness
  FormulaPtr psi2 =
      implies_nnf(occurs_letter_in_clause("x", "y"),
                  conj(negated_equal(V("x"), V("v")),
                       occurs_letter_in_clause("v", "y")));
  return forall(
      "x", forall("y", disj(exists("u", {"y"}, psi1), exists("v", {"x"}, psi2))));
}

FormulaPtr theta_sat() {
  FormulaPtr chi1 =
      conj(occurs_clause_letter("x", "y"),
           conj(implies_nnf(atom("P", {V("x"), V("y")}), equal(V("u"), K("1"))),
                implies_nnf(atom("N", {V("x"), V("y")}), equal(V("u"), K("0")))));
  FormulaPtr chi2 =
      implies_nnf(conj(equal(V("z"), V("x")), occurs_clause_letter("x", "y")),
                  conj(negated_equal(V("v"), V("y")),
                       occurs_clause_letter("x", "v")));
  return forall(
      "x",
      forall("y", disj(exists("u", {"x"}, chi1),
                       forall("z", exists("v", {"x", "y"}, chi2)))));
}

FormulaPtr eta_split() {
  FormulaPtr eps1 =
      implies_nnf(conj(atom("A", {V("x")}), atom("B", {V("y")})),
                  conj(negated_equal(V("u"), V("x")), atom("Rin", {V("u"), V("y")})));
  FormulaPtr eps2 =
      implies_nnf(conj(atom("A", {V("x")}), atom("B", {V("z")})),
                  conj(negated_equal(V("v"), V("x")), atom("Rin", {V("v"), V("z")})));
  return forall("x", disj(forall("y", exists("u", {"x"}, eps1)),
                          forall("z", exists("v", {"x"}, eps2))));
}

FormulaPtr xi_2col() {
  // u != x is a standing constraint, not part of the guarded consequent: the
  // witness must avoid every vertex on its own side, which is what lets a
  // same-side edge force a contradiction
  FormulaPtr xi1 = conj(implies_nnf(atom("E", {V("x"), V("y")}),
                                    equal(V("u"), V("y"))),
                        negated_equal(V("u"), V("x")));
  FormulaPtr xi2 = conj(implies_nnf(atom("E", {V("x"), V("z")}),
                                    equal(V("v"), V("z"))),
                        negated_equal(V("v"), V("x")));
  return forall("x", disj(forall("y", exists("u", {"x"}, xi1)),
                          forall("z", exists("v", {"x", "y"}, xi2))));
}

void check_cnf(const CnfInstance& cnf, bool need_two_distinct) {
  if (cnf.num_vars <= 0)
    throw PreconditionError("cnf instance", "no propositional variables");
  for (const auto& clause : cnf.clauses) {
    std::set<int> distinct, lits;
    for (int lit : clause) {
      int var = std::abs(lit);
      if (lit == 0 || var > cnf.num_vars)
        throw PreconditionError("cnf instance", "literal out of range");
      distinct.insert(var);
      // a letter occurring with both polarities would sit in P and N at
      // once, forcing u=1 and u=0 on the same row of the encoding
      if (lits.count(-lit))
        throw PreconditionError(
            "clause restriction (no complementary pair of literals)",
            "a clause contains a letter with both polarities");
      lits.insert(lit);
    }
    if (clause.empty())
      throw PreconditionError(
          "clause restriction (each clause contains at least one literal)",
          "empty clause");
    if (need_two_distinct && distinct.size() < 2)
      throw PreconditionError(
          "clause restriction (at least two distinct letters per clause)",
          "a clause mentions fewer than two variables");
  }
}

}  // namespace

FormulaPtr builtin_sentence(const std::string& name) {
  if (name == "phi_sat") return phi_sat();
  if (name == "theta_sat") return theta_sat();
  if (name == "eta_split") return eta_split();
  if (name == "xi_2col") return xi_2col();
  throw PreconditionError("builtin sentence", "unknown name '" + name + "'");
}

bool is_builtin_sentence_name(const std::string& name) {
  return name == "phi_sat" || name == "theta_sat" || name == "eta_split" ||
         name == "xi_2col";
}

std::vector<std::string> builtin_sentence_names() {
  return {"phi_sat", "theta_sat", "eta_split", "xi_2col"};
}

Structure encode_instance(Problem p, const CnfInstance& cnf) {
  if (p != Problem::SatGh2 && p != Problem::SatC2)
    throw PreconditionError("encode", "CNF instance for a non-SAT problem");
  check_cnf(cnf, p == Problem::SatGh2);
  const int k = cnf.num_vars;
  const int m = static_cast<int>(cnf.clauses.size());
  Structure s;
  s.domain_size = k + m + 2;
  Relation P{2, {}}, N{2, {}}, C{1, {}};
  for (int c = 0; c < m; c++) {
    C.tuples.insert({k + c});
    for (int lit : cnf.clauses[c]) {
      int letter = std::abs(lit) - 1;
      std::vector<int> pair = p == Problem::SatGh2
                                  ? std::vector<int>{letter, k + c}
                                  : std::vector<int>{k + c, letter};
      (lit > 0 ? P : N).tuples.insert(std::move(pair));
    }
  }
  s.relations["P"] = std::move(P);
  s.relations["N"] = std::move(N);
  s.relations["C"] = std::move(C);
  s.constants["0"] = k + m;      // two fresh elements, never letters or clauses
  s.constants["1"] = k + m + 1;
  s.validate();
  return s;
}

Structure encode_instance(const SetSplitInstance& inst) {
  if (inst.ground_size <= 0)
    throw PreconditionError("set-splitting instance", "empty ground set");
  Structure s;
  const int k = inst.ground_size;
  s.domain_size = k + static_cast<int>(inst.blocks.size());
  Relation A{1, {}}, B{1, {}}, Rin{2, {}};
  for (int a = 0; a < k; a++) A.tuples.insert({a});
  for (size_t b = 0; b < inst.blocks.size(); b++) {
    std::set<int> members(inst.blocks[b].begin(), inst.blocks[b].end());
    if (members.size() < 2)
      throw PreconditionError(
          "block restriction (every block has cardinality at least two)",
          "block " + std::to_string(b) + " is too small");
    int be = k + static_cast<int>(b);
    B.tuples.insert({be});
    for (int label : members) {
      if (label < 1 || label > k)
        throw PreconditionError("set-splitting instance",
                                "block member outside the ground set");
      Rin.tuples.insert({label - 1, be});
    }
  }
  s.relations["A"] = std::move(A);
  s.relations["B"] = std::move(B);
  s.relations["Rin"] = std::move(Rin);
  s.validate();
  return s;
}

Structure encode_instance(const Graph& g) {
  if (g.num_vertices <= 0)
    throw PreconditionError("graph instance", "no vertices");
  Structure s;
  s.domain_size = g.num_vertices;
  Relation E{2, {}};
  for (const auto& [u, w] : g.edges) {
    if (u == w) throw PreconditionError("graph instance", "self-loop");
    if (u < 0 || w < 0 || u >= g.num_vertices || w >= g.num_vertices)
      throw PreconditionError("graph instance", "edge endpoint out of range");
    E.tuples.insert({u, w});
    E.tuples.insert({w, u});
  }
  s.relations["E"] = std::move(E);
  s.validate();
  return s;
}

bool oracle_solve(Problem p, const CnfInstance& cnf) {
  check_cnf(cnf, p == Problem::SatGh2);
  const int k = cnf.num_vars;
  for (unsigned long long mask = 0; mask < (1ull << k); mask++) {
    bool all = true;
    for (const auto& clause : cnf.clauses) {
      bool sat = false;
      for (int lit : clause) {
        bool val = (mask >> (std::abs(lit) - 1)) & 1;
        if ((lit > 0) == val) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool oracle_solve(const SetSplitInstance& inst) {
  const int k = inst.ground_size;
  for (unsigned long long mask = 0; mask < (1ull << k); mask++) {
    bool ok = true;
    for (const auto& block : inst.blocks) {
      bool in_u = false, in_v = false;
      for (int label : block) {
        if ((mask >> (label - 1)) & 1)
          in_u = true;
        else
          in_v = true;
      }
      if (!in_u || !in_v) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool oracle_solve(const Graph& g) {
  std::vector<std::vector<int>> adj(g.num_vertices);
  for (const auto& [u, w] : g.edges) {
    adj[u].push_back(w);
    adj[w].push_back(u);
  }
  std::vector<int> color(g.num_vertices, -1);
  for (int s = 0; s < g.num_vertices; s++) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u]) {
        if (color[w] < 0) {
          color[w] = 1 - color[u];
          q.push(w);
        } else if (color[w] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

CnfInstance parse_dimacs(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  CnfInstance cnf;
  bool header = false;
  std::vector<int> current;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      int m;
      if (!(ls >> p >> fmt >> cnf.num_vars >> m) || fmt != "cnf")
        throw ParseError("bad DIMACS header", 0, 0);
      header = true;
      continue;
    }
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        cnf.clauses.push_back(current);
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
  }
  if (!current.empty()) cnf.clauses.push_back(current);
  if (!header) throw ParseError("missing DIMACS 'p cnf' header", 0, 0);
  return cnf;
}

SetSplitInstance parse_set_split_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad set-splitting JSON: ") + e.what(), 0, 0);
  }
  SetSplitInstance inst;
  if (!j.contains("A") || !j["A"].is_number_integer())
    throw ParseError("set-splitting JSON needs integer \"A\"", 0, 0);
  inst.ground_size = j["A"].get<int>();
  if (j.contains("blocks"))
    for (auto& b : j["blocks"]) inst.blocks.push_back(b.get<std::vector<int>>());
  return inst;
}

Graph parse_graph_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Graph g;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, kw;
      if (!(ls >> p >> kw >> g.num_vertices) || kw != "vertices")
        throw ParseError("bad graph header; expected 'p vertices n'", 0, 0);
      header = true;
      continue;
    }
    int u, w;
    if (!(ls >> u >> w)) throw ParseError("bad edge line: " + line, 0, 0);
    g.edges.insert({std::min(u, w), std::max(u, w)});
  }
  if (!header) throw ParseError("missing 'p vertices n' header", 0, 0);
  return g;
}

}  // namespace ifwb

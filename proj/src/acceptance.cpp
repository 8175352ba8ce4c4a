#include "ifwb/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "ifwb/encodings.hpp"
#include "ifwb/harness.hpp"
#include "ifwb/patterns.hpp"
#include "ifwb/semantics.hpp"
#include "ifwb/skolem.hpp"

namespace ifwb {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool pass = true;
  long long cases = 0;
  std::string detail;

  void fail(const std::string& msg) {
    if (pass) {
      pass = false;
      detail = msg;
    }
  }
};

// ---- criterion 1 & 2: SAT agreement -------------------------------------

// clause types over two variables: literal sets naming both variables and
// holding no complementary pair, covering every sign pattern (+-p | +-q)
std::vector<std::vector<int>> two_var_clause_types() {
  static const int lits[4] = {1, -1, 2, -2};
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < 16; mask++) {
    bool v1 = (mask & 1) || (mask & 2);
    bool v2 = (mask & 4) || (mask & 8);
    bool complementary = ((mask & 3) == 3) || ((mask & 12) == 12);
    if (!v1 || !v2 || complementary) continue;
    std::vector<int> clause;
    for (int b = 0; b < 4; b++)
      if (mask & (1 << b)) clause.push_back(lits[b]);
    out.push_back(std::move(clause));
  }
  return out;
}

Check criterion_sat_phi() {
  Check c;
  FormulaPtr phi = builtin_sentence("phi_sat");
  auto types = two_var_clause_types();  // 9 types
  std::vector<CnfInstance> instances;
  for (const auto& t : types) instances.push_back({2, {t}});
  for (size_t i = 0; i < types.size(); i++)
    for (size_t j = i; j < types.size(); j++)
      instances.push_back({2, {types[i], types[j]}});
  for (const auto& inst : instances) {
    Structure m = encode_instance(Problem::SatGh2, inst);
    bool expect = oracle_solve(Problem::SatGh2, inst);
    bool got = truth_by_skolem(m, phi);
    c.cases++;
    if (expect != got) {
      std::ostringstream os;
      os << "phi disagrees with the SAT oracle (oracle=" << expect
         << ") on clauses";
      for (const auto& cl : inst.clauses) {
        os << " [";
        for (int l : cl) os << l << " ";
        os << "]";
      }
      c.fail(os.str());
    }
  }
  return c;
}

Check criterion_sat_theta() {
  Check c;
  FormulaPtr theta = builtin_sentence("theta_sat");
  std::vector<CnfInstance> instances;
  // one variable, one clause
  instances.push_back({1, {{1}}});
  instances.push_back({1, {{-1}}});
  // two variables, one clause: nonempty literal sets without a
  // complementary pair
  std::vector<std::vector<int>> types;
  static const int lits[4] = {1, -1, 2, -2};
  for (int mask = 1; mask < 16; mask++) {
    if (((mask & 3) == 3) || ((mask & 12) == 12)) continue;
    std::vector<int> clause;
    for (int b = 0; b < 4; b++)
      if (mask & (1 << b)) clause.push_back(lits[b]);
    types.push_back(clause);
    instances.push_back({2, {clause}});
  }
  // two variables, two clauses
  for (size_t i = 0; i < types.size(); i++)
    for (size_t j = i; j < types.size(); j++)
      instances.push_back({2, {types[i], types[j]}});
  for (const auto& inst : instances) {
    Structure m = encode_instance(Problem::SatC2, inst);
    bool expect = oracle_solve(Problem::SatC2, inst);
    bool got = truth_by_skolem(m, theta);
    c.cases++;
    if (expect != got) {
      std::ostringstream os;
      os << "theta disagrees with the SAT oracle (oracle=" << expect
         << ") on clauses";
      for (const auto& cl : inst.clauses) {
        os << " [";
        for (int l : cl) os << l << " ";
        os << "]";
      }
      c.fail(os.str());
    }
  }
  return c;
}

Check criterion_set_splitting() {
  Check c;
  FormulaPtr eta = builtin_sentence("eta_split");
  std::vector<SetSplitInstance> instances;
  for (int k = 1; k <= 3; k++) {
    std::vector<std::vector<int>> candidates;
    for (int mask = 0; mask < (1 << k); mask++) {
      std::vector<int> block;
      for (int b = 0; b < k; b++)
        if (mask & (1 << b)) block.push_back(b + 1);
      if (block.size() >= 2) candidates.push_back(block);
    }
    const int nc = static_cast<int>(candidates.size());
    for (int fam = 0; fam < (1 << nc); fam++) {
      SetSplitInstance inst;
      inst.ground_size = k;
      for (int b = 0; b < nc; b++)
        if (fam & (1 << b)) inst.blocks.push_back(candidates[b]);
      if (inst.blocks.size() <= 3) instances.push_back(std::move(inst));
    }
  }
  for (const auto& inst : instances) {
    Structure m = encode_instance(inst);
    bool expect = oracle_solve(inst);
    bool got = truth_by_skolem(m, eta);
    c.cases++;
    if (expect != got) {
      std::ostringstream os;
      os << "eta disagrees with the splitting oracle (oracle=" << expect
         << ") on |A|=" << inst.ground_size << " with " << inst.blocks.size()
         << " blocks";
      c.fail(os.str());
    }
  }
  return c;
}

Check criterion_two_col() {
  Check c;
  FormulaPtr xi = builtin_sentence("xi_2col");
  struct Named {
    const char* name;
    int n;
    std::vector<std::pair<int, int>> edges;
    bool colorable;  // frozen expectation, re-derived by the oracle
  };
  // the eleven isomorphism classes on four vertices, plus the two smaller
  // graphs named in the contract
  std::vector<Named> graphs = {
      {"empty4", 4, {}, true},
      {"one-edge", 4, {{0, 1}}, true},
      {"path3", 4, {{0, 1}, {1, 2}}, true},
      {"two-edges", 4, {{0, 1}, {2, 3}}, true},
      {"path4", 4, {{0, 1}, {1, 2}, {2, 3}}, true},
      {"star", 4, {{0, 1}, {0, 2}, {0, 3}}, true},
      {"triangle+iso", 4, {{0, 1}, {1, 2}, {0, 2}}, false},
      {"cycle4", 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, true},
      {"paw", 4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}, false},
      {"diamond", 4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 3}}, false},
      {"k4", 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, false},
      {"triangle", 3, {{0, 1}, {1, 2}, {0, 2}}, false},
      {"edge", 2, {{0, 1}}, true},
  };
  for (const auto& g : graphs) {
    Graph graph;
    graph.num_vertices = g.n;
    for (auto [u, w] : g.edges) graph.edges.insert({u, w});
    bool oracle = oracle_solve(graph);
    if (oracle != g.colorable) {
      c.fail(std::string("oracle differs from the frozen expectation on ") +
             g.name);
      return c;
    }
    Structure m = encode_instance(graph);
    bool got = truth_by_skolem(m, xi);
    c.cases++;
    if (got != oracle)
      c.fail(std::string("xi disagrees with the 2-coloring oracle on ") + g.name);
  }
  return c;
}

Check criterion_classifier_table() {
  Check c;
  struct Row {
    const char* tree;
    Verdict::Kind kind;
    const char* problem;  // empty for FO
  };
  const std::vector<Row> rows = {
      {"henkin1", Verdict::Kind::NPComplete, "3-COLORING"},
      {"henkin2", Verdict::Kind::NPComplete, "3-COLORING"},
      {"signalling", Verdict::Kind::NPComplete, "EXACT COVER BY 3-SETS"},
      {"gh1_and", Verdict::Kind::FO, ""},
      {"gh2_and", Verdict::Kind::FO, ""},
      {"gh1_or", Verdict::Kind::FO, ""},
      {"gh2_or", Verdict::Kind::NPComplete, "SAT"},
      {"c1", Verdict::Kind::NPComplete, "SET SPLITTING"},
      {"c2", Verdict::Kind::NPComplete, "SAT"},
      {"c3", Verdict::Kind::NPComplete, "SAT"},
      {"c1p", Verdict::Kind::FO, ""},
      {"c2p", Verdict::Kind::FO, ""},
      {"c3p", Verdict::Kind::FO, ""},
      {"c4p", Verdict::Kind::FO, ""},
      {"c5p", Verdict::Kind::FO, ""},
      {"c6p", Verdict::Kind::FO, ""},
  };
  for (const auto& row : rows) {
    Verdict v = classify(minimal_tree(row.tree));
    c.cases++;
    if (v.kind != row.kind || (v.kind == Verdict::Kind::NPComplete &&
                               v.problem != row.problem)) {
      c.fail(std::string(row.tree) + ": expected " +
             (row.kind == Verdict::Kind::FO ? "FO" : row.problem) + ", got " +
             verdict_to_json(v));
    }
  }
  // a modest exemplar rounds off the table's final row
  Verdict v = classify(parse_tree("A x E y []"));
  c.cases++;
  if (v.kind != Verdict::Kind::FO || v.reason != "modest")
    c.fail("modest exemplar not classified FO(modest)");
  return c;
}

Check criterion_rewrite_soundness(int max_n, uint64_t seed) {
  Check c;
  SignatureSpec sig{{{"R", 2}}, {}};
  auto corpus = tree_corpus(seed, 22, 4);
  for (RuleId rule :
       {RuleId::Rename, RuleId::ExtractWeak, RuleId::ExtractStrong,
        RuleId::Distribute, RuleId::Swap, RuleId::DropExSlash}) {
    std::vector<std::pair<TreePtr, Locator>> sites;
    for (const auto& t : corpus)
      for (const auto& [loc, params] : applicable_sites(t, rule))
        sites.emplace_back(t, loc);
    SoundnessReport rep =
        check_rule_soundness(rule, sites, 3, sig, max_n, seed);
    c.cases += rep.comparisons;
    if (!rep.ok) c.fail(rep.detail);
  }
  return c;
}

Check criterion_bridge(int max_n, uint64_t seed) {
  Check c;
  SignatureSpec sig{{{"R", 2}}, {"c0", "c1"}};
  auto corpus = tree_corpus(seed, 25, 4);
  std::vector<FormulaPtr> sentences;
  for (const auto& t : corpus) {
    auto completions = weak_nice_completions(t, sig, seed + gap_count(t), 2);
    for (const auto& e : completions) sentences.push_back(complete(t, e));
    if (sentences.size() >= 50) break;
  }
  Team start = Team::singleton_empty();
  for (int n = 1; n <= max_n; n++) {
    StructureEnumerator en(sig, n);
    for (long long i = 0; i < en.count(); i++) {
      Structure m = en.at(i);
      for (const auto& f : sentences) {
        bool teams_true = satisfies(m, start, f);
        bool skolem_true = truth_by_skolem(m, f);
        c.cases++;
        if (teams_true != skolem_true) {
          c.fail("engines disagree (teams=" + std::to_string(teams_true) +
                 ") on " + render_formula(f) + " over " + structure_to_json(m));
          return c;
        }
      }
    }
  }
  return c;
}

// small random formulas over one binary relation and variables {x, y}
FormulaPtr random_formula(std::mt19937_64& rng) {
  auto term = [&]() { return tvar(rng() % 2 == 0 ? "x" : "y"); };
  auto literal = [&]() -> FormulaPtr {
    switch (rng() % 4) {
      case 0: return atom("R", {term(), term()});
      case 1: return negated_atom("R", {term(), term()});
      case 2: return equal(term(), term());
      default: return negated_equal(term(), term());
    }
  };
  auto quantified = [&](FormulaPtr body, const std::string& var) -> FormulaPtr {
    std::vector<std::string> slash;
    if (rng() % 3 == 0) slash.push_back(rng() % 2 == 0 ? "x" : "y");
    return quant(rng() % 2 == 0 ? QKind::Forall : QKind::Exists, var, slash,
                 body);
  };
  FormulaPtr inner = literal();
  if (rng() % 2 == 0) {
    FormulaPtr z_lit = rng() % 2 == 0
                           ? atom("R", {term(), tvar("z")})
                           : static_cast<FormulaPtr>(equal(term(), tvar("z")));
    inner = rng() % 2 == 0 ? conj(inner, quantified(z_lit, "z"))
                           : disj(inner, quantified(z_lit, "z"));
  } else if (rng() % 2 == 0) {
    inner = rng() % 2 == 0 ? conj(inner, literal()) : disj(inner, literal());
  }
  return inner;
}

Check criterion_semantics_properties(int max_n, uint64_t seed) {
  Check c;
  std::mt19937_64 rng(seed * 0x100000001b3ull + 14695981039346656037ull);
  for (int trial = 0; trial < 1000; trial++) {
    int n = 1 + static_cast<int>(rng() % max_n);
    SignatureSpec sig{{{"R", 2}}, {}};
    StructureEnumerator en(sig, n);
    Structure m = en.at(static_cast<long long>(rng() % en.count()));
    FormulaPtr f = random_formula(rng);

    Team x;
    x.vars = {"x", "y"};
    int rows = static_cast<int>(rng() % 5);  // up to 4
    for (int r = 0; r < rows; r++)
      x.rows.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n)});
    x.normalize();

    Team empty;
    empty.vars = {"x", "y"};
    c.cases++;
    if (!satisfies(m, empty, f) || !neg_satisfies(m, empty, f)) {
      c.fail("empty team fails " + render_formula(f));
      return c;
    }

    if (satisfies(m, x, f)) {
      const size_t k = x.rows.size();
      for (unsigned long long mask = 0; mask < (1ull << k); mask++) {
        Team y;
        y.vars = x.vars;
        for (size_t i = 0; i < k; i++)
          if ((mask >> i) & 1) y.rows.push_back(x.rows[i]);
        if (!satisfies(m, y, f)) {
          c.fail("downward closure fails on " + render_formula(f) + " over " +
                 structure_to_json(m));
          return c;
        }
      }
    }
  }
  return c;
}

Check criterion_prenex(int max_n, uint64_t seed) {
  Check c;
  SignatureSpec sig{{{"R", 2}}, {}};
  auto corpus = tree_corpus(seed, 22, 4);
  for (const auto& t : corpus) {
    auto [pt, steps] = prenex(t);
    c.cases++;

    // connective-free quantifier prefix shape
    struct {
      bool ok = true;
      void operator()(const TreePtr& t, bool below_conn) {
        switch (t->kind) {
          case TKind::Gap:
            return;
          case TKind::Quant:
            if (below_conn) ok = false;
            (*this)(t->child, below_conn);
            return;
          case TKind::Conn:
            (*this)(t->left, true);
            (*this)(t->right, true);
            return;
        }
      }
    } shape;
    shape(pt, false);
    if (!shape.ok) {
      c.fail("prenex output is not quantifier-prefixed: " + render_tree(pt));
      return c;
    }
    if (!tree_regularity(pt).regular) {
      c.fail("prenex output irregular: " + render_tree(pt));
      return c;
    }
    if (gap_count(pt) != gap_count(t)) {
      c.fail("prenex changed the gap count on " + render_tree(t));
      return c;
    }

    auto completions = weak_nice_completions(t, sig, seed + 7, 1);
    Completion moved = completions[0];
    for (const auto& step : steps) moved = transport_completion(step, moved);
    FormulaPtr before = complete(t, completions[0]);
    FormulaPtr after = complete(pt, moved);
    for (int n = 1; n <= max_n; n++) {
      StructureEnumerator en(sig, n);
      for (long long i = 0; i < en.count(); i++) {
        Structure m = en.at(i);
        bool a = truth_value(m, before) == Truth::True;
        bool b = truth_value(m, after) == Truth::True;
        c.cases++;
        if (a != b) {
          c.fail("prenex changed truth on " + render_tree(t) + " over " +
                 structure_to_json(m));
          return c;
        }
      }
    }
  }
  return c;
}

template <typename Fn>
CriterionResult run_one(int id, const std::string& name, Fn fn) {
  auto start = Clock::now();
  CriterionResult r;
  r.id = id;
  r.name = name;
  try {
    Check c = fn();
    r.pass = c.pass;
    r.detail = c.pass ? std::to_string(c.cases) + " cases" : c.detail;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                            int max_size, uint64_t seed) {
  std::vector<CriterionResult> out;
  bool all = suite == "all";
  if (all || suite == "encodings") {
    out.push_back(run_one(1, "SAT/phi agreement (GH2-or encoding)",
                          criterion_sat_phi));
    out.push_back(run_one(2, "SAT/theta agreement (C2 encoding)",
                          criterion_sat_theta));
    out.push_back(run_one(3, "SET SPLITTING/eta agreement (C1 encoding)",
                          criterion_set_splitting));
    out.push_back(run_one(4, "2-COLORABILITY/xi agreement", criterion_two_col));
  }
  if (all || suite == "classifier") {
    out.push_back(run_one(5, "classifier conformance to the summary table",
                          criterion_classifier_table));
  }
  if (all || suite == "rules") {
    out.push_back(run_one(6, "rewrite rule soundness", [&]() {
      return criterion_rewrite_soundness(max_size, seed);
    }));
  }
  if (all || suite == "semantics") {
    out.push_back(run_one(7, "teams/Skolem evaluator bridge", [&]() {
      return criterion_bridge(max_size, seed);
    }));
    out.push_back(run_one(8, "downward closure and empty-team properties",
                             [&]() {
                               return criterion_semantics_properties(max_size,
                                                                     seed);
                             }));
  }
  if (all || suite == "rules") {
    out.push_back(run_one(9, "prenex contract", [&]() {
      return criterion_prenex(max_size, seed);
    }));
  }
  return out;
}

int report_acceptance(const std::vector<CriterionResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    std::printf("criterion %d [%s]: %s (%s, %.1fs)\n", r.id, r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.detail.c_str(), r.seconds);
    if (!r.pass) failures++;
  }
  return failures;
}

}  // namespace ifwb

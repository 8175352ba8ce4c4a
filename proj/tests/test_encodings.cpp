#include <doctest.h>

#include "ifwb/encodings.hpp"
#include "ifwb/patterns.hpp"
#include "ifwb/semantics.hpp"
#include "ifwb/skolem.hpp"

using namespace ifwb;

TEST_CASE("builtin sentences parse as sentences over their signatures") {
  for (const auto& name : builtin_sentence_names()) {
    FormulaPtr f = builtin_sentence(name);
    CHECK(is_negation_normal(f));
    CHECK(free_vars(prune_unscoped_slashes(f)).empty());
    CHECK(regularity(prune_unscoped_slashes(f)).regular);
  }
  // xi slashes v by a variable bound only in the parallel branch; under the
  // literal recursion that occurrence is free, and pruning removes it
  FormulaPtr xi = builtin_sentence("xi_2col");
  CHECK(free_vars(xi) == std::set<std::string>{"y"});
  CHECK_THROWS_AS(builtin_sentence("nope"), PreconditionError);
}

TEST_CASE("builtin prefix trees are the named minimal trees") {
  CHECK(tree_iso(prefix_tree(builtin_sentence("phi_sat")), minimal_tree("gh2_or")));
  CHECK(tree_iso(prefix_tree(builtin_sentence("theta_sat")), minimal_tree("c2")));
  CHECK(tree_iso(prefix_tree(builtin_sentence("eta_split")), minimal_tree("c1")));

  // xi's tree keeps the parallel-branch slash on v
  TreePtr xi = prefix_tree(builtin_sentence("xi_2col"));
  CHECK(tree_iso(xi, parse_tree("A x ((A y (E u/{x}) []) | A z (E v/{x,y}) [])")));

  // and the classifier reports the matching problem families
  CHECK(classify(prefix_tree(builtin_sentence("phi_sat"))).problem == "SAT");
  CHECK(classify(prefix_tree(builtin_sentence("theta_sat"))).problem == "SAT");
  CHECK(classify(prefix_tree(builtin_sentence("eta_split"))).problem ==
        "SET SPLITTING");
}

TEST_CASE("encode: sat structure layout") {
  CnfInstance inst{2, {{1, 2}}};
  Structure m = encode_instance(Problem::SatGh2, inst);
  CHECK(m.domain_size == 5);  // p, q, one clause, two constant elements
  CHECK(m.relations.at("P").tuples ==
        std::set<std::vector<int>>{{0, 2}, {1, 2}});
  CHECK(m.relations.at("N").tuples.empty());
  CHECK(m.relations.at("C").tuples == std::set<std::vector<int>>{{2}});
  CHECK(m.constants.at("0") == 3);
  CHECK(m.constants.at("1") == 4);
  CHECK(m.constants.at("0") != m.constants.at("1"));

  // theta's orientation is flipped
  Structure mc2 = encode_instance(Problem::SatC2, inst);
  CHECK(mc2.relations.at("P").tuples ==
        std::set<std::vector<int>>{{2, 0}, {2, 1}});

  // the GH2(or) encoding refuses single-letter clauses
  CnfInstance narrow{2, {{1}}};
  CHECK_THROWS_AS(encode_instance(Problem::SatGh2, narrow), PreconditionError);
  CHECK_NOTHROW(encode_instance(Problem::SatC2, narrow));
  CnfInstance empty_clause{1, {{}}};
  CHECK_THROWS_AS(encode_instance(Problem::SatC2, empty_clause),
                  PreconditionError);
  // and both refuse a letter occurring with both polarities in one clause
  CnfInstance tautological{2, {{1, -1, 2}}};
  CHECK_THROWS_AS(encode_instance(Problem::SatGh2, tautological),
                  PreconditionError);
  CHECK_THROWS_AS(encode_instance(Problem::SatC2, tautological),
                  PreconditionError);
}

TEST_CASE("encode: set splitting and graphs") {
  SetSplitInstance inst{2, {{1, 2}}};
  Structure m = encode_instance(inst);
  CHECK(m.domain_size == 3);
  CHECK(m.relations.at("A").tuples == std::set<std::vector<int>>{{0}, {1}});
  CHECK(m.relations.at("B").tuples == std::set<std::vector<int>>{{2}});
  CHECK(m.relations.at("Rin").tuples ==
        std::set<std::vector<int>>{{0, 2}, {1, 2}});

  SetSplitInstance small{2, {{1}}};
  CHECK_THROWS_AS(encode_instance(small), PreconditionError);

  Graph tri;
  tri.num_vertices = 3;
  tri.edges = {{0, 1}, {1, 2}, {0, 2}};
  Structure mt = encode_instance(tri);
  CHECK(mt.domain_size == 3);
  CHECK(mt.relations.at("E").tuples.size() == 6);  // symmetric closure

  Graph loop;
  loop.num_vertices = 1;
  loop.edges = {{0, 0}};
  CHECK_THROWS_AS(encode_instance(loop), PreconditionError);
}

TEST_CASE("oracles") {
  CHECK(oracle_solve(Problem::SatGh2, {2, {{1, 2}, {-1, -2}}}));
  CHECK_FALSE(
      oracle_solve(Problem::SatGh2, {2, {{1, 2}, {1, -2}, {-1, 2}, {-1, -2}}}));

  SetSplitInstance triangle{3, {{1, 2}, {1, 3}, {2, 3}}};
  CHECK_FALSE(oracle_solve(triangle));
  SetSplitInstance pair{3, {{1, 2}, {2, 3}}};
  CHECK(oracle_solve(pair));
  SetSplitInstance none{2, {}};
  CHECK(oracle_solve(none));

  Graph tri;
  tri.num_vertices = 3;
  tri.edges = {{0, 1}, {1, 2}, {0, 2}};
  CHECK_FALSE(oracle_solve(tri));
  Graph edge;
  edge.num_vertices = 2;
  edge.edges = {{0, 1}};
  CHECK(oracle_solve(edge));
}

TEST_CASE("input formats") {
  CnfInstance cnf = parse_dimacs("c a comment\np cnf 2 2\n1 2 0\n-1 -2 0\n");
  CHECK(cnf.num_vars == 2);
  REQUIRE(cnf.clauses.size() == 2);
  CHECK(cnf.clauses[0] == std::vector<int>{1, 2});
  CHECK(cnf.clauses[1] == std::vector<int>{-1, -2});
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);

  SetSplitInstance ss = parse_set_split_json(R"({"A": 3, "blocks": [[1,2],[2,3]]})");
  CHECK(ss.ground_size == 3);
  CHECK(ss.blocks.size() == 2);

  Graph g = parse_graph_text("p vertices 3\n0 1\n1 2\n");
  CHECK(g.num_vertices == 3);
  CHECK(g.edges.size() == 2);
  CHECK_THROWS_AS(parse_graph_text("0 1\n"), ParseError);
}

TEST_CASE("phi matches the oracle on a tiny instance") {
  CnfInstance inst{2, {{1, 2}}};
  Structure m = encode_instance(Problem::SatGh2, inst);
  FormulaPtr phi = builtin_sentence("phi_sat");
  CHECK(oracle_solve(Problem::SatGh2, inst));
  CHECK(truth_by_skolem(m, phi));
}

TEST_CASE("phi and theta match the oracle on three-variable instances") {
  FormulaPtr phi = builtin_sentence("phi_sat");
  FormulaPtr theta = builtin_sentence("theta_sat");
  // chained implications, an odd cycle, and a forced contradiction
  std::vector<CnfInstance> instances = {
      {3, {{1, 2}, {-2, 3}, {-3, -1}}},
      {3, {{1, 2}, {-1, 3}, {-2, -3}}},
      {3, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}}},
      {3, {{1, 2, 3}, {-1, -2, -3}}},
      {3, {{1, 2, 3}, {-1, 2}, {-2, 3}, {-3, 1}, {-1, -2, -3}}},
  };
  for (const auto& inst : instances) {
    bool expect = oracle_solve(Problem::SatGh2, inst);
    CAPTURE(inst.clauses.size());
    CHECK(truth_by_skolem(encode_instance(Problem::SatGh2, inst), phi) == expect);
    CHECK(truth_by_skolem(encode_instance(Problem::SatC2, inst), theta) == expect);
  }
  // single-letter clauses reach theta only
  CnfInstance units{3, {{1}, {-1, 2}, {-2, 3}, {-3}}};
  CHECK(truth_by_skolem(encode_instance(Problem::SatC2, units), theta) ==
        oracle_solve(Problem::SatC2, units));
  CnfInstance forced{2, {{1}, {-1}}};
  CHECK_FALSE(oracle_solve(Problem::SatC2, forced));
  CHECK_FALSE(truth_by_skolem(encode_instance(Problem::SatC2, forced), theta));
}

TEST_CASE("eta and xi match their oracles beyond the acceptance bounds") {
  FormulaPtr eta = builtin_sentence("eta_split");
  std::vector<SetSplitInstance> instances = {
      {4, {{1, 2}, {3, 4}, {1, 3}, {2, 4}}},
      {4, {{1, 2, 3}, {2, 3, 4}, {1, 4}}},
      {4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}}},
  };
  for (const auto& inst : instances) {
    CAPTURE(inst.blocks.size());
    CHECK(truth_by_skolem(encode_instance(inst), eta) == oracle_solve(inst));
  }

  FormulaPtr xi = builtin_sentence("xi_2col");
  Graph c5;  // odd cycle on five vertices
  c5.num_vertices = 5;
  c5.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
  CHECK_FALSE(oracle_solve(c5));
  CHECK_FALSE(truth_by_skolem(encode_instance(c5), xi));
  Graph p5;
  p5.num_vertices = 5;
  p5.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  CHECK(oracle_solve(p5));
  CHECK(truth_by_skolem(encode_instance(p5), xi));
  Graph k23;  // complete bipartite 2x3
  k23.num_vertices = 5;
  k23.edges = {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}};
  CHECK(oracle_solve(k23));
  CHECK(truth_by_skolem(encode_instance(k23), xi));
}

TEST_CASE("eta and xi agree with the team engine on the smallest instances") {
  FormulaPtr eta = builtin_sentence("eta_split");
  SetSplitInstance yes{2, {{1, 2}}};
  Structure my = encode_instance(yes);
  CHECK(oracle_solve(yes));
  CHECK((truth_value(my, eta) == Truth::True) == oracle_solve(yes));
  CHECK(truth_by_skolem(my, eta) == oracle_solve(yes));

  SetSplitInstance triangle{3, {{1, 2}, {1, 3}, {2, 3}}};
  Structure mt = encode_instance(triangle);
  CHECK_FALSE(oracle_solve(triangle));
  CHECK((truth_value(mt, eta) == Truth::True) == oracle_solve(triangle));

  FormulaPtr xi = builtin_sentence("xi_2col");
  Graph tri;
  tri.num_vertices = 3;
  tri.edges = {{0, 1}, {1, 2}, {0, 2}};
  Structure mtri = encode_instance(tri);
  CHECK(truth_value(mtri, xi) != Truth::True);
  CHECK_FALSE(truth_by_skolem(mtri, xi));

  Graph edge;
  edge.num_vertices = 2;
  edge.edges = {{0, 1}};
  Structure medge = encode_instance(edge);
  CHECK(truth_value(medge, xi) == Truth::True);
  CHECK(truth_by_skolem(medge, xi));
}

#include <doctest.h>

#include <functional>
#include <random>

#include "ifwb/formula.hpp"
#include "ifwb/tree.hpp"

using namespace ifwb;

TEST_CASE("parse: plain and slashed quantifiers") {
  FormulaPtr f = parse_formula("A x E y x=y");
  FormulaPtr expect = forall("x", exists("y", equal(tvar("x"), tvar("y"))));
  CHECK(structurally_equal(f, expect));

  FormulaPtr g = parse_formula("A x (E y/{x}) x=y");
  REQUIRE(g->kind == FKind::Quant);
  const Formula& inner = *g->left;
  CHECK(inner.qkind == QKind::Exists);
  CHECK(inner.slash == std::vector<std::string>{"x"});

  // a sentence slashing across a quantifier block
  FormulaPtr h = parse_formula("E y (A x/{y}) (E z/{x}) Q(x,z)");
  FormulaPtr expect_h = exists(
      "y", forall("x", {"y"},
                  exists("z", {"x"}, atom("Q", {tvar("x"), tvar("z")}))));
  CHECK(structurally_equal(h, expect_h));
}

TEST_CASE("parse: errors carry positions and named clauses") {
  CHECK_THROWS_AS(parse_formula("A x (E y/{y}) x=y"), ParseError);
  CHECK_THROWS_AS(parse_formula("A x"), ParseError);
  CHECK_THROWS_AS(parse_formula("P(x) & Q(x,y) & P(x,y)"), ParseError);  // arity
  CHECK_THROWS_AS(parse_formula("A x []"), ParseError);  // gaps only in trees
}

TEST_CASE("render: canonical forms") {
  CHECK(render_formula(equal(tvar("x"), tvar("y"))) == "x=y");
  CHECK(render_formula(exists("z", {"x"}, atom("Q", {tvar("x"), tvar("z")}))) ==
        "(E z/{x}) Q(x,z)");
  FormulaPtr nested = conj(disj(atom("P", {tvar("x")}), atom("Q", {tvar("x")})),
                           atom("S", {tvar("x")}));
  CHECK(render_formula(nested) == "(P(x) | Q(x)) & S(x)");
}

TEST_CASE("round-trip: parse after render is the identity") {
  std::mt19937_64 rng(42);
  auto term = [&]() {
    return rng() % 4 == 0 ? tconst("0") : tvar(std::string(1, 'x' + rng() % 3));
  };
  std::function<FormulaPtr(int)> gen = [&](int depth) -> FormulaPtr {
    if (depth == 0 || rng() % 3 == 0) {
      switch (rng() % 4) {
        case 0: return atom("R", {term(), term()});
        case 1: return negated_atom("R", {term(), term()});
        case 2: return equal(term(), term());
        default: return negated_equal(term(), term());
      }
    }
    switch (rng() % 4) {
      case 0: return conj(gen(depth - 1), gen(depth - 1));
      case 1: return disj(gen(depth - 1), gen(depth - 1));
      case 2: {
        std::vector<std::string> slash;
        if (rng() % 2) slash.push_back(std::string(1, 'x' + rng() % 3));
        std::string var = std::string(1, 'u' + rng() % 3);
        // keep the slash invariant
        std::erase(slash, var);
        return quant(rng() % 2 ? QKind::Forall : QKind::Exists, var, slash,
                     gen(depth - 1));
      }
      default: return negation(gen(depth - 1));
    }
  };
  for (int i = 0; i < 300; i++) {
    FormulaPtr f = gen(3);
    FormulaPtr back = parse_formula(render_formula(f), {"0"});
    CAPTURE(render_formula(f));
    CHECK(structurally_equal(f, back));
  }
}

TEST_CASE("var_sets: slash variables count as free") {
  FormulaPtr f = exists("z", {"x"}, atom("Q", {tvar("x"), tvar("z")}));
  CHECK(var_sets(f).free == std::set<std::string>{"x"});

  FormulaPtr g = exists("u", {"x"}, atom("Q", {tvar("x"), tvar("z")}));
  CHECK(var_sets(g).free == std::set<std::string>{"x", "z"});

  FormulaPtr h = equal(tvar("x"), tvar("y"));
  CHECK(var_sets(h).free == std::set<std::string>{"x", "y"});
  CHECK(var_sets(h).bound.empty());
}

TEST_CASE("regularity: the footnote examples") {
  FormulaPtr a = parse_formula("(A x P(x)) | A x Q(x)");
  CHECK(regularity(a).regular);
  CHECK_FALSE(regularity(a).strongly_regular);

  FormulaPtr b = parse_formula("A x A x P(x)");
  CHECK_FALSE(regularity(b).regular);

  FormulaPtr c = parse_formula("A x E y x=y");
  CHECK(regularity(c).regular);
  CHECK(regularity(c).strongly_regular);

  // free and bound occurrence of the same variable
  FormulaPtr d = parse_formula("(A x P(x)) | Q(x)");
  CHECK_FALSE(regularity(d).regular);
}

TEST_CASE("prefix_tree: quantifier-free subformulas collapse to gaps") {
  // the whole matrix is quantifier-free, so only the quantifier survives
  CHECK(tree_iso(prefix_tree(parse_formula("A x (A(x) | ~B(x))")),
                 parse_tree("A x []")));
  CHECK(tree_iso(prefix_tree(parse_formula("A x E y x=y")),
                 parse_tree("A x E y []")));
  CHECK(tree_iso(prefix_tree(parse_formula("A(x) & B(x)")), parse_tree("[]")));
  // a connective above a quantifier survives
  CHECK(tree_iso(prefix_tree(parse_formula("A x (P(x) | E y Q(x,y))")),
                 parse_tree("A x ([] | E y [])")));
}

TEST_CASE("paths: one per gap, with bound sets") {
  TreePtr t1 = parse_tree("E y (A x/{y}) []");
  auto p1 = paths(t1);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].bound == std::set<std::string>{"x", "y"});

  TreePtr t2 = parse_tree("E y (A x/{y}) ([] | [])");
  CHECK(paths(t2).size() == 2);

  TreePtr t3 = parse_tree("A x ([] | [])");
  auto p3 = paths(t3);
  REQUIRE(p3.size() == 2);
  CHECK(p3[0].bound == std::set<std::string>{"x"});
  CHECK(p3[1].bound == std::set<std::string>{"x"});
  CHECK(p3[0].gap_id == 0);
  CHECK(p3[1].gap_id == 1);
}

TEST_CASE("complete: attaching formulas at gaps") {
  TreePtr t = parse_tree("E y (A x/{y}) []");
  Completion e{{0, parse_formula("(E z/{x}) Q(x,z)")}};
  CHECK(structurally_equal(complete(t, e),
                           parse_formula("E y (A x/{y}) (E z/{x}) Q(x,z)")));

  TreePtr t2 = parse_tree("E y (A x/{y}) ([] | [])");
  Completion e2{{0, parse_formula("E z P(y,z)")}, {1, parse_formula("Q(y,z)")}};
  CHECK(structurally_equal(
      complete(t2, e2),
      parse_formula("E y (A x/{y}) ((E z P(y,z)) | Q(y,z))")));

  TreePtr t3 = parse_tree("[]");
  Completion e3{{0, parse_formula("P(x)")}};
  CHECK(structurally_equal(complete(t3, e3), parse_formula("P(x)")));

  // attaching an irregular formula is rejected
  Completion bad{{0, parse_formula("A y (E y/{x}) Q(x,z)")}};
  CHECK_THROWS_AS(complete(t, bad), PreconditionError);
}

TEST_CASE("completion_flags: one tree, four kinds of attachment") {
  TreePtr t = parse_tree("E y (A x/{y}) []");

  auto flags_of = [&](const std::string& src) {
    return completion_flags(t, {{0, parse_formula(src)}});
  };

  CompletionFlags e = flags_of("(E z/{x}) Q(x,z)");
  CHECK(e.sentential);
  CHECK(e.regularity_preserving);
  CHECK(e.nice);
  CHECK_FALSE(e.weak);

  CompletionFlags f = flags_of("P(x,y) & Q(x,y)");
  CHECK(f.nice);
  CHECK(f.weak);

  CompletionFlags g = flags_of("(E u/{x}) Q(x,z)");
  CHECK(g.regularity_preserving);
  CHECK_FALSE(g.sentential);

  CompletionFlags h = flags_of("(E y/{x}) Q(x,y)");
  CHECK(h.sentential);
  CHECK_FALSE(h.regularity_preserving);
}

TEST_CASE("completion flag implications hold on generated completions") {
  TreePtr t = parse_tree("A x (E y []) | A z []");
  auto ps = paths(t);
  REQUIRE(ps.size() == 2);
  std::vector<FormulaPtr> pool = {
      parse_formula("x=y"), parse_formula("P(x,y)"), parse_formula("E w P(w,w)"),
      parse_formula("(E w/{x}) P(w,x)"), parse_formula("z=z"),
      parse_formula("~P(x,x) | x!=y")};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      Completion e{{0, a}, {1, b}};
      CompletionFlags flags = completion_flags(t, e);
      CHECK(flags.nice == (flags.sentential && flags.regularity_preserving));
      if (flags.weak) CHECK(flags.regularity_preserving);
    }
}

TEST_CASE("subst: free occurrences, slash sets included") {
  FormulaPtr f = parse_formula("Q(x,z)");
  CHECK(structurally_equal(subst(f, "u", "v"), f));

  CHECK(render_formula(subst(parse_formula("x=u"), "u", "v")) == "x=v");

  FormulaPtr g = parse_formula("(E w/{u}) R(u,w)");
  CHECK(render_formula(subst(g, "u", "v")) == "(E w/{v}) R(v,w)");

  // occurrences under a requantification are bound, not replaced
  FormulaPtr h = parse_formula("P(u) & E u Q(u)");
  CHECK(structurally_equal(subst(h, "u", "v"),
                           parse_formula("P(v) & (E u Q(u))")));
}

TEST_CASE("slash_all and slash_nonempty") {
  CHECK(structurally_equal(slash_all(parse_formula("P(x)"), "u"),
                           parse_formula("P(x)")));
  CHECK(render_formula(slash_all(parse_formula("E y P(y)"), "u")) ==
        "(E y/{u}) P(y)");
  CHECK(render_formula(slash_all(parse_formula("(E y/{z}) P(y)"), "u")) ==
        "(E y/{u,z}) P(y)");

  CHECK(render_formula(slash_nonempty(parse_formula("E y P(y)"), "u")) ==
        "E y P(y)");
  CHECK(render_formula(slash_nonempty(parse_formula("(E y/{z}) P(y)"), "u")) ==
        "(E y/{u,z}) P(y)");
  CHECK(render_formula(slash_nonempty(parse_formula("E y (E w/{y}) P(w)"), "u")) ==
        "E y (E w/{u,y}) P(w)");

  // the two operations agree exactly when no slash set is empty
  FormulaPtr no_empty = parse_formula("(E y/{z}) (A w/{y}) P(w)");
  CHECK(structurally_equal(slash_all(no_empty, "q"), slash_nonempty(no_empty, "q")));
  FormulaPtr with_empty = parse_formula("E y (A w/{y}) P(w)");
  CHECK_FALSE(structurally_equal(slash_all(with_empty, "q"),
                                 slash_nonempty(with_empty, "q")));
}

TEST_CASE("sentential and regularity-preserving completions do what they say") {
  std::vector<std::string> trees = {
      "E y (A x/{y}) []",
      "A x ([] | E y [])",
      "A x A y (((E v/{x}) []) | (E u/{y}) [])",
  };
  std::vector<std::string> pool = {
      "x=y",          "P(x,y)",           "E w P(w,w)",
      "(E w/{x}) w=x", "A w (P(w,x) | w=y)", "x!=x",
      "P(z,z)",       "E x x=z",
  };
  for (const auto& tsrc : trees) {
    TreePtr t = parse_tree(tsrc);
    REQUIRE(tree_regularity(t).regular);
    int k = gap_count(t);
    for (const auto& a : pool)
      for (const auto& b : pool) {
        Completion e;
        e[0] = parse_formula(a);
        if (k > 1) e[1] = parse_formula(b);
        CompletionFlags flags = completion_flags(t, e);
        FormulaPtr done;
        try {
          done = complete(t, e);
        } catch (const PreconditionError&) {
          continue;  // non-regular attachment
        }
        CAPTURE(tsrc);
        CAPTURE(a);
        CAPTURE(b);
        if (flags.sentential) CHECK(free_vars(done).empty());
        // regularity preservation alone leaves clause 1 exposed: a free
        // variable of some attachment may be bound in a parallel branch;
        // together with sententiality the completed formula is regular
        if (flags.nice) CHECK(regularity(done).regular);
        if (flags.regularity_preserving) {
          std::set<std::string> above;
          for (const auto& p : paths(t))
            for (const auto& v : var_sets(e.at(p.gap_id)).bound)
              CHECK_FALSE(p.bound.count(v));
        }
      }
  }
}

TEST_CASE("prefix_tree skeleton is stable under gap completion") {
  // when every connective dominates a quantifier, attaching quantifier-free
  // formulas at the gaps leaves the prefix unchanged
  std::vector<std::string> trees = {
      "A x ([] | E y [])",
      "A x A y (((E v/{x}) []) | (E u/{y}) [])",
      "A x (E y [] & A z [])",
  };
  for (const auto& src : trees) {
    TreePtr t = parse_tree(src);
    Completion e;
    for (const auto& p : paths(t)) {
      std::string v = *p.bound.begin();
      e[p.gap_id] = equal(tvar(v), tvar(v));
    }
    CHECK(tree_equal(prefix_tree(complete(t, e)), t));
  }
}

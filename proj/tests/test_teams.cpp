#include <doctest.h>

#include "ifwb/semantics.hpp"

using namespace ifwb;

namespace {

Structure plain(int n) {
  Structure m;
  m.domain_size = n;
  return m;
}

Team team_xy(std::vector<std::vector<int>> rows) {
  Team t;
  t.vars = {"x"};
  if (!rows.empty() && rows[0].size() == 2) t.vars = {"x", "y"};
  t.rows = std::move(rows);
  t.normalize();
  return t;
}

}  // namespace

TEST_CASE("duplicate") {
  Structure m = plain(2);
  Team start = Team::singleton_empty();
  Team d = duplicate(start, "x", m);
  CHECK(d.vars == std::vector<std::string>{"x"});
  CHECK(d.rows == std::vector<std::vector<int>>{{0}, {1}});

  Team empty;
  empty.vars = {"x"};
  CHECK(duplicate(empty, "y", m).rows.empty());

  Team one = team_xy({{0}});
  Team d2 = duplicate(one, "y", m);
  CHECK(d2.rows == std::vector<std::vector<int>>{{0, 0}, {0, 1}});
}

TEST_CASE("supplement and uniformity") {
  Structure m = plain(2);
  Team x = team_xy({{0}, {1}});

  ChoiceFunction diag;
  diag.by_row[{0}] = 0;
  diag.by_row[{1}] = 1;
  Team s = supplement(x, diag, "y");
  CHECK(s.rows == std::vector<std::vector<int>>{{0, 0}, {1, 1}});

  Team empty;
  empty.vars = {"x"};
  CHECK(supplement(empty, diag, "y").rows.empty());

  ChoiceFunction one;
  one.by_row[{0}] = 1;
  one.by_row[{1}] = 1;
  Team s2 = supplement(x, one, "y");
  CHECK(s2.rows == std::vector<std::vector<int>>{{0, 1}, {1, 1}});

  // V empty: every total function is uniform
  CHECK(is_uniform(diag, x, {}));
  // V = dom(X): all rows equivalent, so a non-constant choice is not uniform
  CHECK_FALSE(is_uniform(diag, x, {"x"}));
  CHECK(is_uniform(one, x, {"x"}));

  Team xy = team_xy({{0, 0}, {1, 0}});
  ChoiceFunction picks_y;
  picks_y.by_row[{0, 0}] = 0;
  picks_y.by_row[{1, 0}] = 0;
  CHECK(is_uniform(picks_y, xy, {"x"}));

  ChoiceFunction partial;
  partial.by_row[{0, 0}] = 0;
  CHECK_THROWS_AS(is_uniform(partial, xy, {"x"}), PreconditionError);
}

TEST_CASE("satisfies: slashed choice vs plain choice") {
  Structure m = plain(2);
  Team x = team_xy({{0}, {1}});

  FormulaPtr dependent = parse_formula("E y x=y");
  CHECK(satisfies(m, x, dependent));

  FormulaPtr independent = parse_formula("(E y/{x}) x=y");
  CHECK_FALSE(satisfies(m, x, independent));

  // empty team satisfies everything
  Team empty;
  empty.vars = {"x"};
  CHECK(satisfies(m, empty, independent));
  CHECK(neg_satisfies(m, empty, independent));

  // unsuitable team
  Team no_x = Team::singleton_empty();
  CHECK_THROWS_AS(satisfies(m, no_x, dependent), PreconditionError);

  // unknown relation
  CHECK_THROWS_AS(satisfies(m, x, parse_formula("P(x)")), PreconditionError);
}

TEST_CASE("neg_satisfies: dual clauses") {
  Structure m = plain(2);
  Team x = team_xy({{0}, {1}});
  CHECK(neg_satisfies(m, x, parse_formula("x!=x")));

  FormulaPtr f = parse_formula("A x (E y/{x}) x=y");
  Team start = Team::singleton_empty();
  CHECK_FALSE(neg_satisfies(m, start, f));
}

TEST_CASE("truth_value: three-valued verdicts") {
  FormulaPtr dependent = parse_formula("A x E y x=y");
  FormulaPtr independent = parse_formula("A x (E y/{x}) x=y");

  for (int n = 1; n <= 3; n++)
    CHECK(truth_value(plain(n), dependent) == Truth::True);

  CHECK(truth_value(plain(2), independent) == Truth::Undetermined);
  CHECK(truth_value(plain(1), independent) == Truth::True);

  CHECK_THROWS_AS(truth_value(plain(2), parse_formula("x=y")),
                  PreconditionError);
}

TEST_CASE("general negation evaluates through the dual relation") {
  Structure m = plain(2);
  FormulaPtr f = parse_formula("~(A x (E y/{x}) x=y)");
  // the inner sentence is undetermined on two elements, so its negation is
  // neither satisfied nor negatively satisfied at the sentence level
  Team start = Team::singleton_empty();
  CHECK_FALSE(satisfies(m, start, f));
  CHECK_FALSE(neg_satisfies(m, start, f));
}

TEST_CASE("cover and partition searches agree on tiny teams") {
  EvalOptions covers;
  covers.exhaustive_covers = true;
  std::vector<std::string> formulas = {
      "x=y | x!=y",
      "R(x,y) | E z R(y,z)",
      "(E z/{x}) x=z | (E w/{y}) y=w",
      "A z (R(x,z) | R(z,y))",
  };
  for (int structure_bits = 0; structure_bits < 16; structure_bits += 3) {
    Structure m = plain(2);
    Relation r;
    r.arity = 2;
    for (int t = 0; t < 4; t++)
      if (structure_bits & (1 << t)) r.tuples.insert({t / 2, t % 2});
    m.relations["R"] = r;
    for (const auto& src : formulas) {
      FormulaPtr f = parse_formula(src);
      for (int mask = 0; mask < 16; mask++) {
        Team x;
        x.vars = {"x", "y"};
        for (int i = 0; i < 4; i++)
          if (mask & (1 << i)) x.rows.push_back({i / 2, i % 2});
        if (x.rows.size() > 3) continue;
        x.normalize();
        CAPTURE(src);
        CHECK(satisfies(m, x, f) == satisfies(m, x, f, covers));
        CHECK(neg_satisfies(m, x, f) == neg_satisfies(m, x, f, covers));
      }
    }
  }
}

TEST_CASE("truth and falsity are never simultaneous") {
  std::vector<std::string> sentences = {
      "A x E y x=y",
      "A x (E y/{x}) x=y",
      "A x x!=x",
      "E x (A y/{x}) x=y",
      "A x (x=x | x!=x)",
      "A x ((E y/{x}) x=y | (E z/{x,y}) x=z)",
  };
  for (int n = 1; n <= 3; n++) {
    Structure m = plain(n);
    Team start = Team::singleton_empty();
    for (const auto& src : sentences) {
      FormulaPtr f = parse_formula(src);
      bool both = satisfies(m, start, f) && neg_satisfies(m, start, f);
      CHECK_FALSE(both);
    }
  }
}

TEST_CASE("locality: restricting to the free variables changes nothing") {
  Structure m = plain(3);
  Relation r;
  r.arity = 2;
  r.tuples = {{0, 1}, {1, 2}, {2, 2}};
  m.relations["R"] = r;
  FormulaPtr f = parse_formula("E z R(x,z)");

  Team wide;
  wide.vars = {"x", "y"};
  wide.rows = {{0, 0}, {0, 1}, {1, 2}, {2, 0}};
  Team narrow;
  narrow.vars = {"x"};
  for (const auto& row : wide.rows) narrow.rows.push_back({row[0]});
  narrow.normalize();

  CHECK(satisfies(m, wide, f) == satisfies(m, narrow, f));
  CHECK(neg_satisfies(m, wide, f) == neg_satisfies(m, narrow, f));
}

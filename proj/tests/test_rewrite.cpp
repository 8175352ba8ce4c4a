#include <doctest.h>

#include "ifwb/harness.hpp"
#include "ifwb/rewrite.hpp"

using namespace ifwb;

TEST_CASE("swap") {
  auto res = apply_rule(parse_tree("A u (E v/{u}) []"), RuleId::Swap, {});
  CHECK(tree_equal(res.tree, parse_tree("E v (A u/{v}) []")));
  CHECK(res.step.note == ComplexityNote::PreservesC);

  // the inner slash must mention the outer variable
  CHECK_THROWS_AS(apply_rule(parse_tree("A u E v []"), RuleId::Swap, {}),
                  PreconditionError);
}

TEST_CASE("distribute") {
  auto res = apply_rule(parse_tree("A u ([] & [])"), RuleId::Distribute, {});
  CHECK(tree_equal(res.tree, parse_tree("(A u []) & A u []")));

  auto res2 = apply_rule(parse_tree("E u ([] | [])"), RuleId::Distribute, {});
  CHECK(tree_equal(res2.tree, parse_tree("(E u []) | E u []")));

  CHECK_THROWS_AS(apply_rule(parse_tree("A u ([] | [])"), RuleId::Distribute, {}),
                  PreconditionError);
  CHECK_THROWS_AS(
      apply_rule(parse_tree("(A u/{w}) ([] & [])"), RuleId::Distribute, {}),
      PreconditionError);
}

TEST_CASE("drop-ex-slash") {
  auto res = apply_rule(parse_tree("E x (E y/{x}) []"), RuleId::DropExSlash, {0});
  CHECK(tree_equal(res.tree, parse_tree("E x E y []")));

  // a universally quantified slashed variable blocks the rule
  CHECK_THROWS_AS(
      apply_rule(parse_tree("A x (E y/{x}) []"), RuleId::DropExSlash, {0}),
      PreconditionError);
}

TEST_CASE("rename") {
  RuleParams params;
  params.fresh_var = "w";
  auto res = apply_rule(parse_tree("A x (E y/{x}) []"), RuleId::Rename, {0}, params);
  CHECK(tree_equal(res.tree, parse_tree("A x (E w/{x}) []")));
  CHECK(res.step.transforms[0] == GapTransform::SubstVar);

  auto res2 = apply_rule(parse_tree("A x E y []"), RuleId::Rename, {0}, params);
  CHECK(tree_equal(res2.tree, parse_tree("A x E w []")));

  // renaming replaces slash occurrences below the quantifier
  auto res3 =
      apply_rule(parse_tree("A x E y (E z/{y}) []"), RuleId::Rename, {0}, params);
  CHECK(tree_equal(res3.tree, parse_tree("A x E w (E z/{w}) []")));

  // the fresh variable must not occur in the subtree
  RuleParams clash;
  clash.fresh_var = "x";
  CHECK_THROWS_AS(apply_rule(parse_tree("A x E y []"), RuleId::Rename, {0}, clash),
                  PreconditionError);
}

TEST_CASE("extraction adjusts the sibling's slash sets") {
  RuleParams left;
  left.side = 0;

  // weak: every slash set gains the extracted variable
  auto res =
      apply_rule(parse_tree("(E u []) | E w []"), RuleId::ExtractWeak, {}, left);
  CHECK(tree_equal(res.tree, parse_tree("E u ([] | (E w/{u}) [])")));
  CHECK(res.step.note == ComplexityNote::WeakReductionOnly);
  CHECK(res.step.transforms[1] == GapTransform::SlashAll);

  // strong: only nonempty ones do
  auto res2 = apply_rule(parse_tree("A x ((E u []) | (E w/{x}) [])"),
                         RuleId::ExtractStrong, {0}, left);
  CHECK(tree_equal(res2.tree, parse_tree("A x E u ([] | (E w/{u,x}) [])")));

  auto res3 = apply_rule(parse_tree("A x ((E u []) | E w [])"),
                         RuleId::ExtractStrong, {0}, left);
  CHECK(tree_equal(res3.tree, parse_tree("A x E u ([] | E w [])")));

  // u occurring in the sibling blocks extraction
  CHECK_THROWS_AS(apply_rule(parse_tree("(E u []) | (E w/{u}) []"),
                             RuleId::ExtractWeak, {}, left),
                  PreconditionError);
}

TEST_CASE("gap bijections track positions across rules") {
  TreePtr t = parse_tree("A x ((E u ([] & [])) | E w [])");
  RuleParams left;
  left.side = 0;
  auto res = apply_rule(t, RuleId::ExtractWeak, {0}, left);
  CHECK(res.step.gap_bijection == std::vector<int>{0, 1, 2});
  CHECK(gap_count(res.tree) == 3);

  Completion e{{0, parse_formula("x=x")},
               {1, parse_formula("u=x")},
               {2, parse_formula("(E q/{x}) q=w")}};
  Completion moved = transport_completion(res.step, e);
  CHECK(structurally_equal(moved.at(0), e.at(0)));
  CHECK(structurally_equal(moved.at(1), e.at(1)));
  // the sibling gap picked up /{u}
  CHECK(structurally_equal(moved.at(2), parse_formula("(E q/{u,x}) q=w")));
}

TEST_CASE("strong_regularize") {
  TreePtr already = parse_tree("A x E y []");
  auto [t1, steps1] = strong_regularize(already);
  CHECK(tree_equal(t1, already));
  CHECK(steps1.empty());

  auto [t2, steps2] = strong_regularize(parse_tree("(A x []) | A x []"));
  CHECK(steps2.size() == 1);
  CHECK(tree_regularity(t2).strongly_regular);

  auto [t3, steps3] =
      strong_regularize(parse_tree("(A x []) | ((A x []) & A x [])"));
  CHECK(steps3.size() == 2);
  CHECK(tree_regularity(t3).strongly_regular);

  // idempotence
  auto [t4, steps4] = strong_regularize(t3);
  CHECK(tree_equal(t4, t3));
  CHECK(steps4.empty());
}

TEST_CASE("prenex: shape, gaps, and fixpoints") {
  auto [p1, s1] = prenex(parse_tree("A x ((E u []) | [])"));
  CHECK(tree_equal(p1, parse_tree("A x E u ([] | [])")));

  TreePtr already = parse_tree("A x E u ([] | [])");
  auto [p2, s2] = prenex(already);
  CHECK(tree_equal(p2, already));
  CHECK(s2.empty());

  TreePtr no_quants_below = parse_tree("A x ([] & [])");
  auto [p3, s3] = prenex(no_quants_below);
  CHECK(tree_equal(p3, no_quants_below));

  for (const auto& t : tree_corpus(3, 20, 4)) {
    auto [pt, steps] = prenex(t);
    CHECK(gap_count(pt) == gap_count(t));
    CHECK(tree_regularity(pt).regular);
    // no quantifier below a connective
    struct {
      bool ok = true;
      void operator()(const TreePtr& n, bool below) {
        if (n->kind == TKind::Quant) {
          if (below) ok = false;
          (*this)(n->child, below);
        } else if (n->kind == TKind::Conn) {
          (*this)(n->left, true);
          (*this)(n->right, true);
        }
      }
    } shape;
    shape(pt, false);
    CHECK(shape.ok);
  }
}

TEST_CASE("every rule application preserves the positive-initial invariants") {
  for (const auto& t : tree_corpus(5, 18, 4)) {
    for (RuleId rule :
         {RuleId::Rename, RuleId::ExtractWeak, RuleId::ExtractStrong,
          RuleId::Distribute, RuleId::Swap, RuleId::DropExSlash}) {
      for (const auto& [loc, params] : applicable_sites(t, rule)) {
        auto res = apply_rule(t, rule, loc, params);
        CHECK(tree_regularity(res.tree).regular);
        CHECK(gap_count(res.tree) == gap_count(t));
      }
    }
  }
}

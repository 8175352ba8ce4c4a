#include <doctest.h>

#include "ifwb/encodings.hpp"
#include "ifwb/harness.hpp"
#include "ifwb/semantics.hpp"
#include "ifwb/skolem.hpp"

using namespace ifwb;

namespace {

Structure plain(int n) {
  Structure m;
  m.domain_size = n;
  return m;
}

}  // namespace

TEST_CASE("skolemize: argument lists follow the non-slashed prefix") {
  // the displayed two-function form
  SkolemPlan plan = skolemize(parse_formula(
      "A x ((A y (E u/{x}) R(x,y,u)) | A z (E v/{x}) S(x,z,v))"));
  REQUIRE(plan.funs.size() == 2);
  CHECK(plan.funs[0].for_var == "u");
  REQUIRE(plan.funs[0].args.size() == 1);
  CHECK(plan.universals[plan.funs[0].args[0].uvar] == "y");
  CHECK(plan.funs[1].for_var == "v");
  REQUIRE(plan.funs[1].args.size() == 1);
  CHECK(plan.universals[plan.funs[1].args[0].uvar] == "z");
  CHECK(plan.universals == std::vector<std::string>{"x", "y", "z"});

  SkolemPlan p2 = skolemize(parse_formula("A x E y x=y"));
  REQUIRE(p2.funs.size() == 1);
  CHECK(p2.funs[0].for_var == "y");
  REQUIRE(p2.funs[0].args.size() == 1);
  CHECK(p2.universals[p2.funs[0].args[0].uvar] == "x");

  // fully slashed: a 0-ary function
  SkolemPlan p3 = skolemize(parse_formula("A x (E y/{x}) x=y"));
  REQUIRE(p3.funs.size() == 1);
  CHECK(p3.funs[0].args.empty());

  // existential arguments expand into their own terms
  SkolemPlan p4 = skolemize(parse_formula("A x E y (E z/{x}) z=y"));
  REQUIRE(p4.funs.size() == 2);
  REQUIRE(p4.funs[1].args.size() == 1);
  CHECK(p4.funs[1].args[0].fun == 0);  // f_z applied to f_y(x)

  CHECK_THROWS_AS(skolemize(parse_formula("A x A x P(x)")), PreconditionError);
  CHECK_THROWS_AS(skolemize(parse_formula("A x ~(E y x=y)")), PreconditionError);
  CHECK_THROWS_AS(skolemize(parse_formula("E y x=y")), PreconditionError);
}

TEST_CASE("truth_by_skolem: small verdicts") {
  CHECK(truth_by_skolem(plain(3), parse_formula("A x E y x=y")));
  CHECK_FALSE(truth_by_skolem(plain(2), parse_formula("A x (E y/{x}) x=y")));
  CHECK(truth_by_skolem(plain(1), parse_formula("A x (E y/{x}) x=y")));

  // regular but not strongly regular: duplicates renamed apart internally
  CHECK(truth_by_skolem(plain(2), parse_formula("(A x x=x) | A x x!=x")));
  CHECK_FALSE(truth_by_skolem(plain(2), parse_formula("(A x x!=x) | A x x!=x")));
}

TEST_CASE("truth_by_skolem: phi on a satisfiable and an unsatisfiable CNF") {
  FormulaPtr phi = builtin_sentence("phi_sat");

  CnfInstance sat{2, {{1, 2}, {-1, -2}}};  // (p|q) & (~p|~q)
  CHECK(oracle_solve(Problem::SatGh2, sat));
  CHECK(truth_by_skolem(encode_instance(Problem::SatGh2, sat), phi));

  CnfInstance unsat{2, {{1, 2}, {1, -2}, {-1, 2}, {-1, -2}}};
  CHECK_FALSE(oracle_solve(Problem::SatGh2, unsat));
  CHECK_FALSE(truth_by_skolem(encode_instance(Problem::SatGh2, unsat), phi));
}

TEST_CASE("budget exhaustion raises, and raising the budget never flips") {
  FormulaPtr f = builtin_sentence("phi_sat");
  CnfInstance inst{2, {{1, 2}}};
  Structure m = encode_instance(Problem::SatGh2, inst);
  CHECK_THROWS_AS(truth_by_skolem(m, f, 5), BudgetError);
  bool small_ok = truth_by_skolem(m, f, 1'000'000);
  bool large_ok = truth_by_skolem(m, f, 100'000'000);
  CHECK(small_ok == large_ok);
}

TEST_CASE("slash erasure on universals never changes skolem truth") {
  // slashing the root variable into inner universal quantifiers
  std::vector<std::string> sentences = {
      "A x A z E w (z=w | x=w)",
      "A x (E y x=y & A z E w z=w)",
      "A x ((E y/{x}) x=y | A z E w z=w)",
  };
  for (const auto& src : sentences) {
    FormulaPtr f = parse_formula(src);
    REQUIRE(f->kind == FKind::Quant);
    const std::string root = f->var;
    struct Slasher {
      std::string root;
      FormulaPtr operator()(const FormulaPtr& g, bool top) {
        switch (g->kind) {
          case FKind::Quant: {
            auto slash = g->slash;
            if (!top && g->qkind == QKind::Forall) slash.push_back(root);
            return quant(g->qkind, g->var, slash, (*this)(g->left, false));
          }
          case FKind::And:
            return conj((*this)(g->left, false), (*this)(g->right, false));
          case FKind::Or:
            return disj((*this)(g->left, false), (*this)(g->right, false));
          default:
            return g;
        }
      }
    } slasher{root};
    FormulaPtr g = slasher(f, true);
    for (int n = 1; n <= 3; n++)
      CHECK(truth_by_skolem(plain(n), f) == truth_by_skolem(plain(n), g));
  }
}

TEST_CASE("bridge: skolem truth equals team truth on enumerated structures") {
  SignatureSpec sig{{{"R", 2}}, {}};
  std::vector<std::string> sentences = {
      "A x E y R(x,y)",
      "A x (E y/{x}) R(x,y)",
      "A x (R(x,x) | E y R(y,x))",
      "E x A y (R(x,y) & E z R(z,x))",
      "A x A y ((E u/{y}) R(u,x) | (E v/{x}) R(y,v))",
  };
  for (const auto& src : sentences) {
    FormulaPtr f = parse_formula(src);
    for (int n = 1; n <= 3; n++) {
      StructureEnumerator en(sig, n);
      for (long long i = 0; i < en.count(); i++) {
        Structure m = en.at(i);
        CAPTURE(src);
        CHECK((truth_value(m, f) == Truth::True) == truth_by_skolem(m, f));
      }
    }
  }
}

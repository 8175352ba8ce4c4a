#include <doctest.h>

#include "ifwb/harness.hpp"
#include "ifwb/patterns.hpp"

using namespace ifwb;

TEST_CASE("enum_structures: counts and determinism") {
  CHECK(StructureEnumerator({{{"P", 1}}, {}}, 1).count() == 2);
  CHECK(StructureEnumerator({{{"P", 1}}, {}}, 2).count() == 4);
  CHECK(StructureEnumerator({{}, {"c"}}, 3).count() == 3);
  CHECK(StructureEnumerator({{{"R", 2}}, {"c0", "c1"}}, 2).count() == 64);

  StructureEnumerator en({{{"R", 2}}, {"c"}}, 2);
  for (long long i = 0; i < en.count(); i++) {
    Structure a = en.at(i);
    Structure b = en.at(i);
    CHECK(structure_to_json(a) == structure_to_json(b));
    a.validate();
  }
}

TEST_CASE("equivalent_bounded: distribution law and a counterexample") {
  SignatureSpec sig{{{"P", 1}, {"Q", 1}}, {}};
  FormulaPtr lhs = parse_formula("A u (P(u) & Q(u))");
  FormulaPtr rhs = parse_formula("(A u P(u)) & A u Q(u)");
  EquivalenceReport rep =
      equivalent_bounded(lhs, rhs, sig, 3, EquivMode::StronglyEquivalent);
  CHECK(rep.equal);

  SignatureSpec empty_sig{{}, {}};
  FormulaPtr dep = parse_formula("A x E y x=y");
  FormulaPtr indep = parse_formula("A x (E y/{x}) x=y");
  EquivalenceReport rep2 =
      equivalent_bounded(dep, indep, empty_sig, 3, EquivMode::TruthEquivalent);
  CHECK_FALSE(rep2.equal);
  REQUIRE(rep2.counterexample.has_value());
  CHECK(rep2.counterexample->domain_size == 2);  // minimal in sweep order

  EquivalenceReport rep3 =
      equivalent_bounded(dep, dep, empty_sig, 3, EquivMode::StronglyEquivalent);
  CHECK(rep3.equal);

  CHECK_THROWS_AS(equivalent_bounded(parse_formula("x=y"), dep, empty_sig, 2,
                                     EquivMode::TruthEquivalent),
                  PreconditionError);
}

TEST_CASE("reports serialize to JSON with the counterexample structure") {
  SignatureSpec empty_sig{{}, {}};
  EquivalenceReport rep =
      equivalent_bounded(parse_formula("A x E y x=y"),
                         parse_formula("A x (E y/{x}) x=y"), empty_sig, 3,
                         EquivMode::TruthEquivalent);
  std::string j = equivalence_report_to_json(rep);
  CHECK(j.find("\"equal\":false") != std::string::npos);
  CHECK(j.find("\"domain\":2") != std::string::npos);

  SoundnessReport sr;
  sr.ok = true;
  sr.steps_checked = 3;
  CHECK(soundness_report_to_json(sr).find("\"ok\":true") != std::string::npos);
}

TEST_CASE("strong equivalence implies truth equivalence on the same bounds") {
  SignatureSpec sig{{{"R", 2}}, {}};
  std::vector<std::pair<std::string, std::string>> pairs = {
      {"A u ((E x R(u,x)) & E y R(y,u))", "A u ((E y R(y,u)) & E x R(u,x))"},
      {"E u (R(u,u) | E x R(u,x))", "E u (E x R(u,x) | R(u,u))"},
  };
  for (const auto& [a, b] : pairs) {
    EquivalenceReport strong = equivalent_bounded(
        parse_formula(a), parse_formula(b), sig, 2, EquivMode::StronglyEquivalent);
    if (strong.equal) {
      EquivalenceReport truth = equivalent_bounded(
          parse_formula(a), parse_formula(b), sig, 2, EquivMode::TruthEquivalent);
      CHECK(truth.equal);
    }
  }
}

TEST_CASE("tree_corpus: deterministic, regular, pattern-complete") {
  auto corpus = tree_corpus(1, 10, 4);
  CHECK(corpus.size() == 10);
  for (const auto& t : corpus) CHECK(tree_regularity(t).regular);

  bool has_signalling = false;
  for (const auto& t : corpus)
    if (detect_patterns(t).signalling) has_signalling = true;
  CHECK(has_signalling);

  auto corpus2 = tree_corpus(1, 10, 4);
  REQUIRE(corpus2.size() == corpus.size());
  for (size_t i = 0; i < corpus.size(); i++)
    CHECK(tree_equal(corpus[i], corpus2[i]));

  // the larger corpus carries every biased pattern class
  auto big = tree_corpus(1, 30, 4);
  bool modest = false, henkin = false, gh1a = false, gh1o = false, gh2a = false,
       gh2o = false, c1 = false, c2 = false, c1p = false;
  for (const auto& t : big) {
    PatternReport r = detect_patterns(t);
    modest |= r.modest;
    henkin |= r.henkin;
    gh1a |= r.gh_subclasses.count(GHSubclass::GH1And) > 0;
    gh1o |= r.gh_subclasses.count(GHSubclass::GH1Or) > 0;
    gh2a |= r.gh_subclasses.count(GHSubclass::GH2And) > 0;
    gh2o |= r.gh_subclasses.count(GHSubclass::GH2Or) > 0;
    c1 |= tree_iso(t, minimal_tree("c1"));
    c2 |= tree_iso(t, minimal_tree("c2"));
    c1p |= tree_iso(t, minimal_tree("c1p"));
  }
  CHECK(modest);
  CHECK(henkin);
  CHECK(gh1a);
  CHECK(gh1o);
  CHECK(gh2a);
  CHECK(gh2o);
  CHECK(c1);
  CHECK(c2);
  CHECK(c1p);
}

TEST_CASE("weak_nice_completions produce weak nice completions") {
  SignatureSpec sig{{{"R", 2}}, {}};
  for (const auto& t : tree_corpus(9, 12, 4)) {
    auto es = weak_nice_completions(t, sig, 5, 3);
    CHECK(es.size() == 3);
    for (const auto& e : es) {
      CompletionFlags flags = completion_flags(t, e);
      CHECK(flags.weak);
      CHECK(flags.nice);
      FormulaPtr sentence = complete(t, e);
      CHECK(free_vars(sentence).empty());
      CHECK(regularity(sentence).regular);
    }
  }
}

TEST_CASE("check_rule_soundness passes on swap and catches a corrupted rule") {
  SignatureSpec sig{{{"R", 2}}, {}};
  std::vector<std::pair<TreePtr, Locator>> corpus;
  for (const auto& t : tree_corpus(3, 12, 4))
    for (const auto& [loc, params] : applicable_sites(t, RuleId::Swap))
      corpus.emplace_back(t, loc);
  REQUIRE(!corpus.empty());
  SoundnessReport rep = check_rule_soundness(RuleId::Swap, corpus, 2, sig, 2, 3);
  CHECK(rep.ok);
  CHECK(rep.steps_checked == static_cast<int>(corpus.size()));

  // a deliberately wrong transported completion must be detected: simulate a
  // corrupted rule by slashing the completion of a swapped tree's gap
  TreePtr t = parse_tree("A u (E v/{u}) []");
  auto res = apply_rule(t, RuleId::Swap, {});
  Completion e{{0, parse_formula("u=v")}};
  Completion corrupted{{0, parse_formula("u!=v")}};
  FormulaPtr before = complete(t, e);
  FormulaPtr wrong = complete(res.tree, corrupted);
  bool found_difference = false;
  for (int n = 1; n <= 2 && !found_difference; n++) {
    StructureEnumerator en(sig, n);
    for (long long i = 0; i < en.count(); i++) {
      Structure m = en.at(i);
      if (truth_value(m, before) != truth_value(m, wrong)) {
        found_difference = true;
        break;
      }
    }
  }
  CHECK(found_difference);
}

#ifndef IFWB_HARNESS_HPP
#define IFWB_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifwb/rewrite.hpp"
#include "ifwb/semantics.hpp"
#include "ifwb/structure.hpp"
#include "ifwb/tree.hpp"

namespace ifwb {

struct SignatureSpec {
  std::vector<std::pair<std::string, int>> relations;  // name, arity
  std::vector<std::string> constants;
};

// All structures of domain size exactly n, in a fixed order: constants in
// mixed radix, then each relation as a bitmask over its tuple space.
class StructureEnumerator {
 public:
  StructureEnumerator(SignatureSpec sig, int n);
  long long count() const { return count_; }
  Structure at(long long index) const;

 private:
  SignatureSpec sig_;
  int n_;
  long long count_;
  std::vector<long long> tuple_space_;  // n^arity per relation
};

enum class EquivMode { TruthEquivalent, StronglyEquivalent };

struct EquivalenceReport {
  EquivMode mode = EquivMode::TruthEquivalent;
  int max_n = 0;
  long long structures_checked = 0;
  bool equal = false;
  std::optional<Structure> counterexample;  // first failure in sweep order
  Truth lhs = Truth::Undetermined, rhs = Truth::Undetermined;
};

// Sweeps domain sizes 1..max_n over every structure of the signature.
EquivalenceReport equivalent_bounded(const FormulaPtr& f, const FormulaPtr& g,
                                     const SignatureSpec& sig, int max_n,
                                     EquivMode mode);

// Counterexample structures appear in the structure file format; the report
// always carries its bound.
std::string equivalence_report_to_json(const EquivalenceReport& rep,
                                       bool pretty = false);

// Locator/parameter pairs at which the rule's shape and side conditions hold.
std::vector<std::pair<Locator, RuleParams>> applicable_sites(const TreePtr& t,
                                                             RuleId rule);

struct SoundnessReport {
  bool ok = true;
  int steps_checked = 0;
  int completions_checked = 0;
  long long comparisons = 0;
  std::string detail;  // first counterexample, when any
};

// For each corpus entry, applies the rule, generates weak nice completions,
// and compares truth on every structure of size 1..max_n; rules whose note is
// preserves_C are additionally held to the full three-valued verdict.
SoundnessReport check_rule_soundness(
    RuleId rule, const std::vector<std::pair<TreePtr, Locator>>& corpus,
    int completions_per_tree, const SignatureSpec& sig, int max_n,
    uint64_t seed);

std::string soundness_report_to_json(const SoundnessReport& rep,
                                     bool pretty = false);

// Deterministic corpus: the named minimal trees (one witness per pattern
// class) followed by seeded random regular trees.
std::vector<TreePtr> tree_corpus(uint64_t seed, int count, int max_depth);

// Quantifier-free sentential completions drawn from literals over each
// path's bound variables (and the signature's constants), closed under one
// connective.
std::vector<Completion> weak_nice_completions(const TreePtr& t,
                                              const SignatureSpec& sig,
                                              uint64_t seed, int count);

}  // namespace ifwb

#endif

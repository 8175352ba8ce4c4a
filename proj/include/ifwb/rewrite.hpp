#ifndef IFWB_REWRITE_HPP
#define IFWB_REWRITE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ifwb/tree.hpp"

namespace ifwb {

enum class RuleId { Rename, ExtractWeak, ExtractStrong, Distribute, Swap, DropExSlash };

RuleId rule_from_string(const std::string& s);
const char* to_string(RuleId r);

enum class ComplexityNote { PreservesC, WeakReductionOnly };

// How a completion formula must be adjusted when its gap crosses the rule.
enum class GapTransform { Identity, SubstVar, SlashAll, SlashNonempty };

struct RewriteStep {
  RuleId rule;
  Locator at;
  std::string var_from;  // Rename: renamed variable; extractions: the pulled one
  std::string var_to;    // Rename only
  TreePtr before;
  TreePtr after;
  std::vector<int> gap_bijection;        // old gap id -> new gap id
  std::vector<GapTransform> transforms;  // indexed by old gap id
  ComplexityNote note = ComplexityNote::PreservesC;
};

struct RuleParams {
  // Rename: the fresh variable. ExtractWeak/Strong on a connective whose
  // children are both quantifiers: which child to pull (0 or 1).
  std::optional<std::string> fresh_var;
  std::optional<int> side;
};

struct RewriteResult {
  TreePtr tree;
  RewriteStep step;
};

// Applies one rule at the addressed node. Throws PreconditionError naming the
// violated clause when the node does not match the rule shape or a side
// condition fails. The input must be regular; all rules preserve regularity
// and the positive-initial form.
RewriteResult apply_rule(const TreePtr& t, RuleId rule, const Locator& at,
                         const RuleParams& params = {});

// Renames duplicated quantifiers (deepest first) with fresh variables until
// no variable is quantified twice.
std::pair<TreePtr, std::vector<RewriteStep>> strong_regularize(const TreePtr& t);

// strong_regularize, then weak extraction at the shallowest connective with a
// quantifier child until every quantifier precedes every connective.
std::pair<TreePtr, std::vector<RewriteStep>> prenex(const TreePtr& t);

// Pushes a completion for step.before through to step.after.
Completion transport_completion(const RewriteStep& step, const Completion& e);

std::string step_to_json(const RewriteStep& step, bool pretty = false);
std::string steps_to_json(const std::vector<RewriteStep>& steps,
                          bool pretty = false);

}  // namespace ifwb

#endif

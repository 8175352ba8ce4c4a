#ifndef IFWB_SKOLEM_HPP
#define IFWB_SKOLEM_HPP

#include <string>
#include <vector>

#include "ifwb/formula.hpp"
#include "ifwb/structure.hpp"

namespace ifwb {

// Term over the plan: a universal variable, a named constant, or a Skolem
// function applied to further terms. Exactly one index is set.
struct STerm {
  int uvar = -1;
  int cst = -1;
  int fun = -1;
  std::vector<STerm> args;
};

struct SkolemFun {
  std::string for_var;       // the existential variable it witnesses
  std::vector<STerm> args;   // superordinated non-slashed variables, composed
};

// Quantifier-free matrix with Skolem terms in argument positions.
struct MatrixNode {
  enum class Kind { Lit, And, Or } kind = Kind::Lit;
  bool negated = false;
  bool equality = false;
  std::string rel;
  std::vector<STerm> args;
  std::vector<MatrixNode> kids;
};

struct SkolemPlan {
  std::vector<std::string> universals;      // retained prefix, in tree order
  std::vector<std::string> constant_names;  // resolved against the structure
  std::vector<SkolemFun> funs;
  MatrixNode matrix;
};

// One Skolem function per existential; its arguments are the superordinated
// quantified variables outside the slash set, with existential arguments
// expanded into their own Skolem terms. Universal slash sets are erased.
// Duplicate bound variables are renamed apart first. The input must be a
// regular, negation-normal sentence.
SkolemPlan skolemize(const FormulaPtr& sentence);

std::string plan_to_string(const SkolemPlan& plan);

long long default_skolem_budget();  // IFWB_BUDGET, else 10^8

// True iff some interpretation of the Skolem functions makes the universal
// matrix hold. Backtracking over lazily filled function tables; equivalent
// to exhaustive enumeration. Throws BudgetError past `budget` search nodes.
bool truth_by_skolem(const Structure& m, const FormulaPtr& sentence,
                     long long budget = -1);

}  // namespace ifwb

#endif

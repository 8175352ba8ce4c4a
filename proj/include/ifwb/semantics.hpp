#ifndef IFWB_SEMANTICS_HPP
#define IFWB_SEMANTICS_HPP

#include "ifwb/formula.hpp"
#include "ifwb/structure.hpp"
#include "ifwb/team.hpp"

namespace ifwb {

enum class Truth { True, False, Undetermined };

const char* to_string(Truth t);

struct EvalOptions {
  // Pure Y u Z = X cover search for disjunction (and its dual), with no
  // flatness or partition shortcuts. Exponentially slower; intended for the
  // agreement checks on tiny teams.
  bool exhaustive_covers = false;
};

// Lax team semantics. The team must be suitable: dom(X) must cover FV(f).
bool satisfies(const Structure& m, const Team& x, const FormulaPtr& f,
               const EvalOptions& opts = {});

// Dual clauses (conjunction and disjunction, forall and exists interchanged).
bool neg_satisfies(const Structure& m, const Team& x, const FormulaPtr& f,
                   const EvalOptions& opts = {});

// Sentence truth from the singleton empty-assignment team.
Truth truth_value(const Structure& m, const FormulaPtr& sentence,
                  const EvalOptions& opts = {});

}  // namespace ifwb

#endif

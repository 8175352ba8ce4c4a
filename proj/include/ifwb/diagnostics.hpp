#ifndef IFWB_DIAGNOSTICS_HPP
#define IFWB_DIAGNOSTICS_HPP

#include <stdexcept>
#include <string>

namespace ifwb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Source text did not conform to the grammar.
struct ParseError : Error {
  int line;
  int col;
  ParseError(const std::string& what, int line_, int col_)
      : Error(what + " (line " + std::to_string(line_) + ", col " +
              std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

// An operation was invoked outside its contract; `clause` names the violated
// side condition.
struct PreconditionError : Error {
  std::string clause;
  PreconditionError(const std::string& clause_, const std::string& detail)
      : Error(clause_ + ": " + detail), clause(clause_) {}
};

// The exhaustive search exceeded its node budget.
struct BudgetError : Error {
  long long budget;
  explicit BudgetError(long long budget_)
      : Error("search budget exceeded (" + std::to_string(budget_) + " nodes)"),
        budget(budget_) {}
};

}  // namespace ifwb

#endif

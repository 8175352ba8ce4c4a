#ifndef IFWB_FORMULA_HPP
#define IFWB_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ifwb/diagnostics.hpp"

namespace ifwb {

enum class TermKind { Var, Const };

struct Term {
  TermKind kind = TermKind::Var;
  std::string name;

  bool operator==(const Term&) const = default;
};

inline Term tvar(std::string name) { return {TermKind::Var, std::move(name)}; }
inline Term tconst(std::string name) { return {TermKind::Const, std::move(name)}; }

enum class FKind { Atom, NegAtom, Equal, NegEqual, Neg, And, Or, Quant };
enum class QKind { Forall, Exists };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable AST node. Slashed quantifiers carry their slash set as a sorted
// vector of variable names.
class Formula {
 public:
  FKind kind;

  std::string rel;               // Atom, NegAtom
  std::vector<Term> terms;       // Atom, NegAtom, Equal, NegEqual (2 terms)

  QKind qkind = QKind::Forall;   // Quant
  std::string var;               // Quant
  std::vector<std::string> slash;  // Quant; sorted, unique

  FormulaPtr left;               // Neg/Quant child; And/Or left
  FormulaPtr right;              // And/Or right

  explicit Formula(FKind k) : kind(k) {}
};

FormulaPtr atom(std::string rel, std::vector<Term> terms);
FormulaPtr negated_atom(std::string rel, std::vector<Term> terms);
FormulaPtr equal(Term a, Term b);
FormulaPtr negated_equal(Term a, Term b);
FormulaPtr negation(FormulaPtr sub);
FormulaPtr conj(FormulaPtr l, FormulaPtr r);
FormulaPtr disj(FormulaPtr l, FormulaPtr r);
FormulaPtr quant(QKind q, std::string var, std::vector<std::string> slash,
                 FormulaPtr body);
FormulaPtr forall(std::string var, FormulaPtr body);
FormulaPtr forall(std::string var, std::vector<std::string> slash, FormulaPtr body);
FormulaPtr exists(std::string var, FormulaPtr body);
FormulaPtr exists(std::string var, std::vector<std::string> slash, FormulaPtr body);

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

// Concrete syntax. Identifiers in term position parse as constants when they
// appear in `constants` (and are not captured by an enclosing quantifier);
// all-digit identifiers are always constants.
FormulaPtr parse_formula(const std::string& text,
                         const std::set<std::string>& constants = {});
std::string render_formula(const FormulaPtr& f);

struct VarSets {
  std::set<std::string> free;
  std::set<std::string> bound;
  std::set<std::string> all;
};

// Free variables follow the IF recursion: FV((Qv/V)x) = FV(x)\{v} u V.
VarSets var_sets(const FormulaPtr& f);
std::set<std::string> free_vars(const FormulaPtr& f);
std::set<std::string> bound_vars(const FormulaPtr& f);

struct Regularity {
  bool regular = false;
  bool strongly_regular = false;
};

Regularity regularity(const FormulaPtr& f);

// Replaces all free occurrences of u (slash-set positions included) with v.
FormulaPtr subst(const FormulaPtr& f, const std::string& u, const std::string& v);

// chi/{u}: adds u to every slash set, empty ones included.
FormulaPtr slash_all(const FormulaPtr& f, const std::string& u);
// psi|_v: adds v to nonempty slash sets only.
FormulaPtr slash_nonempty(const FormulaPtr& f, const std::string& v);

bool is_quantifier_free(const FormulaPtr& f);
// True when negation occurs only on atoms and equalities.
bool is_negation_normal(const FormulaPtr& f);

// Drops slash variables with no binder superordinated to their quantifier.
// Starting from the empty assignment such variables never enter the team's
// domain, so they cannot constrain any choice function; sentence evaluation
// treats them as decoration.
FormulaPtr prune_unscoped_slashes(const FormulaPtr& f);

// NNF negation of a quantifier-free formula (De Morgan over And/Or).
FormulaPtr negate_qf(const FormulaPtr& f);
// a -> b compiled to NNF: negate_qf(a) | b. `a` must be quantifier-free.
FormulaPtr implies_nnf(const FormulaPtr& a, const FormulaPtr& b);

}  // namespace ifwb

#endif

#ifndef IFWB_TREE_HPP
#define IFWB_TREE_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ifwb/formula.hpp"

namespace ifwb {

enum class TKind { Quant, Conn, Gap };
enum class Conn { And, Or };

class Tree;
using TreePtr = std::shared_ptr<const Tree>;

// Positive initial tree in hat form: every quantifier has one child slot,
// every connective two, and leaves are gaps numbered 0..k-1 left to right.
class Tree {
 public:
  TKind kind;

  QKind qkind = QKind::Forall;       // Quant
  std::string var;                   // Quant
  std::vector<std::string> slash;    // Quant; sorted, unique
  TreePtr child;                     // Quant

  Conn conn = Conn::And;             // Conn
  TreePtr left, right;               // Conn

  int gap = -1;                      // Gap

  explicit Tree(TKind k) : kind(k) {}
};

// Child-index sequence from the root; quantifier child is index 0.
using Locator = std::vector<int>;

TreePtr tquant(QKind q, std::string var, std::vector<std::string> slash,
               TreePtr child);
TreePtr tconn(Conn c, TreePtr left, TreePtr right);
TreePtr tgap(int id = -1);

bool tree_equal(const TreePtr& a, const TreePtr& b);
// Structural identity up to a consistent variable renaming; connective
// children may be swapped (the logic's connectives are commutative).
bool tree_iso(const TreePtr& a, const TreePtr& b);

int gap_count(const TreePtr& t);
// Reassigns gap ids left to right; `old_to_new` maps prior ids (where set).
TreePtr renumber_gaps(const TreePtr& t, std::map<int, int>* old_to_new = nullptr);

TreePtr node_at(const TreePtr& t, const Locator& loc);
TreePtr replace_at(const TreePtr& t, const Locator& loc, const TreePtr& sub);

std::string locator_to_string(const Locator& loc);
Locator locator_from_string(const std::string& s);

// Same grammar as formulas plus the gap token [].
TreePtr parse_tree(const std::string& text);
std::string render_tree(const TreePtr& t);

// PTr: cut at atoms/negations and collapse quantifier-free subformulas to a
// single gap, so only quantifier-dominating connectives survive.
TreePtr prefix_tree(const FormulaPtr& f);

struct PathInfo {
  int gap_id;
  Locator gap_locator;
  // root-to-gap node descriptions (rendered quantifier/connective heads)
  std::vector<std::pair<Locator, std::string>> nodes;
  std::set<std::string> bound;
};

// One path per gap, in gap-id order.
std::vector<PathInfo> paths(const TreePtr& t);

Regularity tree_regularity(const TreePtr& t);

// Variables occurring in the tree: quantified or mentioned in slash sets.
std::set<std::string> tree_vars(const TreePtr& t);
std::set<std::string> tree_bound_vars(const TreePtr& t);

// Free occurrences of u in slash sets are replaced by v.
TreePtr tree_subst(const TreePtr& t, const std::string& u, const std::string& v);
TreePtr tree_slash_all(const TreePtr& t, const std::string& u);
TreePtr tree_slash_nonempty(const TreePtr& t, const std::string& u);

using Completion = std::map<int, FormulaPtr>;

// e-hat: attaches e(gap) at each gap. Every attachment must be a regular
// formula.
FormulaPtr complete(const TreePtr& t, const Completion& e);

struct CompletionFlags {
  bool weak = false;
  bool sentential = false;
  bool regularity_preserving = false;
  bool nice = false;
};

CompletionFlags completion_flags(const TreePtr& t, const Completion& e);

}  // namespace ifwb

#endif

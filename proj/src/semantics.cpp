#include "ifwb/semantics.hpp"

#include <algorithm>
#include <unordered_map>

namespace ifwb {

const char* to_string(Truth t) {
  switch (t) {
    case Truth::True: return "True";
    case Truth::False: return "False";
    case Truth::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

constexpr int kMaxSplitRows = 22;       // 2^k partition masks
constexpr int kMaxCoverRows = 15;       // 3^k cover assignments
constexpr long long kMaxChoices = 20'000'000;  // n^classes odometer bound

class Evaluator {
 public:
  Evaluator(const Structure& m, const EvalOptions& opts) : m_(m), opts_(opts) {}

  bool sat(const Team& x, const FormulaPtr& f) { return eval(x, f, true); }
  bool neg(const Team& x, const FormulaPtr& f) { return eval(x, f, false); }

 private:
  const Structure& m_;
  const EvalOptions& opts_;
  std::unordered_map<std::string, bool> memo_;

  int term_value(const Term& t, const std::vector<int>& row, const Team& x) {
    if (t.kind == TermKind::Const) {
      auto it = m_.constants.find(t.name);
      if (it == m_.constants.end())
        throw PreconditionError("signature",
                                "unknown constant '" + t.name + "'");
      return it->second;
    }
    int i = x.var_index(t.name);
    if (i < 0)
      throw PreconditionError("suitability",
                              "team does not assign variable '" + t.name + "'");
    return row[i];
  }

  // Single-row classical satisfaction; defined for quantifier-free formulas.
  bool classical(const std::vector<int>& row, const Team& x, const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::Atom: {
        std::vector<int> tup;
        tup.reserve(f->terms.size());
        for (const auto& t : f->terms) tup.push_back(term_value(t, row, x));
        return m_.holds(f->rel, tup);
      }
      case FKind::NegAtom: {
        std::vector<int> tup;
        tup.reserve(f->terms.size());
        for (const auto& t : f->terms) tup.push_back(term_value(t, row, x));
        return !m_.holds(f->rel, tup);
      }
      case FKind::Equal:
        return term_value(f->terms[0], row, x) == term_value(f->terms[1], row, x);
      case FKind::NegEqual:
        return term_value(f->terms[0], row, x) != term_value(f->terms[1], row, x);
      case FKind::Neg:
        return !classical(row, x, f->left);
      case FKind::And:
        return classical(row, x, f->left) && classical(row, x, f->right);
      case FKind::Or:
        return classical(row, x, f->left) || classical(row, x, f->right);
      case FKind::Quant:
        throw PreconditionError("flat evaluation", "quantifier in flat position");
    }
    return false;
  }

  std::string key_of(const Team& x, const Formula* f, bool positive) {
    std::string k;
    k.reserve(x.rows.size() * (x.vars.size() + 1) + 12);
    k.push_back(positive ? '+' : '-');
    auto p = reinterpret_cast<uintptr_t>(f);
    for (size_t i = 0; i < sizeof(p); i++) k.push_back(char((p >> (8 * i)) & 0xff));
    for (const auto& row : x.rows) {
      for (int v : row) k.push_back(static_cast<char>(v + 1));
      k.push_back('\0');
    }
    return k;
  }

  bool eval(const Team& x, const FormulaPtr& f, bool positive) {
    std::string key = key_of(x, f.get(), positive);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool result = positive ? eval_pos(x, f) : eval_neg(x, f);
    memo_[key] = result;
    return result;
  }

  bool all_rows(const Team& x, const FormulaPtr& f, bool want) {
    return std::all_of(x.rows.begin(), x.rows.end(), [&](const auto& row) {
      return classical(row, x, f) == want;
    });
  }

  // Enumerates choice functions over ~V-classes and recurses on the
  // supplemented team; used by the positive exists clause and the negative
  // forall clause.
  bool uniform_choice_search(const Team& x, const FormulaPtr& f, bool positive) {
    const std::string& v = f->var;
    const int n = m_.domain_size;
    if (x.rows.empty()) {
      Team empty = x;
      if (empty.var_index(v) < 0) empty.vars.push_back(v);
      return eval(empty, f->left, positive);
    }

    std::vector<int> keep;  // columns outside the slash set
    for (size_t i = 0; i < x.vars.size(); i++)
      if (std::find(f->slash.begin(), f->slash.end(), x.vars[i]) == f->slash.end())
        keep.push_back(static_cast<int>(i));

    std::map<std::vector<int>, int> class_of;
    std::vector<int> row_class(x.rows.size());
    for (size_t r = 0; r < x.rows.size(); r++) {
      std::vector<int> ck;
      ck.reserve(keep.size());
      for (int i : keep) ck.push_back(x.rows[r][i]);
      auto [cit, fresh] = class_of.emplace(std::move(ck),
                                           static_cast<int>(class_of.size()));
      row_class[r] = cit->second;
    }
    const int classes = static_cast<int>(class_of.size());

    Team supd;
    supd.vars = x.vars;
    int vi = supd.var_index(v);
    if (vi < 0) {
      supd.vars.push_back(v);
      vi = static_cast<int>(supd.vars.size()) - 1;
    }

    // Flat body: each class can be decided independently.
    if (!opts_.exhaustive_covers && is_quantifier_free(f->left)) {
      for (int c = 0; c < classes; c++) {
        bool some_value = false;
        for (int a = 0; a < n && !some_value; a++) {
          some_value = true;
          for (size_t r = 0; r < x.rows.size(); r++) {
            if (row_class[r] != c) continue;
            std::vector<int> row = x.rows[r];
            row.resize(supd.vars.size(), 0);
            row[vi] = a;
            if (classical(row, supd, f->left) != positive) {
              some_value = false;
              break;
            }
          }
        }
        if (!some_value) return false;
      }
      return true;
    }

    double combos = 1;
    for (int c = 0; c < classes; c++) combos *= n;
    if (combos > static_cast<double>(kMaxChoices))
      throw Error("choice-function search space too large (" +
                  std::to_string(classes) + " classes over domain " +
                  std::to_string(n) + ")");

    std::vector<int> choice(classes, 0);
    while (true) {
      supd.rows.clear();
      for (size_t r = 0; r < x.rows.size(); r++) {
        std::vector<int> row = x.rows[r];
        row.resize(supd.vars.size(), 0);
        row[vi] = choice[row_class[r]];
        supd.rows.push_back(std::move(row));
      }
      supd.normalize();
      if (eval(supd, f->left, positive)) return true;
      int c = 0;
      while (c < classes && ++choice[c] == n) choice[c++] = 0;
      if (c == classes) return false;
    }
  }

  // Cover/partition search for the positive disjunction clause and the
  // negative conjunction clause.
  bool split_search(const Team& x, const FormulaPtr& f, bool positive) {
    const FormulaPtr& l = f->left;
    const FormulaPtr& r = f->right;
    const size_t k = x.rows.size();

    if (opts_.exhaustive_covers) {
      if (k > kMaxCoverRows)
        throw Error("team too large for exhaustive cover search");
      std::vector<int> side(k, 0);  // 0: left, 1: right, 2: both
      while (true) {
        Team y, z;
        y.vars = z.vars = x.vars;
        for (size_t i = 0; i < k; i++) {
          if (side[i] != 1) y.rows.push_back(x.rows[i]);
          if (side[i] != 0) z.rows.push_back(x.rows[i]);
        }
        if (eval(y, l, positive) && eval(z, r, positive)) return true;
        size_t i = 0;
        while (i < k && ++side[i] == 3) side[i++] = 0;
        if (i == k) return false;
      }
    }

    if (is_quantifier_free(f)) return all_rows_disj(x, l, r, positive);

    // One flat side pins the maximal subteam it can absorb; the rest goes to
    // the other side (sound by downward closure).
    if (is_quantifier_free(l)) {
      Team rest;
      rest.vars = x.vars;
      for (const auto& row : x.rows)
        if (classical(row, x, l) != positive) rest.rows.push_back(row);
      return eval(rest, r, positive);
    }
    if (is_quantifier_free(r)) {
      Team rest;
      rest.vars = x.vars;
      for (const auto& row : x.rows)
        if (classical(row, x, r) != positive) rest.rows.push_back(row);
      return eval(rest, l, positive);
    }

    if (k > kMaxSplitRows) throw Error("team too large for partition search");
    const unsigned long long masks = 1ull << k;
    for (unsigned long long mask = 0; mask < masks; mask++) {
      Team y, z;
      y.vars = z.vars = x.vars;
      for (size_t i = 0; i < k; i++)
        ((mask >> i) & 1 ? y : z).rows.push_back(x.rows[i]);
      if (eval(y, l, positive) && eval(z, r, positive)) return true;
    }
    return false;
  }

  bool all_rows_disj(const Team& x, const FormulaPtr& l, const FormulaPtr& r,
                     bool want) {
    return std::all_of(x.rows.begin(), x.rows.end(), [&](const auto& row) {
      return classical(row, x, l) == want || classical(row, x, r) == want;
    });
  }

  bool eval_pos(const Team& x, const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::Atom:
      case FKind::Equal:
        return all_rows(x, f, true);
      case FKind::NegAtom:
      case FKind::NegEqual:
        return all_rows(x, f, true);
      case FKind::Neg:
        return eval(x, f->left, false);
      case FKind::And:
        return eval(x, f->left, true) && eval(x, f->right, true);
      case FKind::Or:
        return split_search(x, f, true);
      case FKind::Quant:
        if (f->qkind == QKind::Forall)
          return eval(duplicate(x, f->var, m_), f->left, true);
        return uniform_choice_search(x, f, true);
    }
    return false;
  }

  bool eval_neg(const Team& x, const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::Atom:
      case FKind::Equal:
        return all_rows(x, f, false);
      case FKind::NegAtom: {
        // dual of the negated-atom clause: every row satisfies the atom
        auto pos = atom(f->rel, f->terms);
        return all_rows(x, pos, true);
      }
      case FKind::NegEqual: {
        auto pos = equal(f->terms[0], f->terms[1]);
        return all_rows(x, pos, true);
      }
      case FKind::Neg:
        return eval(x, f->left, true);
      case FKind::And:
        return split_search(x, f, false);
      case FKind::Or:
        return eval(x, f->left, false) && eval(x, f->right, false);
      case FKind::Quant:
        if (f->qkind == QKind::Exists)
          return eval(duplicate(x, f->var, m_), f->left, false);
        return uniform_choice_search(x, f, false);
    }
    return false;
  }
};

void check_suitable(const Team& x, const FormulaPtr& f) {
  for (const auto& v : free_vars(f))
    if (x.var_index(v) < 0)
      throw PreconditionError(
          "suitability", "team does not assign free variable '" + v + "'");
}

}  // namespace

bool satisfies(const Structure& m, const Team& x, const FormulaPtr& f,
               const EvalOptions& opts) {
  check_suitable(x, f);
  Team nx = x;
  nx.normalize();
  return Evaluator(m, opts).sat(nx, f);
}

bool neg_satisfies(const Structure& m, const Team& x, const FormulaPtr& f,
                   const EvalOptions& opts) {
  check_suitable(x, f);
  Team nx = x;
  nx.normalize();
  return Evaluator(m, opts).neg(nx, f);
}

Truth truth_value(const Structure& m, const FormulaPtr& sentence,
                  const EvalOptions& opts) {
  FormulaPtr f = prune_unscoped_slashes(sentence);
  auto fv = free_vars(f);
  if (!fv.empty())
    throw PreconditionError("sentence",
                            "formula has free variables; first one: '" +
                                *fv.begin() + "'");
  Team start = Team::singleton_empty();
  if (satisfies(m, start, f, opts)) return Truth::True;
  if (neg_satisfies(m, start, f, opts)) return Truth::False;
  return Truth::Undetermined;
}

}  // namespace ifwb

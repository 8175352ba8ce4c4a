#include "ifwb/skolem.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ifwb {

namespace {

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
  for (int k = 1;; k++) {
    std::string cand = base + std::to_string(k);
    if (!used.count(cand)) {
      used.insert(cand);
      return cand;
    }
  }
}

// Renames duplicate quantifications apart so the universal sweep has one
// column per variable.
FormulaPtr rename_apart(const FormulaPtr& f,
                        std::map<std::string, std::string>& env,
                        std::set<std::string>& taken,
                        std::set<std::string>& used) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::NegAtom: {
      std::vector<Term> ts;
      for (const auto& t : f->terms)
        ts.push_back(t.kind == TermKind::Var && env.count(t.name)
                         ? tvar(env.at(t.name))
                         : t);
      return f->kind == FKind::Atom ? atom(f->rel, ts) : negated_atom(f->rel, ts);
    }
    case FKind::Equal:
    case FKind::NegEqual: {
      auto fix = [&](const Term& t) {
        return t.kind == TermKind::Var && env.count(t.name) ? tvar(env.at(t.name))
                                                            : t;
      };
      return f->kind == FKind::Equal
                 ? equal(fix(f->terms[0]), fix(f->terms[1]))
                 : negated_equal(fix(f->terms[0]), fix(f->terms[1]));
    }
    case FKind::Neg:
      return negation(rename_apart(f->left, env, taken, used));
    case FKind::And:
      return conj(rename_apart(f->left, env, taken, used),
                  rename_apart(f->right, env, taken, used));
    case FKind::Or:
      return disj(rename_apart(f->left, env, taken, used),
                  rename_apart(f->right, env, taken, used));
    case FKind::Quant: {
      std::string name = f->var;
      if (taken.count(name)) name = fresh_name(f->var, used);
      taken.insert(name);
      std::vector<std::string> sl;
      for (const auto& w : f->slash) sl.push_back(env.count(w) ? env.at(w) : w);
      auto saved = env.find(f->var) != env.end()
                       ? std::optional<std::string>(env.at(f->var))
                       : std::nullopt;
      env[f->var] = name;
      FormulaPtr body = rename_apart(f->left, env, taken, used);
      if (saved)
        env[f->var] = *saved;
      else
        env.erase(f->var);
      return quant(f->qkind, name, sl, body);
    }
  }
  return f;
}

struct ScopeEntry {
  std::string var;
  STerm term;
};

struct Builder {
  SkolemPlan plan;
  std::map<std::string, int> const_index;

  STerm const_term(const std::string& name) {
    auto it = const_index.find(name);
    if (it == const_index.end()) {
      it = const_index.emplace(name, plan.constant_names.size()).first;
      plan.constant_names.push_back(name);
    }
    STerm t;
    t.cst = it->second;
    return t;
  }

  STerm term_of(const Term& t, const std::vector<ScopeEntry>& scope) {
    if (t.kind == TermKind::Const) return const_term(t.name);
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->var == t.name) return it->term;
    throw PreconditionError("sentence",
                            "variable '" + t.name + "' is not in scope");
  }

  MatrixNode walk(const FormulaPtr& f, std::vector<ScopeEntry>& scope) {
    switch (f->kind) {
      case FKind::Atom:
      case FKind::NegAtom: {
        MatrixNode n;
        n.kind = MatrixNode::Kind::Lit;
        n.negated = f->kind == FKind::NegAtom;
        n.rel = f->rel;
        for (const auto& t : f->terms) n.args.push_back(term_of(t, scope));
        return n;
      }
      case FKind::Equal:
      case FKind::NegEqual: {
        MatrixNode n;
        n.kind = MatrixNode::Kind::Lit;
        n.negated = f->kind == FKind::NegEqual;
        n.equality = true;
        n.args.push_back(term_of(f->terms[0], scope));
        n.args.push_back(term_of(f->terms[1], scope));
        return n;
      }
      case FKind::And:
      case FKind::Or: {
        MatrixNode n;
        n.kind = f->kind == FKind::And ? MatrixNode::Kind::And
                                       : MatrixNode::Kind::Or;
        n.kids.push_back(walk(f->left, scope));
        n.kids.push_back(walk(f->right, scope));
        return n;
      }
      case FKind::Quant: {
        if (f->qkind == QKind::Forall) {
          STerm t;
          t.uvar = static_cast<int>(plan.universals.size());
          plan.universals.push_back(f->var);
          scope.push_back({f->var, t});
        } else {
          SkolemFun fun;
          fun.for_var = f->var;
          for (const auto& e : scope)
            if (std::find(f->slash.begin(), f->slash.end(), e.var) ==
                f->slash.end())
              fun.args.push_back(e.term);
          STerm t;
          t.fun = static_cast<int>(plan.funs.size());
          t.args = fun.args;
          plan.funs.push_back(std::move(fun));
          scope.push_back({f->var, t});
        }
        MatrixNode n = walk(f->left, scope);
        scope.pop_back();
        return n;
      }
      case FKind::Neg:
        throw PreconditionError("negation normal form",
                                "general negation cannot be Skolemized");
    }
    throw PreconditionError("skolemize", "malformed formula");
  }
};

std::string sterm_to_string(const SkolemPlan& plan, const STerm& t) {
  if (t.uvar >= 0) return plan.universals[t.uvar];
  if (t.cst >= 0) return plan.constant_names[t.cst];
  std::string s = "f_" + plan.funs[t.fun].for_var + "(";
  for (size_t i = 0; i < t.args.size(); i++) {
    if (i) s += ",";
    s += sterm_to_string(plan, t.args[i]);
  }
  return s + ")";
}

void matrix_to_string(const SkolemPlan& plan, const MatrixNode& n,
                      std::ostringstream& os) {
  switch (n.kind) {
    case MatrixNode::Kind::Lit:
      if (n.equality) {
        os << sterm_to_string(plan, n.args[0]) << (n.negated ? "!=" : "=")
           << sterm_to_string(plan, n.args[1]);
      } else {
        if (n.negated) os << '~';
        os << n.rel << '(';
        for (size_t i = 0; i < n.args.size(); i++) {
          if (i) os << ',';
          os << sterm_to_string(plan, n.args[i]);
        }
        os << ')';
      }
      return;
    case MatrixNode::Kind::And:
    case MatrixNode::Kind::Or:
      os << '(';
      matrix_to_string(plan, n.kids[0], os);
      os << (n.kind == MatrixNode::Kind::And ? " & " : " | ");
      matrix_to_string(plan, n.kids[1], os);
      os << ')';
      return;
  }
}

}  // namespace

SkolemPlan skolemize(const FormulaPtr& sentence) {
  FormulaPtr pruned = prune_unscoped_slashes(sentence);
  if (!is_negation_normal(pruned))
    throw PreconditionError("negation normal form",
                            "sentence contains a general negation");
  if (!free_vars(pruned).empty())
    throw PreconditionError("sentence", "formula has free variables");
  if (!regularity(pruned).regular)
    throw PreconditionError("regularity", "sentence is not regular");

  std::set<std::string> used = var_sets(pruned).all;
  std::set<std::string> taken;
  std::map<std::string, std::string> env;
  FormulaPtr renamed = rename_apart(pruned, env, taken, used);

  Builder b;
  std::vector<ScopeEntry> scope;
  b.plan.matrix = b.walk(renamed, scope);
  return b.plan;
}

std::string plan_to_string(const SkolemPlan& plan) {
  std::ostringstream os;
  for (size_t i = 0; i < plan.funs.size(); i++) {
    if (i) os << ", ";
    os << "f_" << plan.funs[i].for_var << "/" << plan.funs[i].args.size();
  }
  os << " ; A";
  for (const auto& u : plan.universals) os << ' ' << u;
  os << " : ";
  matrix_to_string(plan, plan.matrix, os);
  return os.str();
}

long long default_skolem_budget() {
  if (const char* env = std::getenv("IFWB_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 100'000'000LL;
}

namespace {

struct Need {
  int fun;
  long long key;
};

enum class MStat { True, False, Need };

class Search {
 public:
  Search(const Structure& m, const SkolemPlan& plan, long long budget)
      : m_(m), plan_(plan), budget_(budget) {
    consts_.reserve(plan.constant_names.size());
    for (const auto& name : plan.constant_names) {
      auto it = m.constants.find(name);
      if (it == m.constants.end())
        throw PreconditionError("signature", "unknown constant '" + name + "'");
      consts_.push_back(it->second);
    }
    tables_.resize(plan.funs.size());
    tuple_.assign(plan.universals.size(), 0);
  }

  bool run() { return solve(0); }

 private:
  const Structure& m_;
  const SkolemPlan& plan_;
  long long budget_;
  long long nodes_ = 0;
  std::vector<int> consts_;
  std::vector<std::unordered_map<long long, int>> tables_;
  std::vector<int> tuple_;

  void spend() {
    if (++nodes_ > budget_) throw BudgetError(budget_);
  }

  // -1 when an entry is missing; `need` reports the first one.
  int term_value(const STerm& t, Need& need) {
    if (t.uvar >= 0) return tuple_[t.uvar];
    if (t.cst >= 0) return consts_[t.cst];
    long long key = 0;
    for (const auto& a : t.args) {
      int v = term_value(a, need);
      if (v < 0) return -1;
      key = key * (m_.domain_size + 1) + v + 1;
    }
    auto& table = tables_[t.fun];
    auto it = table.find(key);
    if (it == table.end()) {
      need = {t.fun, key};
      return -1;
    }
    return it->second;
  }

  MStat eval(const MatrixNode& n, Need& need) {
    spend();
    switch (n.kind) {
      case MatrixNode::Kind::Lit: {
        std::vector<int> vals;
        vals.reserve(n.args.size());
        for (const auto& a : n.args) {
          int v = term_value(a, need);
          if (v < 0) return MStat::Need;
          vals.push_back(v);
        }
        bool holds = n.equality ? vals[0] == vals[1] : m_.holds(n.rel, vals);
        return holds != n.negated ? MStat::True : MStat::False;
      }
      case MatrixNode::Kind::And: {
        bool needs = false;
        Need first{};
        for (const auto& kid : n.kids) {
          Need local{};
          MStat s = eval(kid, local);
          if (s == MStat::False) return MStat::False;
          if (s == MStat::Need && !needs) {
            needs = true;
            first = local;
          }
        }
        if (needs) {
          need = first;
          return MStat::Need;
        }
        return MStat::True;
      }
      case MatrixNode::Kind::Or: {
        bool needs = false;
        Need first{};
        for (const auto& kid : n.kids) {
          Need local{};
          MStat s = eval(kid, local);
          if (s == MStat::True) return MStat::True;
          if (s == MStat::Need && !needs) {
            needs = true;
            first = local;
          }
        }
        if (needs) {
          need = first;
          return MStat::Need;
        }
        return MStat::False;
      }
    }
    return MStat::False;
  }

  bool solve(long long tuple_index) {
    const int u = static_cast<int>(plan_.universals.size());
    long long total = 1;
    for (int i = 0; i < u; i++) total *= m_.domain_size;
    if (tuple_index == total) return true;

    long long ix = tuple_index;
    for (int i = u - 1; i >= 0; i--) {
      tuple_[i] = static_cast<int>(ix % m_.domain_size);
      ix /= m_.domain_size;
    }

    Need need{};
    MStat s = eval(plan_.matrix, need);
    if (s == MStat::True) return solve(tuple_index + 1);
    if (s == MStat::False) return false;
    for (int val = 0; val < m_.domain_size; val++) {
      spend();
      tables_[need.fun][need.key] = val;
      // re-decode the tuple clobbered by deeper calls
      if (solve(tuple_index)) return true;
      long long jx = tuple_index;
      for (int i = u - 1; i >= 0; i--) {
        tuple_[i] = static_cast<int>(jx % m_.domain_size);
        jx /= m_.domain_size;
      }
    }
    tables_[need.fun].erase(need.key);
    return false;
  }
};

}  // namespace

bool truth_by_skolem(const Structure& m, const FormulaPtr& sentence,
                     long long budget) {
  if (budget <= 0) budget = default_skolem_budget();
  SkolemPlan plan = skolemize(sentence);
  return Search(m, plan, budget).run();
}

}  // namespace ifwb

#include "ifwb/formula.hpp"

#include <algorithm>
#include <iterator>
#include <map>

namespace ifwb {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

FormulaPtr atom(std::string rel, std::vector<Term> terms) {
  auto f = std::make_shared<Formula>(FKind::Atom);
  f->rel = std::move(rel);
  f->terms = std::move(terms);
  return f;
}

FormulaPtr negated_atom(std::string rel, std::vector<Term> terms) {
  auto f = std::make_shared<Formula>(FKind::NegAtom);
  f->rel = std::move(rel);
  f->terms = std::move(terms);
  return f;
}

FormulaPtr equal(Term a, Term b) {
  auto f = std::make_shared<Formula>(FKind::Equal);
  f->terms = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr negated_equal(Term a, Term b) {
  auto f = std::make_shared<Formula>(FKind::NegEqual);
  f->terms = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr negation(FormulaPtr sub) {
  // atomic negations normalize to their dedicated kinds and double negation
  // cancels; both are exact under the dual satisfaction relation
  switch (sub->kind) {
    case FKind::Atom:
      return negated_atom(sub->rel, sub->terms);
    case FKind::NegAtom:
      return atom(sub->rel, sub->terms);
    case FKind::Equal:
      return negated_equal(sub->terms[0], sub->terms[1]);
    case FKind::NegEqual:
      return equal(sub->terms[0], sub->terms[1]);
    case FKind::Neg:
      return sub->left;
    default:
      break;
  }
  auto f = std::make_shared<Formula>(FKind::Neg);
  f->left = std::move(sub);
  return f;
}

FormulaPtr conj(FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>(FKind::And);
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaPtr disj(FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>(FKind::Or);
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaPtr quant(QKind q, std::string var, std::vector<std::string> slash,
                 FormulaPtr body) {
  auto f = std::make_shared<Formula>(FKind::Quant);
  f->qkind = q;
  f->var = std::move(var);
  f->slash = sorted_unique(std::move(slash));
  f->left = std::move(body);
  return f;
}

FormulaPtr forall(std::string var, FormulaPtr body) {
  return quant(QKind::Forall, std::move(var), {}, std::move(body));
}
FormulaPtr forall(std::string var, std::vector<std::string> slash, FormulaPtr body) {
  return quant(QKind::Forall, std::move(var), std::move(slash), std::move(body));
}
FormulaPtr exists(std::string var, FormulaPtr body) {
  return quant(QKind::Exists, std::move(var), {}, std::move(body));
}
FormulaPtr exists(std::string var, std::vector<std::string> slash, FormulaPtr body) {
  return quant(QKind::Exists, std::move(var), std::move(slash), std::move(body));
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::Atom:
    case FKind::NegAtom:
      return a->rel == b->rel && a->terms == b->terms;
    case FKind::Equal:
    case FKind::NegEqual:
      return a->terms == b->terms;
    case FKind::Neg:
      return structurally_equal(a->left, b->left);
    case FKind::And:
    case FKind::Or:
      return structurally_equal(a->left, b->left) &&
             structurally_equal(a->right, b->right);
    case FKind::Quant:
      return a->qkind == b->qkind && a->var == b->var && a->slash == b->slash &&
             structurally_equal(a->left, b->left);
  }
  return false;
}

VarSets var_sets(const FormulaPtr& f) {
  VarSets out;
  // free
  struct {
    std::set<std::string> operator()(const FormulaPtr& g) {
      std::set<std::string> fv;
      switch (g->kind) {
        case FKind::Atom:
        case FKind::NegAtom:
        case FKind::Equal:
        case FKind::NegEqual:
          for (const auto& t : g->terms)
            if (t.kind == TermKind::Var) fv.insert(t.name);
          break;
        case FKind::Neg:
          fv = (*this)(g->left);
          break;
        case FKind::And:
        case FKind::Or: {
          fv = (*this)(g->left);
          auto r = (*this)(g->right);
          fv.insert(r.begin(), r.end());
          break;
        }
        case FKind::Quant: {
          fv = (*this)(g->left);
          fv.erase(g->var);
          fv.insert(g->slash.begin(), g->slash.end());
          break;
        }
      }
      return fv;
    }
  } fv_of;
  out.free = fv_of(f);

  struct {
    void operator()(const FormulaPtr& g, std::set<std::string>& bv) {
      switch (g->kind) {
        case FKind::Neg:
          (*this)(g->left, bv);
          break;
        case FKind::And:
        case FKind::Or:
          (*this)(g->left, bv);
          (*this)(g->right, bv);
          break;
        case FKind::Quant:
          bv.insert(g->var);
          (*this)(g->left, bv);
          break;
        default:
          break;
      }
    }
  } bv_of;
  bv_of(f, out.bound);

  out.all = out.free;
  out.all.insert(out.bound.begin(), out.bound.end());
  return out;
}

std::set<std::string> free_vars(const FormulaPtr& f) { return var_sets(f).free; }
std::set<std::string> bound_vars(const FormulaPtr& f) { return var_sets(f).bound; }

namespace {

// clause 2: no quantifier over v subordinate to another quantifier over v
bool no_requantification(const FormulaPtr& f, std::set<std::string>& above) {
  switch (f->kind) {
    case FKind::Neg:
      return no_requantification(f->left, above);
    case FKind::And:
    case FKind::Or:
      return no_requantification(f->left, above) &&
             no_requantification(f->right, above);
    case FKind::Quant: {
      if (above.count(f->var)) return false;
      bool inserted = above.insert(f->var).second;
      bool ok = no_requantification(f->left, above);
      if (inserted) above.erase(f->var);
      return ok;
    }
    default:
      return true;
  }
}

void count_quantifications(const FormulaPtr& f,
                           std::map<std::string, int>& counts);

}  // namespace

Regularity regularity(const FormulaPtr& f) {
  Regularity r;
  VarSets vs = var_sets(f);
  std::set<std::string> both;
  std::set_intersection(vs.free.begin(), vs.free.end(), vs.bound.begin(),
                        vs.bound.end(), std::inserter(both, both.begin()));
  bool clause1 = both.empty();
  std::set<std::string> above;
  r.regular = clause1 && no_requantification(f, above);

  std::map<std::string, int> counts;
  count_quantifications(f, counts);
  bool once = std::all_of(counts.begin(), counts.end(),
                          [](const auto& kv) { return kv.second <= 1; });
  r.strongly_regular = clause1 && once;
  return r;
}

namespace {

void count_quantifications(const FormulaPtr& f,
                           std::map<std::string, int>& counts) {
  switch (f->kind) {
    case FKind::Neg:
      count_quantifications(f->left, counts);
      break;
    case FKind::And:
    case FKind::Or:
      count_quantifications(f->left, counts);
      count_quantifications(f->right, counts);
      break;
    case FKind::Quant:
      counts[f->var]++;
      count_quantifications(f->left, counts);
      break;
    default:
      break;
  }
}

Term subst_term(const Term& t, const std::string& u, const std::string& v) {
  if (t.kind == TermKind::Var && t.name == u) return tvar(v);
  return t;
}

}  // namespace

FormulaPtr subst(const FormulaPtr& f, const std::string& u, const std::string& v) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::NegAtom: {
      std::vector<Term> ts;
      for (const auto& t : f->terms) ts.push_back(subst_term(t, u, v));
      return f->kind == FKind::Atom ? atom(f->rel, std::move(ts))
                                    : negated_atom(f->rel, std::move(ts));
    }
    case FKind::Equal:
      return equal(subst_term(f->terms[0], u, v), subst_term(f->terms[1], u, v));
    case FKind::NegEqual:
      return negated_equal(subst_term(f->terms[0], u, v),
                           subst_term(f->terms[1], u, v));
    case FKind::Neg:
      return negation(subst(f->left, u, v));
    case FKind::And:
      return conj(subst(f->left, u, v), subst(f->right, u, v));
    case FKind::Or:
      return disj(subst(f->left, u, v), subst(f->right, u, v));
    case FKind::Quant: {
      std::vector<std::string> sl;
      for (const auto& w : f->slash) sl.push_back(w == u ? v : w);
      // occurrences below a re-quantification of u are bound, not replaced
      FormulaPtr body = (f->var == u) ? f->left : subst(f->left, u, v);
      return quant(f->qkind, f->var, std::move(sl), body);
    }
  }
  return f;
}

namespace {

FormulaPtr add_slash(const FormulaPtr& f, const std::string& u, bool only_nonempty) {
  switch (f->kind) {
    case FKind::Neg:
      return negation(add_slash(f->left, u, only_nonempty));
    case FKind::And:
      return conj(add_slash(f->left, u, only_nonempty),
                  add_slash(f->right, u, only_nonempty));
    case FKind::Or:
      return disj(add_slash(f->left, u, only_nonempty),
                  add_slash(f->right, u, only_nonempty));
    case FKind::Quant: {
      std::vector<std::string> sl = f->slash;
      if ((!only_nonempty || !sl.empty()) && f->var != u) sl.push_back(u);
      return quant(f->qkind, f->var, std::move(sl),
                   add_slash(f->left, u, only_nonempty));
    }
    default:
      return f;
  }
}

}  // namespace

FormulaPtr slash_all(const FormulaPtr& f, const std::string& u) {
  return add_slash(f, u, false);
}

namespace {

FormulaPtr prune_slashes(const FormulaPtr& f, std::set<std::string>& scoped) {
  switch (f->kind) {
    case FKind::Neg:
      return negation(prune_slashes(f->left, scoped));
    case FKind::And:
      return conj(prune_slashes(f->left, scoped),
                  prune_slashes(f->right, scoped));
    case FKind::Or:
      return disj(prune_slashes(f->left, scoped),
                  prune_slashes(f->right, scoped));
    case FKind::Quant: {
      std::vector<std::string> sl;
      for (const auto& w : f->slash)
        if (scoped.count(w)) sl.push_back(w);
      bool fresh = scoped.insert(f->var).second;
      FormulaPtr body = prune_slashes(f->left, scoped);
      if (fresh) scoped.erase(f->var);
      return quant(f->qkind, f->var, std::move(sl), body);
    }
    default:
      return f;
  }
}

}  // namespace

FormulaPtr prune_unscoped_slashes(const FormulaPtr& f) {
  std::set<std::string> scoped;
  return prune_slashes(f, scoped);
}

FormulaPtr slash_nonempty(const FormulaPtr& f, const std::string& v) {
  return add_slash(f, v, true);
}

bool is_quantifier_free(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Quant:
      return false;
    case FKind::Neg:
      return is_quantifier_free(f->left);
    case FKind::And:
    case FKind::Or:
      return is_quantifier_free(f->left) && is_quantifier_free(f->right);
    default:
      return true;
  }
}

bool is_negation_normal(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Neg:
      return false;
    case FKind::And:
    case FKind::Or:
      return is_negation_normal(f->left) && is_negation_normal(f->right);
    case FKind::Quant:
      return is_negation_normal(f->left);
    default:
      return true;
  }
}

FormulaPtr negate_qf(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
      return negated_atom(f->rel, f->terms);
    case FKind::NegAtom:
      return atom(f->rel, f->terms);
    case FKind::Equal:
      return negated_equal(f->terms[0], f->terms[1]);
    case FKind::NegEqual:
      return equal(f->terms[0], f->terms[1]);
    case FKind::Neg:
      return f->left;
    case FKind::And:
      return disj(negate_qf(f->left), negate_qf(f->right));
    case FKind::Or:
      return conj(negate_qf(f->left), negate_qf(f->right));
    case FKind::Quant:
      throw PreconditionError("quantifier-free negation",
                              "cannot negate a quantified formula in NNF");
  }
  return f;
}

FormulaPtr implies_nnf(const FormulaPtr& a, const FormulaPtr& b) {
  return disj(negate_qf(a), b);
}

}  // namespace ifwb

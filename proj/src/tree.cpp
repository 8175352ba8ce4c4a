#include "ifwb/tree.hpp"

#include <algorithm>
#include <sstream>

namespace ifwb {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

TreePtr tquant(QKind q, std::string var, std::vector<std::string> slash,
               TreePtr child) {
  auto t = std::make_shared<Tree>(TKind::Quant);
  t->qkind = q;
  t->var = std::move(var);
  t->slash = sorted_unique(std::move(slash));
  t->child = std::move(child);
  return t;
}

TreePtr tconn(Conn c, TreePtr left, TreePtr right) {
  auto t = std::make_shared<Tree>(TKind::Conn);
  t->conn = c;
  t->left = std::move(left);
  t->right = std::move(right);
  return t;
}

TreePtr tgap(int id) {
  auto t = std::make_shared<Tree>(TKind::Gap);
  t->gap = id;
  return t;
}

bool tree_equal(const TreePtr& a, const TreePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case TKind::Gap:
      return a->gap == b->gap;
    case TKind::Quant:
      return a->qkind == b->qkind && a->var == b->var && a->slash == b->slash &&
             tree_equal(a->child, b->child);
    case TKind::Conn:
      return a->conn == b->conn && tree_equal(a->left, b->left) &&
             tree_equal(a->right, b->right);
  }
  return false;
}

namespace {

// Injective variable renaming built up during the match; connective children
// may swap.
bool iso_rec(const TreePtr& a, const TreePtr& b,
             std::map<std::string, std::string>& fwd,
             std::map<std::string, std::string>& bwd) {
  auto match_var = [&](const std::string& x, const std::string& y) {
    auto f = fwd.find(x);
    auto g = bwd.find(y);
    if (f == fwd.end() && g == bwd.end()) {
      fwd[x] = y;
      bwd[y] = x;
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == y && g->second == x;
  };
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TKind::Gap:
      return true;
    case TKind::Quant: {
      if (a->qkind != b->qkind || a->slash.size() != b->slash.size())
        return false;
      auto save_f = fwd, save_b = bwd;
      if (!match_var(a->var, b->var)) return false;
      // slash sets: match as sets under the renaming, extending it greedily
      std::vector<std::string> rest(b->slash.begin(), b->slash.end());
      for (const auto& x : a->slash) {
        bool found = false;
        for (auto it = rest.begin(); it != rest.end(); ++it) {
          auto f2 = fwd, b2 = bwd;
          if (match_var(x, *it)) {
            rest.erase(it);
            found = true;
            break;
          }
          fwd = f2;
          bwd = b2;
        }
        if (!found) {
          fwd = save_f;
          bwd = save_b;
          return false;
        }
      }
      if (iso_rec(a->child, b->child, fwd, bwd)) return true;
      fwd = save_f;
      bwd = save_b;
      return false;
    }
    case TKind::Conn: {
      if (a->conn != b->conn) return false;
      auto save_f = fwd, save_b = bwd;
      if (iso_rec(a->left, b->left, fwd, bwd) &&
          iso_rec(a->right, b->right, fwd, bwd))
        return true;
      fwd = save_f;
      bwd = save_b;
      if (iso_rec(a->left, b->right, fwd, bwd) &&
          iso_rec(a->right, b->left, fwd, bwd))
        return true;
      fwd = save_f;
      bwd = save_b;
      return false;
    }
  }
  return false;
}

}  // namespace

bool tree_iso(const TreePtr& a, const TreePtr& b) {
  std::map<std::string, std::string> fwd, bwd;
  return iso_rec(a, b, fwd, bwd);
}

int gap_count(const TreePtr& t) {
  switch (t->kind) {
    case TKind::Gap:
      return 1;
    case TKind::Quant:
      return gap_count(t->child);
    case TKind::Conn:
      return gap_count(t->left) + gap_count(t->right);
  }
  return 0;
}

namespace {

TreePtr renumber_rec(const TreePtr& t, int& next, std::map<int, int>* old_to_new) {
  switch (t->kind) {
    case TKind::Gap: {
      int id = next++;
      if (old_to_new && t->gap >= 0) (*old_to_new)[t->gap] = id;
      return tgap(id);
    }
    case TKind::Quant:
      return tquant(t->qkind, t->var, t->slash,
                    renumber_rec(t->child, next, old_to_new));
    case TKind::Conn: {
      // sequence the recursion; argument evaluation order is unspecified
      TreePtr l = renumber_rec(t->left, next, old_to_new);
      TreePtr r = renumber_rec(t->right, next, old_to_new);
      return tconn(t->conn, l, r);
    }
  }
  return t;
}

}  // namespace

TreePtr renumber_gaps(const TreePtr& t, std::map<int, int>* old_to_new) {
  int next = 0;
  return renumber_rec(t, next, old_to_new);
}

TreePtr node_at(const TreePtr& t, const Locator& loc) {
  TreePtr cur = t;
  for (int ix : loc) {
    if (!cur) break;
    switch (cur->kind) {
      case TKind::Quant:
        cur = (ix == 0) ? cur->child : nullptr;
        break;
      case TKind::Conn:
        cur = (ix == 0) ? cur->left : (ix == 1 ? cur->right : nullptr);
        break;
      case TKind::Gap:
        cur = nullptr;
        break;
    }
  }
  if (!cur)
    throw PreconditionError("locator", "no node at " + locator_to_string(loc));
  return cur;
}

TreePtr replace_at(const TreePtr& t, const Locator& loc, const TreePtr& sub) {
  if (loc.empty()) return sub;
  Locator rest(loc.begin() + 1, loc.end());
  switch (t->kind) {
    case TKind::Quant:
      if (loc[0] != 0) break;
      return tquant(t->qkind, t->var, t->slash, replace_at(t->child, rest, sub));
    case TKind::Conn:
      if (loc[0] == 0)
        return tconn(t->conn, replace_at(t->left, rest, sub), t->right);
      if (loc[0] == 1)
        return tconn(t->conn, t->left, replace_at(t->right, rest, sub));
      break;
    case TKind::Gap:
      break;
  }
  throw PreconditionError("locator", "no node at " + locator_to_string(loc));
}

std::string locator_to_string(const Locator& loc) {
  if (loc.empty()) return "-";
  std::ostringstream os;
  for (size_t i = 0; i < loc.size(); i++) {
    if (i) os << '.';
    os << loc[i];
  }
  return os.str();
}

Locator locator_from_string(const std::string& s) {
  Locator loc;
  if (s.empty() || s == "-" || s == "root") return loc;
  std::istringstream is(s);
  std::string part;
  while (std::getline(is, part, '.')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw PreconditionError("locator", "bad locator '" + s + "'");
    loc.push_back(std::stoi(part));
  }
  return loc;
}

namespace {

bool contains_quantifier(const FormulaPtr& f) { return !is_quantifier_free(f); }

TreePtr cut(const FormulaPtr& f) {
  // A node survives only while a quantifier occurs at or below it; maximal
  // quantifier-free subformulas collapse to a single gap.
  if (!contains_quantifier(f)) return tgap();
  switch (f->kind) {
    case FKind::Quant:
      return tquant(f->qkind, f->var, f->slash, cut(f->left));
    case FKind::And:
      return tconn(Conn::And, cut(f->left), cut(f->right));
    case FKind::Or:
      return tconn(Conn::Or, cut(f->left), cut(f->right));
    case FKind::Neg:
      // negations never belong to a positive initial tree
      return tgap();
    default:
      return tgap();
  }
}

}  // namespace

TreePtr prefix_tree(const FormulaPtr& f) { return renumber_gaps(cut(f)); }

namespace {

std::string head_of(const TreePtr& t) {
  std::ostringstream os;
  switch (t->kind) {
    case TKind::Quant: {
      os << '(' << (t->qkind == QKind::Forall ? "A " : "E ") << t->var;
      if (!t->slash.empty()) {
        os << "/{";
        for (size_t i = 0; i < t->slash.size(); i++) {
          if (i) os << ',';
          os << t->slash[i];
        }
        os << '}';
      }
      os << ')';
      break;
    }
    case TKind::Conn:
      os << (t->conn == Conn::And ? "&" : "|");
      break;
    case TKind::Gap:
      os << "[]";
      break;
  }
  return os.str();
}

void collect_paths(const TreePtr& t, Locator& loc, PathInfo cur,
                   std::vector<PathInfo>& out) {
  cur.nodes.emplace_back(loc, head_of(t));
  switch (t->kind) {
    case TKind::Gap:
      cur.gap_id = t->gap;
      cur.gap_locator = loc;
      out.push_back(std::move(cur));
      return;
    case TKind::Quant: {
      cur.bound.insert(t->var);
      loc.push_back(0);
      collect_paths(t->child, loc, std::move(cur), out);
      loc.pop_back();
      return;
    }
    case TKind::Conn: {
      loc.push_back(0);
      collect_paths(t->left, loc, cur, out);
      loc.back() = 1;
      collect_paths(t->right, loc, std::move(cur), out);
      loc.pop_back();
      return;
    }
  }
}

}  // namespace

std::vector<PathInfo> paths(const TreePtr& t) {
  std::vector<PathInfo> out;
  Locator loc;
  PathInfo seed;
  seed.gap_id = -1;
  collect_paths(t, loc, seed, out);
  std::sort(out.begin(), out.end(),
            [](const PathInfo& a, const PathInfo& b) { return a.gap_id < b.gap_id; });
  return out;
}

std::set<std::string> tree_vars(const TreePtr& t) {
  std::set<std::string> out;
  struct {
    void operator()(const TreePtr& t, std::set<std::string>& out) {
      switch (t->kind) {
        case TKind::Quant:
          out.insert(t->var);
          out.insert(t->slash.begin(), t->slash.end());
          (*this)(t->child, out);
          break;
        case TKind::Conn:
          (*this)(t->left, out);
          (*this)(t->right, out);
          break;
        case TKind::Gap:
          break;
      }
    }
  } walk;
  walk(t, out);
  return out;
}

std::set<std::string> tree_bound_vars(const TreePtr& t) {
  std::set<std::string> out;
  struct {
    void operator()(const TreePtr& t, std::set<std::string>& out) {
      switch (t->kind) {
        case TKind::Quant:
          out.insert(t->var);
          (*this)(t->child, out);
          break;
        case TKind::Conn:
          (*this)(t->left, out);
          (*this)(t->right, out);
          break;
        case TKind::Gap:
          break;
      }
    }
  } walk;
  walk(t, out);
  return out;
}

namespace {

// FV of a tree under the IF recursion, gaps contributing nothing.
std::set<std::string> tree_free_vars(const TreePtr& t) {
  switch (t->kind) {
    case TKind::Gap:
      return {};
    case TKind::Quant: {
      auto fv = tree_free_vars(t->child);
      fv.erase(t->var);
      fv.insert(t->slash.begin(), t->slash.end());
      return fv;
    }
    case TKind::Conn: {
      auto fv = tree_free_vars(t->left);
      auto r = tree_free_vars(t->right);
      fv.insert(r.begin(), r.end());
      return fv;
    }
  }
  return {};
}

bool tree_no_requant(const TreePtr& t, std::set<std::string>& above) {
  switch (t->kind) {
    case TKind::Gap:
      return true;
    case TKind::Quant: {
      if (above.count(t->var)) return false;
      above.insert(t->var);
      bool ok = tree_no_requant(t->child, above);
      above.erase(t->var);
      return ok;
    }
    case TKind::Conn:
      return tree_no_requant(t->left, above) && tree_no_requant(t->right, above);
  }
  return true;
}

void tree_quant_counts(const TreePtr& t, std::map<std::string, int>& counts) {
  switch (t->kind) {
    case TKind::Quant:
      counts[t->var]++;
      tree_quant_counts(t->child, counts);
      break;
    case TKind::Conn:
      tree_quant_counts(t->left, counts);
      tree_quant_counts(t->right, counts);
      break;
    case TKind::Gap:
      break;
  }
}

}  // namespace

Regularity tree_regularity(const TreePtr& t) {
  Regularity r;
  auto fv = tree_free_vars(t);
  auto bv = tree_bound_vars(t);
  bool clause1 = std::none_of(fv.begin(), fv.end(),
                              [&](const std::string& v) { return bv.count(v); });
  std::set<std::string> above;
  r.regular = clause1 && tree_no_requant(t, above);
  std::map<std::string, int> counts;
  tree_quant_counts(t, counts);
  r.strongly_regular =
      clause1 && std::all_of(counts.begin(), counts.end(),
                             [](const auto& kv) { return kv.second <= 1; });
  return r;
}

TreePtr tree_subst(const TreePtr& t, const std::string& u, const std::string& v) {
  switch (t->kind) {
    case TKind::Gap:
      return t;
    case TKind::Quant: {
      std::vector<std::string> sl;
      for (const auto& w : t->slash) sl.push_back(w == u ? v : w);
      TreePtr body = (t->var == u) ? t->child : tree_subst(t->child, u, v);
      return tquant(t->qkind, t->var, std::move(sl), body);
    }
    case TKind::Conn:
      return tconn(t->conn, tree_subst(t->left, u, v), tree_subst(t->right, u, v));
  }
  return t;
}

namespace {

TreePtr tree_add_slash(const TreePtr& t, const std::string& u, bool only_nonempty) {
  switch (t->kind) {
    case TKind::Gap:
      return t;
    case TKind::Quant: {
      std::vector<std::string> sl = t->slash;
      if ((!only_nonempty || !sl.empty()) && t->var != u) sl.push_back(u);
      return tquant(t->qkind, t->var, std::move(sl),
                    tree_add_slash(t->child, u, only_nonempty));
    }
    case TKind::Conn:
      return tconn(t->conn, tree_add_slash(t->left, u, only_nonempty),
                   tree_add_slash(t->right, u, only_nonempty));
  }
  return t;
}

FormulaPtr attach(const TreePtr& t, const Completion& e) {
  switch (t->kind) {
    case TKind::Gap: {
      auto it = e.find(t->gap);
      if (it == e.end())
        throw PreconditionError("completion totality",
                                "no formula for gap " + std::to_string(t->gap));
      return it->second;
    }
    case TKind::Quant:
      return quant(t->qkind, t->var, t->slash, attach(t->child, e));
    case TKind::Conn: {
      FormulaPtr l = attach(t->left, e);
      FormulaPtr r = attach(t->right, e);
      return t->conn == Conn::And ? conj(l, r) : disj(l, r);
    }
  }
  throw PreconditionError("completion", "malformed tree");
}

}  // namespace

TreePtr tree_slash_all(const TreePtr& t, const std::string& u) {
  return tree_add_slash(t, u, false);
}

TreePtr tree_slash_nonempty(const TreePtr& t, const std::string& u) {
  return tree_add_slash(t, u, true);
}

FormulaPtr complete(const TreePtr& t, const Completion& e) {
  for (const auto& [gap, f] : e) {
    if (!regularity(f).regular)
      throw PreconditionError(
          "completing function range",
          "attachment for gap " + std::to_string(gap) +
              " is not a regular formula: " + render_formula(f));
  }
  return attach(t, e);
}

CompletionFlags completion_flags(const TreePtr& t, const Completion& e) {
  CompletionFlags flags;
  flags.weak = true;
  flags.sentential = true;
  flags.regularity_preserving = true;
  for (const PathInfo& p : paths(t)) {
    auto it = e.find(p.gap_id);
    if (it == e.end())
      throw PreconditionError("completion totality",
                              "no formula for gap " + std::to_string(p.gap_id));
    const FormulaPtr& f = it->second;
    if (!is_quantifier_free(f)) flags.weak = false;
    VarSets vs = var_sets(f);
    for (const auto& v : vs.free)
      if (!p.bound.count(v)) flags.sentential = false;
    for (const auto& v : vs.bound)
      if (p.bound.count(v)) flags.regularity_preserving = false;
  }
  flags.nice = flags.sentential && flags.regularity_preserving;
  return flags;
}

}  // namespace ifwb

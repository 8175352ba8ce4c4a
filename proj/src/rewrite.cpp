#include "ifwb/rewrite.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <set>

namespace ifwb {

RuleId rule_from_string(const std::string& s) {
  if (s == "rename") return RuleId::Rename;
  if (s == "extract-weak") return RuleId::ExtractWeak;
  if (s == "extract-strong") return RuleId::ExtractStrong;
  if (s == "distribute") return RuleId::Distribute;
  if (s == "swap") return RuleId::Swap;
  if (s == "drop-ex-slash") return RuleId::DropExSlash;
  throw PreconditionError("rule", "unknown rule '" + s + "'");
}

const char* to_string(RuleId r) {
  switch (r) {
    case RuleId::Rename: return "rename";
    case RuleId::ExtractWeak: return "extract-weak";
    case RuleId::ExtractStrong: return "extract-strong";
    case RuleId::Distribute: return "distribute";
    case RuleId::Swap: return "swap";
    case RuleId::DropExSlash: return "drop-ex-slash";
  }
  return "?";
}

namespace {

void gap_ids_of(const TreePtr& t, std::set<int>& out) {
  switch (t->kind) {
    case TKind::Gap:
      out.insert(t->gap);
      return;
    case TKind::Quant:
      gap_ids_of(t->child, out);
      return;
    case TKind::Conn:
      gap_ids_of(t->left, out);
      gap_ids_of(t->right, out);
      return;
  }
}

std::set<int> gap_ids_of(const TreePtr& t) {
  std::set<int> out;
  gap_ids_of(t, out);
  return out;
}

bool slash_contains(const std::vector<std::string>& slash, const std::string& v) {
  return std::find(slash.begin(), slash.end(), v) != slash.end();
}

struct Pending {
  TreePtr replacement;
  std::set<int> touched;           // old gap ids needing `transform`
  GapTransform transform = GapTransform::Identity;
  std::string var_from, var_to;
  ComplexityNote note = ComplexityNote::PreservesC;
};

Pending build_rename(const TreePtr& node, const Locator& at,
                     const RuleParams& params) {
  if (node->kind != TKind::Quant)
    throw PreconditionError("rule shape",
                            "rename addresses a quantifier, found none at " +
                                locator_to_string(at));
  if (!params.fresh_var)
    throw PreconditionError("rename parameters", "no fresh variable given");
  const std::string& u = node->var;
  const std::string& v = *params.fresh_var;
  if (slash_contains(node->slash, u))
    throw PreconditionError("rename side condition (u not in U)",
                            "'" + u + "' occurs in its own slash set");
  if (tree_vars(node).count(v))
    throw PreconditionError("rename side condition (v fresh for the subtree)",
                            "'" + v + "' already occurs below " +
                                locator_to_string(at));
  Pending p;
  p.replacement = tquant(node->qkind, v, node->slash,
                         tree_subst(node->child, u, v));
  p.touched = gap_ids_of(node);
  p.transform = GapTransform::SubstVar;
  p.var_from = u;
  p.var_to = v;
  p.note = ComplexityNote::PreservesC;
  return p;
}

Pending build_extract(const TreePtr& node, const Locator& at,
                      const RuleParams& params, bool strong) {
  if (node->kind != TKind::Conn)
    throw PreconditionError("rule shape",
                            "extraction addresses a connective, found none at " +
                                locator_to_string(at));
  int side;
  bool lq = node->left->kind == TKind::Quant;
  bool rq = node->right->kind == TKind::Quant;
  if (params.side) {
    side = *params.side;
    if ((side != 0 && side != 1) || !(side == 0 ? lq : rq))
      throw PreconditionError("rule shape", "no quantifier on the chosen side");
  } else if (lq != rq) {
    side = lq ? 0 : 1;
  } else if (lq && rq) {
    throw PreconditionError("rule shape",
                            "both children are quantifiers; a side is required");
  } else {
    throw PreconditionError("rule shape",
                            "no quantifier child under the connective");
  }
  TreePtr qnode = side == 0 ? node->left : node->right;
  TreePtr sibling = side == 0 ? node->right : node->left;
  const std::string& u = qnode->var;
  if (slash_contains(qnode->slash, u))
    throw PreconditionError("extraction side condition (u not in U)",
                            "'" + u + "' occurs in its own slash set");
  if (tree_vars(sibling).count(u))
    throw PreconditionError("extraction side condition (u not in the sibling)",
                            "'" + u + "' occurs in the other branch");
  TreePtr slashed = strong ? tree_slash_nonempty(sibling, u)
                           : tree_slash_all(sibling, u);
  TreePtr inner = side == 0 ? tconn(node->conn, qnode->child, slashed)
                            : tconn(node->conn, slashed, qnode->child);
  Pending p;
  p.replacement = tquant(qnode->qkind, u, qnode->slash, inner);
  p.touched = gap_ids_of(sibling);
  p.transform = strong ? GapTransform::SlashNonempty : GapTransform::SlashAll;
  p.var_from = u;
  p.note = ComplexityNote::WeakReductionOnly;
  return p;
}

Pending build_distribute(const TreePtr& node, const Locator& at) {
  if (node->kind != TKind::Quant || node->child->kind != TKind::Conn)
    throw PreconditionError(
        "rule shape", "distribution addresses a quantifier over a connective");
  if (!node->slash.empty())
    throw PreconditionError("distribution side condition (empty slash set)",
                            "quantifier at " + locator_to_string(at) +
                                " carries a slash set");
  bool ok = (node->qkind == QKind::Forall && node->child->conn == Conn::And) ||
            (node->qkind == QKind::Exists && node->child->conn == Conn::Or);
  if (!ok)
    throw PreconditionError(
        "distribution side condition (forall/and or exists/or)",
        "quantifier and connective kinds do not match");
  Pending p;
  p.replacement =
      tconn(node->child->conn,
            tquant(node->qkind, node->var, {}, node->child->left),
            tquant(node->qkind, node->var, {}, node->child->right));
  p.note = ComplexityNote::PreservesC;
  return p;
}

Pending build_swap(const TreePtr& node, const Locator& at) {
  if (node->kind != TKind::Quant || node->child->kind != TKind::Quant)
    throw PreconditionError("rule shape",
                            "swap addresses two adjacent quantifiers");
  const TreePtr& inner = node->child;
  if (!slash_contains(inner->slash, node->var))
    throw PreconditionError(
        "swap side condition (inner slash contains the outer variable)",
        "'" + node->var + "' not in the slash set of '" + inner->var + "' at " +
            locator_to_string(at));
  std::vector<std::string> inner_slash;
  for (const auto& w : inner->slash)
    if (w != node->var) inner_slash.push_back(w);
  std::vector<std::string> outer_slash = node->slash;
  outer_slash.push_back(inner->var);
  Pending p;
  p.replacement =
      tquant(inner->qkind, inner->var, std::move(inner_slash),
             tquant(node->qkind, node->var, std::move(outer_slash),
                    inner->child));
  p.note = ComplexityNote::PreservesC;
  return p;
}

Pending build_drop_ex_slash(const TreePtr& t, const TreePtr& node,
                            const Locator& at) {
  if (node->kind != TKind::Quant || node->qkind != QKind::Exists)
    throw PreconditionError("rule shape",
                            "the rule addresses an existential quantifier");
  if (node->slash.empty())
    throw PreconditionError("rule shape", "the slash set is already empty");
  // every slashed variable must be bound existentially above the node
  std::map<std::string, QKind> binders;
  TreePtr cur = t;
  for (int ix : at) {
    if (cur->kind == TKind::Quant) {
      binders[cur->var] = cur->qkind;
      cur = cur->child;
    } else {
      cur = ix == 0 ? cur->left : cur->right;
    }
  }
  for (const auto& w : node->slash) {
    auto it = binders.find(w);
    if (it == binders.end() || it->second != QKind::Exists)
      throw PreconditionError(
          "side condition (all slashed variables existentially quantified)",
          "'" + w + "' is not existentially quantified above " +
              locator_to_string(at));
  }
  Pending p;
  p.replacement = tquant(QKind::Exists, node->var, {}, node->child);
  p.note = ComplexityNote::PreservesC;
  return p;
}

}  // namespace

RewriteResult apply_rule(const TreePtr& t, RuleId rule, const Locator& at,
                         const RuleParams& params) {
  if (!tree_regularity(t).regular)
    throw PreconditionError("regularity", "rewriting requires a regular tree");

  TreePtr node = node_at(t, at);
  Pending p;
  switch (rule) {
    case RuleId::Rename:
      p = build_rename(node, at, params);
      break;
    case RuleId::ExtractWeak:
      p = build_extract(node, at, params, false);
      break;
    case RuleId::ExtractStrong:
      p = build_extract(node, at, params, true);
      break;
    case RuleId::Distribute:
      p = build_distribute(node, at);
      break;
    case RuleId::Swap:
      p = build_swap(node, at);
      break;
    case RuleId::DropExSlash:
      p = build_drop_ex_slash(t, node, at);
      break;
  }

  TreePtr rebuilt = replace_at(t, at, p.replacement);
  std::map<int, int> old_to_new;
  TreePtr after = renumber_gaps(rebuilt, &old_to_new);
  if (!tree_regularity(after).regular)
    throw PreconditionError("regularity preservation",
                            "the rewrite would produce an irregular tree");

  RewriteStep step;
  step.rule = rule;
  step.at = at;
  step.var_from = p.var_from;
  step.var_to = p.var_to;
  step.before = t;
  step.after = after;
  int k = gap_count(t);
  step.gap_bijection.assign(k, -1);
  step.transforms.assign(k, GapTransform::Identity);
  for (const auto& [oldId, newId] : old_to_new) step.gap_bijection[oldId] = newId;
  for (int g : p.touched) step.transforms[g] = p.transform;
  step.note = p.note;
  return {after, step};
}

namespace {

void quant_locs(const TreePtr& t, Locator& loc,
                std::vector<std::pair<Locator, const Tree*>>& out) {
  switch (t->kind) {
    case TKind::Gap:
      return;
    case TKind::Quant:
      out.emplace_back(loc, t.get());
      loc.push_back(0);
      quant_locs(t->child, loc, out);
      loc.pop_back();
      return;
    case TKind::Conn:
      loc.push_back(0);
      quant_locs(t->left, loc, out);
      loc.back() = 1;
      quant_locs(t->right, loc, out);
      loc.pop_back();
      return;
  }
}

std::string fresh_for_tree(const TreePtr& t, const std::string& base) {
  auto used = tree_vars(t);
  for (int k = 1;; k++) {
    std::string cand = base + std::to_string(k);
    if (!used.count(cand)) return cand;
  }
}

}  // namespace

std::pair<TreePtr, std::vector<RewriteStep>> strong_regularize(const TreePtr& t) {
  TreePtr cur = t;
  std::vector<RewriteStep> steps;
  while (true) {
    std::vector<std::pair<Locator, const Tree*>> qs;
    Locator loc;
    quant_locs(cur, loc, qs);
    std::map<std::string, int> counts;
    for (const auto& [_, q] : qs) counts[q->var]++;

    std::optional<Locator> target;
    std::string target_var;
    for (const auto& [qloc, q] : qs) {
      if (counts[q->var] < 2) continue;
      if (!target || qloc.size() > target->size() ||
          (qloc.size() == target->size() && qloc > *target)) {
        target = qloc;
        target_var = q->var;
      }
    }
    if (!target) break;

    RuleParams params;
    params.fresh_var = fresh_for_tree(cur, target_var);
    RewriteResult res = apply_rule(cur, RuleId::Rename, *target, params);
    cur = res.tree;
    steps.push_back(std::move(res.step));
  }
  return {cur, std::move(steps)};
}

std::pair<TreePtr, std::vector<RewriteStep>> prenex(const TreePtr& t) {
  auto [cur, steps] = strong_regularize(t);
  while (true) {
    // shallowest connective with a quantifier child
    struct Site {
      Locator loc;
      int side;
    };
    std::optional<Site> site;
    struct {
      void operator()(const TreePtr& t, Locator& loc, std::optional<Site>& site) {
        switch (t->kind) {
          case TKind::Gap:
            return;
          case TKind::Quant: {
            loc.push_back(0);
            (*this)(t->child, loc, site);
            loc.pop_back();
            return;
          }
          case TKind::Conn: {
            int side = t->left->kind == TKind::Quant    ? 0
                       : t->right->kind == TKind::Quant ? 1
                                                        : -1;
            if (side >= 0 &&
                (!site || loc.size() < site->loc.size() ||
                 (loc.size() == site->loc.size() && loc < site->loc)))
              site = Site{loc, side};
            loc.push_back(0);
            (*this)(t->left, loc, site);
            loc.back() = 1;
            (*this)(t->right, loc, site);
            loc.pop_back();
            return;
          }
        }
      }
    } scan;
    Locator loc;
    scan(cur, loc, site);
    if (!site) break;
    RuleParams params;
    params.side = site->side;
    RewriteResult res = apply_rule(cur, RuleId::ExtractWeak, site->loc, params);
    cur = res.tree;
    steps.push_back(std::move(res.step));
  }
  return {cur, std::move(steps)};
}

Completion transport_completion(const RewriteStep& step, const Completion& e) {
  Completion out;
  for (const auto& [g, f] : e) {
    if (g < 0 || g >= static_cast<int>(step.gap_bijection.size()))
      throw PreconditionError("transport", "gap id out of range");
    FormulaPtr moved = f;
    switch (step.transforms[g]) {
      case GapTransform::Identity:
        break;
      case GapTransform::SubstVar:
        moved = subst(f, step.var_from, step.var_to);
        break;
      case GapTransform::SlashAll:
        moved = slash_all(f, step.var_from);
        break;
      case GapTransform::SlashNonempty:
        moved = slash_nonempty(f, step.var_from);
        break;
    }
    out[step.gap_bijection[g]] = moved;
  }
  return out;
}

namespace {

nlohmann::json step_json(const RewriteStep& step) {
  nlohmann::json j;
  j["rule"] = to_string(step.rule);
  j["at"] = locator_to_string(step.at);
  if (!step.var_from.empty()) j["var"] = step.var_from;
  if (!step.var_to.empty()) j["renamed_to"] = step.var_to;
  j["before"] = render_tree(step.before);
  j["after"] = render_tree(step.after);
  j["gap_bijection"] = step.gap_bijection;
  j["complexity_note"] = step.note == ComplexityNote::PreservesC
                             ? "preserves_C"
                             : "weak_reduction_only";
  return j;
}

}  // namespace

std::string step_to_json(const RewriteStep& step, bool pretty) {
  return pretty ? step_json(step).dump(2) : step_json(step).dump();
}

std::string steps_to_json(const std::vector<RewriteStep>& steps, bool pretty) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : steps) arr.push_back(step_json(s));
  return pretty ? arr.dump(2) : arr.dump();
}

}  // namespace ifwb

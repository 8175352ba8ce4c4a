#include "ifwb/patterns.hpp"

#include <algorithm>
#include <json.hpp>

namespace ifwb {

namespace {

bool is_strict_prefix(const Locator& a, const Locator& b) {
  return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
}

void collect(const TreePtr& t, Locator& loc, std::vector<QuantOcc>& quants,
             std::vector<ConnOcc>& conns) {
  switch (t->kind) {
    case TKind::Gap:
      return;
    case TKind::Quant: {
      quants.push_back({loc, t->qkind, t->var,
                        std::set<std::string>(t->slash.begin(), t->slash.end())});
      loc.push_back(0);
      collect(t->child, loc, quants, conns);
      loc.pop_back();
      return;
    }
    case TKind::Conn: {
      conns.push_back({loc, t->conn});
      loc.push_back(0);
      collect(t->left, loc, quants, conns);
      loc.back() = 1;
      collect(t->right, loc, quants, conns);
      loc.pop_back();
      return;
    }
  }
}

}  // namespace

DependenceGraph dependence_graph(const TreePtr& t) {
  DependenceGraph g;
  Locator loc;
  collect(t, loc, g.quants, g.conns);
  const size_t n = g.quants.size();
  g.depends.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; i++)
    for (size_t j = 0; j < n; j++)
      if (i != j && is_strict_prefix(g.quants[i].loc, g.quants[j].loc) &&
          !g.quants[j].slash.count(g.quants[i].var))
        g.depends[i][j] = true;
  return g;
}

std::string to_string(GHSubclass s) {
  switch (s) {
    case GHSubclass::GH1And: return "GH1(and)";
    case GHSubclass::GH1Or: return "GH1(or)";
    case GHSubclass::GH2And: return "GH2(and)";
    case GHSubclass::GH2Or: return "GH2(or)";
  }
  return "?";
}

namespace {

struct PatternSearch {
  const DependenceGraph& g;
  const std::vector<QuantOcc>& q;

  bool anc(size_t i, size_t j) const {
    return is_strict_prefix(q[i].loc, q[j].loc);
  }
  bool dep(size_t i, size_t j) const { return g.depends[i][j]; }
  bool comparable(size_t i, size_t j) const {
    return anc(i, j) || anc(j, i) || i == j;
  }
  bool uni(size_t i) const { return q[i].kind == QKind::Forall; }
  bool exi(size_t i) const { return q[i].kind == QKind::Exists; }
};

// the deepest connective superordinated to both
std::optional<size_t> split_connective(const DependenceGraph& g, size_t c,
                                       size_t d) {
  std::optional<size_t> best;
  for (size_t o = 0; o < g.conns.size(); o++) {
    if (is_strict_prefix(g.conns[o].loc, g.quants[c].loc) &&
        is_strict_prefix(g.conns[o].loc, g.quants[d].loc)) {
      if (!best || g.conns[o].loc.size() > g.conns[*best].loc.size()) best = o;
    }
  }
  return best;
}

}  // namespace

PatternReport detect_patterns(const TreePtr& t) {
  if (!tree_regularity(t).regular)
    throw PreconditionError("regularity", "pattern detection needs a regular tree");

  DependenceGraph g = dependence_graph(t);
  PatternSearch s{g, g.quants};
  const size_t n = g.quants.size();
  PatternReport rep;

  rep.first_order = std::all_of(g.quants.begin(), g.quants.end(),
                                [](const QuantOcc& o) { return o.slash.empty(); });

  // signalling: on one path, Ax ≺ Ey ≺ Ez with y seeing x, z seeing y but
  // not x
  for (size_t x = 0; x < n && !rep.signalling; x++) {
    if (!s.uni(x)) continue;
    for (size_t y = 0; y < n && !rep.signalling; y++) {
      if (!s.exi(y) || !s.anc(x, y) || !s.dep(x, y)) continue;
      for (size_t z = 0; z < n; z++) {
        if (!s.exi(z) || z == y || !s.anc(y, z)) continue;
        if (s.dep(y, z) && !s.dep(x, z)) {
          rep.signalling = true;
          rep.witnesses["signalling"] = {g.quants[x].loc, g.quants[y].loc,
                                         g.quants[z].loc};
          break;
        }
      }
    }
  }

  // henkin: four quantifiers on one path, two mutually independent
  // universal-existential pairs
  for (size_t x = 0; x < n && !rep.henkin; x++) {
    if (!s.uni(x)) continue;
    for (size_t y = 0; y < n && !rep.henkin; y++) {
      if (!s.exi(y) || !s.dep(x, y)) continue;
      for (size_t z = 0; z < n && !rep.henkin; z++) {
        if (!s.uni(z) || z == x || !s.comparable(x, z) || !s.comparable(y, z))
          continue;
        if (s.dep(z, y)) continue;
        for (size_t w = 0; w < n; w++) {
          if (!s.exi(w) || w == y) continue;
          if (!s.comparable(x, w) || !s.comparable(y, w) || !s.comparable(z, w))
            continue;
          if (s.dep(z, w) && !s.dep(x, w) && !s.dep(y, w) && !s.dep(w, y)) {
            rep.henkin = true;
            rep.witnesses["henkin"] = {g.quants[x].loc, g.quants[y].loc,
                                       g.quants[z].loc, g.quants[w].loc};
            break;
          }
        }
      }
    }
  }

  // generalized Henkin: Ax above both existentials; u sees x but not y, v;
  // v sees y but not x, u
  for (size_t x = 0; x < n; x++) {
    if (!s.uni(x)) continue;
    for (size_t y = 0; y < n; y++) {
      if (!s.uni(y) || y == x) continue;
      for (size_t u = 0; u < n; u++) {
        if (!s.exi(u) || !s.anc(x, u)) continue;
        if (!s.dep(x, u) || s.dep(y, u)) continue;
        for (size_t v = 0; v < n; v++) {
          if (!s.exi(v) || v == u || !s.anc(x, v)) continue;
          if (!s.dep(y, v) || s.dep(x, v)) continue;
          if (s.dep(u, v) || s.dep(v, u)) continue;
          if (!rep.generalized_henkin) {
            rep.generalized_henkin = true;
            rep.witnesses["generalized_henkin"] = {
                g.quants[x].loc, g.quants[y].loc, g.quants[u].loc,
                g.quants[v].loc};
          }
          if (auto o = split_connective(g, u, v)) {
            bool x_above = is_strict_prefix(g.quants[x].loc, g.conns[*o].loc);
            bool y_above = is_strict_prefix(g.quants[y].loc, g.conns[*o].loc);
            bool both = x_above && y_above;
            GHSubclass sub =
                g.conns[*o].conn == Conn::And
                    ? (both ? GHSubclass::GH2And : GHSubclass::GH1And)
                    : (both ? GHSubclass::GH2Or : GHSubclass::GH1Or);
            if (rep.gh_subclasses.insert(sub).second)
              rep.witnesses[to_string(sub)] = {g.quants[x].loc, g.quants[y].loc,
                                               g.quants[u].loc, g.quants[v].loc,
                                               g.conns[*o].loc};
          }
        }
      }
    }
  }

  // coordinated: disjunction below Ax mediating two universal-existential
  // pairs that cannot see x
  auto coordinated_scan = [&](Conn conn_kind, bool record) {
    bool found_any = false;
    for (size_t o = 0; o < g.conns.size(); o++) {
      if (g.conns[o].conn != conn_kind) continue;
      const Locator& oloc = g.conns[o].loc;
      for (size_t x = 0; x < n; x++) {
        if (!s.uni(x) || !is_strict_prefix(g.quants[x].loc, oloc)) continue;
        for (size_t u = 0; u < n; u++) {
          if (!s.exi(u) || !is_strict_prefix(oloc, g.quants[u].loc)) continue;
          if (s.dep(x, u)) continue;
          for (size_t w = 0; w < n; w++) {
            if (!s.exi(w) || w == u || !is_strict_prefix(oloc, g.quants[w].loc))
              continue;
            if (s.dep(x, w) || s.dep(u, w) || s.dep(w, u)) continue;
            for (size_t y = 0; y < n; y++) {
              if (!s.uni(y) || y == x || !s.dep(y, u) || s.dep(y, w)) continue;
              for (size_t z = 0; z < n; z++) {
                if (!s.uni(z) || z == x || z == y || !s.dep(z, w) || s.dep(z, u))
                  continue;
                found_any = true;
                if (!record) return true;
                bool different_disjuncts =
                    g.quants[u].loc[oloc.size()] != g.quants[w].loc[oloc.size()];
                std::vector<Locator> wit = {g.quants[x].loc, g.quants[y].loc,
                                            g.quants[z].loc, oloc,
                                            g.quants[u].loc, g.quants[w].loc};
                if (!rep.coordinated) {
                  rep.coordinated = true;
                  rep.witnesses["coordinated"] = wit;
                }
                if (different_disjuncts && !rep.coordinated_first) {
                  rep.coordinated_first = true;
                  rep.witnesses["coordinated_first"] = wit;
                }
                if (!different_disjuncts && !rep.coordinated_second) {
                  rep.coordinated_second = true;
                  rep.witnesses["coordinated_second"] = wit;
                }
              }
            }
          }
        }
      }
    }
    return found_any;
  };
  coordinated_scan(Conn::Or, true);
  rep.and_coordinated_suspect = coordinated_scan(Conn::And, false);

  rep.modest =
      !rep.signalling && !rep.generalized_henkin && !rep.coordinated;
  return rep;
}

bool witness_valid(const TreePtr& t, const std::string& family,
                   const std::vector<Locator>& locs) {
  DependenceGraph g = dependence_graph(t);
  PatternSearch s{g, g.quants};
  auto quant_index = [&](const Locator& loc) -> int {
    for (size_t i = 0; i < g.quants.size(); i++)
      if (g.quants[i].loc == loc) return static_cast<int>(i);
    return -1;
  };
  auto conn_index = [&](const Locator& loc) -> int {
    for (size_t i = 0; i < g.conns.size(); i++)
      if (g.conns[i].loc == loc) return static_cast<int>(i);
    return -1;
  };

  if (family == "signalling") {
    if (locs.size() != 3) return false;
    int x = quant_index(locs[0]), y = quant_index(locs[1]),
        z = quant_index(locs[2]);
    if (x < 0 || y < 0 || z < 0) return false;
    return s.uni(x) && s.exi(y) && s.exi(z) && s.anc(x, y) && s.anc(y, z) &&
           s.dep(x, y) && s.dep(y, z) && !s.dep(x, z);
  }
  if (family == "henkin") {
    if (locs.size() != 4) return false;
    int x = quant_index(locs[0]), y = quant_index(locs[1]),
        z = quant_index(locs[2]), w = quant_index(locs[3]);
    if (x < 0 || y < 0 || z < 0 || w < 0) return false;
    bool chain = s.comparable(x, y) && s.comparable(x, z) && s.comparable(x, w) &&
                 s.comparable(y, z) && s.comparable(y, w) && s.comparable(z, w);
    return chain && s.uni(x) && s.exi(y) && s.uni(z) && s.exi(w) &&
           s.dep(x, y) && !s.dep(z, y) && !s.dep(w, y) && s.dep(z, w) &&
           !s.dep(x, w) && !s.dep(y, w);
  }
  if (family == "generalized_henkin") {
    if (locs.size() < 4) return false;
    int x = quant_index(locs[0]), y = quant_index(locs[1]),
        u = quant_index(locs[2]), v = quant_index(locs[3]);
    if (x < 0 || y < 0 || u < 0 || v < 0) return false;
    return s.uni(x) && s.uni(y) && s.exi(u) && s.exi(v) && s.anc(x, u) &&
           s.anc(x, v) && s.dep(x, u) && !s.dep(y, u) && !s.dep(v, u) &&
           s.dep(y, v) && !s.dep(x, v) && !s.dep(u, v);
  }
  if (family == "coordinated") {
    if (locs.size() != 6) return false;
    int x = quant_index(locs[0]), y = quant_index(locs[1]),
        z = quant_index(locs[2]), o = conn_index(locs[3]),
        u = quant_index(locs[4]), w = quant_index(locs[5]);
    if (x < 0 || y < 0 || z < 0 || o < 0 || u < 0 || w < 0) return false;
    if (g.conns[o].conn != Conn::Or) return false;
    const Locator& oloc = g.conns[o].loc;
    return s.uni(x) && s.uni(y) && s.uni(z) && s.exi(u) && s.exi(w) &&
           is_strict_prefix(g.quants[x].loc, oloc) &&
           is_strict_prefix(oloc, g.quants[u].loc) &&
           is_strict_prefix(oloc, g.quants[w].loc) && s.dep(y, u) &&
           !s.dep(x, u) && !s.dep(z, u) && !s.dep(w, u) && s.dep(z, w) &&
           !s.dep(x, w) && !s.dep(y, w) && !s.dep(u, w);
  }
  return false;
}

namespace {

struct ExtensionSearch {
  DependenceGraph bg, eg;
  // node lists: quantifiers then connectives, base side in preorder
  struct Node {
    bool quant;
    size_t index;  // into quants or conns
  };
  std::vector<Node> base_nodes;
  std::vector<int> assign;                       // base node -> ext node id
  std::vector<bool> used_q, used_c;
  std::map<std::string, std::string> var_fwd, var_bwd;

  const Locator& base_loc(const Node& n) const {
    return n.quant ? bg.quants[n.index].loc : bg.conns[n.index].loc;
  }

  bool compatible(size_t bi, const Node& n, size_t ei) {
    if (n.quant) {
      const QuantOcc& b = bg.quants[n.index];
      const QuantOcc& e = eg.quants[ei];
      if (b.kind != e.kind) return false;
      auto f = var_fwd.find(b.var);
      auto g2 = var_bwd.find(e.var);
      if (f != var_fwd.end() && f->second != e.var) return false;
      if (g2 != var_bwd.end() && g2->second != b.var) return false;
    } else {
      if (bg.conns[n.index].conn != eg.conns[ei].conn) return false;
    }
    // subordination preserved against all earlier assignments
    for (size_t k = 0; k < bi; k++) {
      const Node& m = base_nodes[k];
      const Locator& bl1 = base_loc(m);
      const Locator& bl2 = base_loc(n);
      const Locator& el1 = m.quant ? eg.quants[assign[k]].loc
                                   : eg.conns[assign[k]].loc;
      const Locator& el2 = n.quant ? eg.quants[ei].loc : eg.conns[ei].loc;
      if (is_strict_prefix(bl1, bl2) && !is_strict_prefix(el1, el2))
        return false;
      if (is_strict_prefix(bl2, bl1) && !is_strict_prefix(el2, el1))
        return false;
      // dependence iff, for quantifier pairs
      if (m.quant && n.quant) {
        if (bg.depends[m.index][n.index] != eg.depends[assign[k]][ei])
          return false;
        if (bg.depends[n.index][m.index] != eg.depends[ei][assign[k]])
          return false;
      }
    }
    return true;
  }

  bool dfs(size_t bi) {
    if (bi == base_nodes.size()) return true;
    const Node& n = base_nodes[bi];
    size_t count = n.quant ? eg.quants.size() : eg.conns.size();
    for (size_t ei = 0; ei < count; ei++) {
      auto& used = n.quant ? used_q : used_c;
      if (used[ei]) continue;
      if (!compatible(bi, n, ei)) continue;
      used[ei] = true;
      assign[bi] = static_cast<int>(ei);
      bool added_fwd = false, added_bwd = false;
      if (n.quant) {
        const std::string& bv = bg.quants[n.index].var;
        const std::string& ev = eg.quants[ei].var;
        if (!var_fwd.count(bv)) {
          var_fwd[bv] = ev;
          added_fwd = true;
        }
        if (!var_bwd.count(ev)) {
          var_bwd[ev] = bv;
          added_bwd = true;
        }
      }
      if (dfs(bi + 1)) return true;
      if (n.quant) {
        if (added_fwd) var_fwd.erase(bg.quants[n.index].var);
        if (added_bwd) var_bwd.erase(eg.quants[ei].var);
      }
      used[ei] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::pair<Locator, Locator>>> find_extension(
    const TreePtr& base, const TreePtr& ext) {
  ExtensionSearch es;
  es.bg = dependence_graph(base);
  es.eg = dependence_graph(ext);

  for (size_t i = 0; i < es.bg.quants.size(); i++)
    es.base_nodes.push_back({true, i});
  for (size_t i = 0; i < es.bg.conns.size(); i++)
    es.base_nodes.push_back({false, i});
  std::sort(es.base_nodes.begin(), es.base_nodes.end(),
            [&](const auto& a, const auto& b) {
              return es.base_loc(a) < es.base_loc(b);
            });
  es.assign.assign(es.base_nodes.size(), -1);
  es.used_q.assign(es.eg.quants.size(), false);
  es.used_c.assign(es.eg.conns.size(), false);

  if (!es.dfs(0)) return std::nullopt;
  std::vector<std::pair<Locator, Locator>> out;
  for (size_t i = 0; i < es.base_nodes.size(); i++) {
    const auto& n = es.base_nodes[i];
    const Locator& bl = es.base_loc(n);
    const Locator& el = n.quant ? es.eg.quants[es.assign[i]].loc
                                : es.eg.conns[es.assign[i]].loc;
    out.emplace_back(bl, el);
  }
  return out;
}

namespace {

const std::map<std::string, std::string>& minimal_tree_sources() {
  static const std::map<std::string, std::string> sources = {
      {"henkin1", "A x E y A z (E w/{x,y}) []"},
      {"henkin2", "A x A z (E y/{z}) (E w/{x,y}) []"},
      {"signalling", "A x E z (E y/{x}) []"},
      // gh1 keeps an empty slash on u: slashing a variable bound only in
      // the parallel branch would break regularity clause 1
      {"gh1_and", "A x ((E u []) & A y (E v/{x}) [])"},
      {"gh2_and", "A x A y (((E v/{x}) []) & (E u/{y}) [])"},
      {"gh1_or", "A x ((E u []) | A y (E v/{x}) [])"},
      {"gh2_or", "A x A y (((E v/{x}) []) | (E u/{y}) [])"},
      {"c1", "A x ((A y (E u/{x}) []) | A z (E v/{x}) [])"},
      {"c2", "A x A y (((E u/{x}) []) | A z (E v/{x,y}) [])"},
      {"c3", "A x A y A z (((E u/{x,z}) []) | (E v/{x,y}) [])"},
      {"c1p", "A x ([] | ((A y (E u/{x}) []) & A z (E v/{x}) []))"},
      {"c2p", "A x ([] | A y (((E u/{x}) []) & A z (E v/{x,y}) []))"},
      {"c3p", "A x ([] | A y A z (((E u/{x,z}) []) & (E v/{x,y}) []))"},
      {"c4p", "A x A y ([] | (((E u/{x}) []) & A z (E v/{x,y}) []))"},
      {"c5p", "A x A y ([] | A z (((E u/{x,z}) []) & (E v/{x,y}) []))"},
      {"c6p", "A x A y A z ([] | (((E u/{x,z}) []) & (E v/{x,y}) []))"},
  };
  return sources;
}

}  // namespace

TreePtr minimal_tree(const std::string& name) {
  const auto& sources = minimal_tree_sources();
  auto it = sources.find(name);
  if (it == sources.end())
    throw PreconditionError("minimal tree", "unknown tree name '" + name + "'");
  return parse_tree(it->second);
}

std::vector<std::string> minimal_tree_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : minimal_tree_sources()) out.push_back(name);
  return out;
}

namespace {

bool tree_has_conn(const TreePtr& t, Conn c) {
  switch (t->kind) {
    case TKind::Gap:
      return false;
    case TKind::Quant:
      return tree_has_conn(t->child, c);
    case TKind::Conn:
      return t->conn == c || tree_has_conn(t->left, c) ||
             tree_has_conn(t->right, c);
  }
  return false;
}

Verdict np_complete(std::string problem, std::string reason,
                    std::vector<Locator> witness) {
  Verdict v;
  v.kind = Verdict::Kind::NPComplete;
  v.problem = std::move(problem);
  v.reason = std::move(reason);
  v.witness = std::move(witness);
  return v;
}

Verdict fo(std::string reason) {
  Verdict v;
  v.kind = Verdict::Kind::FO;
  v.reason = std::move(reason);
  return v;
}

}  // namespace

Verdict classify(const TreePtr& t) {
  PatternReport rep = detect_patterns(t);

  if (rep.henkin)
    return np_complete("3-COLORING", "Henkin", rep.witnesses.at("henkin"));
  if (rep.signalling)
    return np_complete("EXACT COVER BY 3-SETS", "signalling",
                       rep.witnesses.at("signalling"));
  if (rep.gh_subclasses.count(GHSubclass::GH2Or))
    return np_complete("SAT", "generalized Henkin GH2(or)",
                       rep.witnesses.at("GH2(or)"));
  if (rep.coordinated_first) {
    if (find_extension(minimal_tree("c1"), t))
      return np_complete("SET SPLITTING", "coordinated first kind (C1)",
                         rep.witnesses.at("coordinated_first"));
    return np_complete("SAT", "coordinated first kind (C2)",
                       rep.witnesses.at("coordinated_first"));
  }
  if (rep.modest) return fo("modest");

  static const std::vector<std::string> second_kind = {"c1p", "c2p", "c3p",
                                                       "c4p", "c5p", "c6p"};
  for (const auto& name : second_kind)
    if (tree_iso(t, minimal_tree(name)))
      return fo("coordinated second kind minimal (" + name + ")");

  if (!tree_has_conn(t, Conn::Or))
    return fo("disjunction-free generalized Henkin");

  bool gh2_any = rep.gh_subclasses.count(GHSubclass::GH2And) ||
                 rep.gh_subclasses.count(GHSubclass::GH2Or);
  if (!tree_has_conn(t, Conn::And) && !gh2_any && !rep.coordinated)
    return fo("conjunction-free GH1(or)");

  Verdict v;
  v.kind = Verdict::Kind::Unknown;
  std::string families;
  if (rep.coordinated_second) families = "extensions* of C1'-C6'";
  for (GHSubclass sub :
       {GHSubclass::GH1And, GHSubclass::GH2And, GHSubclass::GH1Or})
    if (rep.gh_subclasses.count(sub)) {
      if (!families.empty()) families += ", ";
      families += "extensions* of " + to_string(sub);
    }
  if (families.empty()) families = "unclassified non-modest tree";
  v.diagnostics = families;
  if (rep.and_coordinated_suspect)
    v.diagnostics += "; contains a coordinated-like pattern mediated by a conjunction";
  v.reason = "open family";
  return v;
}

std::string verdict_to_json(const Verdict& v, bool pretty) {
  nlohmann::json j;
  switch (v.kind) {
    case Verdict::Kind::FO:
      j["verdict"] = "FO";
      break;
    case Verdict::Kind::NPComplete:
      j["verdict"] = "NP-complete";
      j["problem"] = v.problem;
      break;
    case Verdict::Kind::Unknown:
      j["verdict"] = "Unknown";
      break;
  }
  j["reason"] = v.kind == Verdict::Kind::Unknown ? v.diagnostics : v.reason;
  nlohmann::json wits = nlohmann::json::array();
  for (const auto& loc : v.witness) wits.push_back(locator_to_string(loc));
  j["witness_locators"] = std::move(wits);
  return pretty ? j.dump(2) : j.dump();
}

}  // namespace ifwb

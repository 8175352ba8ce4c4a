#include "ifwb/harness.hpp"

#include <algorithm>
#include <json.hpp>
#include <random>

#include "ifwb/patterns.hpp"

namespace ifwb {

StructureEnumerator::StructureEnumerator(SignatureSpec sig, int n)
    : sig_(std::move(sig)), n_(n) {
  if (n <= 0) throw PreconditionError("enumeration", "domain size must be >= 1");
  count_ = 1;
  for (const auto& [name, arity] : sig_.relations) {
    long long space = 1;
    for (int i = 0; i < arity; i++) space *= n;
    tuple_space_.push_back(space);
    if (space > 40)
      throw PreconditionError("enumeration",
                              "relation tuple space too large to enumerate");
    count_ <<= space;
  }
  for (size_t i = 0; i < sig_.constants.size(); i++) count_ *= n;
}

Structure StructureEnumerator::at(long long index) const {
  Structure m;
  m.domain_size = n_;
  long long ix = index;
  for (const auto& name : sig_.constants) {
    m.constants[name] = static_cast<int>(ix % n_);
    ix /= n_;
  }
  for (size_t r = 0; r < sig_.relations.size(); r++) {
    const auto& [name, arity] = sig_.relations[r];
    long long space = tuple_space_[r];
    long long mask = ix & ((1ll << space) - 1);
    ix >>= space;
    Relation rel;
    rel.arity = arity;
    for (long long t = 0; t < space; t++) {
      if (!((mask >> t) & 1)) continue;
      std::vector<int> tuple(arity);
      long long tx = t;
      for (int i = arity - 1; i >= 0; i--) {
        tuple[i] = static_cast<int>(tx % n_);
        tx /= n_;
      }
      rel.tuples.insert(std::move(tuple));
    }
    m.relations[name] = std::move(rel);
  }
  return m;
}

EquivalenceReport equivalent_bounded(const FormulaPtr& f, const FormulaPtr& g,
                                     const SignatureSpec& sig, int max_n,
                                     EquivMode mode) {
  if (!free_vars(f).empty() || !free_vars(g).empty())
    throw PreconditionError("sentence", "bounded equivalence needs sentences");
  EquivalenceReport rep;
  rep.mode = mode;
  rep.max_n = max_n;
  for (int n = 1; n <= max_n; n++) {
    StructureEnumerator en(sig, n);
    for (long long i = 0; i < en.count(); i++) {
      Structure m = en.at(i);
      Truth a = truth_value(m, f);
      Truth b = truth_value(m, g);
      rep.structures_checked++;
      bool agree = mode == EquivMode::StronglyEquivalent
                       ? a == b
                       : (a == Truth::True) == (b == Truth::True);
      if (!agree) {
        rep.equal = false;
        rep.counterexample = std::move(m);
        rep.lhs = a;
        rep.rhs = b;
        return rep;
      }
    }
  }
  rep.equal = true;
  return rep;
}

std::string equivalence_report_to_json(const EquivalenceReport& rep,
                                       bool pretty) {
  nlohmann::json j;
  j["mode"] = rep.mode == EquivMode::StronglyEquivalent ? "strongly_equivalent"
                                                        : "truth_equivalent";
  j["max_n"] = rep.max_n;
  j["structures_checked"] = rep.structures_checked;
  j["equal"] = rep.equal;
  if (rep.counterexample) {
    j["counterexample"] =
        nlohmann::json::parse(structure_to_json(*rep.counterexample));
    j["lhs"] = to_string(rep.lhs);
    j["rhs"] = to_string(rep.rhs);
  }
  return pretty ? j.dump(2) : j.dump();
}

std::string soundness_report_to_json(const SoundnessReport& rep, bool pretty) {
  nlohmann::json j;
  j["ok"] = rep.ok;
  j["steps_checked"] = rep.steps_checked;
  j["completions_checked"] = rep.completions_checked;
  j["comparisons"] = rep.comparisons;
  if (!rep.ok) j["counterexample"] = rep.detail;
  return pretty ? j.dump(2) : j.dump();
}

namespace {

void all_locators(const TreePtr& t, Locator& loc, std::vector<Locator>& out) {
  out.push_back(loc);
  switch (t->kind) {
    case TKind::Gap:
      return;
    case TKind::Quant:
      loc.push_back(0);
      all_locators(t->child, loc, out);
      loc.pop_back();
      return;
    case TKind::Conn:
      loc.push_back(0);
      all_locators(t->left, loc, out);
      loc.back() = 1;
      all_locators(t->right, loc, out);
      loc.pop_back();
      return;
  }
}

std::string fresh_var_for(const TreePtr& t, const std::string& base) {
  auto used = tree_vars(t);
  for (int k = 1;; k++) {
    std::string cand = base + std::to_string(k);
    if (!used.count(cand)) return cand;
  }
}

}  // namespace

std::vector<std::pair<Locator, RuleParams>> applicable_sites(const TreePtr& t,
                                                             RuleId rule) {
  std::vector<std::pair<Locator, RuleParams>> sites;
  std::vector<Locator> locs;
  Locator loc;
  all_locators(t, loc, locs);
  for (const auto& l : locs) {
    for (int side = 0; side < 2; side++) {
      RuleParams params;
      bool needs_side = false;
      if (rule == RuleId::Rename) {
        TreePtr n = node_at(t, l);
        if (n->kind != TKind::Quant) break;
        params.fresh_var = fresh_var_for(t, n->var);
      } else if (rule == RuleId::ExtractWeak || rule == RuleId::ExtractStrong) {
        params.side = side;
        needs_side = true;
      }
      try {
        apply_rule(t, rule, l, params);
        sites.emplace_back(l, params);
      } catch (const PreconditionError&) {
      }
      if (!needs_side) break;
    }
  }
  return sites;
}

SoundnessReport check_rule_soundness(
    RuleId rule, const std::vector<std::pair<TreePtr, Locator>>& corpus,
    int completions_per_tree, const SignatureSpec& sig, int max_n,
    uint64_t seed) {
  SoundnessReport rep;
  for (const auto& [tree, at] : corpus) {
    RuleParams params;
    if (rule == RuleId::Rename) {
      TreePtr n = node_at(tree, at);
      if (n->kind != TKind::Quant)
        throw PreconditionError("corpus", "rename locator is not a quantifier");
      params.fresh_var = fresh_var_for(tree, n->var);
    } else if (rule == RuleId::ExtractWeak || rule == RuleId::ExtractStrong) {
      TreePtr n = node_at(tree, at);
      if (n->kind == TKind::Conn && n->left->kind == TKind::Quant &&
          n->right->kind == TKind::Quant)
        params.side = 0;
    }
    RewriteResult res = apply_rule(tree, rule, at, params);
    rep.steps_checked++;

    auto completions = weak_nice_completions(tree, sig, seed, completions_per_tree);
    for (const auto& e : completions) {
      rep.completions_checked++;
      FormulaPtr before = complete(tree, e);
      FormulaPtr after = complete(res.tree, transport_completion(res.step, e));
      for (int n = 1; n <= max_n && rep.ok; n++) {
        StructureEnumerator en(sig, n);
        for (long long i = 0; i < en.count(); i++) {
          Structure m = en.at(i);
          Truth a = truth_value(m, before);
          Truth b = truth_value(m, after);
          rep.comparisons++;
          bool agree = res.step.note == ComplexityNote::PreservesC
                           ? a == b
                           : (a == Truth::True) == (b == Truth::True);
          if (!agree) {
            rep.ok = false;
            rep.detail = std::string(to_string(rule)) + " at " +
                         locator_to_string(at) + " on " + render_tree(tree) +
                         " with completion gap0=" +
                         render_formula(e.begin()->second) + ": " +
                         to_string(a) + " vs " + to_string(b) +
                         " on structure " + structure_to_json(m);
            return rep;
          }
        }
      }
    }
  }
  return rep;
}

namespace {

struct TreeGen {
  std::mt19937_64 rng;
  int max_depth;
  int quant_budget = 4;
  int conn_budget = 2;
  int next_var = 0;

  uint64_t draw(uint64_t bound) { return rng() % bound; }

  std::string fresh() { return "v" + std::to_string(next_var++); }

  TreePtr gen(int depth, std::vector<std::string> above, int universals_seen) {
    bool can_quant = quant_budget > 0 && depth < max_depth;
    bool can_conn = conn_budget > 0 && depth < max_depth && quant_budget > 0;
    if (!can_quant && !can_conn) return tgap();
    uint64_t roll = draw(10);
    if (can_quant && (roll < 6 || !can_conn)) {
      quant_budget--;
      bool is_forall = universals_seen < 2 ? draw(2) == 0 : false;
      // keep the choice-function search small: an existential retains at
      // most one unslashed superordinated variable
      std::string var = fresh();
      std::vector<std::string> slash;
      if (!is_forall && !above.empty()) {
        size_t kept = draw(above.size() + 1);
        for (size_t i = 0; i < above.size(); i++)
          if (i != kept) slash.push_back(above[i]);
      }
      std::vector<std::string> below = above;
      below.push_back(var);
      TreePtr child =
          gen(depth + 1, below, universals_seen + (is_forall ? 1 : 0));
      return tquant(is_forall ? QKind::Forall : QKind::Exists, var, slash,
                    child);
    }
    if (can_conn) {
      conn_budget--;
      Conn c = draw(2) == 0 ? Conn::And : Conn::Or;
      TreePtr l = gen(depth + 1, above, universals_seen);
      TreePtr r = gen(depth + 1, above, universals_seen);
      return tconn(c, l, r);
    }
    return tgap();
  }

  TreePtr make() {
    quant_budget = 4;
    conn_budget = 2;
    next_var = 0;
    // root is always a quantifier so every path binds a variable
    std::string var = fresh();
    bool is_forall = draw(2) == 0;
    quant_budget--;
    TreePtr child = gen(1, {var}, is_forall ? 1 : 0);
    return tquant(is_forall ? QKind::Forall : QKind::Exists, var, {}, child);
  }
};

}  // namespace

std::vector<TreePtr> tree_corpus(uint64_t seed, int count, int max_depth) {
  std::vector<TreePtr> out;
  // one witness per pattern class first; c3 is left out (three universals
  // over a disjunction of quantified branches make the bounded team checks
  // intractable, and gh2_or already covers its pattern)
  static const std::vector<std::string> exemplar_names = {
      "signalling", "henkin1", "gh1_and", "gh1_or", "gh2_and",
      "gh2_or",     "c1",      "c2",      "c1p",    "henkin2",
      "c2p",        "c3p",     "c4p",     "c5p",    "c6p"};
  out.push_back(parse_tree("A x E y []"));  // modest
  for (const auto& name : exemplar_names) {
    if (static_cast<int>(out.size()) >= count) return out;
    out.push_back(minimal_tree(name));
  }
  if (static_cast<int>(out.size()) < count)
    out.push_back(parse_tree("(A x []) | (A x E y [])"));  // rename fodder

  TreeGen gen{std::mt19937_64(seed), max_depth};
  while (static_cast<int>(out.size()) < count) {
    TreePtr t = renumber_gaps(gen.make());
    if (tree_regularity(t).regular && gap_count(t) >= 1) out.push_back(t);
  }
  return out;
}

std::vector<Completion> weak_nice_completions(const TreePtr& t,
                                              const SignatureSpec& sig,
                                              uint64_t seed, int count) {
  auto ps = paths(t);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);

  std::vector<Completion> out;
  for (int c = 0; c < count; c++) {
    Completion e;
    for (const auto& p : ps) {
      std::vector<Term> terms;
      for (const auto& v : p.bound) terms.push_back(tvar(v));
      for (const auto& k : sig.constants) terms.push_back(tconst(k));
      if (terms.empty())
        throw PreconditionError(
            "completion generation",
            "a path binds no variables and the signature has no constants");
      auto pick_term = [&]() { return terms[rng() % terms.size()]; };
      auto literal = [&]() -> FormulaPtr {
        uint64_t kind = rng() % 4;
        if (kind < 2 && !sig.relations.empty()) {
          const auto& [rel, arity] = sig.relations[rng() % sig.relations.size()];
          std::vector<Term> args;
          for (int i = 0; i < arity; i++) args.push_back(pick_term());
          return kind == 0 ? atom(rel, args) : negated_atom(rel, args);
        }
        Term a = pick_term(), b = pick_term();
        return kind % 2 == 0 ? equal(a, b) : negated_equal(a, b);
      };
      FormulaPtr f = literal();
      uint64_t shape = rng() % 3;
      if (shape == 1) f = conj(f, literal());
      if (shape == 2) f = disj(f, literal());
      e[p.gap_id] = f;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace ifwb

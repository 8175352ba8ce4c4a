#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "ifwb/acceptance.hpp"
#include "ifwb/encodings.hpp"
#include "ifwb/harness.hpp"
#include "ifwb/patterns.hpp"
#include "ifwb/rewrite.hpp"
#include "ifwb/semantics.hpp"
#include "ifwb/skolem.hpp"

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ifwb::ParseError("cannot open file '" + path + "'", 0, 0);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return static_cast<bool>(in);
}

// builtin sentence name, a file path, or inline source text
ifwb::FormulaPtr load_formula(const std::string& arg,
                              const std::set<std::string>& constants) {
  if (ifwb::is_builtin_sentence_name(arg)) return ifwb::builtin_sentence(arg);
  std::string text = file_exists(arg) ? slurp(arg) : arg;
  return ifwb::parse_formula(text, constants);
}

ifwb::TreePtr load_tree(const std::string& arg) {
  std::string text = file_exists(arg) ? slurp(arg) : arg;
  return ifwb::parse_tree(text);
}

json ast_json(const ifwb::FormulaPtr& f) {
  using ifwb::FKind;
  json j;
  switch (f->kind) {
    case FKind::Atom:
    case FKind::NegAtom: {
      j["node"] = f->kind == FKind::Atom ? "atom" : "negated-atom";
      j["relation"] = f->rel;
      json ts = json::array();
      for (const auto& t : f->terms)
        ts.push_back({{"name", t.name},
                      {"kind", t.kind == ifwb::TermKind::Var ? "var" : "const"}});
      j["terms"] = std::move(ts);
      break;
    }
    case FKind::Equal:
    case FKind::NegEqual:
      j["node"] = f->kind == FKind::Equal ? "equal" : "negated-equal";
      j["left"] = f->terms[0].name;
      j["right"] = f->terms[1].name;
      break;
    case FKind::Neg:
      j["node"] = "neg";
      j["sub"] = ast_json(f->left);
      break;
    case FKind::And:
    case FKind::Or:
      j["node"] = f->kind == FKind::And ? "and" : "or";
      j["left"] = ast_json(f->left);
      j["right"] = ast_json(f->right);
      break;
    case FKind::Quant:
      j["node"] = f->qkind == ifwb::QKind::Forall ? "forall" : "exists";
      j["var"] = f->var;
      j["slash"] = f->slash;
      j["body"] = ast_json(f->left);
      break;
  }
  return j;
}

void emit(const json& j, bool pretty) {
  std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ifwb: a workbench for independence-friendly logic on finite structures"};
  app.require_subcommand(1);

  std::string formula_arg, tree_arg, structure_arg, team_arg, engine = "teams";
  std::string rule_arg, at_arg = "-", pipeline_arg, problem_arg, input_arg;
  std::string suite = "all", fresh_arg;
  bool pretty = false, trace = false, emit_sentence = false;
  int side = -1, max_size = 3;
  std::uint64_t seed = 1;

  auto* parse_cmd = app.add_subcommand("parse", "parse a formula and report its analysis");
  parse_cmd->add_option("--formula", formula_arg, "formula file, inline text, or builtin name")->required();
  parse_cmd->add_flag("--pretty", pretty);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula on a team");
  eval_cmd->add_option("--structure", structure_arg)->required();
  eval_cmd->add_option("--formula", formula_arg)->required();
  eval_cmd->add_option("--team", team_arg)->required();
  eval_cmd->add_flag("--pretty", pretty);

  auto* truth_cmd = app.add_subcommand("truth", "three-valued truth of a sentence");
  truth_cmd->add_option("--structure", structure_arg)->required();
  truth_cmd->add_option("--formula", formula_arg)->required();
  truth_cmd->add_option("--engine", engine, "teams | skolem | both");
  truth_cmd->add_flag("--pretty", pretty);

  auto* classify_cmd = app.add_subcommand("classify", "complexity verdict for a tree prefix");
  classify_cmd->add_option("--formula", formula_arg);
  classify_cmd->add_option("--tree", tree_arg);
  classify_cmd->add_flag("--pretty", pretty);

  auto* rewrite_cmd = app.add_subcommand("rewrite", "apply a rewrite rule or pipeline");
  rewrite_cmd->add_option("--tree", tree_arg)->required();
  rewrite_cmd->add_option("--rule", rule_arg,
                          "rename | extract-weak | extract-strong | distribute | swap | drop-ex-slash");
  rewrite_cmd->add_option("--at", at_arg, "dotted child indices, '-' for the root");
  rewrite_cmd->add_option("--fresh", fresh_arg, "fresh variable for rename");
  rewrite_cmd->add_option("--side", side, "extraction side when both children are quantifiers");
  rewrite_cmd->add_option("--pipeline", pipeline_arg, "prenex | strong-regularize");
  rewrite_cmd->add_flag("--trace", trace);
  rewrite_cmd->add_flag("--pretty", pretty);

  auto* encode_cmd = app.add_subcommand("encode", "encode a problem instance as a structure");
  encode_cmd->add_option("--problem", problem_arg, "sat-gh2 | sat-c2 | set-splitting | 2col")->required();
  encode_cmd->add_option("--input", input_arg)->required();
  encode_cmd->add_flag("--emit-sentence", emit_sentence);
  encode_cmd->add_flag("--pretty", pretty);

  auto* verify_cmd = app.add_subcommand("verify", "run an acceptance suite");
  verify_cmd->add_option("--suite", suite, "all | semantics | rules | encodings | classifier");
  verify_cmd->add_option("--max-size", max_size);
  verify_cmd->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*parse_cmd) {
      ifwb::FormulaPtr f = load_formula(formula_arg, {});
      auto reg = ifwb::regularity(f);
      auto vs = ifwb::var_sets(f);
      json j;
      j["formula"] = ifwb::render_formula(f);
      j["ast"] = ast_json(f);
      j["regular"] = reg.regular;
      j["strongly_regular"] = reg.strongly_regular;
      j["free"] = vs.free;
      j["bound"] = vs.bound;
      emit(j, pretty);
      return 0;
    }
    if (*eval_cmd) {
      ifwb::Structure m = ifwb::structure_from_json(slurp(structure_arg));
      ifwb::FormulaPtr f = load_formula(formula_arg, m.constant_names());
      ifwb::Team x = ifwb::team_from_json(slurp(team_arg));
      json j;
      j["satisfies"] = ifwb::satisfies(m, x, f);
      j["neg_satisfies"] = ifwb::neg_satisfies(m, x, f);
      emit(j, pretty);
      return 0;
    }
    if (*truth_cmd) {
      ifwb::Structure m = ifwb::structure_from_json(slurp(structure_arg));
      ifwb::FormulaPtr f = load_formula(formula_arg, m.constant_names());
      json j;
      if (engine == "teams" || engine == "both")
        j["teams"] = ifwb::to_string(ifwb::truth_value(m, f));
      if (engine == "skolem" || engine == "both")
        j["skolem_true"] = ifwb::truth_by_skolem(m, f);
      if (engine == "both") {
        bool agree = (j["teams"] == "True") == j["skolem_true"].get<bool>();
        j["engines_agree"] = agree;
        emit(j, pretty);
        return agree ? 0 : 1;
      }
      if (engine != "teams" && engine != "skolem") {
        std::cerr << "unknown engine '" << engine << "'\n";
        return 1;
      }
      emit(j, pretty);
      return 0;
    }
    if (*classify_cmd) {
      ifwb::TreePtr t;
      if (!tree_arg.empty()) {
        t = load_tree(tree_arg);
      } else if (!formula_arg.empty()) {
        t = ifwb::prefix_tree(load_formula(formula_arg, {}));
      } else {
        std::cerr << "classify needs --tree or --formula\n";
        return 1;
      }
      std::cout << ifwb::verdict_to_json(ifwb::classify(t), pretty) << "\n";
      return 0;
    }
    if (*rewrite_cmd) {
      ifwb::TreePtr t = load_tree(tree_arg);
      std::vector<ifwb::RewriteStep> steps;
      ifwb::TreePtr out;
      if (!pipeline_arg.empty()) {
        if (pipeline_arg == "prenex")
          std::tie(out, steps) = ifwb::prenex(t);
        else if (pipeline_arg == "strong-regularize")
          std::tie(out, steps) = ifwb::strong_regularize(t);
        else {
          std::cerr << "unknown pipeline '" << pipeline_arg << "'\n";
          return 1;
        }
      } else if (!rule_arg.empty()) {
        ifwb::RuleParams params;
        if (!fresh_arg.empty()) params.fresh_var = fresh_arg;
        if (side >= 0) params.side = side;
        auto res = ifwb::apply_rule(t, ifwb::rule_from_string(rule_arg),
                                    ifwb::locator_from_string(at_arg), params);
        out = res.tree;
        steps.push_back(res.step);
      } else {
        std::cerr << "rewrite needs --rule or --pipeline\n";
        return 1;
      }
      json j;
      j["tree"] = ifwb::render_tree(out);
      if (trace) j["steps"] = json::parse(ifwb::steps_to_json(steps));
      emit(j, pretty);
      return 0;
    }
    if (*encode_cmd) {
      ifwb::Problem p = ifwb::problem_from_string(problem_arg);
      std::string text = slurp(input_arg);
      ifwb::Structure m;
      std::string sentence_name;
      switch (p) {
        case ifwb::Problem::SatGh2:
          m = ifwb::encode_instance(p, ifwb::parse_dimacs(text));
          sentence_name = "phi_sat";
          break;
        case ifwb::Problem::SatC2:
          m = ifwb::encode_instance(p, ifwb::parse_dimacs(text));
          sentence_name = "theta_sat";
          break;
        case ifwb::Problem::SetSplitting:
          m = ifwb::encode_instance(ifwb::parse_set_split_json(text));
          sentence_name = "eta_split";
          break;
        case ifwb::Problem::TwoColorability:
          m = ifwb::encode_instance(ifwb::parse_graph_text(text));
          sentence_name = "xi_2col";
          break;
      }
      json j = json::parse(ifwb::structure_to_json(m));
      if (emit_sentence) {
        j["sentence_name"] = sentence_name;
        j["sentence"] =
            ifwb::render_formula(ifwb::builtin_sentence(sentence_name));
      }
      emit(j, pretty);
      return 0;
    }
    if (*verify_cmd) {
      auto results = ifwb::run_acceptance(suite, max_size, seed);
      if (results.empty()) {
        std::cerr << "unknown suite '" << suite << "'\n";
        return 1;
      }
      int failures = ifwb::report_acceptance(results);
      return failures == 0 ? 0 : 1;
    }
  } catch (const ifwb::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ifwb::PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

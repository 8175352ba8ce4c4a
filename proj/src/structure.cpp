#include "ifwb/structure.hpp"

#include <json.hpp>

namespace ifwb {

bool Structure::holds(const std::string& rel, const std::vector<int>& tuple) const {
  auto it = relations.find(rel);
  if (it == relations.end())
    throw PreconditionError("signature", "unknown relation '" + rel + "'");
  if (it->second.arity >= 0 &&
      it->second.arity != static_cast<int>(tuple.size()))
    throw PreconditionError("signature",
                            "relation '" + rel + "' has arity " +
                                std::to_string(it->second.arity) + ", got " +
                                std::to_string(tuple.size()) + " arguments");
  return it->second.tuples.count(tuple) > 0;
}

void Structure::validate() const {
  if (domain_size <= 0)
    throw PreconditionError("structure", "domain size must be positive");
  for (const auto& [name, rel] : relations) {
    for (const auto& tup : rel.tuples) {
      if (rel.arity >= 0 && static_cast<int>(tup.size()) != rel.arity)
        throw PreconditionError("structure", "relation '" + name +
                                                 "' has tuples of mixed arity");
      for (int e : tup)
        if (e < 0 || e >= domain_size)
          throw PreconditionError(
              "structure", "tuple entry out of domain in relation '" + name + "'");
    }
  }
  for (const auto& [name, e] : constants)
    if (e < 0 || e >= domain_size)
      throw PreconditionError("structure",
                              "constant '" + name + "' outside the domain");
}

std::set<std::string> Structure::constant_names() const {
  std::set<std::string> out;
  for (const auto& [name, _] : constants) out.insert(name);
  return out;
}

Structure structure_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad structure JSON: ") + e.what(), 0, 0);
  }
  Structure m;
  if (!j.contains("domain") || !j["domain"].is_number_integer())
    throw ParseError("structure JSON needs an integer \"domain\"", 0, 0);
  m.domain_size = j["domain"].get<int>();
  if (j.contains("relations")) {
    for (auto& [name, tuples] : j["relations"].items()) {
      Relation rel;
      for (auto& tup : tuples) {
        std::vector<int> t = tup.get<std::vector<int>>();
        if (rel.arity < 0)
          rel.arity = static_cast<int>(t.size());
        else if (rel.arity != static_cast<int>(t.size()))
          throw ParseError("relation '" + name + "' has tuples of mixed arity",
                           0, 0);
        rel.tuples.insert(std::move(t));
      }
      m.relations[name] = std::move(rel);
    }
  }
  if (j.contains("constants"))
    for (auto& [name, e] : j["constants"].items())
      m.constants[name] = e.get<int>();
  m.validate();
  return m;
}

std::string structure_to_json(const Structure& m, bool pretty) {
  nlohmann::json j;
  j["domain"] = m.domain_size;
  j["relations"] = nlohmann::json::object();
  for (const auto& [name, rel] : m.relations) {
    nlohmann::json tuples = nlohmann::json::array();
    for (const auto& t : rel.tuples) tuples.push_back(t);
    j["relations"][name] = std::move(tuples);
  }
  j["constants"] = nlohmann::json::object();
  for (const auto& [name, e] : m.constants) j["constants"][name] = e;
  return pretty ? j.dump(2) : j.dump();
}

}  // namespace ifwb

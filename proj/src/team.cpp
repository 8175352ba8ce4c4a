#include "ifwb/team.hpp"

#include <algorithm>
#include <json.hpp>

namespace ifwb {

void Team::normalize() {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

int Team::var_index(const std::string& v) const {
  for (size_t i = 0; i < vars.size(); i++)
    if (vars[i] == v) return static_cast<int>(i);
  return -1;
}

Team Team::singleton_empty() {
  Team t;
  t.rows.push_back({});
  return t;
}

int ChoiceFunction::at(const std::vector<int>& row) const {
  auto it = by_row.find(row);
  if (it == by_row.end())
    throw PreconditionError("choice function totality",
                            "choice function undefined on a team row");
  return it->second;
}

Team duplicate(const Team& x, const std::string& v, const Structure& m) {
  Team out;
  int vi = x.var_index(v);
  out.vars = x.vars;
  if (vi < 0) {
    out.vars.push_back(v);
    vi = static_cast<int>(out.vars.size()) - 1;
  }
  for (const auto& row : x.rows) {
    std::vector<int> base = row;
    base.resize(out.vars.size(), 0);
    for (int a = 0; a < m.domain_size; a++) {
      base[vi] = a;
      out.rows.push_back(base);
    }
  }
  out.normalize();
  return out;
}

Team supplement(const Team& x, const ChoiceFunction& f, const std::string& v) {
  Team out;
  int vi = x.var_index(v);
  out.vars = x.vars;
  if (vi < 0) {
    out.vars.push_back(v);
    vi = static_cast<int>(out.vars.size()) - 1;
  }
  for (const auto& row : x.rows) {
    std::vector<int> r = row;
    r.resize(out.vars.size(), 0);
    r[vi] = f.at(row);
    out.rows.push_back(std::move(r));
  }
  out.normalize();
  return out;
}

bool is_uniform(const ChoiceFunction& f, const Team& x,
                const std::set<std::string>& v_set) {
  std::vector<int> keep;
  for (size_t i = 0; i < x.vars.size(); i++)
    if (!v_set.count(x.vars[i])) keep.push_back(static_cast<int>(i));
  std::map<std::vector<int>, int> per_class;
  for (const auto& row : x.rows) {
    std::vector<int> key;
    key.reserve(keep.size());
    for (int i : keep) key.push_back(row[i]);
    int val = f.at(row);
    auto [it, fresh] = per_class.emplace(std::move(key), val);
    if (!fresh && it->second != val) return false;
  }
  return true;
}

Team team_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad team JSON: ") + e.what(), 0, 0);
  }
  Team t;
  if (j.contains("vars")) t.vars = j["vars"].get<std::vector<std::string>>();
  if (j.contains("rows"))
    for (auto& row : j["rows"]) {
      auto r = row.get<std::vector<int>>();
      if (r.size() != t.vars.size())
        throw ParseError("team row length does not match vars", 0, 0);
      t.rows.push_back(std::move(r));
    }
  t.normalize();
  return t;
}

std::string team_to_json(const Team& t, bool pretty) {
  nlohmann::json j;
  j["vars"] = t.vars;
  j["rows"] = t.rows;
  return pretty ? j.dump(2) : j.dump();
}

}  // namespace ifwb

// Copyright 2026 The Rescue Games Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rescue/io.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "rescue/error.hpp"

namespace rescue {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) {
  fail(ErrorKind::kInvalidArgument, message);
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name)) bad(where + ": missing field \"" + name + "\"");
  return obj.at(name);
}

std::string string_field(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_string()) bad(where + ": field \"" + name + "\" must be a string");
  return v.get<std::string>();
}

const json& array_field(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_array()) bad(where + ": field \"" + name + "\" must be an array");
  return v;
}

std::vector<std::string> location_ids(const json& doc) {
  std::vector<std::string> ids;
  const json& locations = array_field(doc, "locations", "instance");
  for (std::size_t i = 0; i < locations.size(); ++i) {
    ids.push_back(string_field(locations[i], "id", "locations[" + std::to_string(i) + "]"));
  }
  return ids;
}

std::vector<Rational> location_probabilities(const json& doc) {
  std::vector<Rational> p;
  const json& locations = array_field(doc, "locations", "instance");
  for (std::size_t i = 0; i < locations.size(); ++i) {
    const std::string where = "locations[" + std::to_string(i) + "]";
    p.push_back(parse_rational_field(field(locations[i], "p", where), where + ".p"));
  }
  return p;
}

std::vector<Rational> costs(const json& doc, std::size_t n) {
  const json& arr = array_field(doc, "costs", "instance");
  if (arr.size() != n) {
    bad("instance: \"costs\" has " + std::to_string(arr.size()) + " entries for " +
        std::to_string(n) + " locations");
  }
  std::vector<Rational> c;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    c.push_back(parse_rational_field(arr[i], "costs[" + std::to_string(i) + "]"));
  }
  return c;
}

std::size_t target_count(const json& doc) {
  const json& k = field(doc, "k", "instance");
  if (!k.is_number_integer() || k.get<long long>() < 0) {
    bad("instance: \"k\" must be a non-negative integer");
  }
  return static_cast<std::size_t>(k.get<long long>());
}

ExplicitTable parse_table(const json& doc, const std::vector<std::string>& ids) {
  if (ids.size() > 24) bad("instance: explicit tables support at most 24 locations");
  ExplicitTable table(ids.size());
  const json& entries = array_field(doc, "table", "instance");
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string where = "table[" + std::to_string(e) + "]";
    const json& members = array_field(entries[e], "set", where);
    LocationSet set;
    for (const json& m : members) {
      if (!m.is_string()) bad(where + ": set members must be id strings");
      const auto it = std::find(ids.begin(), ids.end(), m.get<std::string>());
      if (it == ids.end()) bad(where + ": unknown id '" + m.get<std::string>() + "'");
      set.insert(static_cast<std::size_t>(it - ids.begin()));
    }
    if (table.values[set.bits()]) bad(where + ": subset listed twice");
    table.set(set, parse_rational_field(field(entries[e], "value", where), where + ".value"));
  }
  return table;
}

RootedTree parse_tree(const json& doc) {
  RootedTree tree;
  tree.root = string_field(doc, "root", "instance");
  const json& vertices = array_field(doc, "vertices", "instance");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    tree.vertices.push_back({string_field(vertices[i], "id", where),
                             parse_rational_field(field(vertices[i], "p", where), where + ".p")});
  }
  const json& edges = array_field(doc, "edges", "instance");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      bad("edges[" + std::to_string(i) + "] must be a pair of vertex ids");
    }
    tree.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return tree;
}

json rationals(const std::vector<Rational>& values) {
  json arr = json::array();
  for (const Rational& v : values) arr.push_back(v.to_string());
  return arr;
}

}  // namespace

Rational parse_rational_field(const json& value, const std::string& where) {
  if (!value.is_string()) {
    bad(where + ": rationals must be strings of the form \"num/den\"");
  }
  try {
    return Rational::parse(value.get<std::string>());
  } catch (const Error& e) {
    bad(where + ": " + e.what());
  }
}

InstanceFile parse_instance(const json& doc) {
  if (!doc.is_object()) bad("instance file must hold a JSON object");
  const std::string kind = string_field(doc, "kind", "instance");
  if (kind == "tree") return parse_tree(doc);

  Game game;
  game.ids = location_ids(doc);
  game.k = target_count(doc);
  if (kind == "rescue") {
    game.spec = Rescue{location_probabilities(doc)};
  } else if (kind == "discounted") {
    game.spec = DiscountedRescue{location_probabilities(doc),
                                 parse_rational_field(field(doc, "gamma", "instance"), "gamma")};
  } else if (kind == "additive") {
    game.spec = AdditiveCost{costs(doc, game.ids.size())};
  } else if (kind == "travel-search") {
    game.spec = TravelSearch{costs(doc, game.ids.size())};
  } else if (kind == "table") {
    game.spec = parse_table(doc, game.ids);
  } else {
    bad("unknown instance kind '" + kind + "'");
  }
  return game;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

InstanceFile load_instance_file(const std::filesystem::path& path) {
  return parse_instance(load_json(path));
}

json to_json(const InstanceFile& file) {
  json doc;
  if (const auto* tree = std::get_if<RootedTree>(&file)) {
    doc["kind"] = "tree";
    doc["root"] = tree->root;
    doc["vertices"] = json::array();
    for (const Vertex& v : tree->vertices) {
      doc["vertices"].push_back({{"id", v.id}, {"p", v.p.to_string()}});
    }
    doc["edges"] = json::array();
    for (const auto& [a, b] : tree->edges) doc["edges"].push_back({a, b});
    return doc;
  }
  const Game& game = std::get<Game>(file);
  doc["kind"] = std::string(family_name(game.spec));
  doc["k"] = game.k;
  doc["locations"] = json::array();
  const auto* rescue = std::get_if<Rescue>(&game.spec);
  const auto* discounted = std::get_if<DiscountedRescue>(&game.spec);
  for (std::size_t i = 0; i < game.ids.size(); ++i) {
    json loc{{"id", game.ids[i]}};
    if (rescue) loc["p"] = rescue->p.at(i).to_string();
    if (discounted) loc["p"] = discounted->p.at(i).to_string();
    doc["locations"].push_back(loc);
  }
  if (discounted) doc["gamma"] = discounted->gamma.to_string();
  if (const auto* a = std::get_if<AdditiveCost>(&game.spec)) doc["costs"] = rationals(a->c);
  if (const auto* t = std::get_if<TravelSearch>(&game.spec)) doc["costs"] = rationals(t->c);
  if (const auto* table = std::get_if<ExplicitTable>(&game.spec)) {
    doc["table"] = json::array();
    for (std::size_t mask = 0; mask < table->values.size(); ++mask) {
      if (!table->values[mask]) continue;
      json members = json::array();
      for (std::size_t i : LocationSet(mask).members()) members.push_back(game.ids.at(i));
      doc["table"].push_back({{"set", members}, {"value", table->values[mask]->to_string()}});
    }
  }
  return doc;
}

}  // namespace rescue

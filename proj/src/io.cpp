#include "lvk/io.hpp"

#include "lvk/errors.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace lvk::io {

namespace {

void require_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ParseError(where + ": unknown key '" + key + "'");
  }
  for (const std::string& key : allowed) {
    if (!obj.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  }
}

}  // namespace

graphs::StableGraph graph_from_json(const Json& j) {
  require_keys(j, {"vertices", "edges", "tails"}, "graph");
  const Json& jv = j.at("vertices");
  if (!jv.is_array()) throw ParseError("graph: key 'vertices' must be a list of strings");
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  for (const Json& v : jv) {
    if (!v.is_string()) throw ParseError("graph: key 'vertices' must be a list of strings");
    const std::string name = v.get<std::string>();
    if (!index.emplace(name, names.size()).second) {
      throw ParseError("graph: key 'vertices' repeats '" + name + "'");
    }
    names.push_back(name);
  }
  auto lookup = [&](const Json& v, const std::string& key) {
    if (!v.is_string() || !index.count(v.get<std::string>())) {
      throw ParseError("graph: key '" + key + "' refers to an unknown vertex " + v.dump());
    }
    return index.at(v.get<std::string>());
  };

  const Json& je = j.at("edges");
  if (!je.is_array()) throw ParseError("graph: key 'edges' must be a list");
  std::vector<graphs::Edge> edges;
  for (const Json& e : je) {
    if (!e.is_array() || e.size() != 2) {
      throw ParseError("graph: key 'edges' entries must be 2-element vertex lists");
    }
    edges.push_back({lookup(e[0], "edges"), lookup(e[1], "edges")});
  }

  const Json& jt = j.at("tails");
  if (!jt.is_array()) throw ParseError("graph: key 'tails' must be a list");
  std::vector<graphs::Tail> tails;
  for (const Json& t : jt) {
    require_keys(t, {"vertex", "number"}, "graph: key 'tails'");
    if (!t.at("number").is_number_integer()) {
      throw ParseError("graph: key 'number' must be an integer");
    }
    tails.push_back({lookup(t.at("vertex"), "vertex"), t.at("number").get<int>()});
  }
  return graphs::StableGraph(std::move(names), std::move(edges), std::move(tails));
}

Json graph_to_json(const graphs::StableGraph& g) {
  Json j;
  j["vertices"] = g.vertex_names();
  j["edges"] = Json::array();
  for (const graphs::Edge& e : g.edges()) {
    j["edges"].push_back({g.vertex_names()[e.source], g.vertex_names()[e.target]});
  }
  j["tails"] = Json::array();
  for (const graphs::Tail& t : g.tails()) {
    j["tails"].push_back({{"vertex", g.vertex_names()[t.vertex]}, {"number", t.number}});
  }
  return j;
}

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j, const std::string& what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError(what + ": expected a rational string \"P/Q\"");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace lvk::io

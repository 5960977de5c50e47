#include "io.hpp"

#include <fstream>
#include <sstream>

#include "geotree/errors.hpp"

namespace geotree::io {

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw StructuralError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw StructuralError(std::string("bad value for field '") + key + "'");
  }
}

}  // namespace

Tree tree_from_json(const json& j) {
  int n = field<int>(j, "vertices");
  std::vector<Edge> edges;
  const json& je = j.contains("edges") ? j.at("edges") : json::array();
  if (!je.is_array()) throw StructuralError("'edges' must be an array");
  for (std::size_t i = 0; i < je.size(); ++i) {
    const json& e = je[i];
    int id = e.contains("id") ? field<int>(e, "id") : static_cast<int>(i);
    edges.push_back(Edge{id, field<int>(e, "u"), field<int>(e, "v"), field<double>(e, "len")});
  }
  auto leaf_order = field<std::vector<int>>(j, "leaf_order");
  std::vector<std::vector<int>> cyclic;
  if (j.contains("cyclic_order")) cyclic = field<std::vector<std::vector<int>>>(j, "cyclic_order");
  return Tree(n, std::move(edges), std::move(leaf_order), std::move(cyclic));
}

json to_json(const Tree& tree) {
  json edges = json::array();
  for (const auto& e : tree.edges())
    edges.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"len", e.len}});
  return {{"vertices", tree.num_vertices()}, {"edges", edges}, {"leaf_order", tree.leaf_order()}};
}

Tree read_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open tree file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw StructuralError("malformed JSON in " + path + ": " + e.what());
  }
  return tree_from_json(j);
}

PointOnTree point_from_json(const Tree& tree, const json& j) {
  PointOnTree p;
  if (j.is_object() && j.contains("vertex"))
    p = PointOnTree::at_vertex(field<int>(j, "vertex"));
  else
    p = tree.point(field<int>(j, "edge"), field<double>(j, "offset"));
  tree.validate(p);
  return p;
}

json to_json(const PointOnTree& p) {
  if (p.is_vertex()) return {{"vertex", p.vertex}};
  return {{"edge", p.edge}, {"offset", p.offset}};
}

json to_json(const OrderedConfig& c) { return {{"p1", to_json(c.p1)}, {"p2", to_json(c.p2)}}; }

PointOnTree parse_point(const Tree& tree, const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw ArgumentError("bad point '" + text + "'");
    return v;
  };
  auto integer = [&](const std::string& s) {
    double v = number(s);
    if (v != static_cast<int>(v)) throw ArgumentError("bad point '" + text + "'");
    return static_cast<int>(v);
  };
  PointOnTree p;
  if (auto at = text.find('@'); at != std::string::npos) {
    StarView star(tree);
    p = star.point(integer(text.substr(0, at)), number(text.substr(at + 1)));
  } else if (!text.empty() && text[0] == 'v') {
    p = PointOnTree::at_vertex(integer(text.substr(1)));
  } else if (!text.empty() && text[0] == 'e' && text.find(':') != std::string::npos) {
    auto colon = text.find(':');
    p = tree.point(integer(text.substr(1, colon - 1)), number(text.substr(colon + 1)));
  } else {
    throw ArgumentError("bad point '" + text + "'");
  }
  tree.validate(p);
  return p;
}

OrderedConfig parse_config(const Tree& tree, const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ArgumentError("a configuration needs two points separated by a comma: '" + text + "'");
  return {parse_point(tree, text.substr(0, comma)), parse_point(tree, text.substr(comma + 1))};
}

BiPath bipath_from_json(const Tree& tree, const json& j) {
  BiPath path;
  path.eps = j.value("eps", 0.0);
  path.ordered = j.value("ordered", true);
  const json& bs = j.contains("breakpoints") ? j.at("breakpoints") : json::array();
  for (const auto& b : bs)
    path.breakpoints.push_back(
        {field<double>(b, "t"),
         {point_from_json(tree, b.at("p1")), point_from_json(tree, b.at("p2"))}});
  check_well_formed(tree, path);
  return path;
}

json to_json(const BiPath& path) {
  json bs = json::array();
  for (const auto& b : path.breakpoints)
    bs.push_back({{"t", b.t}, {"p1", to_json(b.c.p1)}, {"p2", to_json(b.c.p2)}});
  return {{"eps", path.eps}, {"ordered", path.ordered}, {"breakpoints", bs}};
}

json to_json(const StarClass& cls) {
  json j{{"name", cls.name()},
         {"arms_occupied", cls.arms_occupied},
         {"orientation", to_string(cls.orientation)},
         {"subtype", to_string(cls.subtype)},
         {"near_tie", cls.near_tie}};
  if (cls.eq) j["eq"] = *cls.eq;
  if (cls.metric) j["metric"] = to_string(*cls.metric);
  return j;
}

json to_json(const Candidate& c) {
  return {{"describe", c.describe()}, {"particle", c.particle}, {"arm_p1", c.arm_p1},
          {"arm_p2", c.arm_p2},       {"len_l1", c.len_l1},     {"len_l2", c.len_l2},
          {"path", to_json(c.path)}};
}

json to_json(const StarPlanResult& r) {
  json cands = json::array();
  for (const auto& c : r.all_candidates)
    cands.push_back({{"describe", c.describe()}, {"len_l1", c.len_l1}, {"len_l2", c.len_l2}});
  return {{"class", to_json(r.cls)},
          {"metric", to_string(r.metric)},
          {"rule_id", r.rule_id},
          {"in_cut_locus", r.in_cut_locus},
          {"length", r.chosen.length(r.metric)},
          {"chosen", to_json(r.chosen)},
          {"candidates", cands}};
}

json to_json(const HullDiagram& d) {
  json dots = json::array();
  for (const auto& dot : d.dots)
    dots.push_back({{"point", to_json(dot.point)}, {"color", to_string(dot.color)}});
  json branches = json::array();
  for (const auto& br : d.branches) {
    json arms = json::array();
    for (const auto& arm : br.arms)
      arms.push_back({{"edge", arm.edge}, {"arm_number", arm.arm_number}, {"dots", arm.dots}});
    branches.push_back({{"vertex", br.vertex}, {"arms", arms}, {"at_vertex", br.at_vertex}});
  }
  json j{{"type", to_string(d.type)},
         {"dots", dots},
         {"branches", branches},
         {"near_boundary", d.near_boundary}};
  if (d.is_i()) {
    j["ends"] = {d.ends[0], d.ends[1]};
    j["interior_vertices"] = d.interior_vertices;
    if (d.reference_vertex >= 0) {
      j["reference_vertex"] = d.reference_vertex;
      j["end_arm_numbers"] = d.end_arm_numbers;
    }
  }
  return j;
}

json to_json(const YTiming& t) {
  return {{"diagram", t.kind == YTimedKind::A ? "A" : "B"},
          {"d1", t.d1},
          {"d2", t.d2},
          {"d3", t.d3},
          {"d4", t.d4},
          {"point1", t.point1},
          {"point2", t.point2},
          {"t0", t.t0},
          {"crossing", t.crossing}};
}

json to_json(const UnorderedPlanResult& r) {
  json phases = json::array();
  for (const auto& phase : r.phases) {
    json legs = json::array();
    for (const auto& leg : phase) legs.push_back({{"black", leg.black}, {"white", leg.white}});
    phases.push_back(legs);
  }
  json j{{"diagram", to_json(r.diagram)},
         {"eset", to_string(r.eset)},
         {"rule_id", r.rule_id},
         {"metric", "l1"},
         {"length", r.length},
         {"phases", phases},
         {"path", to_json(r.path)}};
  if (r.timing) j["timing"] = to_json(*r.timing);
  return j;
}

json to_json(const Chart& chart) {
  auto slot = [](const std::optional<int>& s) { return s ? json(*s) : json(nullptr); };
  return {{"x_neg", slot(chart.x_neg)},
          {"x_pos", slot(chart.x_pos)},
          {"y_neg", slot(chart.y_neg)},
          {"y_pos", slot(chart.y_pos)},
          {"eps", chart.eps}};
}

json to_json(const Obstacle& obs) {
  json quads = json::array();
  for (auto q : obs.quadrant) quads.push_back(q == QuadrantShape::Band ? "band" : "diamond_edge");
  json corners = json::array();
  for (const auto& c : obs.corners) corners.push_back({c.x, c.y});
  return {{"eps", obs.eps}, {"quadrants", quads}, {"corners", corners}};
}

json to_json(const OracleResult& r) {
  return {{"length", r.length},   {"snap_error", r.snap_error}, {"nodes", r.nodes},
          {"settled", r.settled}, {"relaxed", r.relaxed},       {"seconds", r.seconds}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace geotree::io

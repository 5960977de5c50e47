#pragma once

#include <string>

#include "json.hpp"

#include "geotree/chart.hpp"
#include "geotree/config.hpp"
#include "geotree/oracle.hpp"
#include "geotree/star_planner.hpp"
#include "geotree/tree.hpp"
#include "geotree/unordered.hpp"

namespace geotree::io {

using nlohmann::json;

Tree tree_from_json(const json& j);
json to_json(const Tree& tree);
Tree read_tree(const std::string& path);

PointOnTree point_from_json(const Tree& tree, const json& j);
json to_json(const PointOnTree& p);
json to_json(const OrderedConfig& c);

// Short point syntax used on the command line:
//   v<id>            a vertex
//   e<id>:<offset>   a point on an edge
//   <arm>@<depth>    star coordinates (star trees only; arm 0 is the center)
PointOnTree parse_point(const Tree& tree, const std::string& text);
// Two points separated by a comma.
OrderedConfig parse_config(const Tree& tree, const std::string& text);

BiPath bipath_from_json(const Tree& tree, const json& j);
json to_json(const BiPath& path);

json to_json(const StarClass& cls);
json to_json(const Candidate& c);
json to_json(const StarPlanResult& r);

json to_json(const HullDiagram& d);
json to_json(const YTiming& t);
json to_json(const UnorderedPlanResult& r);

json to_json(const Chart& chart);
json to_json(const Obstacle& obs);
json to_json(const OracleResult& r);

std::string dump(const json& j);

}  // namespace geotree::io

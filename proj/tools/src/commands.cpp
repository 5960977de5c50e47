#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "audit.hpp"
#include "geotree/errors.hpp"
#include "geotree/oracle.hpp"
#include "io.hpp"
#include "svg.hpp"

namespace geotree::cli {

namespace {

using io::json;

struct Options {
  std::string tree_file;
  std::string star;  // comma separated arm lengths
  std::string metric;
  double eps = 1.0;
  bool unordered = false;
  bool ordered = false;
  std::uint64_t seed = 1;
  std::string out;
  std::string a, b, instance;
  double h = 0.125;
  double margin = 0.0;
  bool any_angle = false;
  long n = 0;
  std::string kind = "instance";
};

Tree load_tree(const Options& o) {
  if (!o.tree_file.empty() && !o.star.empty())
    throw ArgumentError("give either --tree or --star, not both");
  if (!o.tree_file.empty()) return io::read_tree(o.tree_file);
  if (o.star.empty()) throw ArgumentError("a tree is required (--tree FILE or --star L1,L2,...)");
  std::vector<double> lens;
  std::stringstream ss(o.star);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      lens.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ArgumentError("bad arm length '" + tok + "' in --star");
    }
  }
  return make_star(lens).tree();
}

bool has_tree(const Options& o) { return !o.tree_file.empty() || !o.star.empty(); }

Metric metric_of(const Options& o) {
  if (o.unordered) {
    if (!o.metric.empty() && metric_from_string(o.metric) == Metric::L2)
      throw ArgumentError(
          "the unordered configuration space is not geodesically complete in the l2 metric "
          "once the tree has a vertex of degree 4 or more; unordered planning is l1 only");
    return Metric::L1;
  }
  return o.metric.empty() ? Metric::L2 : metric_from_string(o.metric);
}

struct Instance {
  OrderedConfig a, b;
};

Instance load_instance(const Tree& tree, const Options& o) {
  if (!o.instance.empty()) {
    if (!o.a.empty() || !o.b.empty()) throw ArgumentError("give either --instance or --a/--b");
    std::ifstream in(o.instance);
    if (!in) throw ArgumentError("cannot open instance file " + o.instance);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw StructuralError(std::string("malformed JSON in instance file: ") + e.what());
    }
    auto cfg = [&](const char* key) {
      if (!j.contains(key)) throw StructuralError(std::string("instance lacks '") + key + "'");
      const json& c = j.at(key);
      return OrderedConfig{io::point_from_json(tree, c.at("p1")),
                           io::point_from_json(tree, c.at("p2"))};
    };
    return {cfg("a"), cfg("b")};
  }
  if (o.a.empty() || o.b.empty()) throw ArgumentError("both --a and --b are required");
  return {io::parse_config(tree, o.a), io::parse_config(tree, o.b)};
}

void check_unordered_pair(const OrderedConfig& c) {
  if (c.p1 == c.p2) throw DomainError("the two robots of an unordered configuration coincide");
}

json validation(const Tree& tree, const BiPath& path, const OrderedConfig& a,
                const OrderedConfig& b, double length, Metric m, bool ordered, double eps) {
  double sep = min_separation(tree, path);
  bool feasible = ordered ? sep >= eps - 1e-9 : sep > 0.0;
  auto same = [&](const OrderedConfig& x, const OrderedConfig& y) {
    if (ordered) return x == y;
    return x == y || (x.p1 == y.p2 && x.p2 == y.p1);
  };
  bool endpoints = same(path.start(), a) && same(path.end(), b);
  double recomputed = path_length(tree, path, m);
  bool agrees = std::abs(recomputed - length) <= 1e-12 * std::max(1.0, std::abs(length));
  return {{"feasible", feasible},
          {"min_separation", sep},
          {"endpoints", endpoints},
          {"length_recomputed", recomputed},
          {"length_agrees", agrees},
          {"ok", feasible && endpoints && agrees}};
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw ArgumentError("cannot write " + o.out);
  f << text;
}

int cmd_plan(const Options& o, std::ostream& out) {
  Tree tree = load_tree(o);
  Metric m = metric_of(o);
  Instance in = load_instance(tree, o);
  json j;
  if (o.unordered) {
    check_unordered_pair(in.a);
    check_unordered_pair(in.b);
    auto r = plan_unordered_auto(tree, UnorderedConfig::make(in.a.p1, in.a.p2),
                                 UnorderedConfig::make(in.b.p1, in.b.p2));
    j = io::to_json(r);
    j["validation"] = validation(tree, r.path, in.a, in.b, r.length, m, false, 0.0);
  } else {
    StarView star(tree);
    auto r = plan_star(star, o.eps, in.a, in.b, m);
    j = io::to_json(r);
    j["validation"] = validation(tree, r.chosen.path, in.a, in.b, r.chosen.length(m), m, true,
                                 o.eps);
  }
  emit(o, out, io::dump(j));
  return j["validation"]["ok"].get<bool>() ? kOk : kInternal;
}

int cmd_classify(const Options& o, std::ostream& out) {
  Tree tree = load_tree(o);
  Instance in = load_instance(tree, o);
  json j;
  if (o.unordered) {
    metric_of(o);
    check_unordered_pair(in.a);
    check_unordered_pair(in.b);
    auto d = hull_classify(tree, UnorderedConfig::make(in.a.p1, in.a.p2),
                           UnorderedConfig::make(in.b.p1, in.b.p2));
    j = io::to_json(d);
    if (tree.is_interval())
      j["eset"] = to_string(ESet::Single);
    else if (tree.is_y_graph())
      j["eset"] = to_string(assign_eset_y(tree, d));
    else
      j["eset"] = to_string(assign_eset(d));
  } else {
    StarView star(tree);
    j = o.metric.empty() ? io::to_json(classify(star, o.eps, in.a, in.b))
                         : io::to_json(classify(star, o.eps, in.a, in.b, metric_of(o)));
  }
  emit(o, out, io::dump(j));
  return kOk;
}

int cmd_cutlocus(const Options& o, std::ostream& out) {
  if (o.unordered) throw ArgumentError("cutlocus applies to ordered star instances");
  Tree tree = load_tree(o);
  Metric m = metric_of(o);
  Instance in = load_instance(tree, o);
  StarView star(tree);
  auto r = plan_star(star, o.eps, in.a, in.b, m);
  json lengths = json::array();
  for (const auto& c : r.all_candidates)
    lengths.push_back({{"describe", c.describe()}, {"length", c.length(m)}});
  json j{{"in_cut_locus", r.in_cut_locus},
         {"class", r.cls.name()},
         {"metric", to_string(m)},
         {"candidates", lengths}};
  emit(o, out, io::dump(j));
  return kOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  Tree tree = load_tree(o);
  Metric m = metric_of(o);
  Instance in = load_instance(tree, o);
  OracleOptions opt;
  opt.h = o.h;
  opt.metric = m;
  opt.ordered = !o.unordered;
  opt.eps = o.unordered ? 0.0 : o.eps;
  opt.margin = o.margin;
  opt.any_angle = o.any_angle;
  double planner = 0.0;
  if (o.unordered) {
    check_unordered_pair(in.a);
    check_unordered_pair(in.b);
    planner = audit::plan_unordered_any(tree, in.a, in.b).length;
  } else {
    planner = audit::plan_ordered(StarView(tree), o.eps, in.a, in.b, m).length;
  }
  OracleResult r = oracle_shortest(tree, in.a, in.b, opt);
  json j{{"oracle", io::to_json(r)},
         {"h", o.h},
         {"metric", to_string(m)},
         {"planner_length", planner},
         {"gap", planner - r.length}};
  emit(o, out, io::dump(j));
  return kOk;
}

json report_json(const audit::PartitionReport& rep) {
  json rules = json::object(), labels = json::object();
  long sum = 0;
  for (auto [id, c] : rep.rule_counts) {
    rules[std::to_string(id)] = c;
    sum += c;
  }
  for (const auto& [name, c] : rep.label_counts) labels[name] = c;
  return {{"total", rep.total},
          {"failures", rep.failures},
          {"distinct_rule_ids", rep.rule_counts.size()},
          {"rule_counts", rules},
          {"labels", labels},
          {"exhaustive", rep.failures == 0 && sum == rep.total}};
}

int cmd_audit_partition(const Options& o, std::ostream& out) {
  Tree tree = load_tree(o);
  Metric m = metric_of(o);
  long n = o.n > 0 ? o.n : 10000;
  audit::PartitionReport rep = o.unordered ? audit::partition_unordered(tree, n, o.seed)
                                           : audit::partition_ordered(StarView(tree), o.eps, m,
                                                                      n, o.seed);
  json j = report_json(rep);
  j["seed"] = o.seed;
  j["ordered"] = !o.unordered;
  j["metric"] = to_string(m);
  emit(o, out, io::dump(j));
  return kOk;
}

int cmd_audit_continuity(const Options& o, std::ostream& out) {
  Metric m = metric_of(o);
  std::vector<double> deltas{o.eps / 10, o.eps / 100, o.eps / 1000};
  json scenarios = json::array();
  bool all = true;
  for (const auto& sc : audit::proof_scenarios(deltas)) {
    json steps = json::array();
    for (const auto& s : sc.steps)
      steps.push_back({{"delta", s.delta},
                       {"config_distance", s.config_distance},
                       {"sup", s.sup},
                       {"rule_id", s.rule_id}});
    scenarios.push_back({{"name", sc.name},
                         {"limit_rule", sc.limit_rule},
                         {"same_rule", sc.same_rule()},
                         {"bounded", sc.bounded()},
                         {"monotone", sc.monotone()},
                         {"pass", sc.pass()},
                         {"steps", steps}});
    all = all && sc.pass();
  }
  json j{{"scenarios", scenarios}, {"all_pass", all}};
  if (has_tree(o)) {
    Tree tree = load_tree(o);
    long n = o.n > 0 ? o.n : 200;
    json sampled = json::array();
    for (double d : deltas) {
      audit::SampledContinuity s =
          o.unordered ? audit::sampled_continuity_unordered(tree, n, d, o.seed)
                      : audit::sampled_continuity_ordered(StarView(tree), o.eps, m, n, d, o.seed);
      sampled.push_back({{"delta", d},
                         {"sequences", s.sequences},
                         {"same_rule", s.same_rule},
                         {"max_ratio", s.max_ratio},
                         {"median_ratio", s.median_ratio}});
    }
    j["sampled"] = sampled;
  }
  emit(o, out, io::dump(j));
  return kOk;
}

int cmd_render(const Options& o, std::ostream& out) {
  Tree tree = load_tree(o);
  Metric m = metric_of(o);
  Instance in = load_instance(tree, o);
  std::string svg;
  if (o.kind == "hull") {
    if (!o.unordered) throw ArgumentError("--kind hull needs --unordered");
    check_unordered_pair(in.a);
    check_unordered_pair(in.b);
    auto r = plan_unordered_auto(tree, UnorderedConfig::make(in.a.p1, in.a.p2),
                                 UnorderedConfig::make(in.b.p1, in.b.p2));
    svg = svg::render_hull(tree, r.diagram,
                           to_string(r.diagram.type) + " diagram, " + to_string(r.eset));
  } else if (o.kind == "plane") {
    if (o.unordered) throw ArgumentError("--kind plane applies to ordered star instances");
    StarView star(tree);
    auto r = plan_star(star, o.eps, in.a, in.b, m);
    svg = svg::render_plane(star, o.eps, in.a, in.b, r.chosen.path,
                            r.cls.name() + ", " + r.chosen.describe());
  } else if (o.kind == "instance") {
    std::optional<BiPath> path;
    std::string title;
    if (o.unordered) {
      check_unordered_pair(in.a);
      check_unordered_pair(in.b);
      auto r = plan_unordered_auto(tree, UnorderedConfig::make(in.a.p1, in.a.p2),
                                   UnorderedConfig::make(in.b.p1, in.b.p2));
      path = r.path;
      title = to_string(r.eset) + ", l1 length " + std::to_string(r.length);
    } else {
      auto r = plan_star(StarView(tree), o.eps, in.a, in.b, m);
      path = r.chosen.path;
      title = r.cls.name() + ", " + to_string(m) + " length " +
              std::to_string(r.chosen.length(m));
    }
    svg = svg::render_instance(tree, in.a, in.b, path, title);
  } else {
    throw ArgumentError("unknown --kind '" + o.kind + "' (instance, hull, plane)");
  }
  emit(o, out, svg);
  return kOk;
}

void common(CLI::App* sub, Options& o) {
  sub->add_option("--tree", o.tree_file, "Tree JSON file");
  sub->add_option("--star", o.star, "Star tree given by its arm lengths, e.g. 10,10,10");
  sub->add_option("--metric", o.metric, "l1 or l2")->check(CLI::IsMember({"l1", "l2"}));
  sub->add_option("--eps", o.eps, "Separation for ordered configurations")
      ->check(CLI::PositiveNumber);
  auto* un = sub->add_flag("--unordered", o.unordered, "Unordered configurations (l1 only)");
  sub->add_flag("--ordered", o.ordered, "Ordered configurations (default)")->excludes(un);
  sub->add_option("--seed", o.seed, "Random seed");
  sub->add_option("--out", o.out, "Output file (default stdout)");
}

void points(CLI::App* sub, Options& o) {
  sub->add_option("--a", o.a, "Start configuration: two points, e.g. 1@1,2@2 or e0:1.5,v3");
  sub->add_option("--b", o.b, "Goal configuration");
  sub->add_option("--instance", o.instance, "JSON file with configurations a and b");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic motion planning for two robots on a metric tree", "geotree-cli"};
  app.require_subcommand(1);
  Options o;

  auto* plan = app.add_subcommand("plan", "Plan a geodesic motion");
  auto* cls = app.add_subcommand("classify", "Classify an instance");
  auto* cut = app.add_subcommand("cutlocus", "Cut locus test with candidate lengths");
  auto* orc = app.add_subcommand("oracle", "Discretized shortest path for comparison");
  auto* part = app.add_subcommand("audit-partition", "Rule id counts over random instances");
  auto* cont = app.add_subcommand("audit-continuity", "Continuity of each rule on limit sequences");
  auto* ren = app.add_subcommand("render", "SVG of an instance, hull diagram or chart");
  for (auto* s : {plan, cls, cut, orc, part, cont, ren}) common(s, o);
  for (auto* s : {plan, cls, cut, orc, ren}) points(s, o);
  orc->set_help_flag("--help", "Print this help message and exit");
  orc->add_option("--h", o.h, "Grid step")->check(CLI::PositiveNumber);
  orc->add_option("--margin", o.margin, "Extra separation required at grid nodes");
  orc->add_flag("--any-angle", o.any_angle, "Any-angle relaxation (ordered l2 on stars)");
  part->add_option("--n", o.n, "Number of random instances (default 10000)");
  cont->add_option("--n", o.n, "Sampled sequences on the given tree (default 200)");
  ren->add_option("--kind", o.kind, "instance, hull or plane");

  std::vector<const char*> argv{"geotree-cli"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    if (*plan) return cmd_plan(o, out);
    if (*cls) return cmd_classify(o, out);
    if (*cut) return cmd_cutlocus(o, out);
    if (*orc) return cmd_oracle(o, out);
    if (*part) return cmd_audit_partition(o, out);
    if (*cont) return cmd_audit_continuity(o, out);
    if (*ren) return cmd_render(o, out);
  } catch (const DomainError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const io::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kValidation;
  }
  return kInternal;
}

}  // namespace geotree::cli

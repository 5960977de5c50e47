#include "geotree/star_planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "geotree/errors.hpp"

namespace geotree {

std::string to_string(StarSubtype s) {
  switch (s) {
    case StarSubtype::X1Plus: return "X1_plus";
    case StarSubtype::X1Minus: return "X1_minus";
    case StarSubtype::X2Plus: return "X2_plus";
    case StarSubtype::X2MinusOpp: return "X2_minus_opp";
    case StarSubtype::X2MinusThreeOnArm: return "X2_minus_three_on_arm";
    case StarSubtype::X3: return "X3";
    case StarSubtype::X4: return "X4";
  }
  return "?";
}

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::Agree: return "agree";
    case Orientation::Disagree: return "disagree";
    case Orientation::NotApplicable: return "n/a";
  }
  return "?";
}

std::string StarClass::name() const {
  std::string suffix = metric ? "_" + to_string(*metric) : "";
  if (subtype == StarSubtype::X4 && eq) return std::string(*eq ? "X4_eq" : "X4_n") + suffix;
  if (subtype == StarSubtype::X2MinusOpp && eq) return std::string(*eq ? "X2_eq" : "X2_n") + suffix;
  if (subtype == StarSubtype::X2MinusThreeOnArm && metric) return "X2_n" + suffix;
  return to_string(subtype);
}

std::string Candidate::describe() const {
  std::ostringstream os;
  switch (kind) {
    case CandidateKind::Direct: os << "direct"; break;
    case CandidateKind::Type: os << "type" << particle; break;
    case CandidateKind::Switch:
      if (arm_p1 && arm_p2)
        os << "switch(p1:arm" << arm_p1 << ",p2:arm" << arm_p2 << ")";
      else
        os << "switch(p" << particle << ",arm" << (particle == 1 ? arm_p1 : arm_p2) << ")";
      break;
  }
  return os.str();
}

bool lengths_equal(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

namespace {

bool near_tie(double a, double b) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  double d = std::abs(a - b);
  return d >= 0.1 * kTieTolerance * scale && d <= 10.0 * kTieTolerance * scale;
}

int next_arm(int arm, int k) { return arm % k + 1; }

void check_eps(const StarView& star, double eps) {
  if (!(eps > 0.0)) throw ArgumentError("eps must be positive");
  for (int arm = 1; arm <= star.num_arms(); ++arm)
    if (star.arm_length(arm) < eps - 1e-12)
      throw ArgumentError("eps must not exceed any arm length");
}

struct Occupancy {
  StarCoord a1, a2, b1, b2;
  std::set<int> arms;  // open arms holding at least one point
};

Occupancy occupancy(const StarView& star, const OrderedConfig& a, const OrderedConfig& b) {
  Occupancy o{star.coord(a.p1), star.coord(a.p2), star.coord(b.p1), star.coord(b.p2), {}};
  for (const auto* c : {&o.a1, &o.a2, &o.b1, &o.b2})
    if (!c->is_center()) o.arms.insert(c->arm);
  return o;
}

// Shortest path between two configurations inside their (filled) common chart.
std::optional<BiPath> chart_leg(const StarView& star, double eps, const OrderedConfig& from,
                                const OrderedConfig& to, Winding cls = Winding::Any,
                                std::optional<Chart> chart = std::nullopt) {
  Chart c = chart ? *chart : fill_unused(chart_of(star, from, to, eps), star.num_arms());
  Obstacle obs = obstacle_of(c);
  auto g = planar_geodesic(obs, embed(star, c, from), embed(star, c, to), Metric::L2, cls);
  if (!g) return std::nullopt;
  BiPath p = unembed_path(star, c, *g);
  p.breakpoints.front().c = from;
  p.breakpoints.back().c = to;
  return p;
}

Candidate make_candidate(const Tree& tree, CandidateKind kind, int particle, int arm_p1,
                         int arm_p2, BiPath path) {
  Candidate c;
  c.kind = kind;
  c.particle = particle;
  c.arm_p1 = arm_p1;
  c.arm_p2 = arm_p2;
  c.len_l1 = path_length(tree, path, Metric::L1);
  c.len_l2 = path_length(tree, path, Metric::L2);
  c.path = std::move(path);
  return c;
}

}  // namespace

void check_feps(const StarView& star, double eps, const OrderedConfig& c) {
  if (!in_feps(star.tree(), c, eps))
    throw DomainError("configuration " + to_string(c.p1) + "," + to_string(c.p2) +
                      " is not in F_eps");
}

StarClass classify(const StarView& star, double eps, const OrderedConfig& a,
                   const OrderedConfig& b) {
  check_eps(star, eps);
  check_feps(star, eps, a);
  check_feps(star, eps, b);
  Occupancy o = occupancy(star, a, b);
  StarClass cls;
  cls.arms_occupied = static_cast<int>(o.arms.size());
  if (cls.arms_occupied >= 4) {
    cls.subtype = StarSubtype::X4;
    return cls;
  }
  if (cls.arms_occupied == 3) {
    cls.subtype = StarSubtype::X3;
    return cls;
  }
  // Signed coordinate along the one or two occupied arms.
  int neg_arm = *o.arms.begin();
  auto x = [&](const StarCoord& c) { return c.is_center() ? 0.0 : (c.arm == neg_arm ? -c.depth : c.depth); };
  auto sgn = [](double v) { return (v > 0.0) - (v < 0.0); };
  bool agree = sgn(x(o.a1) - x(o.a2)) == sgn(x(o.b1) - x(o.b2));
  cls.orientation = agree ? Orientation::Agree : Orientation::Disagree;
  if (cls.arms_occupied <= 1) {
    cls.subtype = agree ? StarSubtype::X1Plus : StarSubtype::X1Minus;
    return cls;
  }
  if (agree) {
    cls.subtype = StarSubtype::X2Plus;
    return cls;
  }
  auto same_open = [](const StarCoord& p, const StarCoord& q) {
    return !p.is_center() && !q.is_center() && p.arm == q.arm;
  };
  bool opp = same_open(o.a1, o.b2) && same_open(o.a2, o.b1) && o.a1.arm != o.a2.arm;
  cls.subtype = opp ? StarSubtype::X2MinusOpp : StarSubtype::X2MinusThreeOnArm;
  return cls;
}

std::vector<Candidate> candidates(const StarView& star, double eps, const OrderedConfig& a,
                                  const OrderedConfig& b) {
  StarClass cls = classify(star, eps, a, b);
  const Tree& tree = star.tree();
  const int k = star.num_arms();
  Occupancy o = occupancy(star, a, b);
  std::vector<Candidate> out;
  switch (cls.subtype) {
    case StarSubtype::X1Plus:
    case StarSubtype::X2Plus:
    case StarSubtype::X3: {
      auto p = chart_leg(star, eps, a, b);
      if (p) out.push_back(make_candidate(tree, CandidateKind::Direct, 0, 0, 0, std::move(*p)));
      break;
    }
    case StarSubtype::X4: {
      Chart c = chart_of(star, a, b, eps);
      for (int type : {1, 2}) {
        auto p = chart_leg(star, eps, a, b, type == 1 ? Winding::CCW : Winding::CW, c);
        if (p) out.push_back(make_candidate(tree, CandidateKind::Type, type, 0, 0, std::move(*p)));
      }
      break;
    }
    case StarSubtype::X1Minus: {
      int i = *o.arms.begin();
      for (int j = 1; j <= k; ++j)
        for (int jp = 1; jp <= k; ++jp) {
          if (j == i || jp == i || j == jp) continue;
          Chart c{i, jp, i, j, eps};
          auto p = chart_leg(star, eps, a, b, Winding::Any, c);
          if (p)
            out.push_back(make_candidate(tree, CandidateKind::Switch, 2, jp, j, std::move(*p)));
        }
      break;
    }
    case StarSubtype::X2MinusOpp:
    case StarSubtype::X2MinusThreeOnArm: {
      PointOnTree center = star.point(StarCoord{});
      for (int particle : {1, 2})
        for (int arm = 1; arm <= k; ++arm) {
          if (o.arms.count(arm)) continue;
          PointOnTree parked = star.point(arm, eps);
          OrderedConfig w = particle == 1 ? OrderedConfig{parked, center} : OrderedConfig{center, parked};
          auto first = chart_leg(star, eps, a, w);
          if (!first) continue;
          auto second = chart_leg(star, eps, w, b);
          if (!second) continue;
          BiPath p = concat(tree, *first, *second);
          out.push_back(make_candidate(tree, CandidateKind::Switch, particle,
                                       particle == 1 ? arm : 0, particle == 2 ? arm : 0,
                                       std::move(p)));
        }
      break;
    }
  }
  if (out.empty()) throw InfeasibleError("no candidate path found");
  return out;
}

StarPlanResult plan_star(const StarView& star, double eps, const OrderedConfig& a,
                         const OrderedConfig& b, Metric m) {
  StarPlanResult r;
  r.metric = m;
  r.cls = classify(star, eps, a, b);
  r.cls.metric = m;
  r.all_candidates = candidates(star, eps, a, b);
  const int k = star.num_arms();
  const auto& cs = r.all_candidates;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cs) best = std::min(best, c.length(m));
  std::vector<const Candidate*> minimal;
  for (const auto& c : cs)
    if (lengths_equal(c.length(m), best)) minimal.push_back(&c);

  auto type_best = [&](int particle) {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& c : cs)
      if (c.particle == particle) v = std::min(v, c.length(m));
    return v;
  };

  Occupancy o = occupancy(star, a, b);
  const Candidate* chosen = minimal.front();
  bool cut = false;
  int rule = 0;
  switch (r.cls.subtype) {
    case StarSubtype::X1Plus:
    case StarSubtype::X2Plus:
    case StarSubtype::X3:
      break;
    case StarSubtype::X4: {
      double t1 = type_best(1), t2 = type_best(2);
      bool eq = lengths_equal(t1, t2);
      r.cls.eq = eq;
      r.cls.near_tie = near_tie(t1, t2);
      int type = eq ? 1 : (t1 < t2 ? 1 : 2);
      for (const auto& c : cs)
        if (c.particle == type) chosen = &c;
      cut = eq;
      rule = eq ? 1 : 0;
      break;
    }
    case StarSubtype::X1Minus: {
      int i = *o.arms.begin();
      int j = next_arm(i, k), jp = next_arm(j, k);
      for (const auto* c : minimal)
        if (c->arm_p2 == j && c->arm_p1 == jp) chosen = c;
      cut = true;
      rule = 1;
      break;
    }
    case StarSubtype::X2MinusOpp:
    case StarSubtype::X2MinusThreeOnArm: {
      double t1 = type_best(1), t2 = type_best(2);
      bool opp = r.cls.subtype == StarSubtype::X2MinusOpp;
      bool eq = opp && lengths_equal(t1, t2);
      if (opp) {
        r.cls.eq = eq;
        r.cls.near_tie = near_tie(t1, t2);
      }
      int particle = 0, arm = 0;
      if (eq) {
        for (int s = 1; s <= k && !arm; ++s)
          if (!o.arms.count(s) && o.arms.count(next_arm(s, k))) arm = s;
        int from = next_arm(arm, k);
        particle = (!o.a1.is_center() && o.a1.arm == from) ? 1 : 2;
      } else {
        particle = t1 <= t2 ? 1 : 2;
        arm = std::numeric_limits<int>::max();
        for (const auto* c : minimal)
          if (c->particle == particle) arm = std::min(arm, particle == 1 ? c->arm_p1 : c->arm_p2);
      }
      for (const auto& c : cs)
        if (c.particle == particle && (particle == 1 ? c.arm_p1 : c.arm_p2) == arm) chosen = &c;
      if (k == 3) {
        cut = eq;
        rule = eq ? 1 : 0;
      } else {
        cut = true;
        rule = eq ? 0 : 2;
      }
      break;
    }
  }
  r.chosen = *chosen;
  r.in_cut_locus = cut;
  r.rule_id = rule;
  return r;
}

StarClass classify(const StarView& star, double eps, const OrderedConfig& a,
                   const OrderedConfig& b, Metric m) {
  return plan_star(star, eps, a, b, m).cls;
}

bool is_in_cut_locus(const StarView& star, double eps, const OrderedConfig& a,
                     const OrderedConfig& b, Metric m) {
  return plan_star(star, eps, a, b, m).in_cut_locus;
}

}  // namespace geotree

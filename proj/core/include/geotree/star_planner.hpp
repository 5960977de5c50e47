#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geotree/chart.hpp"
#include "geotree/config.hpp"
#include "geotree/tree.hpp"

namespace geotree {

enum class StarSubtype { X1Plus, X1Minus, X2Plus, X2MinusOpp, X2MinusThreeOnArm, X3, X4 };
enum class Orientation { Agree, Disagree, NotApplicable };

std::string to_string(StarSubtype s);
std::string to_string(Orientation o);

struct StarClass {
  int arms_occupied = 0;
  Orientation orientation = Orientation::NotApplicable;
  StarSubtype subtype = StarSubtype::X1Plus;
  // Equal-length refinement; set only for X2MinusOpp and X4 once a metric is fixed.
  std::optional<bool> eq;
  std::optional<Metric> metric;
  bool near_tie = false;

  // Printable name, e.g. "X2_minus_opp", "X4_eq_l1", "X2_n_l2".
  std::string name() const;
};

enum class CandidateKind { Direct, Switch, Type };

struct Candidate {
  CandidateKind kind = CandidateKind::Direct;
  // Switch: the particle that enters the empty arm first. Type: the particle
  // that passes the center first.
  int particle = 0;
  // Switch arms. For X2 switches only the passing particle's arm is set; for
  // X1 switches both are.
  int arm_p1 = 0;
  int arm_p2 = 0;
  BiPath path;  // the locally l2-taut realization
  double len_l1 = 0.0;
  double len_l2 = 0.0;

  double length(Metric m) const { return m == Metric::L1 ? len_l1 : len_l2; }
  std::string describe() const;
};

struct StarPlanResult {
  Candidate chosen;
  StarClass cls;
  Metric metric = Metric::L2;
  int rule_id = 0;
  bool in_cut_locus = false;
  std::vector<Candidate> all_candidates;
};

// Relative tolerance used to decide equal candidate lengths.
inline constexpr double kTieTolerance = 1e-9;
bool lengths_equal(double a, double b);

void check_feps(const StarView& star, double eps, const OrderedConfig& c);

StarClass classify(const StarView& star, double eps, const OrderedConfig& a,
                   const OrderedConfig& b);
// Adds the metric dependent Eq/N refinement.
StarClass classify(const StarView& star, double eps, const OrderedConfig& a,
                   const OrderedConfig& b, Metric m);

std::vector<Candidate> candidates(const StarView& star, double eps, const OrderedConfig& a,
                                  const OrderedConfig& b);

StarPlanResult plan_star(const StarView& star, double eps, const OrderedConfig& a,
                         const OrderedConfig& b, Metric m);

bool is_in_cut_locus(const StarView& star, double eps, const OrderedConfig& a,
                     const OrderedConfig& b, Metric m);

}  // namespace geotree

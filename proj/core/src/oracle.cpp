#include "geotree/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "geotree/errors.hpp"

namespace geotree {

namespace {
constexpr double kTol = 1e-9;
constexpr std::size_t kMaxTable = std::size_t(1) << 26;  // grid distance table entries
// Plain Euclidean norm; std::hypot is markedly slower in the search loop.
inline double norm2(double x, double y) { return std::sqrt(x * x + y * y); }
}  // namespace

Grid discretize(const Tree& tree, double h) {
  if (!(h > 0.0)) throw ArgumentError("grid step must be positive");
  if (h > 0.5 * tree.min_edge_length() + 1e-12)
    throw ArgumentError("grid step too large: need h <= min edge length / 2");
  Grid g;
  g.h = h;
  for (int v = 0; v < tree.num_vertices(); ++v) g.points.push_back(PointOnTree::at_vertex(v));
  g.vertex_point.resize(tree.num_vertices());
  for (int v = 0; v < tree.num_vertices(); ++v) g.vertex_point[v] = v;
  g.steps.assign(g.points.size(), {});
  for (const Edge& e : tree.edges()) {
    int pieces = std::max(1, static_cast<int>(std::ceil(e.len / h - 1e-9)));
    double step = e.len / pieces;
    int prev = e.u;
    double prev_off = 0.0;
    for (int i = 1; i <= pieces; ++i) {
      int cur;
      double off = i == pieces ? e.len : i * step;
      if (i == pieces) {
        cur = e.v;
      } else {
        cur = g.size();
        g.points.push_back(PointOnTree{-1, e.id, off});
        g.steps.emplace_back();
      }
      g.steps[prev].push_back({cur, e.id, prev_off, off, off - prev_off});
      g.steps[cur].push_back({prev, e.id, off, prev_off, off - prev_off});
      prev = cur;
      prev_off = off;
    }
  }
  return g;
}

std::vector<std::pair<int, double>> bracket(const Tree& tree, const Grid& grid,
                                            const PointOnTree& p) {
  tree.validate(p);
  if (p.is_vertex()) return {{grid.vertex_point[p.vertex], 0.0}};
  const Edge& e = tree.edge(p.edge);
  int pieces = std::max(1, static_cast<int>(std::ceil(e.len / grid.h - 1e-9)));
  double step = e.len / pieces;
  // Interior points of an edge were appended consecutively from u.
  int first = -1;
  for (const auto& s : grid.steps[grid.vertex_point[e.u]])
    if (s.edge == e.id) first = s.to;
  if (first < 0) throw StructuralError("grid does not match tree");
  auto index = [&](int idx) {
    if (idx <= 0) return grid.vertex_point[e.u];
    if (idx >= pieces) return grid.vertex_point[e.v];
    return first + idx - 1;
  };
  int lo = std::clamp(static_cast<int>(std::floor(p.offset / step)), 0, pieces - 1);
  std::vector<std::pair<int, double>> out{{index(lo), p.offset - lo * step},
                                          {index(lo + 1), (lo + 1) * step - p.offset}};
  if (out[1].second < out[0].second) std::swap(out[0], out[1]);
  return out;
}

std::pair<int, double> snap(const Tree& tree, const Grid& grid, const PointOnTree& p) {
  return bracket(tree, grid, p).front();
}

Oracle::Oracle(const Tree& tree, OracleOptions opt) : tree_(tree), opt_(std::move(opt)) {
  grid_ = discretize(tree_, opt_.h);
  n_ = grid_.size();
  if (static_cast<std::size_t>(n_) * n_ > kMaxTable)
    throw ArgumentError("grid too fine for the oracle's distance table");
  if (opt_.ordered && !(opt_.eps > 0.0)) throw ArgumentError("ordered oracle needs eps > 0");
  if (!opt_.ordered && opt_.metric != Metric::L1)
    throw ArgumentError("unordered oracle supports only the l1 metric");

  table_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  std::vector<int> stack;
  std::vector<int> from(n_);
  for (int s = 0; s < n_; ++s) {
    double* row = &table_[static_cast<std::size_t>(s) * n_];
    stack.assign(1, s);
    from[s] = -1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& st : grid_.steps[x]) {
        if (st.to == from[x]) continue;
        from[st.to] = x;
        row[st.to] = row[x] + st.len;
        stack.push_back(st.to);
      }
    }
  }
  allow1_.assign(n_, 1);
  allow2_.assign(n_, 1);
  for (int i = 0; i < n_; ++i) {
    if (opt_.allow_p1) allow1_[i] = opt_.allow_p1(grid_.points[i]);
    if (opt_.allow_p2) allow2_[i] = opt_.allow_p2(grid_.points[i]);
  }
  if (opt_.any_angle) {
    if (opt_.metric != Metric::L2 || !opt_.ordered)
      throw ArgumentError("any-angle relaxation applies to the ordered l2 oracle");
    StarView star(tree_);
    arm_.resize(n_);
    depth_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      StarCoord c = star.coord(grid_.points[i]);
      arm_[i] = c.arm;
      depth_[i] = c.depth;
    }
  }
}

bool Oracle::node_ok(int i, int j) const {
  if (!allow1_[i] || !allow2_[j]) return false;
  if (opt_.ordered) return gdist(i, j) >= opt_.eps + opt_.margin - kTol;
  return i != j;
}

bool Oracle::step_ok(int, const GridStep* si, int, const GridStep* sj) const {
  // Both particles move along the same tree edge: they must not cross.
  if (si && sj && si->edge == sj->edge) {
    double g0 = si->from_off - sj->from_off, g1 = si->to_off - sj->to_off;
    if (!((g0 > 0.0 && g1 > 0.0) || (g0 < 0.0 && g1 < 0.0))) return false;
  }
  return true;
}

namespace {

// Affine description of one particle moving uniformly between star coordinates.
struct StarMove {
  int a, b;
  double da, db, tau;  // tau: time at the center when switching arms
};

StarMove star_move(int a, double da, int b, double db) {
  StarMove m{a, b, da, db, -1.0};
  if (a != 0 && b != 0 && a != b) m.tau = da / (da + db);
  return m;
}

void star_at(const StarMove& m, double t, int& arm, double& depth) {
  if (m.a == 0 || m.b == 0 || m.a == m.b) {
    if (m.a == 0 && m.b == 0) {
      arm = 0;
      depth = 0.0;
    } else {
      arm = m.a == 0 ? m.b : m.a;
      double da = m.a == 0 ? 0.0 : m.da, db = m.b == 0 ? 0.0 : m.db;
      depth = da + (db - da) * t;
    }
    return;
  }
  double s = t * (m.da + m.db);
  if (s <= m.da) {
    arm = m.a;
    depth = m.da - s;
  } else {
    arm = m.b;
    depth = s - m.da;
  }
}

}  // namespace

bool Oracle::straight_ok(int i0, int j0, int i1, int j1) const {
  StarMove m1 = star_move(arm_[i0], depth_[i0], arm_[i1], depth_[i1]);
  StarMove m2 = star_move(arm_[j0], depth_[j0], arm_[j1], depth_[j1]);
  double cuts[4] = {0.0, 1.0, m1.tau, m2.tau};
  std::sort(cuts, cuts + 4);
  double prev = 0.0;
  for (double c : cuts) {
    if (!(c > prev) || c > 1.0) continue;
    double mid = 0.5 * (prev + c);
    int am1, am2;
    double dm1, dm2;
    star_at(m1, mid, am1, dm1);
    star_at(m2, mid, am2, dm2);
    int a1, a2, b1, b2;
    double x1, x2, y1, y2;
    star_at(m1, prev, a1, x1);
    star_at(m2, prev, a2, x2);
    star_at(m1, c, b1, y1);
    star_at(m2, c, b2, y2);
    // On a piece each particle keeps one arm; depths are affine in t.
    if (am1 == am2 && am1 != 0) {
      double g0 = x1 - x2, g1 = y1 - y2;
      bool above = g0 >= opt_.eps - kTol && g1 >= opt_.eps - kTol;
      bool below = g0 <= -opt_.eps + kTol && g1 <= -opt_.eps + kTol;
      if (!above && !below) return false;
    } else {
      if (x1 + x2 < opt_.eps - kTol || y1 + y2 < opt_.eps - kTol) return false;
    }
    prev = c;
  }
  return allow1_[i1] && allow2_[j1];
}

std::tuple<int, int, double> Oracle::snap_config(const OrderedConfig& c) const {
  // Nearest feasible pair among the grid points bracketing each particle.
  std::tuple<int, int, double> best{-1, -1, std::numeric_limits<double>::infinity()};
  for (auto [i, ei] : bracket(tree_, grid_, c.p1))
    for (auto [j, ej] : bracket(tree_, grid_, c.p2))
      if (node_ok(i, j) && ei + ej < std::get<2>(best)) best = {i, j, ei + ej};
  if (std::get<0>(best) < 0)
    throw InfeasibleError("no feasible grid configuration next to " + to_string(c.p1) + "," +
                          to_string(c.p2));
  return best;
}

OracleResult Oracle::shortest(const OrderedConfig& a, const OrderedConfig& b) const {
  auto t0 = std::chrono::steady_clock::now();
  OracleResult res;
  auto [a1, a2, ea] = snap_config(a);
  auto [b1, b2, eb] = snap_config(b);
  res.snap_error = ea + eb;
  const bool ordered = opt_.ordered;
  auto canon = [&](int i, int j) {
    if (!ordered && j < i) std::swap(i, j);
    return static_cast<std::size_t>(i) * n_ + j;
  };
  std::size_t src = canon(a1, a2), dst = canon(b1, b2);

  const std::size_t total = static_cast<std::size_t>(n_) * n_;
  std::vector<double> dist(total, std::numeric_limits<double>::infinity());
  std::vector<int> parent(total, -1);
  std::vector<char> done(total, 0);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[src] = 0.0;
  heap.push({0.0, src});
  const bool l1 = opt_.metric == Metric::L1;
  const bool any = opt_.any_angle;

  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    ++res.settled;
    if (u == dst) break;
    int i = static_cast<int>(u / n_), j = static_cast<int>(u % n_);
    const auto& si = grid_.steps[i];
    const auto& sj = grid_.steps[j];
    const int ni = static_cast<int>(si.size()), nj = static_cast<int>(sj.size());
    const int pu = parent[u];
    const int pi = pu >= 0 ? pu / n_ : -1, pj = pu >= 0 ? pu % n_ : -1;
    for (int x = -1; x < ni; ++x)
      for (int y = -1; y < nj; ++y) {
        if (x < 0 && y < 0) continue;
        const GridStep* gx = x >= 0 ? &si[x] : nullptr;
        const GridStep* gy = y >= 0 ? &sj[y] : nullptr;
        int i2 = gx ? gx->to : i, j2 = gy ? gy->to : j;
        if (!node_ok(i2, j2) || !step_ok(i, gx, j, gy)) continue;
        std::size_t v = canon(i2, j2);
        if (done[v]) continue;
        ++res.relaxed;
        double lx = gx ? gx->len : 0.0, ly = gy ? gy->len : 0.0;
        double nd = d + (l1 ? lx + ly : std::sqrt(lx * lx + ly * ly));
        int via = static_cast<int>(u);
        if (any && pu >= 0) {
          // The straightness test is the expensive part; only run it when it could help.
          double alt = dist[pu] + norm2(gdist(pi, i2), gdist(pj, j2));
          if (alt <= nd && alt < dist[v] && straight_ok(pi, pj, i2, j2)) {
            nd = alt;
            via = pu;
          }
        }
        if (nd < dist[v]) {
          dist[v] = nd;
          parent[v] = via;
          heap.push({nd, v});
        }
      }
  }
  if (!done[dst]) throw InfeasibleError("oracle graph does not connect the endpoints");
  res.length = dist[dst];

  std::vector<std::size_t> chain;
  for (std::size_t v = dst;; v = static_cast<std::size_t>(parent[v])) {
    chain.push_back(v);
    if (v == src) break;
  }
  std::reverse(chain.begin(), chain.end());
  for (std::size_t v : chain) {
    OrderedConfig c{grid_.points[v / n_], grid_.points[v % n_]};
    if (!ordered && !res.path.empty()) {
      const auto& prev = res.path.back();
      double keep = distance(tree_, prev.p1, c.p1) + distance(tree_, prev.p2, c.p2);
      double swap = distance(tree_, prev.p1, c.p2) + distance(tree_, prev.p2, c.p1);
      if (swap < keep) std::swap(c.p1, c.p2);
    } else if (!ordered && res.path.empty()) {
      if (!(c.p1 == grid_.points[a1])) std::swap(c.p1, c.p2);
    }
    res.path.push_back(c);
  }
  for (std::size_t v = 0; v < total; ++v) res.nodes += dist[v] < std::numeric_limits<double>::infinity();
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

OracleResult oracle_shortest(const Tree& tree, const OrderedConfig& a, const OrderedConfig& b,
                             const OracleOptions& opt) {
  return Oracle(tree, opt).shortest(a, b);
}

}  // namespace geotree

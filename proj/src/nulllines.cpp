#include "qplink/nulllines.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace qplink {

namespace {

struct Jac {
  cplx H;
  Vec3 gr, gi;  // grad Re H, grad Im H
};

Jac jacobian(const BiPolyUV& h, const Vec3& x, double t) {
  CVec3 g;
  Jac j;
  j.H = null_function(h, x, t, &g);
  j.gr = real(g);
  j.gi = imag(g);
  return j;
}

// Minimum-norm Newton step onto Re H = Im H = 0.
bool newton_project(const BiPolyUV& h, Vec3& x, double t, double max_move, double* residual) {
  const Vec3 x0 = x;
  for (int it = 0; it < 30; ++it) {
    const auto j = jacobian(h, x, t);
    const double a = dot(j.gr, j.gr), b = dot(j.gr, j.gi), c = dot(j.gi, j.gi);
    const double det = a * c - b * b;
    if (!(det > 0.0)) return false;
    const double fr = j.H.real(), fi = j.H.imag();
    // (J J^T)^{-1} F
    const double l1 = (c * fr - b * fi) / det, l2 = (-b * fr + a * fi) / det;
    const Vec3 step = l1 * j.gr + l2 * j.gi;
    x = x - step;
    if (norm(x - x0) > max_move) return false;
    if (norm(step) <= 1e-14 * (1.0 + norm(x))) {
      const auto k = jacobian(h, x, t);
      *residual = std::abs(k.H) / std::sqrt(std::max(dot(k.gr, k.gr), dot(k.gi, k.gi)));
      return *residual < 1e-9;
    }
  }
  const auto k = jacobian(h, x, t);
  *residual = std::abs(k.H) / std::sqrt(std::max(dot(k.gr, k.gr), dot(k.gi, k.gi)));
  return *residual < 1e-9;
}

Vec3 tangent(const BiPolyUV& h, const Vec3& x, double t) {
  const auto j = jacobian(h, x, t);
  const Vec3 c = cross(j.gr, j.gi);
  const double n = norm(c);
  return n > 0 ? (1.0 / n) * c : Vec3{0, 0, 0};
}

bool inside(const Vec3& x, double box) {
  return std::abs(x[0]) <= box && std::abs(x[1]) <= box && std::abs(x[2]) <= box;
}

// Spatial hash of traced vertices for seed rejection.
class PointIndex {
 public:
  explicit PointIndex(double cell) : cell_(cell) {}
  void add(const Vec3& p) { map_[key(cell_of(p))].push_back(p); }
  double nearest(const Vec3& p) const {
    double best = std::numeric_limits<double>::infinity();
    const auto c = cell_of(p);
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          auto it = map_.find(key({c[0] + dx, c[1] + dy, c[2] + dz}));
          if (it == map_.end()) continue;
          for (const auto& q : it->second) best = std::min(best, norm(p - q));
        }
    return best;
  }

 private:
  std::array<long, 3> cell_of(const Vec3& p) const {
    return {static_cast<long>(std::floor(p[0] / cell_)), static_cast<long>(std::floor(p[1] / cell_)),
            static_cast<long>(std::floor(p[2] / cell_))};
  }
  static long key(const std::array<long, 3>& c) { return (c[0] * 73856093L) ^ (c[1] * 19349663L) ^ (c[2] * 83492791L); }
  double cell_;
  std::unordered_map<long, std::vector<Vec3>> map_;
};

struct HalfTrace {
  Polyline points;
  bool closed = false;
  bool left_box = false;
  double max_residual = 0.0;
};

HalfTrace trace_direction(const BiPolyUV& h, const Vec3& start, double t, double sign, const NullLineOptions& opt,
                          double max_step, int max_points) {
  HalfTrace out;
  out.points.push_back(start);
  Vec3 x = start;
  Vec3 T = sign * tangent(h, x, t);
  double ds = max_step;
  double travelled = 0.0;
  const double min_step = max_step * 1e-6;
  while (static_cast<int>(out.points.size()) < max_points) {
    Vec3 next = x + ds * T;
    double res = 0.0;
    bool ok = newton_project(h, next, t, 0.5 * ds + 1e-12, &res);
    Vec3 Tn{};
    if (ok) {
      Tn = tangent(h, next, t);
      if (dot(Tn, T) < 0) Tn = -1.0 * Tn;
      ok = dot(Tn, T) > 0.98 && norm(next - x) > 0.25 * ds;
    }
    if (!ok) {
      ds *= 0.5;
      if (ds < min_step) throw Error("nulllines", "tracer step underflow");
      continue;
    }
    travelled += norm(next - x);
    x = next;
    T = Tn;
    out.max_residual = std::max(out.max_residual, res);
    if (!inside(x, opt.box)) {
      out.points.push_back(x);
      out.left_box = true;
      return out;
    }
    if (travelled > 4.0 * max_step && norm(x - start) < 1.5 * ds) {
      out.closed = true;
      return out;
    }
    out.points.push_back(x);
    ds = std::min(max_step, ds * 1.5);
  }
  throw Error("nulllines", "null line exceeded the point budget");
}

}  // namespace

double NullLine::length() const {
  double l = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) l += norm(points[i] - points[i - 1]);
  if (closed && points.size() > 1) l += norm(points.front() - points.back());
  return l;
}

cplx null_function(const BiPolyUV& h, const Vec3& x, double t, CVec3* grad) {
  const auto j = projection_jet(SpacetimePoint::at(x, t));
  if (!grad) return h.eval(j.u, j.v);
  const auto g = h.eval_grad(j.u, j.v);
  *grad = g.du * j.grad_u + g.dv * j.grad_v;
  return g.value;
}

NullLineSet trace_null_lines(const BiPolyUV& h, double t, const NullLineOptions& opt) {
  if (opt.resolution < 32) throw Error("nulllines", "resolution must be at least 32");
  if (!(opt.box > 0.0)) throw Error("nulllines", "search box must be bounded and nonempty");
  NullLineSet set;
  set.t = t;
  if (h.is_zero()) throw Error("nulllines", "h vanishes identically");

  const int n = opt.resolution;
  const double cell = 2.0 * opt.box / (n - 1);
  auto node = [&](int i) { return -opt.box + cell * i; };
  // |H| for the median rule and the first-order distance estimate |H| / |grad H|.
  std::vector<double> mag(static_cast<std::size_t>(n) * n * n), dist(mag.size());
  auto idx = [n](int i, int j, int k) { return (static_cast<std::size_t>(i) * n + j) * n + k; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        CVec3 g;
        const cplx H = null_function(h, {node(i), node(j), node(k)}, t, &g);
        const double gn = std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]));
        mag[idx(i, j, k)] = std::abs(H);
        dist[idx(i, j, k)] = gn > 0 ? std::abs(H) / gn : std::numeric_limits<double>::infinity();
      }
  std::vector<double> sorted = mag;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double threshold = opt.seed_fraction * sorted[sorted.size() / 2];

  auto local_min = [&](const std::vector<double>& f, int i, int j, int k) {
    const double m = f[idx(i, j, k)];
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c)
          if ((a || b || c) && f[idx(i + a, j + b, k + c)] < m) return false;
    return true;
  };
  // Seeds: grid minima of |H| below a fraction of the median, plus every node
  // whose distance estimate puts it within one cell of the zero set
  // (catches curves where |H| is large on the scale of the whole box, and
  // curves along which the estimate has no interior minimum). Candidates
  // near already traced curves are skipped below.
  std::vector<std::pair<double, Vec3>> seeds;
  for (int i = 1; i + 1 < n; ++i)
    for (int j = 1; j + 1 < n; ++j)
      for (int k = 1; k + 1 < n; ++k) {
        const double d = dist[idx(i, j, k)];
        const bool by_mag = mag[idx(i, j, k)] < threshold && local_min(mag, i, j, k);
        const bool by_dist = d < cell;
        if (by_mag || by_dist) seeds.push_back({d, {node(i), node(j), node(k)}});
      }
  std::stable_sort(seeds.begin(), seeds.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  set.seeds = static_cast<int>(seeds.size());

  const double max_step = std::min(opt.max_step, 0.5 * cell);
  PointIndex index(2.0 * cell);
  for (const auto& [m, s] : seeds) {
    if (index.nearest(s) < 2.0 * cell) continue;
    Vec3 x = s;
    double res = 0.0;
    if (!newton_project(h, x, t, 3.0 * cell, &res) || !inside(x, opt.box)) {
      ++set.discarded;
      continue;
    }
    if (index.nearest(x) < 1.5 * cell) continue;
    const auto fwd = trace_direction(h, x, t, 1.0, opt, max_step, opt.max_points);
    NullLine line;
    set.max_residual = std::max({set.max_residual, res, fwd.max_residual});
    if (fwd.closed) {
      line.points = fwd.points;
      line.closed = true;
    } else {
      const auto bwd = trace_direction(h, x, t, -1.0, opt, max_step, opt.max_points);
      set.max_residual = std::max(set.max_residual, bwd.max_residual);
      line.points.assign(bwd.points.rbegin(), bwd.points.rend());
      line.points.insert(line.points.end(), fwd.points.begin() + 1, fwd.points.end());
      line.truncated = true;
    }
    for (const auto& p : line.points) index.add(p);
    set.lines.push_back(std::move(line));
  }
  std::stable_sort(set.lines.begin(), set.lines.end(),
                   [](const NullLine& a, const NullLine& b) { return a.length() > b.length(); });
  return set;
}

std::vector<Curve> as_curves(const NullLineSet& s) {
  std::vector<Curve> out;
  for (const auto& l : s.lines) out.push_back({l.points, l.closed});
  return out;
}

namespace {

// Backtracking over label assignments; candidates must share the sorted row.
bool extend_relabelling(const IntMatrix& a, const IntMatrix& b, const std::vector<std::vector<int>>& sig_a,
                        const std::vector<std::vector<int>>& sig_b, std::vector<int>& map, std::vector<bool>& used,
                        std::size_t i, long& budget) {
  const std::size_t n = a.size();
  if (i == n) return true;
  for (std::size_t c = 0; c < n; ++c) {
    if (used[c] || sig_a[i] != sig_b[c]) continue;
    if (--budget < 0) throw Error("nulllines", "linking matrices too symmetric to compare by relabelling");
    bool ok = a[i][i] == b[c][c];
    for (std::size_t j = 0; j < i && ok; ++j) ok = a[i][j] == b[c][map[j]] && a[j][i] == b[map[j]][c];
    if (!ok) continue;
    map[i] = static_cast<int>(c);
    used[c] = true;
    if (extend_relabelling(a, b, sig_a, sig_b, map, used, i + 1, budget)) return true;
    used[c] = false;
  }
  return false;
}

}  // namespace

bool equal_up_to_relabelling(const IntMatrix& a, const IntMatrix& b) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  auto signatures = [](const IntMatrix& m) {
    std::vector<std::vector<int>> sig;
    for (const auto& row : m) {
      sig.push_back(row);
      std::sort(sig.back().begin(), sig.back().end());
    }
    return sig;
  };
  const auto sig_a = signatures(a), sig_b = signatures(b);
  auto sa = sig_a, sb = sig_b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  long budget = 10'000'000;
  return extend_relabelling(a, b, sig_a, sig_b, map, used, 0, budget);
}

StabilityReport stability_over_time(const BiPolyUV& h, const std::vector<double>& times, const NullLineOptions& opt) {
  if (times.size() < 2) throw Error("nulllines", "stability needs at least two times");
  StabilityReport r;
  for (double t : times) {
    NullLineOptions o = opt;
    int refinements = 0;
    for (;;) {
      const auto set = trace_null_lines(h, t, o);
      const auto lk = linking_matrix(as_curves(set));
      if (lk.max_defect <= 0.2) {
        r.times.push_back(t);
        r.component_counts.push_back(static_cast<int>(set.lines.size()));
        r.linking.push_back(lk.rounded);
        r.linking_defects.push_back(lk.max_defect);
        r.refinements.push_back(refinements);
        break;
      }
      if (++refinements > 2)
        throw Error("nulllines", "Gauss linking off-integer by " + std::to_string(lk.max_defect) + " at t = " +
                                     std::to_string(t) + " after refinement");
      o.resolution = o.resolution * 3 / 2;
      o.max_step *= 0.5;
    }
  }
  r.stable = true;
  for (std::size_t i = 1; i < r.times.size(); ++i)
    r.stable = r.stable && r.component_counts[i] == r.component_counts[0] &&
               equal_up_to_relabelling(r.linking[i], r.linking[0]);
  return r;
}

}  // namespace qplink

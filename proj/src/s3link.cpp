#include "qplink/s3link.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <boost/math/tools/toms748_solve.hpp>

#include "qplink/roots.hpp"
#include "qplink/trig.hpp"

namespace qplink {

namespace {

double f_scale(const BiPolyUV& f, cplx u, cplx v) {
  double s = 0.0;
  const double au = std::abs(u), av = std::abs(v);
  for (const auto& t : f.terms()) s += std::abs(t.c) * std::pow(au, t.du) * std::pow(av, t.dv);
  return s;
}

double sphere_defect(cplx u, double r) { return std::norm(u) + r * r - 1.0; }

// Roots at r_b continued from roots at r_a, subdividing the step when the
// continuation is not clearly safe.
std::vector<cplx> continue_roots(const BiPolyUV& f, double t, double r_a, const std::vector<cplx>& at_a, double r_b,
                                 int depth) {
  auto next = roots_at(f, std::polar(r_b, t), &at_a);
  const auto m = match_roots(at_a, next);
  if ((m.ambiguous || m.step_ratio > 0.3) && depth > 0) {
    const double r_mid = std::sqrt(r_a * r_b);
    const auto mid = continue_roots(f, t, r_a, at_a, r_mid, depth - 1);
    return continue_roots(f, t, r_mid, mid, r_b, depth - 1);
  }
  if (m.ambiguous) throw Error("s3link", "ambiguous branch matching at t = " + std::to_string(t));
  std::vector<cplx> ordered(at_a.size());
  for (std::size_t i = 0; i < at_a.size(); ++i) ordered[i] = next[m.next_of[i]];
  return ordered;
}

struct Sweep {
  std::vector<SphereIntersection> points;  // flattened
};

double step_cost(const SphereIntersection& a, const SphereIntersection& b) {
  return std::sqrt(std::norm(a.u - b.u) + std::norm(a.v() - b.v()));
}

std::vector<int> match_points(const std::vector<SphereIntersection>& a, const std::vector<SphereIntersection>& b,
                              double* max_step, double* step_ratio) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = step_cost(a[i], b[j]);
  auto col = min_cost_assignment(cost);
  double step = 0.0, sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) step = std::max(step, cost[i][col[i]]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) sep = std::min(sep, step_cost(b[i], b[j]));
  *max_step = step;
  *step_ratio = n > 1 ? step / sep : 0.0;
  return col;
}

LayerReadout assemble_layer(const std::vector<std::vector<SphereIntersection>>& rows, bool read_word) {
  // rows[i] for i = 0..n-1 on the phase grid; row n is row 0 shifted by 2 pi.
  LayerReadout L;
  const std::size_t n = rows.size();
  const std::size_t s = rows.front().size();
  std::vector<std::vector<SphereIntersection>> tracks(n + 1, std::vector<SphereIntersection>(s));
  std::vector<int> label(s);  // label[a] = index within the current row
  std::iota(label.begin(), label.end(), 0);
  for (std::size_t a = 0; a < s; ++a) tracks[0][a] = rows[0][a];
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& prev = rows[i - 1];
    const auto& cur = rows[i % n];
    std::vector<SphereIntersection> shifted = cur;
    if (i == n)
      for (auto& p : shifted) p.t += kTwoPi;
    double step = 0.0, ratio = 0.0;
    const auto col = match_points(prev, shifted, &step, &ratio);
    for (std::size_t a = 0; a < s; ++a) {
      label[a] = col[label[a]];
      tracks[i][a] = shifted[label[a]];
    }
  }
  // strand a ends where strand sigma(a) of row 0 starts
  Permutation sigma(s);
  for (std::size_t a = 0; a < s; ++a) sigma[a] = label[a];
  L.r_min = std::numeric_limits<double>::infinity();
  L.r_max = 0.0;
  for (const auto& row : rows)
    for (const auto& p : row) {
      L.r_min = std::min(L.r_min, p.r);
      L.r_max = std::max(L.r_max, p.r);
    }

  const auto cycles = cycle_decomposition(sigma).cycles;
  L.successor = sigma;
  L.components = static_cast<int>(cycles.size());
  L.u_monotone = true;
  for (const auto& cyc : cycles) {
    L.component_strands.push_back(static_cast<int>(cyc.size()));
    double turn = 0.0;
    int sign = 0;
    for (int a : cyc)
      for (std::size_t i = 1; i <= n; ++i) {
        const double d = std::arg(tracks[i][a].u / tracks[i - 1][a].u);
        turn += d;
        const int sd = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (sign == 0) sign = sd;
        else if (sd != 0 && sd != sign) L.u_monotone = false;
      }
    const int w = static_cast<int>(std::lround(turn / kTwoPi));
    L.component_u_windings.push_back(w);
    L.u_winding += std::abs(w);
  }

  if (read_word) {
    std::vector<std::vector<std::array<double, 2>>> planar(n + 1, std::vector<std::array<double, 2>>(s));
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t a = 0; a < s; ++a) planar[i][a] = {tracks[i][a].u.real(), tracks[i][a].u.imag()};
    const auto rd = read_crossings(planar);
    L.word = rd.word;
    L.permutation = rd.permutation;
    L.exponent_sum = rd.exponent_sum;
    L.linking_matrix = rd.linking_matrix;
  } else {
    L.permutation = sigma;
  }
  L.tracks = std::move(tracks);
  return L;
}

}  // namespace

std::vector<double> radial_grid(double r_min, int count) {
  if (!(r_min > 0.0 && r_min < 1.0) || count < 2) throw Error("s3link", "invalid radial grid");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = std::pow(r_min, static_cast<double>(i) / (count - 1));
  g.back() = r_min;
  return g;
}

std::vector<RadialBranch> track_branches(const BiPolyUV& f, double t, const std::vector<double>& r_grid,
                                         const std::vector<cplx>* warm, int max_refine) {
  if (r_grid.empty() || r_grid.front() != 1.0) throw Error("s3link", "radial grid must start at r = 1");
  auto roots = roots_at(f, std::polar(1.0, t), warm);
  if (warm && warm->size() == roots.size()) {
    const auto m = match_roots(*warm, roots);
    std::vector<cplx> ordered(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) ordered[i] = roots[m.next_of[i]];
    roots = std::move(ordered);
  }
  const std::size_t s = roots.size();
  std::vector<RadialBranch> branches(s);
  for (std::size_t j = 0; j < s; ++j) {
    branches[j].t = t;
    branches[j].index = static_cast<int>(j);
    branches[j].r.reserve(r_grid.size());
    branches[j].u.reserve(r_grid.size());
    branches[j].r.push_back(1.0);
    branches[j].u.push_back(roots[j]);
  }
  for (std::size_t k = 1; k < r_grid.size(); ++k) {
    roots = continue_roots(f, t, r_grid[k - 1], roots, r_grid[k], max_refine);
    for (std::size_t j = 0; j < s; ++j) {
      branches[j].r.push_back(r_grid[k]);
      branches[j].u.push_back(roots[j]);
    }
  }
  return branches;
}

std::vector<SphereIntersection> sphere_intersections(const BiPolyUV& f, const RadialBranch& b) {
  std::vector<SphereIntersection> out;
  for (std::size_t k = 1; k < b.r.size(); ++k) {
    const double ra = b.r[k - 1], rb = b.r[k];
    const double fa = sphere_defect(b.u[k - 1], ra), fb = sphere_defect(b.u[k], rb);
    if (fa == 0.0 && k > 1) continue;  // counted at the previous step
    if ((fa > 0) == (fb > 0) && fb != 0.0 && fa != 0.0) continue;
    const cplx ua = b.u[k - 1], ub = b.u[k];
    auto root_at = [&](double r) {
      const double w = (r - ra) / (rb - ra);
      return newton_root(f, std::polar(r, b.t), (1.0 - w) * ua + w * ub);
    };
    auto phi = [&](double r) { return sphere_defect(root_at(r), r); };
    double r_star = fa == 0.0 ? ra : rb;
    if (fa != 0.0 && fb != 0.0) {
      boost::uintmax_t iters = 200;
      const auto bracket = boost::math::tools::toms748_solve(
          phi, rb, ra, fb, fa, boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2),
          iters);
      r_star = 0.5 * (bracket.first + bracket.second);
    }
    SphereIntersection p;
    p.t = b.t;
    p.r = r_star;
    p.u = root_at(r_star);
    p.branch = b.index;
    p.sphere_residual = std::abs(sphere_defect(p.u, r_star));
    const cplx v = std::polar(r_star, b.t);
    const double sc = f_scale(f, p.u, v);
    p.f_residual = sc > 0 ? std::abs(f.eval(p.u, v)) / sc : 0.0;
    out.push_back(p);
  }
  if (out.size() == 2) {
    out[0].layer = Layer::L1;  // r descends along the branch
    out[1].layer = Layer::L0;
  }
  return out;
}

bool PhaseSlice::well_formed() const {
  return !counts.empty() && std::all_of(counts.begin(), counts.end(), [](int c) { return c == 2; });
}

PhaseSlice scan_phase(const BiPolyUV& f, double t, const S3LinkOptions& opt, const std::vector<cplx>* warm) {
  PhaseSlice sl;
  sl.t = t;
  const auto grid = radial_grid(opt.r_min, opt.r_count);
  const auto branches = track_branches(f, t, grid, warm, opt.max_refine);
  for (const auto& b : branches) {
    sl.roots_r1.push_back(b.u.front());
    const auto xs = sphere_intersections(f, b);
    sl.counts.push_back(static_cast<int>(xs.size()));
    if (xs.size() == 2) {
      sl.l1.push_back(xs[0]);
      sl.l0.push_back(xs[1]);
    }
  }
  return sl;
}

LinkReadout trace_link(const BiPolyUV& f, const S3LinkOptions& opt) {
  LinkReadout out;
  out.lambda = f.lambda;
  if (f.non_generic || f.degree_u() < 1 || f.degree_v() == 0) {
    out.non_generic = true;
    return out;
  }
  const int n = opt.t_count;
  if (n < 16) throw Error("s3link", "t grid too coarse");

  // Sweep in t with warm starts; cell-centred like the parametrization check.
  std::vector<PhaseSlice> slices;
  slices.reserve(n);
  const std::vector<cplx>* warm = nullptr;
  for (int i = 0; i < n; ++i) {
    slices.push_back(scan_phase(f, kTwoPi * (i - 0.5) / n, opt, warm));
    warm = &slices.back().roots_r1;
  }

  auto check = [](const PhaseSlice& sl) {
    if (!sl.well_formed()) {
      std::string c;
      for (int k : sl.counts) c += (c.empty() ? "" : ",") + std::to_string(k);
      throw Error("s3link", "branch meets the sphere in {" + c + "} points at t = " + std::to_string(sl.t) +
                                "; lambda too large");
    }
  };
  for (const auto& sl : slices) check(sl);

  // Refine phase steps whose continuation jump is large against the median.
  auto layer_of = [](const PhaseSlice& sl, Layer L) -> const std::vector<SphereIntersection>& {
    return L == Layer::L1 ? sl.l1 : sl.l0;
  };
  for (int pass = 0; pass < opt.max_refine; ++pass) {
    std::vector<double> steps;
    std::vector<int> bad;
    const std::size_t m = slices.size();
    std::vector<double> worst(m, 0.0), ratio(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (Layer L : {Layer::L1, Layer::L0}) {
        auto next = layer_of(slices[(i + 1) % m], L);
        if (i + 1 == m)
          for (auto& p : next) p.t += kTwoPi;
        double st = 0.0, ra = 0.0;
        match_points(layer_of(slices[i], L), next, &st, &ra);
        worst[i] = std::max(worst[i], st);
        ratio[i] = std::max(ratio[i], ra);
      }
      steps.push_back(worst[i]);
    }
    std::vector<double> sorted = steps;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    for (std::size_t i = 0; i < m; ++i)
      if (worst[i] > 10.0 * median || ratio[i] > 0.3) bad.push_back(static_cast<int>(i));
    if (bad.empty()) break;
    if (pass + 1 == opt.max_refine)
      throw Error("s3link", "continuation jump persists after refinement near t = " +
                                std::to_string(slices[bad.front()].t));
    std::vector<PhaseSlice> refined;
    refined.reserve(m + bad.size());
    std::size_t b = 0;
    for (std::size_t i = 0; i < m; ++i) {
      refined.push_back(slices[i]);
      if (b < bad.size() && bad[b] == static_cast<int>(i)) {
        ++b;
        const double ta = slices[i].t;
        const double tb = (i + 1 == m) ? slices[0].t + kTwoPi : slices[i + 1].t;
        auto mid = scan_phase(f, 0.5 * (ta + tb), opt, &slices[i].roots_r1);
        check(mid);
        refined.push_back(std::move(mid));
        ++out.t_refinements;
      }
    }
    slices = std::move(refined);
  }

  std::vector<std::vector<SphereIntersection>> l1_rows, l0_rows;
  for (const auto& sl : slices) {
    out.t_grid.push_back(sl.t);
    l1_rows.push_back(sl.l1);
    l0_rows.push_back(sl.l0);
    for (const auto* layer : {&sl.l1, &sl.l0})
      for (const auto& p : *layer) {
        out.max_sphere_residual = std::max(out.max_sphere_residual, p.sphere_residual);
        out.max_f_residual = std::max(out.max_f_residual, p.f_residual);
      }
  }
  out.l1 = assemble_layer(l1_rows, true);
  out.l0 = assemble_layer(l0_rows, false);
  out.extra_components = out.l0.components;
  out.layer_gap = out.l1.r_min - out.l0.r_max;

  const auto pts = link_points(out);
  // The two core circles of the Hopf tori, {v = 0} and {u = 0}.
  std::vector<S3Point> core0, core1;
  for (int k = 0; k < 256; ++k) {
    const double a = kTwoPi * k / 256;
    core0.push_back(s3_point(std::polar(1.0, a), 0.0));
    core1.push_back(s3_point(0.0, std::polar(1.0, a)));
  }
  auto all = pts;
  all.push_back(core0);
  all.push_back(core1);
  const Stereographic proj(choose_pole(all));
  const auto lk = linking_matrix(link_curves(out, proj));
  out.linking_matrix = lk.rounded;
  out.linking_defect = lk.max_defect;
  auto as_curve = [&](const std::vector<S3Point>& c) {
    Curve cv;
    for (const auto& x : c) cv.points.push_back(proj(x));
    return cv;
  };
  out.core_linking = static_cast<int>(std::lround(gauss_linking(as_curve(core0), as_curve(core1))));

  bool windings = true;
  for (int w : out.l1.component_strands) windings = windings && w != 0;
  for (int w : out.l0.component_u_windings) windings = windings && w != 0;
  out.hopf_check = out.layer_gap > 0.0 && std::abs(out.core_linking) == 1 && windings && out.l0.u_monotone;
  return out;
}

std::vector<std::vector<S3Point>> link_points(const LinkReadout& link) {
  std::vector<std::vector<S3Point>> out;
  for (const auto* L : {&link.l1, &link.l0}) {
    if (L->tracks.empty()) continue;
    const std::size_t n = L->tracks.size() - 1;
    const std::size_t s = L->tracks.front().size();
    const Permutation& sigma = L->successor;
    std::vector<char> seen(s, false);
    for (std::size_t a0 = 0; a0 < s; ++a0) {
      if (seen[a0]) continue;
      std::vector<S3Point> curve;
      std::size_t a = a0;
      while (!seen[a]) {
        seen[a] = true;
        for (std::size_t i = 0; i < n; ++i) curve.push_back(s3_point(L->tracks[i][a].u, L->tracks[i][a].v()));
        a = sigma[a];
      }
      out.push_back(std::move(curve));
    }
  }
  return out;
}

std::vector<Curve> link_curves(const LinkReadout& link, const Stereographic& proj) {
  std::vector<Curve> out;
  for (const auto& c : link_points(link)) {
    Curve cv;
    for (const auto& x : c) cv.points.push_back(proj(x));
    out.push_back(std::move(cv));
  }
  return out;
}

TuneAttempt evaluate_lambda(const BiPolyUV& f, const WordInvariants& expected, int expected_strands,
                            const S3LinkOptions& opt) {
  TuneAttempt a;
  a.lambda = f.lambda;
  try {
    auto rd = trace_link(f, opt);
    if (rd.non_generic) {
      a.problem = "non-generic polynomial";
    } else if (rd.l0.r_max * 2.0 > rd.l1.r_min) {
      a.problem = "layer gap below factor 2 (L1 r_min " + std::to_string(rd.l1.r_min) + ", L0 r_max " +
                  std::to_string(rd.l0.r_max) + ")";
    } else if (static_cast<int>(rd.l1.permutation.size()) != expected_strands ||
               rd.l1.exponent_sum != expected.exponent_sum || rd.l1.linking_matrix != expected.linking_matrix) {
      a.problem = "L1 braid readout differs from the word invariants";
    } else {
      a.accepted = true;
    }
    a.readout = std::move(rd);
  } catch (const Error& e) {
    a.problem = e.what();
  }
  return a;
}

TuneResult auto_tune_lambda(const std::function<BiPolyUV(double)>& builder, const BraidWord& braid, double lambda0,
                            const S3LinkOptions& opt) {
  if (!(lambda0 > 0.0)) throw Error("s3link", "lambda0 must be positive");
  TuneResult r;
  const auto inv = word_invariants(braid);
  for (double l = lambda0; l >= 1e-6; l *= 0.5) {
    const auto f = builder(l);
    if (f.non_generic || f.degree_v() == 0) {
      r.non_generic = true;
      r.lambda = l;
      return r;
    }
    auto a = evaluate_lambda(f, inv, braid.strands, opt);
    const bool ok = a.accepted;
    if (ok) {
      r.success = true;
      r.lambda = l;
      r.readout = a.readout;
    }
    a.readout.reset();
    r.attempts.push_back(std::move(a));
    if (ok) return r;
  }
  return r;
}

}  // namespace qplink

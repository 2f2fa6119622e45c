#include "qplink/fieldline.hpp"

#include <boost/numeric/odeint.hpp>

namespace qplink {

namespace {
using State = std::array<double, 4>;  // x, y, z, tau
}

FieldLine integrate_field_line(const BiPolyUV& h, FieldKind which, const Vec3& start, double t,
                               const FieldLineOptions& opt) {
  namespace odeint = boost::numeric::odeint;
  auto field = [&](const Vec3& x) {
    const auto f = bateman_field(h, SpacetimePoint::at(x, t));
    return which == FieldKind::E ? f.E : f.B;
  };
  const Vec3 f0 = field(start);
  if (!(norm(f0) > 1e-12))
    throw Error("fieldline", "field vanishes at the seed (" + std::to_string(start[0]) + ", " +
                                 std::to_string(start[1]) + ", " + std::to_string(start[2]) + ")");

  auto rhs = [&](const State& s, State& ds, double) {
    const Vec3 f = field({s[0], s[1], s[2]});
    const double n = norm(f);
    if (!(n > 1e-12))
      throw Error("fieldline", "field magnitude underflow at (" + std::to_string(s[0]) + ", " + std::to_string(s[1]) +
                                   ", " + std::to_string(s[2]) + ")");
    ds = {f[0] / n, f[1] / n, f[2] / n, 1.0 / n};
  };
  auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());

  FieldLine line;
  State s{start[0], start[1], start[2], 0.0};
  double arc = 0.0, ds = opt.max_step;
  line.points.push_back(start);
  line.arclength.push_back(0.0);
  line.field_time.push_back(0.0);
  bool left = false;
  double best = std::numeric_limits<double>::infinity();
  double prev_dist = 0.0;
  while (arc < opt.max_length) {
    ds = std::min(ds, opt.max_step);
    if (stepper.try_step(rhs, s, arc, ds) != odeint::success) {
      if (ds < 1e-14) throw Error("fieldline", "step size underflow");
      continue;
    }
    const Vec3 x{s[0], s[1], s[2]};
    const double dist = norm(x - start);
    if (!left && dist > 10.0 * opt.closure_tol) left = true;
    if (left) {
      best = std::min(best, dist);
      // closest approach to the seed: distance stops decreasing
      if (opt.stop_on_closure && prev_dist < opt.closure_tol && dist > prev_dist) {
        line.closed = true;
        line.closure_gap = prev_dist;
        break;
      }
    }
    prev_dist = dist;
    line.points.push_back(x);
    line.arclength.push_back(arc);
    line.field_time.push_back(s[3]);
  }
  if (!line.closed) line.closure_gap = left ? best : 0.0;
  return line;
}

Windings projection_windings(const Polyline& points, double t) {
  Windings w;
  if (points.size() < 2) return w;
  const std::size_t n = points.size();
  auto jet = [&](std::size_t i) { return projection_jet(SpacetimePoint::at(points[i % n], t)); };
  auto prev = jet(0);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto cur = jet(i);
    w.raw_u += std::arg(cur.u / prev.u) / kTwoPi;
    w.raw_v += std::arg(cur.v / prev.v) / kTwoPi;
    prev = cur;
  }
  w.arg_u = static_cast<int>(std::lround(w.raw_u));
  w.arg_v = static_cast<int>(std::lround(w.raw_v));
  return w;
}

}  // namespace qplink

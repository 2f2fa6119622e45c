#include "qplink/contact.hpp"

namespace qplink {

PlaneFieldFrame plane_field(const SpacetimePoint& p) {
  const CVec3 w = bateman_w(projection_jet(p));
  PlaneFieldFrame f;
  f.re_w = real(w);
  f.im_w = imag(w);
  f.n = cross(f.re_w, f.im_w);
  if (!(norm(f.n) > 1e-14 * norm(f.re_w) * norm(f.im_w)))
    throw Error("contact", "degenerate plane field at (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " +
                               std::to_string(p.z) + ", " + std::to_string(p.t) + ")");
  return f;
}

double contact_paper_formula(const SpacetimePoint& p) {
  const double r2 = p.x * p.x + p.y * p.y + p.z * p.z, t = p.t;
  const double num = 1.0 + t * t + p.x * p.x + p.y * p.y - 2.0 * t * p.z + p.z * p.z;
  const double den = t * t * t * t - 2.0 * t * t * (r2 - 1.0) + (r2 + 1.0) * (r2 + 1.0);
  return 1024.0 * std::pow(num, 3) / std::pow(den, 6);
}

ContactVolume contact_volume(const SpacetimePoint& p, double step) {
  if (!(step >= 1e-6 && step <= 1e-3)) throw Error("contact", "finite-difference step outside [1e-6, 1e-3]");
  std::array<Vec3, 3> d;
  for (int a = 0; a < 3; ++a) {
    SpacetimePoint lo = p, hi = p;
    double* lp[3] = {&lo.x, &lo.y, &lo.z};
    double* hp[3] = {&hi.x, &hi.y, &hi.z};
    *lp[a] -= step;
    *hp[a] += step;
    d[a] = (1.0 / (2.0 * step)) * (plane_field(hi).n - plane_field(lo).n);
  }
  const Vec3 curl{d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]};
  ContactVolume v;
  v.numeric = dot(plane_field(p).n, curl);
  v.paper_formula = contact_paper_formula(p);
  return v;
}

namespace {

// Derivative at node `at` of the quadratic through (s[k], c[k]), k = 0..2.
Vec3 lagrange_derivative(const std::array<double, 3>& s, const std::array<Vec3, 3>& c, int at) {
  const double x = s[at];
  Vec3 d{};
  for (int k = 0; k < 3; ++k) {
    double w = 0.0;
    for (int m = 0; m < 3; ++m) {
      if (m == k) continue;
      double term = 1.0 / (s[k] - s[m]);
      for (int j = 0; j < 3; ++j)
        if (j != k && j != m) term *= (x - s[j]) / (s[k] - s[j]);
      w += term;
    }
    d = d + w * c[k];
  }
  return d;
}

}  // namespace

std::vector<Vec3> polyline_tangents(const Polyline& c, const std::vector<double>& param, bool closed) {
  const std::size_t n = c.size();
  if (n < 3) throw Error("contact", "curve needs at least 3 vertices");
  if (closed && !param.empty()) throw Error("contact", "closed curves take chord-length parameters only");
  std::vector<double> s(n);
  if (param.empty()) {
    s[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) s[i] = s[i - 1] + norm(c[i] - c[i - 1]);
  } else {
    if (param.size() != n) throw Error("contact", "parameter count differs from vertex count");
    s = param;
  }
  const double period = closed ? s[n - 1] + norm(c[0] - c[n - 1]) : 0.0;
  std::vector<Vec3> T(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::array<double, 3> ss;
    std::array<Vec3, 3> cc;
    int at = 1;
    if (closed || (i > 0 && i + 1 < n)) {
      const std::size_t a = (i + n - 1) % n, b = (i + 1) % n;
      ss = {i == 0 ? s[a] - period : s[a], s[i], i + 1 == n ? s[b] + period : s[b]};
      cc = {c[a], c[i], c[b]};
    } else {
      // second-order one-sided stencil at the ends of open curves
      const std::size_t a = (i == 0) ? 0 : n - 3;
      ss = {s[a], s[a + 1], s[a + 2]};
      cc = {c[a], c[a + 1], c[a + 2]};
      at = (i == 0) ? 0 : 2;
    }
    if (!(ss[0] < ss[1] && ss[1] < ss[2])) throw Error("contact", "duplicate consecutive vertices");
    T[i] = lagrange_derivative(ss, cc, at);
  }
  return T;
}

double legendrian_residual(const Polyline& curve, double t, bool closed) {
  const auto T = polyline_tangents(curve, {}, closed);
  double worst = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const auto f = plane_field(SpacetimePoint::at(curve[i], t));
    worst = std::max(worst, std::abs(dot(T[i], f.n)) / (norm(T[i]) * norm(f.n)));
  }
  return worst;
}

HTrace h_trace(const Polyline& curve, const std::vector<double>& param, double t, bool closed) {
  const auto T = polyline_tangents(curve, param, closed);
  HTrace r;
  std::vector<double> s = param;
  if (s.empty()) {
    s.assign(curve.size(), 0.0);
    for (std::size_t i = 1; i < curve.size(); ++i) s[i] = s[i - 1] + norm(curve[i] - curve[i - 1]);
  }
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double tn = norm(T[i]);
    if (!(tn > 0.0)) throw Error("contact", "zero-length tangent");
    const auto f = plane_field(SpacetimePoint::at(curve[i], t));
    const double re = dot(T[i], f.re_w) / dot(f.re_w, f.re_w);
    const double im = -dot(T[i], f.im_w) / dot(f.im_w, f.im_w);
    const double def = norm(T[i] - (re * f.re_w - im * f.im_w)) / tn;
    r.s.push_back(s[i]);
    r.h.emplace_back(re, im);
    r.defect.push_back(def);
    r.max_defect = std::max(r.max_defect, def);
  }
  return r;
}

}  // namespace qplink

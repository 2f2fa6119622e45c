#pragma once

#include <vector>

#include "qplink/bateman.hpp"
#include "qplink/linking.hpp"

namespace qplink {

/// xi_t = span(Re W, Im W) with W = grad u x grad v, and its normal N.
struct PlaneFieldFrame {
  Vec3 re_w, im_w, n;
};

PlaneFieldFrame plane_field(const SpacetimePoint& p);

struct ContactVolume {
  double numeric = 0.0;        // N . curl N with finite-difference curl
  double paper_formula = 0.0;  // closed form of alpha ^ d alpha
};

ContactVolume contact_volume(const SpacetimePoint& p, double step);

/// 1024 (1+t^2+x^2+y^2-2tz+z^2)^3 / (t^4 - 2t^2(r^2-1) + (r^2+1)^2)^6.
double contact_paper_formula(const SpacetimePoint& p);

/// Tangents of a polyline by the three-point rule on a nonuniform parameter.
/// `param` empty means chord length. Open-curve endpoints use a one-sided
/// second-order stencil.
std::vector<Vec3> polyline_tangents(const Polyline& curve, const std::vector<double>& param, bool closed);

/// max over vertices of |T . N| / (|T| |N|).
double legendrian_residual(const Polyline& curve, double t, bool closed = false);

struct HTrace {
  std::vector<double> s;
  std::vector<cplx> h;
  std::vector<double> defect;
  double max_defect = 0.0;
};

/// Recovers h along a curve from T = Re h Re W - Im h Im W, T = dX/ds.
HTrace h_trace(const Polyline& curve, const std::vector<double>& param, double t, bool closed = false);

}  // namespace qplink

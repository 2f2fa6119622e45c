#pragma once

#include "qplink/common.hpp"
#include "qplink/laurent.hpp"

namespace qplink {

struct SpacetimePoint {
  double x = 0.0, y = 0.0, z = 0.0, t = 0.0;
  Vec3 position() const { return {x, y, z}; }
  static SpacetimePoint at(const Vec3& p, double t) { return {p[0], p[1], p[2], t}; }
};

/// u, v of the time-dependent inverse stereographic projection
///   u = (r^2 - t^2 - 1 + 2iz) / (r^2 - (t - i)^2),  v = 2(x - iy) / (r^2 - (t - i)^2)
/// with closed-form spatial gradients and time derivatives.
struct ProjectionJet {
  cplx u, v;
  CVec3 grad_u, grad_v;
  cplx du_dt, dv_dt;
};

ProjectionJet projection_jet(const SpacetimePoint& p);

/// Spatial point at time t with projection (u, v); requires u != 1 and a
/// consistent pair (image of some real point).
Vec3 inverse_projection(cplx u, cplx v, double t);

/// W = grad u x grad v.
CVec3 bateman_w(const ProjectionJet& j);

struct FieldSample {
  Vec3 E, B;
  CVec3 F;  // E + iB
};

/// F = h(u, v) (grad u x grad v).
FieldSample bateman_field(const BiPolyUV& h, const SpacetimePoint& p);

/// The Bateman factor of the pair f = u^p, g = v^q.
BiPolyUV torus_pair_h(int p, int q);

struct MaxwellResidual {
  double div_b = 0.0, div_e = 0.0, faraday = 0.0, ampere = 0.0;
};

/// |div B|, |div E|, |curl E + dB/dt|, |curl B - dE/dt| by central differences.
MaxwellResidual maxwell_residual(const BiPolyUV& h, const SpacetimePoint& p, double step);

struct Nullness {
  double e_dot_b = 0.0;
  double norm_gap = 0.0;  // |E|^2 - |B|^2
  double e_norm = 0.0, b_norm = 0.0;
};

Nullness nullness(const BiPolyUV& h, const SpacetimePoint& p);

}  // namespace qplink

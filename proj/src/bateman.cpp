#include "qplink/bateman.hpp"

namespace qplink {

ProjectionJet projection_jet(const SpacetimePoint& p) {
  const double x = p.x, y = p.y, z = p.z, t = p.t;
  const double r2 = x * x + y * y + z * z;
  const cplx I(0.0, 1.0);
  const cplx D = r2 - t * t + 1.0 + 2.0 * I * t;
  const cplx D2 = D * D;
  const cplx Nu = r2 - t * t - 1.0 + 2.0 * I * z;
  const cplx Nv = 2.0 * cplx(x, -y);
  const cplx dD_dt = -2.0 * t + 2.0 * I;

  ProjectionJet j;
  j.u = Nu / D;
  j.v = Nv / D;
  j.grad_u[0] = 2.0 * x * (D - Nu) / D2;
  j.grad_u[1] = 2.0 * y * (D - Nu) / D2;
  j.grad_u[2] = (2.0 * z + 2.0 * I) / D - Nu * 2.0 * z / D2;
  j.du_dt = -2.0 * t / D - Nu * dD_dt / D2;

  j.grad_v[0] = 2.0 / D - Nv * 2.0 * x / D2;
  j.grad_v[1] = -2.0 * I / D - Nv * 2.0 * y / D2;
  j.grad_v[2] = -Nv * 2.0 * z / D2;
  j.dv_dt = -Nv * dD_dt / D2;
  return j;
}

Vec3 inverse_projection(cplx u, cplx v, double t) {
  const cplx I(0.0, 1.0);
  const cplx w = 1.0 / (1.0 - u);
  const double a = w.real(), b = w.imag();
  const double z = t - (t - b) / a;
  const cplx xy = v * w * (1.0 + I * (t - z));  // x - iy
  return {xy.real(), -xy.imag(), z};
}

CVec3 bateman_w(const ProjectionJet& j) { return cross(j.grad_u, j.grad_v); }

FieldSample bateman_field(const BiPolyUV& h, const SpacetimePoint& p) {
  const auto j = projection_jet(p);
  FieldSample s;
  s.F = h.eval(j.u, j.v) * bateman_w(j);
  s.E = real(s.F);
  s.B = imag(s.F);
  return s;
}

BiPolyUV torus_pair_h(int p, int q) {
  if (p < 1 || q < 1) throw Error("bateman", "torus pair exponents must be positive");
  return BiPolyUV::monomial(p - 1, q - 1, static_cast<double>(p * q));
}

MaxwellResidual maxwell_residual(const BiPolyUV& h, const SpacetimePoint& p, double step) {
  if (!(step >= 1e-6 && step <= 1e-2)) throw Error("bateman", "finite-difference step outside [1e-6, 1e-2]");
  // d[a][k]: central difference of F along axis a (x, y, z, t), component k
  std::array<CVec3, 4> d;
  for (int a = 0; a < 4; ++a) {
    SpacetimePoint lo = p, hi = p;
    double* lp[4] = {&lo.x, &lo.y, &lo.z, &lo.t};
    double* hp[4] = {&hi.x, &hi.y, &hi.z, &hi.t};
    *lp[a] -= step;
    *hp[a] += step;
    const auto fl = bateman_field(h, lo).F, fh = bateman_field(h, hi).F;
    for (int k = 0; k < 3; ++k) d[a][k] = (fh[k] - fl[k]) / (2.0 * step);
  }
  const cplx div = d[0][0] + d[1][1] + d[2][2];
  const CVec3 curl = {d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]};
  const CVec3& dt = d[3];
  MaxwellResidual r;
  r.div_e = std::abs(div.real());
  r.div_b = std::abs(div.imag());
  Vec3 far{}, amp{};
  for (int k = 0; k < 3; ++k) {
    far[k] = curl[k].real() + dt[k].imag();
    amp[k] = curl[k].imag() - dt[k].real();
  }
  r.faraday = norm(far);
  r.ampere = norm(amp);
  return r;
}

Nullness nullness(const BiPolyUV& h, const SpacetimePoint& p) {
  const auto f = bateman_field(h, p);
  Nullness n;
  n.e_dot_b = dot(f.E, f.B);
  n.e_norm = norm(f.E);
  n.b_norm = norm(f.B);
  n.norm_gap = n.e_norm * n.e_norm - n.b_norm * n.b_norm;
  return n;
}

}  // namespace qplink

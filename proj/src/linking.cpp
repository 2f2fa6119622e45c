#include "qplink/linking.hpp"

#include <algorithm>
#include <limits>

namespace qplink {

namespace {

Vec3 unit_cross(const Vec3& a, const Vec3& b) {
  const Vec3 c = cross(a, b);
  const double n = norm(c);
  return n > 0.0 ? (1.0 / n) * c : Vec3{0.0, 0.0, 0.0};
}

double safe_asin(double x) { return std::asin(std::clamp(x, -1.0, 1.0)); }

// Signed solid angle subtended by segment pair (p1 p2), (p3 p4), over 4 pi.
double segment_pair(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4) {
  const Vec3 r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
  const Vec3 n1 = unit_cross(r13, r14), n2 = unit_cross(r14, r24);
  const Vec3 n3 = unit_cross(r24, r23), n4 = unit_cross(r23, r13);
  const double omega = safe_asin(dot(n1, n2)) + safe_asin(dot(n2, n3)) + safe_asin(dot(n3, n4)) +
                       safe_asin(dot(n4, n1));
  const double s = dot(cross(p4 - p3, p2 - p1), r13);
  if (s == 0.0) return 0.0;
  return (s > 0 ? omega : -omega) / (4.0 * kPi);
}

double dot4(const S3Point& a, const S3Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

}  // namespace

double gauss_linking(const Curve& a, const Curve& b) {
  const std::size_t na = a.points.size(), nb = b.points.size();
  const std::size_t sa = a.closed ? na : na - 1, sb = b.closed ? nb : nb - 1;
  if (na < 2 || nb < 2) return 0.0;
  double lk = 0.0;
  for (std::size_t i = 0; i < sa; ++i) {
    const Vec3& p1 = a.points[i];
    const Vec3& p2 = a.points[(i + 1) % na];
    for (std::size_t j = 0; j < sb; ++j) lk += segment_pair(p1, p2, b.points[j], b.points[(j + 1) % nb]);
  }
  return lk;
}

LinkingReport linking_matrix(const std::vector<Curve>& curves) {
  const std::size_t n = curves.size();
  LinkingReport r;
  r.raw.assign(n, std::vector<double>(n, 0.0));
  r.rounded.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double lk = gauss_linking(curves[i], curves[j]);
      const int k = static_cast<int>(std::lround(lk));
      r.raw[i][j] = r.raw[j][i] = lk;
      r.rounded[i][j] = r.rounded[j][i] = k;
      r.max_defect = std::max(r.max_defect, std::abs(lk - k));
    }
  return r;
}

Stereographic::Stereographic(const S3Point& pole) : pole_(pole) {
  const double n = std::sqrt(dot4(pole, pole));
  for (auto& c : pole_) c /= n;
  // Gram-Schmidt on the coordinate axes, skipping the one most aligned with the pole.
  int skip = 0;
  for (int k = 1; k < 4; ++k)
    if (std::abs(pole_[k]) > std::abs(pole_[skip])) skip = k;
  int filled = 0;
  for (int k = 0; k < 4; ++k) {
    if (k == skip) continue;
    S3Point e{0, 0, 0, 0};
    e[k] = 1.0;
    const double pe = dot4(e, pole_);
    for (int c = 0; c < 4; ++c) e[c] -= pe * pole_[c];
    for (int m = 0; m < filled; ++m) {
      const double d = dot4(e, basis_[m]);
      for (int c = 0; c < 4; ++c) e[c] -= d * basis_[m][c];
    }
    const double en = std::sqrt(dot4(e, e));
    for (auto& c : e) c /= en;
    basis_[filled++] = e;
  }
  // Orient so that (b1, b2, b3, pole) is positive: the projection then
  // carries the boundary orientation of S^3 to the standard one of R^3.
  const auto& a = basis_[0];
  const auto& b = basis_[1];
  const auto& c = basis_[2];
  const auto& d = pole_;
  auto det3 = [](double a1, double a2, double a3, double b1, double b2, double b3, double c1, double c2, double c3) {
    return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1);
  };
  // cofactor expansion along the last column (the pole)
  const double det = -d[0] * det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]) +
                     d[1] * det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]) -
                     d[2] * det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]) +
                     d[3] * det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]);
  if (det < 0)
    for (auto& x : basis_[2]) x = -x;
}

Vec3 Stereographic::operator()(const S3Point& x) const {
  const double denom = 1.0 - dot4(x, pole_);
  return {dot4(x, basis_[0]) / denom, dot4(x, basis_[1]) / denom, dot4(x, basis_[2]) / denom};
}

S3Point choose_pole(const std::vector<std::vector<S3Point>>& curves) {
  // Halton points mapped to S^3 through Hopf-type coordinates.
  auto halton = [](int i, int base) {
    double f = 1.0, r = 0.0;
    for (; i > 0; i /= base) {
      f /= base;
      r += f * (i % base);
    }
    return r;
  };
  S3Point best{0, 0, 0, 1};
  double best_d = -1.0;
  for (int i = 1; i <= 512; ++i) {
    const double a = std::sqrt(halton(i, 2));
    const double p1 = kTwoPi * halton(i, 3), p2 = kTwoPi * halton(i, 5);
    const double b = std::sqrt(1.0 - a * a);
    const S3Point c{a * std::cos(p1), a * std::sin(p1), b * std::cos(p2), b * std::sin(p2)};
    double d = std::numeric_limits<double>::infinity();
    for (const auto& curve : curves)
      for (const auto& x : curve) d = std::min(d, 1.0 - dot4(c, x));
    if (d > best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace qplink

#pragma once

#include <array>
#include <vector>

#include "qplink/common.hpp"

namespace qplink {

using Polyline = std::vector<Vec3>;

struct Curve {
  Polyline points;
  bool closed = true;  // closed curves implicitly join last to first
};

/// Gauss linking integral of two polylines, summed exactly over segment
/// pairs (signed solid angle of each pair's quadrilateral).
double gauss_linking(const Curve& a, const Curve& b);

struct LinkingReport {
  std::vector<std::vector<double>> raw;
  IntMatrix rounded;
  double max_defect = 0.0;  // largest distance of an entry to its integer
};

LinkingReport linking_matrix(const std::vector<Curve>& curves);

/// A point of the unit sphere in C^2 = R^4, (Re u, Im u, Re v, Im v).
using S3Point = std::array<double, 4>;

inline S3Point s3_point(cplx u, cplx v) { return {u.real(), u.imag(), v.real(), v.imag()}; }

/// Stereographic projection from a pole on S^3 onto the orthogonal
/// hyperplane, expressed in a fixed orthonormal basis of that hyperplane.
class Stereographic {
 public:
  explicit Stereographic(const S3Point& pole);
  Vec3 operator()(const S3Point& x) const;
  const S3Point& pole() const { return pole_; }

 private:
  S3Point pole_;
  std::array<S3Point, 3> basis_;
};

/// Deterministic pole maximizing the distance to the given points among a
/// fixed quasi-random candidate set.
S3Point choose_pole(const std::vector<std::vector<S3Point>>& curves);

}  // namespace qplink

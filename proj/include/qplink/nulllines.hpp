#pragma once

#include <vector>

#include "qplink/bateman.hpp"
#include "qplink/linking.hpp"

namespace qplink {

struct NullLineOptions {
  double box = 3.0;        // half-width of the cubic search box
  int resolution = 64;     // grid nodes per axis
  double max_step = 0.05;  // predictor step cap along the curve
  double seed_fraction = 0.1;
  int max_points = 400000;
};

struct NullLine {
  Polyline points;
  bool closed = false;
  bool truncated = false;  // left the search box
  double length() const;
};

struct NullLineSet {
  double t = 0.0;
  std::vector<NullLine> lines;
  int seeds = 0;
  int discarded = 0;
  double max_residual = 0.0;  // |H| / |grad H| over traced vertices
};

/// H(x, y, z) = h(u, v) at time t.
cplx null_function(const BiPolyUV& h, const Vec3& x, double t, CVec3* grad = nullptr);

/// Zero curves of H inside the box: grid scan for local minima of |H|,
/// Newton projection onto Re H = Im H = 0, predictor-corrector tracing along
/// grad Re H x grad Im H.
NullLineSet trace_null_lines(const BiPolyUV& h, double t, const NullLineOptions& opt = {});

std::vector<Curve> as_curves(const NullLineSet& s);

struct StabilityReport {
  std::vector<double> times;
  std::vector<int> component_counts;
  std::vector<IntMatrix> linking;
  std::vector<double> linking_defects;
  std::vector<int> refinements;
  bool stable = false;
};

/// Traces the null set at each time and compares component counts and
/// rounded Gauss linking matrices (up to relabelling of components).
StabilityReport stability_over_time(const BiPolyUV& h, const std::vector<double>& times,
                                    const NullLineOptions& opt = {});

/// Equality of symmetric integer matrices up to a simultaneous permutation.
bool equal_up_to_relabelling(const IntMatrix& a, const IntMatrix& b);

}  // namespace qplink

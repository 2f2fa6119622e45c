#pragma once

#include <string>
#include <vector>

#include "qplink/bateman.hpp"
#include "qplink/linking.hpp"

namespace qplink {

enum class FieldKind { E, B };

struct FieldLineOptions {
  double max_length = 100.0;  // arclength budget
  double max_step = 2.5e-4;  // keeps three-point tangents Legendrian to ~3e-7
  double rel_tol = 1e-11;
  double abs_tol = 1e-12;
  double closure_tol = 5e-3;  // return distance that counts as closed
  bool stop_on_closure = true;
};

struct FieldLine {
  Polyline points;
  std::vector<double> arclength;
  std::vector<double> field_time;  // tau with dX/dtau = field, so tangents carry |field|
  bool closed = false;
  double closure_gap = 0.0;  // closest return to the start after leaving it
};

/// Adaptive Dormand-Prince integration of the unit-normalized E or B field of
/// F = h W at time t, starting from `start`.
FieldLine integrate_field_line(const BiPolyUV& h, FieldKind which, const Vec3& start, double t,
                               const FieldLineOptions& opt = {});

struct Windings {
  int arg_u = 0;
  int arg_v = 0;
  double raw_u = 0.0, raw_v = 0.0;  // in turns
};

/// Turns of arg u and arg v along a closed polyline at time t.
Windings projection_windings(const Polyline& points, double t);

}  // namespace qplink

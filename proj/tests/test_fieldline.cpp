#include <doctest.h>

#include "qplink/contact.hpp"
#include "qplink/fieldline.hpp"

using namespace qplink;

namespace {

Vec3 torus_seed() {
  return inverse_projection(std::polar(std::sqrt(0.4), kPi / 4), std::polar(std::sqrt(0.6), 0.0), 0.0);
}

}  // namespace

TEST_CASE("(2,3) Bateman pair: a closed E line winding (3, -2)") {
  const auto line = integrate_field_line(torus_pair_h(2, 3), FieldKind::E, torus_seed(), 0.0);
  CHECK(line.closed);
  CHECK(line.closure_gap < 1e-3);
  const auto w = projection_windings(line.points, 0.0);
  CHECK(w.arg_u == 3);
  CHECK(w.arg_v == -2);
  // the line stays on the torus |u|^2 = 0.4
  for (std::size_t i = 0; i < line.points.size(); i += 97) {
    const auto j = projection_jet(SpacetimePoint::at(line.points[i], 0.0));
    CHECK(std::abs(std::norm(j.u) - 0.4) < 1e-6);
  }
  CHECK(legendrian_residual(line.points, 0.0, true) < 1e-6);
}

TEST_CASE("Legendrian residual decreases with the step") {
  const auto f = figure_eight_reference(1.0 / 3.0);
  double prev = 1.0;
  for (double step : {1e-3, 5e-4, 2.5e-4}) {
    FieldLineOptions o;
    o.max_step = step;
    o.max_length = 2.0;
    o.stop_on_closure = false;
    const auto line = integrate_field_line(f, FieldKind::B, {0.3, -0.2, 0.4}, 0.5, o);
    const double r = legendrian_residual(line.points, 0.5);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("field time makes the tangent the field itself") {
  const auto f = figure_eight_reference(1.0 / 3.0);
  FieldLineOptions o;
  o.max_length = 1.0;
  o.stop_on_closure = false;
  const auto line = integrate_field_line(f, FieldKind::E, {0.3, -0.2, 0.4}, 0.5, o);
  const auto T = polyline_tangents(line.points, line.field_time, false);
  for (std::size_t i = 1; i + 1 < line.points.size(); i += 101) {
    const auto E = bateman_field(f, SpacetimePoint::at(line.points[i], 0.5)).E;
    CHECK(norm(T[i] - E) < 1e-5 * norm(E));
  }
}

TEST_CASE("seed on a null line is rejected") {
  CHECK_THROWS_AS(integrate_field_line(BiPolyUV::monomial(1, 0), FieldKind::E, {1.0, 0.0, 0.0}, 0.0), Error);
}

#include <doctest.h>

#include <random>

#include "qplink/contact.hpp"
#include "qplink/fieldline.hpp"

using namespace qplink;

TEST_CASE("plane field is orthogonal and the contact form never vanishes") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> s(-3.0, 3.0), t(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const SpacetimePoint p{s(rng), s(rng), s(rng), t(rng)};
    const auto f = plane_field(p);
    CHECK(std::abs(dot(f.re_w, f.im_w)) <= 1e-10 * norm(f.re_w) * norm(f.im_w));
    CHECK(norm(f.re_w) == doctest::Approx(norm(f.im_w)).epsilon(1e-10));
    const auto v = contact_volume(p, 1e-4);
    CHECK(v.paper_formula > 0.0);
    CHECK(v.numeric > 0.0);
    CHECK(v.numeric / v.paper_formula == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK(contact_paper_formula({0, 0, 0, 0}) == doctest::Approx(1024.0));
  CHECK_THROWS_AS(contact_volume({0, 0, 0, 0}, 0.1), Error);
}

TEST_CASE("tangents of a sampled circle") {
  Polyline c;
  const int n = 200;
  for (int i = 0; i < n; ++i) c.push_back({std::cos(kTwoPi * i / n), std::sin(kTwoPi * i / n), 0.0});
  const auto T = polyline_tangents(c, {}, true);
  for (int i = 0; i < n; ++i) {
    const Vec3 want{-std::sin(kTwoPi * i / n), std::cos(kTwoPi * i / n), 0.0};
    CHECK(norm(T[i] - want) < 1e-3);
  }
  CHECK_THROWS_AS(polyline_tangents({{0, 0, 0}, {1, 0, 0}}, {}, false), Error);
}

TEST_CASE("a straight line is not Legendrian in general") {
  Polyline c;
  for (int i = 0; i < 50; ++i) c.push_back({0.3 + 0.01 * i, 0.2, 0.1 + 0.02 * i});
  CHECK(legendrian_residual(c, 0.0) > 1e-3);
  const auto tr = h_trace(c, {}, 0.0);
  CHECK(tr.max_defect > 1e-3);
}

TEST_CASE("h-trace along E and B lines of the figure-eight field") {
  const auto f = figure_eight_reference(1.0 / 3.0);
  for (auto which : {FieldKind::E, FieldKind::B}) {
    FieldLineOptions o;
    o.max_length = 2.0;
    o.stop_on_closure = false;
    const auto line = integrate_field_line(f, which, {0.3, -0.2, 0.4}, 0.5, o);
    const auto tr = h_trace(line.points, line.field_time, 0.5);
    CHECK(tr.max_defect < 1e-6);
    CHECK(legendrian_residual(line.points, 0.5) < 1e-6);
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.h.size(); ++i) {
      const auto j = projection_jet(SpacetimePoint::at(line.points[i], 0.5));
      // a B line carries F = -i h W along its tangent
      const cplx want = (which == FieldKind::E ? cplx{1.0} : cplx{0.0, -1.0}) * f.eval(j.u, j.v);
      worst = std::max(worst, std::abs(tr.h[i] - want) / std::abs(want));
    }
    CHECK(worst < 1e-4);
  }
}

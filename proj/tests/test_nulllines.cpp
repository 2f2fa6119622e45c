#include <doctest.h>

#include "qplink/nulllines.hpp"

using namespace qplink;

TEST_CASE("h = u: one circle of radius sqrt(1 + t^2) in z = 0") {
  for (double t : {0.0, 1.0, -0.5}) {
    const auto set = trace_null_lines(BiPolyUV::monomial(1, 0), t);
    REQUIRE(set.lines.size() == 1);
    const auto& line = set.lines[0];
    CHECK(line.closed);
    CHECK_FALSE(line.truncated);
    for (const auto& p : line.points) {
      CHECK(std::abs(p[2]) < 1e-6);
      CHECK(std::abs(std::hypot(p[0], p[1]) - std::sqrt(1.0 + t * t)) < 1e-6);
    }
    CHECK(line.length() == doctest::Approx(kTwoPi * std::sqrt(1.0 + t * t)).epsilon(1e-3));
  }
}

TEST_CASE("constant h has no null lines") {
  const auto set = trace_null_lines(BiPolyUV::constant(2.0), 0.3);
  CHECK(set.lines.empty());
}

TEST_CASE("h = u v: circle and axis forming a Hopf pair") {
  NullLineOptions o;
  o.box = 6.0;
  for (double t : {-1.0, 0.0, 1.0}) {
    const auto set = trace_null_lines(BiPolyUV::monomial(1, 1), t, o);
    REQUIRE(set.lines.size() == 2);
    const auto lk = linking_matrix(as_curves(set));
    CHECK(std::abs(lk.rounded[0][1]) == 1);
    CHECK(lk.max_defect < 0.2);
  }
}

TEST_CASE("null-line residual: traced points lie on h = 0") {
  const auto f = figure_eight_reference(1.0 / 3.0);
  NullLineOptions o;
  o.box = 2.0;
  o.resolution = 48;
  const auto set = trace_null_lines(f, 0.0, o);
  REQUIRE_FALSE(set.lines.empty());
  CHECK(set.max_residual < 1e-8);
  // the knot component stays near the unit circle
  const auto& knot = set.lines[0];
  for (const auto& p : knot.points) CHECK(norm(p) < 2.0);
}

TEST_CASE("stability of h = u over time") {
  const auto r = stability_over_time(BiPolyUV::monomial(1, 0), {-1.0, 0.0, 1.0});
  CHECK(r.stable);
  CHECK(r.component_counts == std::vector<int>{1, 1, 1});
  CHECK_THROWS_AS(stability_over_time(BiPolyUV::monomial(1, 0), {0.0}), Error);
}

TEST_CASE("linking matrices up to relabelling") {
  const IntMatrix a{{0, 1, 0}, {1, 0, 2}, {0, 2, 0}};
  const IntMatrix b{{0, 2, 1}, {2, 0, 0}, {1, 0, 0}};  // labels (1, 2, 0)
  CHECK(equal_up_to_relabelling(a, b));
  const IntMatrix c{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  CHECK_FALSE(equal_up_to_relabelling(a, c));
  CHECK_FALSE(equal_up_to_relabelling(a, IntMatrix{{0}}));
  // 12 components: a cycle of linked pairs against a relabelled copy
  const int n = 12;
  IntMatrix cyc(n, std::vector<int>(n, 0)), rel = cyc;
  for (int i = 0; i < n; ++i) cyc[i][(i + 1) % n] = cyc[(i + 1) % n][i] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rel[(5 * i) % n == 0 ? i : i][j] = cyc[(7 * i) % n][(7 * j) % n];
  CHECK(equal_up_to_relabelling(cyc, rel));
}

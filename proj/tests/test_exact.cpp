#include <doctest.h>

#include "qplink/exact.hpp"
#include "qplink/laurent.hpp"

using namespace qplink;
using namespace qplink::exact;

namespace {

GaussianRational q(long num, long den) { return {Rational(num, den), Rational(0)}; }

// The worked example with symbolic lambda; keys are (u power, lambda power, phase).
SymbolicPoly golden() {
  return {
      {{3, 0, 0}, q(1, 1)},
      {{1, 2, 2}, q(-3, 4)},
      {{1, 2, -2}, q(3, 4)},
      {{0, 3, 2}, q(-1, 2)},
      {{0, 3, -2}, q(-1, 2)},
      {{0, 3, 4}, q(-1, 8)},
      {{0, 3, -4}, q(1, 8)},
  };
}

}  // namespace

TEST_CASE("cyclotomic field arithmetic") {
  const CyclotomicField f(12);
  CHECK(f.dimension() == 4);
  const auto z = f.zeta_power(1);
  auto p = f.one();
  for (int k = 0; k < 12; ++k) p = f.mul(p, z);
  CHECK(f.is_zero(f.sub(p, f.one())));
  // zeta^6 = -1, zeta^3 = i
  CHECK(f.is_zero(f.add(f.zeta_power(6), f.one())));
  const auto i = f.from_gaussian({Rational(0), Rational(1)});
  CHECK(f.is_zero(f.sub(f.zeta_power(3), i)));
  CHECK(f.is_zero(f.add(f.mul(i, i), f.one())));
  // 1 + zeta^4 + zeta^8 = 0
  CHECK(f.is_zero(f.add(f.add(f.one(), f.zeta_power(4)), f.zeta_power(8))));
  CHECK(std::abs(f.to_complex(z) - std::polar(1.0, kTwoPi / 12)) < 1e-15);

  const GaussianRational g{Rational(3, 7), Rational(-2, 5)};
  CHECK(f.to_gaussian(f.from_gaussian(g)) == g);
  CHECK_THROWS_AS(f.to_gaussian(z), Error);
  CHECK_THROWS_AS(CyclotomicField(6).from_gaussian(g), Error);
}

TEST_CASE("exact golden expansion has zero coefficient error") {
  const auto g = expand_product_exact(figure_eight_exact());
  CHECK(max_coefficient_error(g, golden()) == 0);
  CHECK(g.size() == golden().size());
}

TEST_CASE("exact holomorphic figure-eight is the reference over 8") {
  int shift = 0;
  const auto f = to_holomorphic_exact(expand_product_exact(figure_eight_exact()), &shift);
  CHECK(shift == 4);
  // 8u^3v^4 - 6u l^2 (v^6 - v^2) - 4 l^3 (v^6 + v^2) - l^3 (v^8 - 1), divided by 8
  const SymbolicPoly ref = {
      {{3, 0, 4}, q(1, 1)},  {{1, 2, 6}, q(-3, 4)}, {{1, 2, 2}, q(3, 4)}, {{0, 3, 6}, q(-1, 2)},
      {{0, 3, 2}, q(-1, 2)}, {{0, 3, 8}, q(-1, 8)}, {{0, 3, 0}, q(1, 8)},
  };
  CHECK(max_coefficient_error(f, ref) == 0);
}

TEST_CASE("exact and floating expansions agree") {
  const double l = 1.0 / 3.0;
  const auto g = expand_product(figure_eight_parametrization(), l);
  const auto e = expand_product_exact(figure_eight_exact());
  for (int i = 0; i < 30; ++i) {
    const cplx u(0.1 * i - 1.5, 0.05 * i);
    const double t = 0.2 * i;
    CHECK(std::abs(g.eval(u, t) - eval_symbolic(e, l, u, t)) < 1e-12);
  }
}

TEST_CASE("exact expansion of a two-component braid") {
  // two fixed strands at +-1/2 (no phases): (u - l/2)(u + l/2) = u^2 - l^2/4
  ExactComponent a, b;
  a.root_coeffs[0] = q(-1, 2);
  b.root_coeffs[0] = q(1, 2);
  const auto g = expand_product_exact({a, b});
  const SymbolicPoly want = {{{2, 0, 0}, q(1, 1)}, {{0, 2, 0}, q(-1, 4)}};
  CHECK(max_coefficient_error(g, want) == 0);
}

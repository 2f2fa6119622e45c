#include <doctest.h>

#include <random>

#include "qplink/degree.hpp"
#include "qplink/trig.hpp"

using namespace qplink;

namespace {

BraidWord random_word(std::mt19937_64& rng, int s, int l) {
  BraidWord b;
  b.strands = s;
  std::uniform_int_distribution<int> gen(1, s - 1);
  for (int k = 0; k < l; ++k) b.letters.push_back({gen(rng), (rng() & 1) ? 1 : -1});
  return b;
}

}  // namespace

TEST_CASE("sample_strand_paths on a single exchange") {
  const auto b = parse_braid("1");
  const auto samples = sample_strand_paths(b, 4);
  REQUIRE(samples.components.size() == 1);
  const auto& c = samples.components[0];
  CHECK(c.strand_count == 2);
  CHECK(c.x.size() % 2 == 1);
  CHECK(c.x.size() == 2 * degree_bound_term(2, 1, 2) + 1);
  // the model strand from slot 0 ends where slot 1 started and vice versa
  CHECK(model_strand_point(b, 0, 0.0)[0] == doctest::Approx(-0.5));
  CHECK(model_strand_point(b, 0, kTwoPi)[0] == doctest::Approx(0.5));
  CHECK(model_strand_point(b, 1, kTwoPi)[0] == doctest::Approx(-0.5));
  CHECK(model_strand_point(b, 0, kPi)[1] == doctest::Approx(1.0));
  CHECK(model_strand_point(b, 1, kPi)[1] == doctest::Approx(-1.0));
}

TEST_CASE("sample_strand_paths on the trivial braid") {
  const auto samples = sample_strand_paths(parse_braid("", 1), 4);
  REQUIRE(samples.components.size() == 1);
  CHECK(samples.components[0].x == std::vector<double>{0.0});
  CHECK(samples.components[0].y == std::vector<double>{0.0});
  CHECK_THROWS_AS(sample_strand_paths(parse_braid("1"), 3), Error);
}

TEST_CASE("sample_strand_paths on the figure-eight word") {
  const auto b = parse_braid("1 -2 1 -2");
  const auto samples = sample_strand_paths(b, 4);
  REQUIRE(samples.components.size() == 1);
  CHECK(samples.components[0].strand_count == 3);
  CHECK(samples.components[0].x.size() == 45);  // capped at 2 * 22 + 1
  int exchanges = 0;
  for (int s = 0; s < 3; ++s)
    for (int k = 0; k < 4; ++k)
      if (std::abs(model_strand_point(b, s, kTwoPi * (k + 0.5) / 4)[1]) > 0.5) ++exchanges;
  CHECK(exchanges == 8);  // two strands move in each of the four windows
}

TEST_CASE("interpolation of constants and cosines") {
  auto c = interpolate_samples(std::vector<double>(7, 2.5));
  CHECK(c.degree() == 0);
  CHECK(c.coeff(0).real() == doctest::Approx(2.5));

  for (int n : {3, 5, 9}) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = std::cos(kTwoPi * i / n);
    const auto p = interpolate_samples(v);
    CHECK(p.degree() == 1);
    CHECK(std::abs(p.coeff(1) - 0.5) < 1e-14);
    CHECK(std::abs(p.coeff(-1) - 0.5) < 1e-14);
    CHECK(std::abs(p.coeff(0)) < 1e-14);
  }
  CHECK_THROWS_AS(interpolate_samples({1.0, 2.0}), Error);
}

TEST_CASE("figure-eight parametrization reads back as the figure-eight word") {
  const auto p = figure_eight_parametrization();
  const auto rep = validate(p, 64 * 4 * 8);
  CHECK(rep.valid);
  CHECK(rep.readout.permutation == closure_permutation(parse_braid("1 -2 1 -2")));
  CHECK(rep.readout.exponent_sum == 0);
  CHECK(rep.readout.word == parse_braid("1 -2 1 -2"));
}

TEST_CASE("validate: constant strand and single exchange") {
  const auto trivial = validate(parametrize(parse_braid("", 1)), 64);
  CHECK(trivial.readout.word.letters.empty());

  const auto one = validate(parametrize(parse_braid("1")), 64 * 8);
  CHECK(one.valid);
  CHECK(one.readout.word == parse_braid("1"));
}

TEST_CASE("validate rejects coincident strands") {
  BraidParametrization p;
  p.strands = 2;
  for (int s = 0; s < 2; ++s) {
    ComponentParametrization c;
    c.slots = {s};
    c.x = TrigPolynomial::from_half({0.0, 0.5});
    c.y = TrigPolynomial::constant(0.0);
    p.components.push_back(c);
  }
  CHECK_FALSE(validate(p, 64).valid);
  CHECK_THROWS_AS(validate(p, 10), Error);
}

TEST_CASE("constructed parametrizations satisfy the interpolation invariants") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const int s = 2 + static_cast<int>(rng() % 3);
    const int l = 1 + static_cast<int>(rng() % 6);
    const auto b = random_word(rng, s, l);
    const auto samples = sample_strand_paths(b, 4);
    const auto p = interpolate(samples);
    const auto bounds = degree_bounds(b);

    for (std::size_t ci = 0; ci < p.components.size(); ++ci) {
      const auto& c = p.components[ci];
      const auto& cs = samples.components[ci];
      CHECK(std::max(c.x.degree(), c.y.degree()) <= bounds.component_terms[ci]);
      CHECK(c.x.symmetry_defect() < 1e-14);
      const int n = static_cast<int>(cs.x.size());
      for (int i = 0; i < n; ++i) {
        const double tau = kTwoPi * i / n;
        CHECK(std::abs(c.x(tau) - cs.x[i]) <= 1e-10 * (1.0 + std::abs(cs.x[i])));
        CHECK(std::abs(c.y(tau) - cs.y[i]) <= 1e-10 * (1.0 + std::abs(cs.y[i])));
      }
      for (int i = 0; i < 200; ++i) {
        const double t = kTwoPi * i / 200.0;
        const cplx fx = c.x.eval_complex(t);
        CHECK(std::abs(fx.imag()) <= 1e-10 * (1.0 + std::abs(fx)));
      }
      // period consistency: strand j at 2 pi continues as strand j + 1 at 0
      for (int j = 0; j < c.strand_count; ++j) {
        const auto end = c.strand_point(j, kTwoPi);
        const auto next = c.strand_point((j + 1) % c.strand_count, 0.0);
        CHECK(std::abs(end[0] - next[0]) < 1e-12);
        CHECK(std::abs(end[1] - next[1]) < 1e-12);
      }
    }

    const auto rep = validate(p, 64 * l * 8);
    CHECK(rep.valid);
    const auto inv = word_invariants(b);
    CHECK(rep.readout.permutation == closure_permutation(b));
    CHECK(rep.readout.exponent_sum == inv.exponent_sum);
    CHECK(rep.readout.linking_matrix == inv.linking_matrix);
  }
}

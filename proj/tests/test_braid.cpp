#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "qplink/braid.hpp"

using namespace qplink;

namespace {

// Independent oracle: compose the letter transpositions as functions,
// pi = tau_{i_1} o tau_{i_2} o ... o tau_{i_l}, evaluating right to left.
Permutation compose_transpositions(const BraidWord& b) {
  Permutation pi(b.strands);
  for (int p = 0; p < b.strands; ++p) {
    int x = p;
    for (auto it = b.letters.rbegin(); it != b.letters.rend(); ++it) {
      const int g = it->generator;
      if (x == g - 1) x = g;
      else if (x == g) x = g - 1;
    }
    pi[p] = x;
  }
  return pi;
}

BraidWord random_word(std::mt19937_64& rng, int s, int l) {
  BraidWord b;
  b.strands = s;
  std::uniform_int_distribution<int> gen(1, std::max(1, s - 1));
  std::bernoulli_distribution sign;
  for (int k = 0; k < l && s > 1; ++k) b.letters.push_back({gen(rng), sign(rng) ? 1 : -1});
  return b;
}

}  // namespace

TEST_CASE("parse_braid reads signed generator lists") {
  const auto b = parse_braid("1 -2 1 -2");
  CHECK(b.strands == 3);
  CHECK(b.length() == 4);
  CHECK(b.letters == std::vector<Letter>{{1, 1}, {2, -1}, {1, 1}, {2, -1}});

  const auto trivial = parse_braid("", 1);
  CHECK(trivial.strands == 1);
  CHECK(trivial.length() == 0);

  const auto trefoil = parse_braid("1 1 1");
  CHECK(trefoil.strands == 2);
  CHECK(trefoil.length() == 3);

  CHECK(parse_braid("  +1\t-1\n").letters.size() == 2);
  CHECK(parse_braid("1", 4).strands == 4);
}

TEST_CASE("parse_braid rejects malformed input") {
  CHECK_THROWS_AS(parse_braid("1 x"), Error);
  CHECK_THROWS_AS(parse_braid("1.5"), Error);
  CHECK_THROWS_AS(parse_braid("0"), Error);
  CHECK_THROWS_AS(parse_braid("3", 3), Error);
  CHECK_THROWS_AS(parse_braid("1", 0), Error);
}

TEST_CASE("closure permutation examples") {
  // 1 -> 3, 2 -> 1, 3 -> 2 in 1-based labels
  CHECK(closure_permutation(parse_braid("1 -2 1 -2")) == Permutation{2, 0, 1});
  CHECK(closure_permutation(parse_braid("", 3)) == Permutation{0, 1, 2});
  CHECK(closure_permutation(parse_braid("1 1 1")) == Permutation{1, 0});
  CHECK(closure_permutation(parse_braid("1 1")) == Permutation{0, 1});
}

TEST_CASE("components examples") {
  const auto fig8 = components(parse_braid("1 -2 1 -2"));
  REQUIRE(fig8.size() == 1);
  CHECK(fig8.strand_counts() == std::vector<int>{3});

  const auto hopf = components(parse_braid("1 1"));
  CHECK(hopf.size() == 2);
  CHECK(hopf.strand_counts() == std::vector<int>{1, 1});

  CHECK(components(parse_braid("", 3)).size() == 3);
}

TEST_CASE("word invariants examples") {
  CHECK(word_invariants(parse_braid("1 -2 1 -2")).exponent_sum == 0);

  const auto hopf = word_invariants(parse_braid("1 1"));
  CHECK(hopf.exponent_sum == 2);
  CHECK(hopf.linking_matrix == IntMatrix{{0, 1}, {1, 0}});

  CHECK(word_invariants(parse_braid("-1 -1")).linking_matrix == IntMatrix{{0, -1}, {-1, 0}});
  CHECK(word_invariants(parse_braid("1 1 1 1")).linking_matrix == IntMatrix{{0, 2}, {2, 0}});

  const auto empty = word_invariants(parse_braid("", 2));
  CHECK(empty.exponent_sum == 0);
  CHECK(empty.linking_matrix == IntMatrix{{0, 0}, {0, 0}});
}

TEST_CASE("closure permutation matches transposition composition on random words") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 1 + static_cast<int>(rng() % 6);
    const auto b = random_word(rng, s, static_cast<int>(rng() % 10));
    CHECK(closure_permutation(b) == compose_transpositions(b));
  }
}

TEST_CASE("closure permutation of a concatenation composes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 2 + static_cast<int>(rng() % 5);
    const auto w1 = random_word(rng, s, static_cast<int>(rng() % 8));
    const auto w2 = random_word(rng, s, static_cast<int>(rng() % 8));
    BraidWord w = w1;
    w.letters.insert(w.letters.end(), w2.letters.begin(), w2.letters.end());
    CHECK(closure_permutation(w) == compose(closure_permutation(w1), closure_permutation(w2)));
  }
}

TEST_CASE("component and linking invariants hold on random words") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 1 + static_cast<int>(rng() % 6);
    const auto b = random_word(rng, s, static_cast<int>(rng() % 12));
    const auto comps = components(b);
    const auto counts = comps.strand_counts();
    CHECK(std::accumulate(counts.begin(), counts.end(), 0) == s);

    std::vector<int> seen;
    for (const auto& c : comps.cycles) seen.insert(seen.end(), c.begin(), c.end());
    std::sort(seen.begin(), seen.end());
    std::vector<int> all(s);
    std::iota(all.begin(), all.end(), 0);
    CHECK(seen == all);
    CHECK(comps.size() == cycle_decomposition(closure_permutation(b)).size());

    const auto inv = word_invariants(b);
    int sum = 0;
    for (const auto& l : b.letters) sum += l.sign;
    CHECK(inv.exponent_sum == sum);
    for (std::size_t i = 0; i < inv.linking_matrix.size(); ++i) {
      CHECK(inv.linking_matrix[i][i] == 0);
      for (std::size_t j = 0; j < i; ++j) CHECK(inv.linking_matrix[i][j] == inv.linking_matrix[j][i]);
    }
  }
}

TEST_CASE("to_string round trip") {
  const auto b = parse_braid("2 -1 3 3 -2");
  CHECK(parse_braid(to_string(b), b.strands) == b);
}

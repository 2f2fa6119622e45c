#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qplink/common.hpp"

namespace qplink {

/// One braid generator sigma_i^{+-1}. `generator` is 1-based.
struct Letter {
  int generator = 1;
  int sign = 1;

  bool operator==(const Letter&) const = default;
};

/// A braid on `strands` strands read left to right as time increases.
/// Letter (i, +1) means the strand moving from position i to i+1 passes over
/// (larger y) the strand moving from i+1 to i.
struct BraidWord {
  int strands = 1;
  std::vector<Letter> letters;

  std::size_t length() const { return letters.size(); }
  bool operator==(const BraidWord&) const = default;
};

/// Permutation of 0-based strand positions; `perm[p]` is the image of p.
using Permutation = std::vector<int>;

/// Cycles of the closure permutation. Each cycle is listed in the order the
/// closed strand visits positions (successor order), starting from its
/// smallest position; cycles are sorted by that smallest position.
struct ComponentDecomposition {
  std::vector<std::vector<int>> cycles;
  std::vector<int> component_of;  // position -> cycle index

  std::size_t size() const { return cycles.size(); }
  std::vector<int> strand_counts() const;
};

struct WordInvariants {
  int exponent_sum = 0;
  IntMatrix linking_matrix;  // components x components, zero diagonal
};

/// Parses whitespace-separated nonzero integers ("1 -2 1 -2"). Without an
/// explicit strand count, s = 1 + max |entry| (s = 1 for the empty word).
BraidWord parse_braid(std::string_view text, std::optional<int> strands = std::nullopt);

std::string to_string(const BraidWord& b);

/// Where each strand ends up: the strand starting at position p finishes the
/// word at position `strand_successor(b)[p]`.
Permutation strand_successor(const BraidWord& b);

/// Closure permutation: the composition tau_{i_1} o tau_{i_2} o ... o tau_{i_l}
/// of the letter transpositions. Equals the inverse of `strand_successor`, i.e.
/// it sends an end position to the start position of the strand ending there.
Permutation closure_permutation(const BraidWord& b);

Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation inverse(const Permutation& p);

/// Cycle decomposition of a permutation (cycles follow `perm` itself).
ComponentDecomposition cycle_decomposition(const Permutation& perm);

/// Components of the braid closure; cycles follow `strand_successor`.
ComponentDecomposition components(const BraidWord& b);

/// Exponent sum and pairwise linking numbers (half the signed count of
/// crossings between strands of different components).
WordInvariants word_invariants(const BraidWord& b);

}  // namespace qplink

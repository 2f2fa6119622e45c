#include "qplink/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace qplink {

std::vector<int> ComponentDecomposition::strand_counts() const {
  std::vector<int> out;
  out.reserve(cycles.size());
  for (const auto& c : cycles) out.push_back(static_cast<int>(c.size()));
  return out;
}

BraidWord parse_braid(std::string_view text, std::optional<int> strands) {
  std::vector<long> entries;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    std::string_view digits = tok;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    long value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
      throw Error("braid", "non-integer token '" + std::string(tok) + "'");
    if (value == 0) throw Error("braid", "generator index 0 is not allowed");
    entries.push_back(value);
    i = j;
  }

  BraidWord b;
  long max_abs = 0;
  for (long e : entries) max_abs = std::max(max_abs, std::labs(e));
  if (strands) {
    if (*strands < 1) throw Error("braid", "strand count must be positive");
    if (max_abs >= *strands)
      throw Error("braid", "generator " + std::to_string(max_abs) + " needs more than " +
                               std::to_string(*strands) + " strands");
    b.strands = *strands;
  } else {
    b.strands = static_cast<int>(max_abs) + 1;
  }
  for (long e : entries) b.letters.push_back({static_cast<int>(std::labs(e)), e > 0 ? 1 : -1});
  return b;
}

std::string to_string(const BraidWord& b) {
  std::ostringstream os;
  for (std::size_t k = 0; k < b.letters.size(); ++k) {
    if (k) os << ' ';
    os << b.letters[k].sign * b.letters[k].generator;
  }
  return os.str();
}

Permutation strand_successor(const BraidWord& b) {
  // at[pos] = start position of the strand currently at pos
  std::vector<int> at(b.strands);
  std::iota(at.begin(), at.end(), 0);
  for (const auto& l : b.letters) std::swap(at[l.generator - 1], at[l.generator]);
  Permutation succ(b.strands);
  for (int pos = 0; pos < b.strands; ++pos) succ[at[pos]] = pos;
  return succ;
}

Permutation closure_permutation(const BraidWord& b) { return inverse(strand_successor(b)); }

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out(inner.size());
  for (std::size_t p = 0; p < inner.size(); ++p) out[p] = outer[inner[p]];
  return out;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<int>(i);
  return out;
}

ComponentDecomposition cycle_decomposition(const Permutation& perm) {
  ComponentDecomposition d;
  d.component_of.assign(perm.size(), -1);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (d.component_of[start] >= 0) continue;
    std::vector<int> cyc;
    int p = static_cast<int>(start);
    do {
      d.component_of[p] = static_cast<int>(d.cycles.size());
      cyc.push_back(p);
      p = perm[p];
    } while (p != static_cast<int>(start));
    d.cycles.push_back(std::move(cyc));
  }
  return d;
}

ComponentDecomposition components(const BraidWord& b) {
  return cycle_decomposition(strand_successor(b));
}

WordInvariants word_invariants(const BraidWord& b) {
  WordInvariants inv;
  const auto comps = components(b);
  const std::size_t n = comps.size();
  IntMatrix twice(n, std::vector<int>(n, 0));
  std::vector<int> at(b.strands);
  std::iota(at.begin(), at.end(), 0);
  for (const auto& l : b.letters) {
    inv.exponent_sum += l.sign;
    const int ca = comps.component_of[at[l.generator - 1]];
    const int cb = comps.component_of[at[l.generator]];
    if (ca != cb) {
      twice[ca][cb] += l.sign;
      twice[cb][ca] += l.sign;
    }
    std::swap(at[l.generator - 1], at[l.generator]);
  }
  inv.linking_matrix.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // crossings between two closed components come in even numbers
      if (twice[i][j] % 2 != 0) throw Error("braid", "odd inter-component crossing count");
      inv.linking_matrix[i][j] = twice[i][j] / 2;
    }
  return inv;
}

}  // namespace qplink

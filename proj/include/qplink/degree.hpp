#pragma once

#include <vector>

#include "qplink/braid.hpp"

namespace qplink {

/// Degree bounds for the holomorphic polynomial built from a braid on s
/// strands with l crossings. Per component C with s_C strands:
///   T_C = floor(((s_C + 1)(l s_C - 1) + l s_C (s - s_C)) / 2)
///   deg_v <= 2 sum T_C
///   deg   <= sum max(T_C, s_C) + sum T_C
struct DegreeBoundReport {
  int deg_u = 0;
  long deg_v_bound = 0;
  long total_degree_bound = 0;
  std::vector<long> component_terms;
  std::vector<int> component_strands;
};

long degree_bound_term(int strands, int length, int component_strands);

/// Requires at least one letter.
DegreeBoundReport degree_bounds(const BraidWord& b);

/// Single-component simplification 2 floor((s + 1)(l s - 1) / 2).
long knot_degree_bound(int strands, int length);

}  // namespace qplink

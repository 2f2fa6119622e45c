#include "qplink/degree.hpp"

#include <algorithm>

namespace qplink {

namespace {
long floor_half(long n) { return n >= 0 ? n / 2 : -((-n + 1) / 2); }
}  // namespace

long degree_bound_term(int strands, int length, int component_strands) {
  const long s = strands, l = length, sc = component_strands;
  return floor_half((sc + 1) * (l * sc - 1) + l * sc * (s - sc));
}

DegreeBoundReport degree_bounds(const BraidWord& b) {
  if (b.letters.empty()) throw Error("laurent", "degree bounds need at least one crossing");
  DegreeBoundReport r;
  r.deg_u = b.strands;
  const auto comps = components(b);
  long sum_terms = 0, sum_max = 0;
  for (const auto& cyc : comps.cycles) {
    const int sc = static_cast<int>(cyc.size());
    const long term = degree_bound_term(b.strands, static_cast<int>(b.length()), sc);
    r.component_terms.push_back(term);
    r.component_strands.push_back(sc);
    sum_terms += term;
    sum_max += std::max<long>(term, sc);
  }
  r.deg_v_bound = 2 * sum_terms;
  r.total_degree_bound = sum_max + sum_terms;
  return r;
}

long knot_degree_bound(int strands, int length) {
  const long s = strands, l = length;
  return 2 * floor_half((s + 1) * (l * s - 1));
}

}  // namespace qplink

#pragma once

#include <vector>

#include "qplink/common.hpp"
#include "qplink/laurent.hpp"

namespace qplink {

struct RootSolve {
  std::vector<cplx> roots;
  int iterations = 0;
  bool used_fallback = false;
  double max_residual = 0.0;  // |p(z)| / sum |a_k| |z|^k
};

/// Relative residual tolerance every returned root must meet.
inline constexpr double kRootResidual = 1e-10;

/// All roots of sum_k coeffs[k] z^k (ascending, nonzero leading coefficient).
/// Aberth-Ehrlich iteration, warm-started from `warm` when given; falls back
/// to Laguerre with deflation and finishes with Newton polishing on the
/// undeflated polynomial.
RootSolve solve_polynomial(const std::vector<cplx>& coeffs, const std::vector<cplx>* warm = nullptr);

/// The s roots of f(., v). Rejects v = 0.
std::vector<cplx> roots_at(const BiPolyUV& f, cplx v, const std::vector<cplx>* warm = nullptr);

/// Newton iteration for a single root of f(., v) from `guess`.
cplx newton_root(const BiPolyUV& f, cplx v, cplx guess, int max_iter = 50);

/// Minimum-cost perfect matching of a square cost matrix (Hungarian method).
/// Returns col[row].
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost);

struct RootMatching {
  std::vector<int> next_of;  // prev root i continues as next root next_of[i]
  double cost = 0.0;
  /// Largest displacement divided by the smallest separation among the new
  /// roots; continuation is trusted when this is well below 1/2.
  double step_ratio = 0.0;
  bool ambiguous = false;  // a pair swap costs within 1e-12 of the optimum
};

RootMatching match_roots(const std::vector<cplx>& prev, const std::vector<cplx>& next);

}  // namespace qplink

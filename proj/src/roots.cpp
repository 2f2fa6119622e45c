#include "qplink/roots.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace qplink {

namespace {

struct Eval {
  cplx p, dp;
  double scale;  // sum |a_k| |z|^k
};

Eval horner(const std::vector<cplx>& a, cplx z) {
  Eval e{0.0, 0.0, 0.0};
  const double az = std::abs(z);
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    e.dp = e.dp * z + e.p;
    e.p = e.p * z + *it;
    e.scale = e.scale * az + std::abs(*it);
  }
  return e;
}

double relative_residual(const std::vector<cplx>& a, cplx z) {
  const auto e = horner(a, z);
  return e.scale > 0.0 ? std::abs(e.p) / e.scale : 0.0;
}

std::vector<cplx> initial_guesses(const std::vector<cplx>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  // Radius from the geometric mean of the roots; angles offset so that no
  // guess lies on a symmetry axis of a real polynomial.
  double r = std::pow(std::abs(a[0]) / std::abs(a[n]), 1.0 / n);
  if (!(r > 0.0) || !std::isfinite(r)) r = 1.0;
  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(r, kTwoPi * k / n + 0.4);
  return z;
}

bool aberth(const std::vector<cplx>& a, std::vector<cplx>& z, int& iterations) {
  const int n = static_cast<int>(z.size());
  for (int it = 0; it < 500; ++it) {
    ++iterations;
    bool done = true;
    for (int i = 0; i < n; ++i) {
      const auto e = horner(a, z[i]);
      if (e.p == cplx{}) continue;
      const cplx ratio = e.p / e.dp;
      cplx sum = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const cplx w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
      z[i] -= w;
      if (std::abs(w) > 1e-15 * std::max(1.0, std::abs(z[i])) && std::abs(e.p) > 1e-14 * e.scale) done = false;
    }
    if (done) return true;
  }
  return false;
}

cplx laguerre(const std::vector<cplx>& a, cplx z) {
  const int n = static_cast<int>(a.size()) - 1;
  for (int it = 0; it < 200; ++it) {
    cplx p = a[n], d1 = 0.0, d2 = 0.0;
    for (int k = n - 1; k >= 0; --k) {
      d2 = d2 * z + d1;
      d1 = d1 * z + p;
      p = p * z + a[k];
    }
    d2 *= 2.0;
    if (std::abs(p) == 0.0) return z;
    const cplx g = d1 / p;
    const cplx h = g * g - d2 / p;
    const cplx sq = std::sqrt(static_cast<double>(n - 1) * (static_cast<double>(n) * h - g * g));
    cplx den = g + sq;
    if (std::abs(g - sq) > std::abs(den)) den = g - sq;
    const cplx step = std::abs(den) > 0.0 ? static_cast<double>(n) / den : std::polar(1.0 + std::abs(z), 1.0 * it);
    z -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

std::vector<cplx> laguerre_deflation(std::vector<cplx> a) {
  std::vector<cplx> roots;
  while (a.size() > 1) {
    const cplx z = laguerre(a, 0.0);
    roots.push_back(z);
    // synthetic division by (x - z)
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<cplx> q(n);
    cplx carry = a[n];
    for (int k = n - 1; k >= 0; --k) {
      q[k] = carry;
      carry = a[k] + carry * z;
    }
    a = std::move(q);
  }
  return roots;
}

void polish(const std::vector<cplx>& a, std::vector<cplx>& z) {
  for (auto& r : z)
    for (int it = 0; it < 3; ++it) {
      const auto e = horner(a, r);
      if (e.dp == cplx{}) break;
      const cplx next = r - e.p / e.dp;
      if (relative_residual(a, next) > relative_residual(a, r)) break;
      r = next;
    }
}

}  // namespace

RootSolve solve_polynomial(const std::vector<cplx>& coeffs, const std::vector<cplx>* warm) {
  if (coeffs.empty() || coeffs.back() == cplx{}) throw Error("roots", "leading coefficient is zero");
  RootSolve out;
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n == 0) return out;
  if (n == 1) {
    out.roots = {-coeffs[0] / coeffs[1]};
    out.max_residual = relative_residual(coeffs, out.roots[0]);
    return out;
  }
  std::vector<cplx> z = (warm && static_cast<int>(warm->size()) == n) ? *warm : initial_guesses(coeffs);
  // Coincident warm starts stall Aberth; nudge them apart.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (z[i] == z[j]) z[i] += std::polar(1e-8 * std::max(1.0, std::abs(z[i])), 0.7 * (i + 1));

  bool ok = aberth(coeffs, z, out.iterations);
  polish(coeffs, z);
  double worst = 0.0;
  for (const auto& r : z) worst = std::max(worst, relative_residual(coeffs, r));
  if (!ok || !(worst <= kRootResidual)) {
    out.used_fallback = true;
    z = laguerre_deflation(coeffs);
    polish(coeffs, z);
    worst = 0.0;
    for (const auto& r : z) worst = std::max(worst, relative_residual(coeffs, r));
  }
  out.roots = std::move(z);
  out.max_residual = worst;
  if (!(worst <= kRootResidual))
    throw Error("roots", "root finder did not converge (residual " + std::to_string(worst) + ")");
  return out;
}

std::vector<cplx> roots_at(const BiPolyUV& f, cplx v, const std::vector<cplx>* warm) {
  if (v == cplx{}) throw Error("roots", "v = 0 is rejected");
  return solve_polynomial(f.univariate_in_u(v), warm).roots;
}

cplx newton_root(const BiPolyUV& f, cplx v, cplx guess, int max_iter) {
  cplx z = guess;
  for (int it = 0; it < max_iter; ++it) {
    const auto g = f.eval_grad(z, v);
    if (g.du == cplx{}) break;
    const cplx step = g.value / g.du;
    z -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  // Potentials formulation, 1-based internally.
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> col(n);
  for (int j = 1; j <= n; ++j) col[p[j] - 1] = j - 1;
  return col;
}

RootMatching match_roots(const std::vector<cplx>& prev, const std::vector<cplx>& next) {
  const int n = static_cast<int>(prev.size());
  if (static_cast<int>(next.size()) != n) throw Error("roots", "root sets differ in size");
  RootMatching m;
  if (n == 0) return m;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost[i][j] = std::abs(prev[i] - next[j]);
  m.next_of = min_cost_assignment(cost);
  double step = 0.0;
  for (int i = 0; i < n; ++i) {
    m.cost += cost[i][m.next_of[i]];
    step = std::max(step, cost[i][m.next_of[i]]);
  }
  double sep = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < a; ++b) sep = std::min(sep, std::abs(next[a] - next[b]));
  m.step_ratio = n > 1 ? step / sep : 0.0;
  for (int a = 0; a < n && !m.ambiguous; ++a)
    for (int b = 0; b < a; ++b) {
      const double swapped = cost[a][m.next_of[b]] + cost[b][m.next_of[a]];
      const double kept = cost[a][m.next_of[a]] + cost[b][m.next_of[b]];
      if (swapped - kept < 1e-12) {
        m.ambiguous = true;
        break;
      }
    }
  return m;
}

}  // namespace qplink

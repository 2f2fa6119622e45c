#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qplink/braid.hpp"
#include "qplink/common.hpp"
#include "qplink/trig.hpp"

namespace qplink {

/// Sparse Laurent polynomial sum c_e q^e with complex coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(cplx constant) {
    if (constant != cplx{}) terms_[0] = constant;
  }

  const std::map<int, cplx>& terms() const { return terms_; }
  cplx coeff(int e) const;
  void add(int e, cplx c) { terms_[e] += c; }
  bool empty() const { return terms_.empty(); }

  /// Removes coefficients with magnitude below tol.
  void prune(double tol);
  double max_abs() const;
  int min_exponent() const;
  int max_exponent() const;

  cplx eval(cplx q) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(cplx s, const LaurentPoly& a);

 private:
  std::map<int, cplx> terms_;
};

/// Monic polynomial in u whose coefficients are Laurent polynomials in e^{it}:
///   g(u, t) = sum_m u^m sum_k coeffs[m][k] e^{ikt}.
/// The expansion runs in q = e^{it/P}, P = lcm of the component strand
/// counts, and is collapsed to e^{it} once every exponent is a multiple of P.
struct UPolyOverLaurent {
  std::vector<LaurentPoly> coeffs;  // index = power of u
  int period = 1;                   // P
  double lambda = 1.0;
  int expected_shift = 0;           // sum_C w_C max(N_C, M_C)

  int degree_u() const { return static_cast<int>(coeffs.size()) - 1; }
  cplx eval(cplx u, double t) const;
  int min_phase() const;
  int max_phase() const;
  bool phase_free() const;
};

/// Thrown bookkeeping tolerance: off-lattice coefficients must be below this
/// fraction of the largest coefficient.
inline constexpr double kLatticeTolerance = 1e-9;
inline constexpr double kExpansionPrune = 1e-12;

/// Expands prod_{C,j} (u - lambda (X_{C,j}(t) + i Y_{C,j}(t))).
UPolyOverLaurent expand_product(const BraidParametrization& p, double lambda);

/// Direct evaluation of the root product (pointwise oracle).
cplx root_product(const BraidParametrization& p, double lambda, cplx u, double t);

/// Semiholomorphic polynomial sum c u^a v^b conj(v)^c.
struct MixedPoly {
  std::map<std::array<int, 3>, cplx> terms;
  cplx eval(cplx u, cplx v) const;
};

MixedPoly to_semiholomorphic(const UPolyOverLaurent& g);

/// Polynomial sum c_{a,b} u^a v^b. Immutable after construction; keeps a
/// dense table for evaluation.
class BiPolyUV {
 public:
  struct Term {
    int du = 0;
    int dv = 0;
    cplx c;
  };
  struct ValueGrad {
    cplx value, du, dv;
  };

  BiPolyUV() : BiPolyUV(std::vector<Term>{}) {}
  explicit BiPolyUV(const std::vector<Term>& terms, double prune_tol = 0.0);

  static BiPolyUV monomial(int du, int dv, cplx c = 1.0);
  static BiPolyUV constant(cplx c) { return monomial(0, 0, c); }

  std::vector<Term> terms() const;
  cplx coeff(int du, int dv) const;
  int degree_u() const { return deg_u_; }
  int degree_v() const { return deg_v_; }
  int total_degree() const;
  bool is_zero() const { return terms_.empty(); }
  double max_abs() const;

  cplx eval(cplx u, cplx v) const;
  ValueGrad eval_grad(cplx u, cplx v) const;
  /// Coefficients of the univariate polynomial in u at fixed v (ascending).
  std::vector<cplx> univariate_in_u(cplx v) const;

  BiPolyUV derivative_u() const;
  BiPolyUV derivative_v() const;
  /// Rescales u^a v^b by factor^(s - a), s = degree_u(): the lambda-family
  /// homogeneity of the braid polynomial, so f_{mu} = f_lambda.rescaled(mu/lambda).
  BiPolyUV rescaled(double factor) const;

  friend BiPolyUV operator+(const BiPolyUV& a, const BiPolyUV& b);
  friend BiPolyUV operator-(const BiPolyUV& a, const BiPolyUV& b);
  friend BiPolyUV operator*(const BiPolyUV& a, const BiPolyUV& b);
  friend BiPolyUV operator*(cplx s, const BiPolyUV& a);

  // Provenance of braid-built polynomials.
  double lambda = 0.0;  // 0 when not a braid polynomial
  int shift = 0;        // d, the power of v cleared from the denominator
  bool non_generic = false;
  std::optional<BraidWord> braid;

 private:
  std::map<std::pair<int, int>, cplx> terms_;
  int deg_u_ = 0;
  int deg_v_ = 0;
  std::vector<std::vector<cplx>> dense_;  // [du][dv]
};

/// e^{it} -> v, e^{-it} -> 1/v, times v^d with d = -(lowest phase exponent).
/// Throws when f(u, 0) is zero or depends on u; a phase-free g is returned
/// unchanged and flagged non-generic.
BiPolyUV to_holomorphic(const UPolyOverLaurent& g);

/// h = f_u g_v - f_v g_u, the Bateman factor of the field grad f x grad g.
BiPolyUV bateman_factor(const BiPolyUV& f, const BiPolyUV& g);

/// The worked figure-eight polynomial 8u^3v^4 - 6u l^2 (v^6 - v^2)
/// - 4 l^3 (v^6 + v^2) - l^3 (v^8 - 1).
BiPolyUV figure_eight_reference(double lambda);

}  // namespace qplink

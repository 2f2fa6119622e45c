#pragma once

#include <map>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qplink/common.hpp"

namespace qplink::exact {

using Rational = boost::multiprecision::cpp_rational;

struct GaussianRational {
  Rational re, im;
  bool operator==(const GaussianRational&) const = default;
  bool is_zero() const { return re == 0 && im == 0; }
  cplx to_complex() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
};

/// Arithmetic in the cyclotomic field Q(zeta_n), elements stored as rational
/// coefficient vectors in the power basis modulo the n-th cyclotomic
/// polynomial.
class CyclotomicField {
 public:
  using Element = std::vector<Rational>;

  explicit CyclotomicField(int n);

  int order() const { return n_; }
  int dimension() const { return static_cast<int>(phi_.size()) - 1; }

  Element zero() const { return Element(dimension(), Rational(0)); }
  Element one() const;
  Element zeta_power(long k) const;
  Element from_gaussian(const GaussianRational& g) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  bool is_zero(const Element& a) const;

  /// Returns the Gaussian rational equal to a, or throws if a is not in Q(i).
  GaussianRational to_gaussian(const Element& a) const;
  cplx to_complex(const Element& a) const;

 private:
  Element reduce(std::vector<Rational> poly) const;

  int n_;
  std::vector<Rational> phi_;  // monic, ascending
};

/// A root term lambda * sum_k c_k e^{ik(w t + 2 pi j)/s_C} for j = 0..s_C-1.
struct ExactComponent {
  int strand_count = 1;
  int time_multiplier = 1;
  std::map<int, GaussianRational> root_coeffs;  // coefficients of F + iG
};

/// Key (power of u, power of lambda, phase exponent in units of e^{it}).
using SymbolicKey = std::tuple<int, int, int>;
using SymbolicPoly = std::map<SymbolicKey, GaussianRational>;

/// Exact expansion of prod (u - lambda root_{C,j}(t)) with lambda symbolic.
/// Throws if a coefficient off the e^{it} lattice is nonzero or a collapsed
/// coefficient is not a Gaussian rational.
SymbolicPoly expand_product_exact(const std::vector<ExactComponent>& components);

/// e^{ikt} -> v^{k + d} with d = -(lowest phase exponent).
SymbolicPoly to_holomorphic_exact(const SymbolicPoly& g, int* shift = nullptr);

/// The worked figure-eight parametrization with exact coefficients.
std::vector<ExactComponent> figure_eight_exact();

/// Largest |difference| of two symbolic polynomials, exactly.
Rational max_coefficient_error(const SymbolicPoly& a, const SymbolicPoly& b);

/// Evaluates a symbolic braid polynomial at a numeric lambda.
cplx eval_symbolic(const SymbolicPoly& g, double lambda, cplx u, double t);

}  // namespace qplink::exact

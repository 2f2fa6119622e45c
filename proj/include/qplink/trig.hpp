#pragma once

#include <array>
#include <functional>
#include <vector>

#include "qplink/braid.hpp"
#include "qplink/common.hpp"

namespace qplink {

/// Real trigonometric polynomial sum_{k=-d}^{d} c_k e^{ikt} stored through its
/// complex coefficients, with c_{-k} = conj(c_k).
class TrigPolynomial {
 public:
  TrigPolynomial() : coeffs_(1, cplx{0.0, 0.0}) {}
  /// `coeffs` holds c_{-d} .. c_{d}; its size must be odd.
  explicit TrigPolynomial(std::vector<cplx> coeffs);

  static TrigPolynomial constant(double c);
  /// Builds from the non-negative half c_0..c_d; negative indices are mirrored.
  static TrigPolynomial from_half(const std::vector<cplx>& nonneg);

  int degree() const { return static_cast<int>(coeffs_.size() / 2); }
  cplx coeff(int k) const;
  const std::vector<cplx>& coefficients() const { return coeffs_; }

  /// Complex value of the series; its imaginary part is rounding noise.
  cplx eval_complex(double t) const;
  double operator()(double t) const { return eval_complex(t).real(); }
  double derivative(double t) const;

  /// Largest |c_{-k} - conj(c_k)|.
  double symmetry_defect() const;
  /// Drops coefficients with |c_k| <= tol and trims the degree accordingly.
  void prune(double tol);

 private:
  std::vector<cplx> coeffs_;
};

/// F_C, G_C for one closure component. Strand j (0 <= j < s_C) is
///   (F((w t + 2 pi j) / s_C), G((w t + 2 pi j) / s_C)),  t in [0, 2 pi],
/// with w the time multiplier (1 for the standard template).
struct ComponentParametrization {
  int strand_count = 1;
  int time_multiplier = 1;
  std::vector<int> slots;  // slot (label at t = 0) of strand j
  TrigPolynomial x;
  TrigPolynomial y;

  std::array<double, 2> strand_point(int j, double t) const;
};

struct BraidParametrization {
  int strands = 1;
  std::vector<ComponentParametrization> components;

  /// Planar points of all strands at time t, indexed by slot.
  std::vector<std::array<double, 2>> points(double t) const;
  int total_strands() const;
};

/// Uniform samples of one component's full cycle, compressed to [0, 2 pi).
struct ComponentSamples {
  int strand_count = 1;
  std::vector<int> slots;
  std::vector<double> x;  // size 2K+1
  std::vector<double> y;
};

struct StrandSamples {
  int strands = 1;
  std::vector<ComponentSamples> components;
};

/// Piecewise model of the braid word: [0, 2 pi] is split into l windows; in
/// window k the two strands of letter k swap x-positions along a cosine
/// smoothstep and acquire y = +-sin bump (the strand moving right gets
/// +sign). Each component gets min(samples_per_letter * l * s_C, 2 T_C + 1)
/// samples (forced odd), T_C being the component's degree-bound term, so
/// that interpolated degrees never exceed the bound.
StrandSamples sample_strand_paths(const BraidWord& b, int samples_per_letter = 4);

/// Value of the piecewise model for the strand starting at `slot`.
std::array<double, 2> model_strand_point(const BraidWord& b, int slot, double t);

/// Degree-K trigonometric interpolation of every component by DFT.
BraidParametrization interpolate(const StrandSamples& samples);

/// Interpolant through equispaced samples on [0, 2 pi) (odd count).
TrigPolynomial interpolate_samples(const std::vector<double>& values);

/// The worked figure-eight example: strand j = 1..3 is
/// (cos((2t + 2 pi j)/3), sin(2 (2t + 2 pi j)/3)).
BraidParametrization figure_eight_parametrization();

/// Crossing readout of sampled strand tracks. `tracks[i][a]` is strand a at
/// grid time i (grid covering [0, 2 pi] inclusive), with the strand labels at
/// the last grid time possibly permuted relative to the first. Strands are
/// ordered by x; each adjacent exchange becomes a letter whose sign is the
/// sign of y(right-mover) - y(left-mover) at the exchange.
struct CrossingReadout {
  BraidWord word;
  double min_separation = 0.0;
  Permutation permutation;  // closure_permutation(word)
  int exponent_sum = 0;
  IntMatrix linking_matrix;
  int components = 0;
};

CrossingReadout read_crossings(const std::vector<std::vector<std::array<double, 2>>>& tracks);

struct ValidityReport {
  double min_separation = 0.0;
  bool valid = false;
  CrossingReadout readout;
};

inline constexpr double kMinSeparation = 1e-6;

/// Checks strand distinctness on a uniform t-grid and reads back the braid.
ValidityReport validate(const BraidParametrization& p, int grid_size);

/// Constructs the parametrization of a braid word (sample + interpolate).
BraidParametrization parametrize(const BraidWord& b, int samples_per_letter = 4);

}  // namespace qplink

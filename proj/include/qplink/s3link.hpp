#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qplink/braid.hpp"
#include "qplink/common.hpp"
#include "qplink/laurent.hpp"
#include "qplink/linking.hpp"

namespace qplink {

/// Root u_j(r) of f(., r e^{it}) followed from r = 1 down to r_min.
struct RadialBranch {
  double t = 0.0;
  int index = 0;
  std::vector<double> r;  // descending
  std::vector<cplx> u;
};

enum class Layer { L0, L1 };

struct SphereIntersection {
  double t = 0.0;
  double r = 0.0;
  cplx u;
  int branch = 0;
  Layer layer = Layer::L1;
  double sphere_residual = 0.0;  // ||u|^2 + r^2 - 1|
  double f_residual = 0.0;       // |f(u, v)| / sum |c| |u|^a |v|^b

  cplx v() const { return std::polar(r, t); }
};

struct S3LinkOptions {
  int t_count = 1024;
  double r_min = 1e-3;
  int r_count = 400;
  int max_refine = 10;  // bisection depth for t- and r-steps
};

/// Geometric grid from 1 down to r_min (inclusive), `count` points.
std::vector<double> radial_grid(double r_min, int count);

/// Tracks all s branches along r_grid (descending from 1), warm-starting at
/// r = 1 from `warm` when given. Steps whose matching is ambiguous or whose
/// displacement is not small against the root separation are subdivided.
std::vector<RadialBranch> track_branches(const BiPolyUV& f, double t, const std::vector<double>& r_grid,
                                         const std::vector<cplx>* warm = nullptr, int max_refine = 10);

/// Zeros of |u(r)|^2 + r^2 - 1 along a branch, refined with TOMS 748.
/// With exactly two crossings the larger r is tagged L1 and the smaller L0.
std::vector<SphereIntersection> sphere_intersections(const BiPolyUV& f, const RadialBranch& branch);

/// All sphere intersections at one phase.
struct PhaseSlice {
  double t = 0.0;
  std::vector<cplx> roots_r1;  // warm start for the neighbouring phase
  std::vector<SphereIntersection> l1, l0;  // one per branch when well formed
  std::vector<int> counts;                 // intersections per branch
  bool well_formed() const;
};

PhaseSlice scan_phase(const BiPolyUV& f, double t, const S3LinkOptions& opt, const std::vector<cplx>* warm);

struct LayerReadout {
  int components = 0;
  std::vector<int> component_strands;    // winding in t (number of points per phase)
  std::vector<int> component_u_windings; // winding of arg u
  int u_winding = 0;                     // sum of |component_u_windings|
  bool u_monotone = false;               // arg u strictly monotone along every component
  Permutation successor;                 // strand a continues as strand successor[a] after 2 pi
  Permutation permutation;               // closure permutation of the readout word (L1)
  BraidWord word;                        // crossing readout in the (Re u, Im u) plane
  int exponent_sum = 0;
  IntMatrix linking_matrix;              // from the crossing readout
  double r_min = 0.0, r_max = 0.0;
  std::vector<std::vector<SphereIntersection>> tracks;  // tracks[i][a]
};

struct LinkReadout {
  double lambda = 0.0;
  bool non_generic = false;
  LayerReadout l1, l0;
  int extra_components = 0;
  double layer_gap = 0.0;            // min r over L1 - max r over L0
  IntMatrix linking_matrix;          // all components of L1 then L0, Gauss integral in S^3
  double linking_defect = 0.0;
  int core_linking = 0;              // linking of {v = 0} with {u = 0}
  bool hopf_check = false;
  double max_sphere_residual = 0.0;
  double max_f_residual = 0.0;
  int t_refinements = 0;
  std::vector<double> t_grid;
};

/// Traces L1 and L0 over t in [0, 2 pi]. Throws Error("s3link") when a branch
/// does not meet the sphere exactly twice or continuation fails after
/// refinement.
LinkReadout trace_link(const BiPolyUV& f, const S3LinkOptions& opt = {});

/// Stereographic images of the components of a traced link (L1 then L0).
std::vector<Curve> link_curves(const LinkReadout& link, const Stereographic& proj);
std::vector<std::vector<S3Point>> link_points(const LinkReadout& link);

struct TuneAttempt {
  double lambda = 0.0;
  bool accepted = false;
  std::string problem;
  std::optional<LinkReadout> readout;
};

struct TuneResult {
  bool success = false;
  bool non_generic = false;
  double lambda = 0.0;
  std::vector<TuneAttempt> attempts;
  std::optional<LinkReadout> readout;
};

/// Checks one polynomial against the acceptance rules of the tuner.
TuneAttempt evaluate_lambda(const BiPolyUV& f, const WordInvariants& expected, int expected_strands,
                            const S3LinkOptions& opt);

/// Halves lambda from lambda0 until evaluate_lambda accepts or lambda < 1e-6.
TuneResult auto_tune_lambda(const std::function<BiPolyUV(double)>& builder, const BraidWord& braid,
                            double lambda0 = 0.5, const S3LinkOptions& opt = {});

}  // namespace qplink

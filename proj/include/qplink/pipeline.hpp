#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qplink/contact.hpp"
#include "qplink/fieldline.hpp"
#include "qplink/io.hpp"

namespace qplink {

struct PipelineConfig {
  std::string braid;                 // word text, e.g. "1 -2 1 -2"
  std::optional<int> strands;
  std::string parametrization;       // "" constructs one; "figure-eight" or a JSON path supplies it
  std::optional<double> lambda;      // unset: auto-tune from lambda0
  double lambda0 = 0.5;
  int samples_per_letter = 4;
  S3LinkOptions s3;
  NullLineOptions null_lines{14.0, 96, 0.05, 0.1, 400000};
  std::vector<double> times{-1.0, -0.5, 0.0, 0.5, 1.0};
  int em_points = 200;
  int contact_points = 500;
  double sample_box = 2.0;  // spatial half-width of random sample points
  double time_span = 1.0;   // random times in [-time_span, time_span]
  double fd_step = 1e-2;
  double nullness_tol = 1e-10;
  double orthogonality_tol = 1e-10;
  std::uint64_t seed = 1;
  std::string output_dir = ".";

  void validate() const;
};

PipelineConfig config_from_json(const Json& j, PipelineConfig base = {});
Json to_json(const PipelineConfig& c);

/// The one generator behind every random choice of a command.
using Rng = std::mt19937_64;

/// Random spacetime points in [-box, box]^3 x [-span, span].
std::vector<SpacetimePoint> sample_points(Rng& rng, int count, double box, double span);

struct Construction {
  BraidWord braid;
  BraidParametrization parametrization;
  BiPolyUV polynomial;
  Json report;
};

/// braid -> parametrization -> f~_lambda, with degrees against the bounds.
/// Uses cfg.lambda, or the auto-tuned value when unset. A supplied
/// parametrization must read back as the braid word (or defines it when the
/// word is empty).
Construction cmd_construct(const PipelineConfig& cfg);
Json cmd_bound(const BraidWord& b);

/// Builder of f~_lambda for a braid, shared by construct and the tuner.
BiPolyUV build_polynomial(const BraidWord& b, double lambda, int samples_per_letter = 4);

/// Link readout of f, or the tuner when `tune` is set and f carries its braid.
Json cmd_verify_link(const BiPolyUV& f, const PipelineConfig& cfg, bool tune, LinkReadout* out = nullptr);

/// CSV rows x,y,z,t,Ex,Ey,Ez,Bx,By,Bz at random points.
std::string cmd_em_sample(const BiPolyUV& h, const PipelineConfig& cfg);

/// Maxwell residual norms at step and step/2, their ratios, and nullness.
Json cmd_em_verify(const BiPolyUV& h, const PipelineConfig& cfg);

Json cmd_null_lines(const BiPolyUV& h, double t, const PipelineConfig& cfg, std::vector<Curve>* curves = nullptr);
Json cmd_stability(const BiPolyUV& h, const PipelineConfig& cfg);

struct FieldLineRequest {
  BiPolyUV h;
  FieldKind which = FieldKind::E;
  Vec3 start{};
  double t = 0.0;
  FieldLineOptions options;
};
Json cmd_field_line(const FieldLineRequest& req, FieldLine* out = nullptr);

/// Orthogonality of Re W, Im W and positivity of both alpha ^ d alpha forms.
/// `time` fixes t; otherwise times are drawn from [-time_span, time_span].
Json cmd_contact_check(const PipelineConfig& cfg, std::optional<double> time = std::nullopt);

/// Recovered h along a curve: summary JSON plus CSV rows s,re_h,im_h,defect.
Json cmd_h_trace(const BiPolyUV& h, const ParamCurve& curve, double t, std::string* csv = nullptr);

/// verify-link, em-verify, stability and contact-check on one polynomial.
/// Stage failures are recorded with their module tag instead of aborting.
Json cmd_report(const BiPolyUV& f, const PipelineConfig& cfg);
std::string report_summary(const Json& bundle);

}  // namespace qplink

#include "qplink/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "qplink/degree.hpp"

namespace qplink {

void PipelineConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw Error("config", std::string(name) + " must be positive");
  };
  if (lambda) positive(*lambda, "lambda");
  positive(lambda0, "lambda0");
  positive(s3.r_min, "r_min");
  positive(null_lines.box, "null_box");
  positive(null_lines.max_step, "null_max_step");
  positive(sample_box, "sample_box");
  positive(fd_step, "fd_step");
  positive(nullness_tol, "nullness_tol");
  positive(orthogonality_tol, "orthogonality_tol");
  if (time_span < 0.0) throw Error("config", "time_span must be non-negative");
  if (s3.t_count < 16 || s3.r_count < 16) throw Error("config", "t_count and r_count must be at least 16");
  if (null_lines.resolution < 8) throw Error("config", "null-line resolution must be at least 8");
  if (em_points < 1 || contact_points < 1) throw Error("config", "point counts must be positive");
}

PipelineConfig config_from_json(const Json& j, PipelineConfig c) {
  try {
    if (j.contains("braid")) c.braid = j["braid"].get<std::string>();
    if (j.contains("strands") && !j["strands"].is_null()) c.strands = j["strands"].get<int>();
    c.parametrization = j.value("parametrization", c.parametrization);
    if (j.contains("lambda") && !j["lambda"].is_null()) c.lambda = j["lambda"].get<double>();
    c.lambda0 = j.value("lambda0", c.lambda0);
    c.samples_per_letter = j.value("samples_per_letter", c.samples_per_letter);
    c.s3.t_count = j.value("t_count", c.s3.t_count);
    c.s3.r_min = j.value("r_min", c.s3.r_min);
    c.s3.r_count = j.value("r_count", c.s3.r_count);
    c.null_lines.box = j.value("null_box", c.null_lines.box);
    c.null_lines.resolution = j.value("null_resolution", c.null_lines.resolution);
    c.null_lines.max_step = j.value("null_max_step", c.null_lines.max_step);
    if (j.contains("times")) c.times = j["times"].get<std::vector<double>>();
    c.em_points = j.value("em_points", c.em_points);
    c.contact_points = j.value("contact_points", c.contact_points);
    c.sample_box = j.value("sample_box", c.sample_box);
    c.time_span = j.value("time_span", c.time_span);
    c.fd_step = j.value("fd_step", c.fd_step);
    c.nullness_tol = j.value("nullness_tol", c.nullness_tol);
    c.orthogonality_tol = j.value("orthogonality_tol", c.orthogonality_tol);
    c.seed = j.value("seed", c.seed);
    c.output_dir = j.value("output_dir", c.output_dir);
  } catch (const nlohmann::json::exception& e) {
    throw Error("config", e.what());
  }
  return c;
}

Json to_json(const PipelineConfig& c) {
  Json j;
  j["braid"] = c.braid;
  j["strands"] = c.strands ? Json(*c.strands) : Json(nullptr);
  j["parametrization"] = c.parametrization;
  j["lambda"] = c.lambda ? Json(*c.lambda) : Json(nullptr);
  j["lambda0"] = c.lambda0;
  j["samples_per_letter"] = c.samples_per_letter;
  j["t_count"] = c.s3.t_count;
  j["r_min"] = c.s3.r_min;
  j["r_count"] = c.s3.r_count;
  j["null_box"] = c.null_lines.box;
  j["null_resolution"] = c.null_lines.resolution;
  j["null_max_step"] = c.null_lines.max_step;
  j["times"] = c.times;
  j["em_points"] = c.em_points;
  j["contact_points"] = c.contact_points;
  j["sample_box"] = c.sample_box;
  j["time_span"] = c.time_span;
  j["fd_step"] = c.fd_step;
  j["nullness_tol"] = c.nullness_tol;
  j["orthogonality_tol"] = c.orthogonality_tol;
  j["seed"] = c.seed;
  return j;
}

std::vector<SpacetimePoint> sample_points(Rng& rng, int count, double box, double span) {
  std::uniform_real_distribution<double> space(-box, box), time(-span, span);
  std::vector<SpacetimePoint> pts(count);
  for (auto& p : pts) {
    p.x = space(rng);
    p.y = space(rng);
    p.z = space(rng);
    p.t = span > 0.0 ? time(rng) : 0.0;
  }
  return pts;
}

BiPolyUV build_polynomial(const BraidWord& b, double lambda, int samples_per_letter) {
  auto f = to_holomorphic(expand_product(parametrize(b, samples_per_letter), lambda));
  f.braid = b;
  return f;
}

Json cmd_bound(const BraidWord& b) {
  Json j = to_json(degree_bounds(b));
  j["braid"] = to_json(b);
  if (components(b).size() == 1) j["knot_bound"] = knot_degree_bound(b.strands, b.length());
  return j;
}

Construction cmd_construct(const PipelineConfig& cfg) {
  cfg.validate();
  Construction c;
  const bool supplied = !cfg.parametrization.empty();
  if (supplied) {
    c.parametrization = cfg.parametrization == "figure-eight"
                            ? figure_eight_parametrization()
                            : parametrization_from_json(read_json_file(cfg.parametrization));
  }
  const std::string text = (cfg.braid.empty() && cfg.parametrization == "figure-eight") ? "1 -2 1 -2" : cfg.braid;
  if (!text.empty() || !supplied) c.braid = parse_braid(text, cfg.strands);
  if (!supplied) c.parametrization = parametrize(c.braid, cfg.samples_per_letter);

  const int grid = std::max(256, 64 * std::max(1, static_cast<int>(c.braid.length())) * 8);
  auto validity = validate(c.parametrization, grid);
  if (supplied && text.empty()) {
    c.braid = validity.readout.word;
    validity = validate(c.parametrization, std::max(grid, 64 * static_cast<int>(c.braid.length()) * 8));
  }
  if (!validity.valid) throw Error("trig", "parametrization has coincident strands");
  if (validity.readout.permutation != closure_permutation(c.braid) ||
      validity.readout.exponent_sum != word_invariants(c.braid).exponent_sum)
    throw Error("trig", "parametrization reads back as " + to_string(validity.readout.word) + ", not " +
                            to_string(c.braid));

  Json tune_json;
  double lambda = cfg.lambda.value_or(0.0);
  if (!cfg.lambda) {
    const auto builder = [&](double l) {
      auto f = to_holomorphic(expand_product(c.parametrization, l));
      f.braid = c.braid;
      return f;
    };
    const auto tuned = auto_tune_lambda(builder, c.braid, cfg.lambda0, cfg.s3);
    tune_json = to_json(tuned);
    if (tuned.success) {
      lambda = tuned.lambda;
    } else if (tuned.non_generic) {
      lambda = cfg.lambda0;
    } else {
      throw Error("s3link", "no lambda accepted by the tuner down to " + std::to_string(tuned.lambda));
    }
  }
  c.polynomial = to_holomorphic(expand_product(c.parametrization, lambda));
  c.polynomial.braid = c.braid;

  const auto& f = c.polynomial;
  Json r;
  r["braid"] = to_json(c.braid);
  r["parametrization"] = supplied ? cfg.parametrization : "constructed";
  r["lambda"] = lambda;
  r["non_generic"] = f.non_generic;
  if (f.non_generic) r["notice"] = "phase-free polynomial: the link construction is non-generic for this braid";
  r["parametrization_valid"] = validity.valid;
  r["min_separation"] = validity.min_separation;
  r["readout_word"] = to_string(validity.readout.word);
  r["deg_u"] = f.degree_u();
  r["deg_v"] = f.degree_v();
  r["total_degree"] = f.total_degree();
  r["shift"] = f.shift;
  if (c.braid.length() > 0) {
    const auto bounds = degree_bounds(c.braid);
    r["bounds"] = to_json(bounds);
    r["within_bounds"] = f.degree_u() == bounds.deg_u && f.degree_v() <= bounds.deg_v_bound &&
                         f.total_degree() <= bounds.total_degree_bound;
  } else {
    r["bounds"] = nullptr;
    r["within_bounds"] = f.degree_u() == c.braid.strands;
  }
  if (!tune_json.is_null()) r["tune"] = tune_json;
  c.report = r;
  return c;
}

Json cmd_verify_link(const BiPolyUV& f, const PipelineConfig& cfg, bool tune, LinkReadout* out) {
  if (tune) {
    if (!f.braid) throw Error("s3link", "--tune needs a polynomial that records its braid");
    const BraidWord b = *f.braid;
    const int spl = cfg.samples_per_letter;
    const double l0 = f.lambda > 0.0 ? f.lambda : cfg.lambda0;
    const auto r = auto_tune_lambda([&](double l) { return build_polynomial(b, l, spl); }, b, l0, cfg.s3);
    if (out && r.readout) *out = *r.readout;
    Json j = to_json(r);
    if (r.readout) {
      Json flat = to_json(*r.readout);
      for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "readout") flat["tune_" + it.key()] = it.value();
      return flat;
    }
    return j;
  }
  const auto link = trace_link(f, cfg.s3);
  if (out) *out = link;
  Json j = to_json(link);
  if (f.braid) {
    const auto inv = word_invariants(*f.braid);
    j["L1_matches_word"] = link.l1.permutation == closure_permutation(*f.braid) &&
                           link.l1.exponent_sum == inv.exponent_sum && link.l1.linking_matrix == inv.linking_matrix;
    j["extra_components_within_s"] = link.extra_components <= f.braid->strands;
  }
  return j;
}

std::string cmd_em_sample(const BiPolyUV& h, const PipelineConfig& cfg) {
  Rng rng(cfg.seed);
  std::ostringstream os;
  os.precision(17);
  os << "x,y,z,t,Ex,Ey,Ez,Bx,By,Bz\n";
  for (const auto& p : sample_points(rng, cfg.em_points, cfg.sample_box, cfg.time_span)) {
    const auto f = bateman_field(h, p);
    os << p.x << ',' << p.y << ',' << p.z << ',' << p.t;
    for (double c : f.E) os << ',' << c;
    for (double c : f.B) os << ',' << c;
    os << "\n";
  }
  return os.str();
}

Json cmd_em_verify(const BiPolyUV& h, const PipelineConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const auto pts = sample_points(rng, cfg.em_points, cfg.sample_box, cfg.time_span);
  const double h1 = cfg.fd_step, h2 = cfg.fd_step / 2;
  std::array<double, 4> s1{}, s2{};
  double worst_null = 0.0, max_gap = 0.0;
  for (const auto& p : pts) {
    const auto a = maxwell_residual(h, p, h1), b = maxwell_residual(h, p, h2);
    const std::array<double, 4> ra{a.div_b, a.div_e, a.faraday, a.ampere}, rb{b.div_b, b.div_e, b.faraday, b.ampere};
    for (int k = 0; k < 4; ++k) {
      s1[k] += ra[k] * ra[k];
      s2[k] += rb[k] * rb[k];
    }
    const auto n = nullness(h, p);
    const double scale = n.e_norm * n.b_norm;
    if (scale > 0.0) worst_null = std::max(worst_null, std::abs(n.e_dot_b) / scale);
    if (n.e_norm > 0.0) max_gap = std::max(max_gap, std::abs(n.norm_gap) / (n.e_norm * n.e_norm));
  }
  const char* names[4] = {"div_b", "div_e", "faraday", "ampere"};
  Json res;
  bool second_order = true;
  for (int k = 0; k < 4; ++k) {
    const double n1 = std::sqrt(s1[k] / pts.size()), n2 = std::sqrt(s2[k] / pts.size());
    const double ratio = n2 > 0.0 ? n1 / n2 : 0.0;
    second_order = second_order && ratio >= 3.0 && ratio <= 5.0;
    res[names[k]] = {{"rms_step", n1}, {"rms_half_step", n2}, {"ratio", ratio}};
  }
  return {{"points", pts.size()},
          {"seed", cfg.seed},
          {"step", h1},
          {"residuals", res},
          {"second_order", second_order},
          {"max_e_dot_b_relative", worst_null},
          {"null", worst_null <= cfg.nullness_tol},
          {"max_norm_gap_relative", max_gap}};
}

Json cmd_null_lines(const BiPolyUV& h, double t, const PipelineConfig& cfg, std::vector<Curve>* curves) {
  const auto set = trace_null_lines(h, t, cfg.null_lines);
  const auto cs = as_curves(set);
  Json j = to_json(set);
  for (std::size_t i = 0; i < set.lines.size(); ++i) {
    double rho_lo = 1e300, rho_hi = 0.0, zmax = 0.0;
    for (const auto& p : set.lines[i].points) {
      const double rho = std::hypot(p[0], p[1]);
      rho_lo = std::min(rho_lo, rho);
      rho_hi = std::max(rho_hi, rho);
      zmax = std::max(zmax, std::abs(p[2]));
    }
    j["lines"][i]["rho_range"] = {rho_lo, rho_hi};
    j["lines"][i]["max_abs_z"] = zmax;
  }
  if (cs.size() >= 2) {
    const auto lk = linking_matrix(cs);
    Json m = Json::array();
    for (const auto& row : lk.rounded) m.push_back(row);
    j["linking_matrix"] = m;
    j["linking_defect"] = lk.max_defect;
  }
  if (curves) *curves = cs;
  return j;
}

Json cmd_stability(const BiPolyUV& h, const PipelineConfig& cfg) {
  return to_json(stability_over_time(h, cfg.times, cfg.null_lines));
}

Json cmd_field_line(const FieldLineRequest& req, FieldLine* out) {
  auto line = integrate_field_line(req.h, req.which, req.start, req.t, req.options);
  Json j;
  j["field"] = req.which == FieldKind::E ? "E" : "B";
  j["t"] = req.t;
  j["start"] = req.start;
  j["points"] = line.points.size();
  j["length"] = line.arclength.back();
  j["closed"] = line.closed;
  j["closure_gap"] = line.closure_gap;
  if (line.points.size() >= 3) j["legendrian_residual"] = legendrian_residual(line.points, req.t, line.closed);
  if (line.closed) {
    const auto w = projection_windings(line.points, req.t);
    j["arg_u_winding"] = w.arg_u;
    j["arg_v_winding"] = w.arg_v;
  }
  if (out) *out = std::move(line);
  return j;
}

Json cmd_contact_check(const PipelineConfig& cfg, std::optional<double> time) {
  cfg.validate();
  Rng rng(cfg.seed);
  auto pts = sample_points(rng, cfg.contact_points, cfg.sample_box, cfg.time_span);
  if (time)
    for (auto& p : pts) p.t = *time;
  double ortho = 0.0, paper_min = 1e300, numeric_min = 1e300;
  double ratio_min = 1e300, ratio_max = -1e300, ratio_sum = 0.0;
  for (const auto& p : pts) {
    const auto f = plane_field(p);
    ortho = std::max(ortho, std::abs(dot(f.re_w, f.im_w)) / (norm(f.re_w) * norm(f.im_w)));
    const auto v = contact_volume(p, 1e-4);
    paper_min = std::min(paper_min, v.paper_formula);
    numeric_min = std::min(numeric_min, v.numeric);
    const double r = v.numeric / v.paper_formula;
    ratio_min = std::min(ratio_min, r);
    ratio_max = std::max(ratio_max, r);
    ratio_sum += r;
  }
  return {{"points", pts.size()},
          {"seed", cfg.seed},
          {"orthogonality_max", ortho},
          {"orthogonal", ortho <= cfg.orthogonality_tol},
          {"paper_formula_min", paper_min},
          {"numeric_min", numeric_min},
          {"contact", paper_min > 0.0 && numeric_min > 0.0},
          {"ratio_stats", {{"min", ratio_min}, {"max", ratio_max}, {"mean", ratio_sum / pts.size()}}}};
}

Json cmd_h_trace(const BiPolyUV& h, const ParamCurve& curve, double t, std::string* csv) {
  const auto tr = h_trace(curve.points, curve.param, t, false);
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.h.size(); ++i) {
    const auto j = projection_jet(SpacetimePoint::at(curve.points[i], t));
    const cplx want = h.eval(j.u, j.v);
    if (std::abs(want) > 0.0) worst = std::max(worst, std::abs(tr.h[i] - want) / std::abs(want));
  }
  if (csv) {
    std::ostringstream os;
    os.precision(17);
    os << "s,re_h,im_h,defect\n";
    for (std::size_t i = 0; i < tr.h.size(); ++i)
      os << tr.s[i] << ',' << tr.h[i].real() << ',' << tr.h[i].imag() << ',' << tr.defect[i] << "\n";
    *csv = os.str();
  }
  return {{"points", tr.h.size()}, {"max_defect", tr.max_defect}, {"max_relative_error_vs_h", worst}};
}

namespace {

template <class F>
Json stage(F&& f) {
  try {
    Json j = f();
    return {{"ok", true}, {"result", j}};
  } catch (const Error& e) {
    return {{"ok", false}, {"module", e.module()}, {"error", e.what()}};
  }
}

}  // namespace

Json cmd_report(const BiPolyUV& f, const PipelineConfig& cfg) {
  cfg.validate();
  Json b;
  b["config"] = to_json(cfg);
  b["polynomial"] = {{"deg_u", f.degree_u()}, {"deg_v", f.degree_v()}, {"total_degree", f.total_degree()},
                     {"lambda", f.lambda}, {"non_generic", f.non_generic}};
  if (f.braid) b["polynomial"]["braid"] = to_json(*f.braid);
  if (f.degree_u() >= 2 && !f.non_generic)
    b["verify_link"] = stage([&] { return cmd_verify_link(f, cfg, false); });
  else
    b["verify_link"] = {{"ok", true}, {"skipped", "non-generic polynomial"}};
  b["em_verify"] = stage([&] { return cmd_em_verify(f, cfg); });
  b["stability"] = stage([&] { return cmd_stability(f, cfg); });
  b["contact_check"] = stage([&] { return cmd_contact_check(cfg); });

  bool pass = true;
  for (const char* k : {"verify_link", "em_verify", "stability", "contact_check"}) pass = pass && b[k]["ok"].get<bool>();
  if (pass && b["verify_link"].contains("result")) pass = b["verify_link"]["result"]["hopf_check"].get<bool>();
  if (pass) pass = b["em_verify"]["result"]["second_order"].get<bool>() && b["em_verify"]["result"]["null"].get<bool>();
  if (pass) pass = b["stability"]["result"]["stable"].get<bool>();
  if (pass) pass = b["contact_check"]["result"]["orthogonal"].get<bool>() &&
                   b["contact_check"]["result"]["contact"].get<bool>();
  b["all_pass"] = pass;
  return b;
}

std::string report_summary(const Json& b) {
  std::ostringstream os;
  os.precision(6);
  auto status = [&](const char* k) -> std::string {
    const auto& s = b[k];
    if (!s["ok"].get<bool>()) return "FAILED [" + s["module"].get<std::string>() + "] " + s["error"].get<std::string>();
    if (s.contains("skipped")) return "skipped (" + s["skipped"].get<std::string>() + ")";
    return "ok";
  };
  const auto& p = b["polynomial"];
  os << "polynomial: deg_u " << p["deg_u"] << ", deg_v " << p["deg_v"] << ", total " << p["total_degree"]
     << ", lambda " << p["lambda"].get<double>() << "\n";
  os << "verify-link: " << status("verify_link") << "\n";
  if (b["verify_link"].contains("result")) {
    const auto& r = b["verify_link"]["result"];
    os << "  L1 components " << r["L1"]["components"] << ", word " << r["L1"]["word"].get<std::string>()
       << ", L0 components " << r["L0"]["components"] << ", layer gap " << r["layer_gap"].get<double>()
       << ", hopf_check " << r["hopf_check"] << "\n";
  }
  os << "em-verify: " << status("em_verify") << "\n";
  if (b["em_verify"]["ok"].get<bool>()) {
    const auto& r = b["em_verify"]["result"];
    os << "  ratios";
    for (const char* k : {"div_b", "div_e", "faraday", "ampere"})
      os << ' ' << k << ' ' << r["residuals"][k]["ratio"].get<double>();
    os << ", max |E.B|/(|E||B|) " << r["max_e_dot_b_relative"].get<double>() << "\n";
  }
  os << "stability: " << status("stability") << "\n";
  if (b["stability"]["ok"].get<bool>()) {
    const auto& r = b["stability"]["result"];
    os << "  components " << r["component_counts"].dump() << ", stable " << r["stable"] << "\n";
  }
  os << "contact-check: " << status("contact_check") << "\n";
  if (b["contact_check"]["ok"].get<bool>()) {
    const auto& r = b["contact_check"]["result"];
    os << "  orthogonality " << r["orthogonality_max"].get<double>() << ", min formula "
       << r["paper_formula_min"].get<double>() << ", min numeric " << r["numeric_min"].get<double>() << "\n";
  }
  os << "all checks: " << (b["all_pass"].get<bool>() ? "pass" : "fail") << "\n";
  return os.str();
}

}  // namespace qplink

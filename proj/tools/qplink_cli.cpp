#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qplink/pipeline.hpp"

using namespace qplink;

namespace {

struct Common {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
};

struct PolySource {
  std::string path;
  std::string builtin;
  std::optional<double> lambda;
};

void add_poly_options(CLI::App* app, PolySource& src) {
  app->add_option("--poly", src.path, "Polynomial JSON file");
  app->add_option("--builtin", src.builtin, "Named polynomial: one, u, uv, figure-eight, torus:P,Q");
}

BiPolyUV load_poly(const PolySource& src) {
  if (!src.path.empty() && !src.builtin.empty()) throw Error("cli", "give either --poly or --builtin");
  if (!src.path.empty()) return poly_from_json(read_json_file(src.path));
  const std::string& b = src.builtin;
  if (b == "one") return BiPolyUV::constant(1.0);
  if (b == "u") return BiPolyUV::monomial(1, 0);
  if (b == "uv") return BiPolyUV::monomial(1, 1);
  if (b == "figure-eight") {
    auto f = to_holomorphic(expand_product(figure_eight_parametrization(), src.lambda.value_or(1.0 / 3.0)));
    f.braid = parse_braid("1 -2 1 -2");
    return f;
  }
  if (b.rfind("torus:", 0) == 0) {
    int p = 0, q = 0;
    char comma = 0;
    std::istringstream ss(b.substr(6));
    if (!(ss >> p >> comma >> q) || comma != ',') throw Error("cli", "torus builtin expects torus:P,Q");
    return torus_pair_h(p, q);
  }
  if (b.empty()) throw Error("cli", "a polynomial is required (--poly or --builtin)");
  throw Error("cli", "unknown builtin polynomial '" + b + "'");
}

PipelineConfig load_config(const Common& c) {
  PipelineConfig cfg;
  if (!c.config_path.empty()) cfg = config_from_json(read_json_file(c.config_path));
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty())
    std::cout << text;
  else
    write_file(c.out, text);
}

Vec3 parse_point(const std::string& s) {
  Vec3 p{};
  char c1 = 0, c2 = 0;
  std::istringstream ss(s);
  if (!(ss >> p[0] >> c1 >> p[1] >> c2 >> p[2]) || c1 != ',' || c2 != ',')
    throw Error("cli", "expected a point as x,y,z, got '" + s + "'");
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Braid closures as zero sets of holomorphic polynomials and null lines of Bateman fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--config", common.config_path, "Pipeline configuration JSON");
  app.add_option("--seed", common.seed, "Seed of the random generator");
  app.add_option("-o,--out", common.out, "Output file (default stdout)");

  // construct
  std::string braid_text, poly_out, param_out;
  std::optional<int> strands;
  std::optional<double> lambda;
  auto* construct = app.add_subcommand("construct", "Build the polynomial of a braid word");
  construct->add_option("--braid", braid_text, "Braid word, e.g. \"1 -2 1 -2\"");
  construct->add_option("--strands", strands, "Strand count (default: largest generator + 1)");
  construct->add_option("--lambda", lambda, "Scale (default: auto-tune)");
  std::string param_in;
  construct->add_option("--param", param_in, "Parametrization JSON, or \"figure-eight\" for the worked example");
  construct->add_option("--poly-out", poly_out, "Write the polynomial JSON here");
  construct->add_option("--param-out", param_out, "Write the parametrization JSON here");

  auto* bound = app.add_subcommand("bound", "Degree bounds of a braid word");
  bound->add_option("--braid", braid_text)->required();
  bound->add_option("--strands", strands);

  // verify-link
  PolySource poly;
  bool tune = false;
  std::optional<int> t_count;
  std::optional<double> r_min;
  std::string csv_out, obj_out;
  auto* verify = app.add_subcommand("verify-link", "Extract the zero set on the 3-sphere and read the link");
  add_poly_options(verify, poly);
  verify->add_flag("--tune", tune, "Auto-tune lambda (needs the braid in the polynomial file)");
  verify->add_option("--t-count", t_count);
  verify->add_option("--r-min", r_min);
  verify->add_option("--csv", csv_out, "Sphere intersections as t,r,re_u,im_u,layer,strand");
  verify->add_option("--obj", obj_out, "Stereographic polylines of the link components");

  std::optional<int> points;
  std::optional<double> step;
  auto* em_sample = app.add_subcommand("em-sample", "Sample E and B at random spacetime points (CSV)");
  add_poly_options(em_sample, poly);
  em_sample->add_option("--points", points);

  auto* em_verify = app.add_subcommand("em-verify", "Maxwell residual convergence and nullness");
  add_poly_options(em_verify, poly);
  em_verify->add_option("--points", points);
  em_verify->add_option("--step", step, "Finite-difference step (halved for the ratio)");

  double time = 0.0;
  std::optional<double> box;
  std::optional<int> res;
  auto* nulls = app.add_subcommand("null-lines", "Trace the null lines of F = h grad u x grad v");
  add_poly_options(nulls, poly);
  nulls->add_option("--time", time);
  nulls->add_option("--box", box, "Half-width of the search box");
  nulls->add_option("--res", res, "Grid nodes per axis");
  nulls->add_option("--obj", obj_out);
  nulls->add_option("--csv", csv_out, "x,y,z,component");

  auto* stability = app.add_subcommand("stability", "Null-line components and linking across times");
  add_poly_options(stability, poly);
  stability->add_option("--box", box);
  stability->add_option("--res", res);

  std::string pq, seed_point, field = "E";
  FieldLineOptions fl_opt;
  auto* fline = app.add_subcommand("field-line", "Integrate an E or B field line");
  add_poly_options(fline, poly);
  fline->add_option("--pq", pq, "Bateman pair u^p, v^q as p,q");
  fline->add_option("--seed-point", seed_point, "x,y,z")->required();
  fline->add_option("--field", field)->check(CLI::IsMember({"E", "B"}));
  fline->add_option("--time", time);
  fline->add_option("--length", fl_opt.max_length);
  fline->add_option("--max-step", fl_opt.max_step);
  fline->add_option("--obj", obj_out);
  fline->add_option("--csv", csv_out, "x,y,z,s with s the field time");

  std::optional<double> contact_time;
  auto* contact = app.add_subcommand("contact-check", "Contact structure checks at random points");
  contact->add_option("--time", contact_time, "Fixed time (default: random in the configured span)");
  contact->add_option("--points", points);

  std::string curve_path;
  auto* htrace = app.add_subcommand("h-trace", "Recover h along a curve (CSV x,y,z[,s])");
  add_poly_options(htrace, poly);
  htrace->add_option("--curve", curve_path)->required();
  htrace->add_option("--time", time);

  bool summary = false;
  auto* report = app.add_subcommand("report", "Full verification bundle");
  add_poly_options(report, poly);
  report->add_option("--braid", braid_text, "Construct from a braid word instead of a polynomial");
  report->add_option("--lambda", lambda);
  report->add_flag("--summary", summary, "Print the human-readable summary instead of JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    PipelineConfig cfg = load_config(common);
    poly.lambda = lambda;
    if (t_count) cfg.s3.t_count = *t_count;
    if (r_min) cfg.s3.r_min = *r_min;
    if (points) cfg.em_points = cfg.contact_points = *points;
    if (step) cfg.fd_step = *step;
    if (box) cfg.null_lines.box = *box;
    if (res) cfg.null_lines.resolution = *res;

    if (*construct || *bound) {
      if (!braid_text.empty()) cfg.braid = braid_text;
      if (strands) cfg.strands = strands;
    }
    if (*construct) {
      if (lambda) cfg.lambda = lambda;
      if (!param_in.empty()) cfg.parametrization = param_in;
      auto c = cmd_construct(cfg);
      if (!poly_out.empty()) write_json_file(poly_out, to_json(c.polynomial));
      if (!param_out.empty()) write_json_file(param_out, to_json(c.parametrization));
      emit(common, dump(c.report));
    } else if (*bound) {
      emit(common, dump(cmd_bound(parse_braid(cfg.braid, cfg.strands))));
    } else if (*verify) {
      const auto f = load_poly(poly);
      LinkReadout link;
      const auto j = cmd_verify_link(f, cfg, tune, &link);
      if (!csv_out.empty()) {
        std::ostringstream os;
        write_link_csv(os, link);
        write_file(csv_out, os.str());
      }
      if (!obj_out.empty()) {
        std::ostringstream os;
        write_obj(os, link_curves(link, Stereographic(choose_pole(link_points(link)))));
        write_file(obj_out, os.str());
      }
      emit(common, dump(j));
    } else if (*em_sample) {
      emit(common, cmd_em_sample(load_poly(poly), cfg));
    } else if (*em_verify) {
      emit(common, dump(cmd_em_verify(load_poly(poly), cfg)));
    } else if (*nulls) {
      std::vector<Curve> curves;
      const auto j = cmd_null_lines(load_poly(poly), time, cfg, &curves);
      if (!obj_out.empty()) {
        std::ostringstream os;
        write_obj(os, curves);
        write_file(obj_out, os.str());
      }
      if (!csv_out.empty()) {
        std::ostringstream os;
        write_curve_csv(os, curves);
        write_file(csv_out, os.str());
      }
      emit(common, dump(j));
    } else if (*stability) {
      emit(common, dump(cmd_stability(load_poly(poly), cfg)));
    } else if (*fline) {
      FieldLineRequest req;
      if (!pq.empty()) {
        if (!poly.path.empty() || !poly.builtin.empty()) throw Error("cli", "give either --pq or a polynomial");
        poly.builtin = "torus:" + pq;
      }
      req.h = load_poly(poly);
      req.which = field == "B" ? FieldKind::B : FieldKind::E;
      req.start = parse_point(seed_point);
      req.t = time;
      req.options = fl_opt;
      FieldLine line;
      const auto j = cmd_field_line(req, &line);
      if (!obj_out.empty()) {
        std::ostringstream os;
        write_obj(os, {Curve{line.points, line.closed}});
        write_file(obj_out, os.str());
      }
      if (!csv_out.empty()) {
        std::ostringstream os;
        os.precision(17);
        os << "x,y,z,s\n";
        for (std::size_t i = 0; i < line.points.size(); ++i)
          os << line.points[i][0] << ',' << line.points[i][1] << ',' << line.points[i][2] << ','
             << line.field_time[i] << "\n";
        write_file(csv_out, os.str());
      }
      emit(common, dump(j));
    } else if (*contact) {
      emit(common, dump(cmd_contact_check(cfg, contact_time)));
    } else if (*htrace) {
      std::ifstream is(curve_path);
      if (!is) throw Error("io", "cannot read " + curve_path);
      std::string csv;
      const auto j = cmd_h_trace(load_poly(poly), read_param_curve_csv(is), time, &csv);
      std::cerr << j.dump() << "\n";
      emit(common, csv);
    } else if (*report) {
      BiPolyUV f;
      if (!braid_text.empty()) {
        cfg.braid = braid_text;
        if (lambda) cfg.lambda = lambda;
        f = cmd_construct(cfg).polynomial;
      } else {
        f = load_poly(poly);
      }
      const auto b = cmd_report(f, cfg);
      emit(common, summary ? report_summary(b) : dump(b));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

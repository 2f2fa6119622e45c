#include "qplink/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace qplink {

namespace {

Json int_matrix(const IntMatrix& m) {
  Json j = Json::array();
  for (const auto& row : m) j.push_back(row);
  return j;
}

Json trig_coeffs(const TrigPolynomial& p) {
  Json j = Json::array();
  for (int k = -p.degree(); k <= p.degree(); ++k) {
    const cplx c = p.coeff(k);
    j.push_back({k, c.real(), c.imag()});
  }
  return j;
}

TrigPolynomial trig_from_json(const Json& j) {
  int d = 0;
  for (const auto& e : j) d = std::max(d, std::abs(e.at(0).get<int>()));
  std::vector<cplx> c(2 * d + 1);
  for (const auto& e : j) c[e.at(0).get<int>() + d] = {e.at(1).get<double>(), e.at(2).get<double>()};
  return TrigPolynomial(c);
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error("io", std::string("malformed ") + what + " JSON: " + e.what());
  }
}

std::ostream& precise(std::ostream& os) { return os << std::setprecision(17); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() && s.find_first_not_of(" \r\t", used) != std::string::npos) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error("io", "bad number '" + s + "' on line " + std::to_string(line));
  }
}

}  // namespace

Json to_json(const BraidWord& b) { return {{"strands", b.strands}, {"word", to_string(b)}}; }

BraidWord braid_from_json(const Json& j) {
  return guarded("braid", [&] { return parse_braid(j.at("word").get<std::string>(), j.at("strands").get<int>()); });
}

Json to_json(const BraidParametrization& p) {
  Json comps = Json::array();
  for (const auto& c : p.components)
    comps.push_back({{"strand_count", c.strand_count},
                     {"time_multiplier", c.time_multiplier},
                     {"slots", c.slots},
                     {"F", trig_coeffs(c.x)},
                     {"G", trig_coeffs(c.y)}});
  return {{"strands", p.strands}, {"components", comps}};
}

BraidParametrization parametrization_from_json(const Json& j) {
  return guarded("parametrization", [&] {
    BraidParametrization p;
    p.strands = j.at("strands").get<int>();
    for (const auto& e : j.at("components")) {
      ComponentParametrization c;
      c.strand_count = e.at("strand_count").get<int>();
      c.time_multiplier = e.value("time_multiplier", 1);
      c.slots = e.at("slots").get<std::vector<int>>();
      c.x = trig_from_json(e.at("F"));
      c.y = trig_from_json(e.at("G"));
      p.components.push_back(std::move(c));
    }
    return p;
  });
}

Json to_json(const BiPolyUV& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) terms.push_back({{"du", t.du}, {"dv", t.dv}, {"re", t.c.real()}, {"im", t.c.imag()}});
  Json j = {{"terms", terms}, {"lambda", f.lambda}, {"shift", f.shift}, {"non_generic", f.non_generic}};
  if (f.braid) j["braid"] = to_json(*f.braid);
  return j;
}

BiPolyUV poly_from_json(const Json& j) {
  return guarded("polynomial", [&] {
    std::vector<BiPolyUV::Term> terms;
    for (const auto& t : j.at("terms")) {
      const int du = t.at("du").get<int>(), dv = t.at("dv").get<int>();
      if (du < 0 || dv < 0) throw Error("io", "negative exponent in polynomial JSON");
      terms.push_back({du, dv, {t.at("re").get<double>(), t.value("im", 0.0)}});
    }
    BiPolyUV f(terms);
    f.lambda = j.value("lambda", 0.0);
    f.shift = j.value("shift", 0);
    f.non_generic = j.value("non_generic", false);
    if (j.contains("braid")) f.braid = braid_from_json(j.at("braid"));
    return f;
  });
}

Json to_json(const DegreeBoundReport& r) {
  return {{"deg_u", r.deg_u},
          {"deg_v_bound", r.deg_v_bound},
          {"total_degree_bound", r.total_degree_bound},
          {"component_terms", r.component_terms},
          {"component_strands", r.component_strands}};
}

Json to_json(const ValidityReport& r) {
  return {{"valid", r.valid},
          {"min_separation", r.min_separation},
          {"word", to_string(r.readout.word)},
          {"permutation", r.readout.permutation},
          {"exponent_sum", r.readout.exponent_sum},
          {"linking_matrix", int_matrix(r.readout.linking_matrix)},
          {"components", r.readout.components}};
}

Json to_json(const LayerReadout& r) {
  return {{"components", r.components},
          {"component_strands", r.component_strands},
          {"component_u_windings", r.component_u_windings},
          {"u_winding", r.u_winding},
          {"u_monotone", r.u_monotone},
          {"permutation", r.permutation},
          {"word", to_string(r.word)},
          {"exponent_sum", r.exponent_sum},
          {"linking_matrix", int_matrix(r.linking_matrix)},
          {"r_range", {r.r_min, r.r_max}}};
}

Json to_json(const LinkReadout& r) {
  return {{"lambda", r.lambda},
          {"non_generic", r.non_generic},
          {"L1", to_json(r.l1)},
          {"L0", to_json(r.l0)},
          {"extra_components", r.extra_components},
          {"layer_gap", r.layer_gap},
          {"s3_linking_matrix", int_matrix(r.linking_matrix)},
          {"linking_defect", r.linking_defect},
          {"core_linking", r.core_linking},
          {"hopf_check", r.hopf_check},
          {"max_sphere_residual", r.max_sphere_residual},
          {"max_f_residual", r.max_f_residual},
          {"t_points", r.t_grid.size()},
          {"t_refinements", r.t_refinements}};
}

Json to_json(const TuneResult& r) {
  Json attempts = Json::array();
  for (const auto& a : r.attempts)
    attempts.push_back({{"lambda", a.lambda}, {"accepted", a.accepted}, {"problem", a.problem}});
  Json j = {{"success", r.success}, {"non_generic", r.non_generic}, {"lambda", r.lambda}, {"attempts", attempts}};
  if (r.readout) j["readout"] = to_json(*r.readout);
  return j;
}

Json to_json(const NullLineSet& s) {
  Json lines = Json::array();
  for (const auto& l : s.lines)
    lines.push_back({{"points", l.points.size()}, {"closed", l.closed}, {"truncated", l.truncated}, {"length", l.length()}});
  return {{"t", s.t}, {"components", s.lines.size()}, {"lines", lines},
          {"seeds", s.seeds}, {"discarded", s.discarded}, {"max_residual", s.max_residual}};
}

Json to_json(const StabilityReport& r) {
  Json mats = Json::array();
  for (const auto& m : r.linking) mats.push_back(int_matrix(m));
  return {{"times", r.times},
          {"component_counts", r.component_counts},
          {"linking", mats},
          {"linking_defects", r.linking_defects},
          {"refinements", r.refinements},
          {"stable", r.stable}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("io", "cannot write " + path);
  os << text;
  if (!os) throw Error("io", "write failed for " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("io", "cannot read " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("io", path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) { write_file(path, dump(j)); }

void write_obj(std::ostream& os, const std::vector<Curve>& curves) {
  precise(os);
  std::size_t base = 1;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    os << "o curve" << c << "\n";
    for (const auto& p : curves[c].points) os << "v " << p[0] << ' ' << p[1] << ' ' << p[2] << "\n";
    os << "l";
    for (std::size_t i = 0; i < curves[c].points.size(); ++i) os << ' ' << base + i;
    if (curves[c].closed && !curves[c].points.empty()) os << ' ' << base;
    os << "\n";
    base += curves[c].points.size();
  }
}

std::vector<Curve> read_obj(std::istream& is) {
  std::vector<Vec3> verts;
  std::vector<Curve> curves;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ss >> p[0] >> p[1] >> p[2])) throw Error("io", "bad OBJ vertex on line " + std::to_string(lineno));
      verts.push_back(p);
    } else if (tag == "l") {
      std::vector<long> idx;
      long k;
      while (ss >> k) idx.push_back(k);
      if (idx.size() < 2) throw Error("io", "OBJ line element needs two vertices, line " + std::to_string(lineno));
      Curve c;
      c.closed = idx.size() > 2 && idx.front() == idx.back();
      if (c.closed) idx.pop_back();
      for (long i : idx) {
        const long r = i < 0 ? static_cast<long>(verts.size()) + i : i - 1;
        if (r < 0 || r >= static_cast<long>(verts.size()))
          throw Error("io", "OBJ index out of range on line " + std::to_string(lineno));
        c.points.push_back(verts[r]);
      }
      curves.push_back(std::move(c));
    }
  }
  return curves;
}

void write_curve_csv(std::ostream& os, const std::vector<Curve>& curves) {
  precise(os) << "x,y,z,component\n";
  for (std::size_t c = 0; c < curves.size(); ++c)
    for (const auto& p : curves[c].points) os << p[0] << ',' << p[1] << ',' << p[2] << ',' << c << "\n";
}

std::vector<Curve> read_curve_csv(std::istream& is, bool closed) {
  std::vector<Curve> curves;
  std::string line;
  int lineno = 0;
  long current = -1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || (lineno == 1 && line.rfind("x,", 0) == 0)) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 4) throw Error("io", "expected 4 CSV columns on line " + std::to_string(lineno));
    const long comp = std::lround(parse_double(cells[3], lineno));
    if (comp != current) {
      curves.push_back({{}, closed});
      current = comp;
    }
    curves.back().points.push_back({parse_double(cells[0], lineno), parse_double(cells[1], lineno),
                                    parse_double(cells[2], lineno)});
  }
  return curves;
}

void write_link_csv(std::ostream& os, const LinkReadout& link) {
  precise(os) << "t,r,re_u,im_u,layer,strand\n";
  for (const auto* layer : {&link.l1, &link.l0})
    for (const auto& slice : layer->tracks)
      for (std::size_t a = 0; a < slice.size(); ++a) {
        const auto& p = slice[a];
        os << p.t << ',' << p.r << ',' << p.u.real() << ',' << p.u.imag() << ','
           << (p.layer == Layer::L1 ? "L1" : "L0") << ',' << a << "\n";
      }
}

ParamCurve read_param_curve_csv(std::istream& is) {
  ParamCurve c;
  std::string line;
  int lineno = 0;
  int sx = 0, sy = 1, sz = 2, ss = -1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv(line);
    if (lineno == 1 && !cells.empty() && !std::isdigit(static_cast<unsigned char>(cells[0][0])) && cells[0][0] != '-' &&
        cells[0][0] != '.') {
      sx = sy = sz = -1;
      for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
        if (cells[i] == "x") sx = i;
        if (cells[i] == "y") sy = i;
        if (cells[i] == "z") sz = i;
        if (cells[i] == "s") ss = i;
      }
      if (sx < 0 || sy < 0 || sz < 0) throw Error("io", "curve CSV header needs x, y, z columns");
      continue;
    }
    const int need = std::max({sx, sy, sz, ss}) + 1;
    if (static_cast<int>(cells.size()) < need) throw Error("io", "short CSV row on line " + std::to_string(lineno));
    c.points.push_back({parse_double(cells[sx], lineno), parse_double(cells[sy], lineno), parse_double(cells[sz], lineno)});
    if (ss >= 0) c.param.push_back(parse_double(cells[ss], lineno));
  }
  return c;
}

}  // namespace qplink

#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qplink/pipeline.hpp"

namespace py = pybind11;
using namespace qplink;

namespace {

// Reports cross the boundary as JSON text; the Python side parses them.
std::string js(const Json& j) { return j.dump(); }

PipelineConfig config_of(const std::string& json_text) {
  return json_text.empty() ? PipelineConfig{} : config_from_json(Json::parse(json_text));
}

std::vector<Vec3> to_points(const std::vector<std::array<double, 3>>& pts) { return {pts.begin(), pts.end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Braid closures, holomorphic polynomials on S^3 and Bateman null fields";

  py::register_exception<Error>(m, "QplinkError", PyExc_RuntimeError);

  py::class_<BraidWord>(m, "BraidWord")
      .def_readonly("strands", &BraidWord::strands)
      .def_property_readonly("letters",
                             [](const BraidWord& b) {
                               std::vector<std::pair<int, int>> out;
                               for (const auto& l : b.letters) out.emplace_back(l.generator, l.sign);
                               return out;
                             })
      .def("__len__", &BraidWord::length)
      .def("__str__", [](const BraidWord& b) { return to_string(b); })
      .def("__repr__", [](const BraidWord& b) {
        return "BraidWord(strands=" + std::to_string(b.strands) + ", word='" + to_string(b) + "')";
      })
      .def(py::self == py::self);

  m.def("parse_braid", [](const std::string& text, std::optional<int> strands) { return parse_braid(text, strands); },
        py::arg("text"), py::arg("strands") = py::none());
  m.def("closure_permutation", &closure_permutation);
  m.def("components", [](const BraidWord& b) { return components(b).cycles; });
  m.def("_word_invariants", [](const BraidWord& b) {
    const auto w = word_invariants(b);
    Json j = {{"exponent_sum", w.exponent_sum}, {"linking_matrix", w.linking_matrix}};
    return js(j);
  });
  m.def("_degree_bounds", [](const BraidWord& b) { return js(cmd_bound(b)); });

  py::class_<BiPolyUV>(m, "Polynomial")
      .def_static("from_json", [](const std::string& s) { return poly_from_json(Json::parse(s)); })
      .def_static("monomial", &BiPolyUV::monomial, py::arg("du"), py::arg("dv"), py::arg("c") = cplx{1.0})
      .def("to_json", [](const BiPolyUV& f) { return js(to_json(f)); })
      .def("__call__", &BiPolyUV::eval, py::arg("u"), py::arg("v"))
      .def("terms",
           [](const BiPolyUV& f) {
             std::vector<std::tuple<int, int, cplx>> out;
             for (const auto& t : f.terms()) out.emplace_back(t.du, t.dv, t.c);
             return out;
           })
      .def("coeff", &BiPolyUV::coeff)
      .def_property_readonly("degree_u", &BiPolyUV::degree_u)
      .def_property_readonly("degree_v", &BiPolyUV::degree_v)
      .def_property_readonly("total_degree", &BiPolyUV::total_degree)
      .def_readonly("lambda_", &BiPolyUV::lambda)
      .def_readonly("shift", &BiPolyUV::shift)
      .def_readonly("non_generic", &BiPolyUV::non_generic)
      .def_readonly("braid", &BiPolyUV::braid)
      .def("rescaled", &BiPolyUV::rescaled)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def("__rmul__", [](const BiPolyUV& f, cplx s) { return s * f; });

  m.def("_construct", [](const std::string& config) {
    const auto c = cmd_construct(config_of(config));
    return std::make_pair(c.polynomial, js(c.report));
  });
  m.def("figure_eight_polynomial", [](double lambda) {
    auto f = to_holomorphic(expand_product(figure_eight_parametrization(), lambda));
    f.braid = parse_braid("1 -2 1 -2");
    return f;
  }, py::arg("lambda_") = 1.0 / 3.0);
  m.def("torus_pair_h", &torus_pair_h, py::arg("p"), py::arg("q"));

  m.def("_verify_link", [](const BiPolyUV& f, const std::string& config, bool tune) {
    py::gil_scoped_release release;
    return js(cmd_verify_link(f, config_of(config), tune));
  });

  m.def("projection", [](double x, double y, double z, double t) {
    const auto j = projection_jet({x, y, z, t});
    return std::make_pair(j.u, j.v);
  }, py::arg("x"), py::arg("y"), py::arg("z"), py::arg("t") = 0.0);
  m.def("inverse_projection", &inverse_projection, py::arg("u"), py::arg("v"), py::arg("t") = 0.0);
  m.def("bateman_field", [](const BiPolyUV& h, double x, double y, double z, double t) {
    const auto f = bateman_field(h, {x, y, z, t});
    return std::make_pair(f.E, f.B);
  }, py::arg("h"), py::arg("x"), py::arg("y"), py::arg("z"), py::arg("t") = 0.0);
  m.def("_em_verify", [](const BiPolyUV& h, const std::string& config) { return js(cmd_em_verify(h, config_of(config))); });

  m.def("_null_lines", [](const BiPolyUV& h, double t, const std::string& config) {
    std::vector<Curve> curves;
    Json j;
    {
      py::gil_scoped_release release;
      j = cmd_null_lines(h, t, config_of(config), &curves);
    }
    std::vector<std::vector<Vec3>> pts;
    for (const auto& c : curves) pts.push_back(c.points);
    return std::make_pair(js(j), pts);
  });
  m.def("_stability", [](const BiPolyUV& h, const std::string& config) {
    py::gil_scoped_release release;
    return js(cmd_stability(h, config_of(config)));
  });

  m.def("_field_line", [](const BiPolyUV& h, const std::string& which, Vec3 start, double t, double length,
                          double max_step) {
    FieldLineRequest req{h, which == "B" ? FieldKind::B : FieldKind::E, start, t, {}};
    req.options.max_length = length;
    req.options.max_step = max_step;
    FieldLine line;
    const auto j = cmd_field_line(req, &line);
    return std::make_tuple(js(j), line.points, line.field_time);
  });

  m.def("_contact_check", [](const std::string& config, std::optional<double> time) {
    return js(cmd_contact_check(config_of(config), time));
  });
  m.def("contact_paper_formula", [](double x, double y, double z, double t) {
    return contact_paper_formula({x, y, z, t});
  }, py::arg("x"), py::arg("y"), py::arg("z"), py::arg("t") = 0.0);
  m.def("legendrian_residual", [](const std::vector<std::array<double, 3>>& pts, double t, bool closed) {
    return legendrian_residual(to_points(pts), t, closed);
  }, py::arg("points"), py::arg("t") = 0.0, py::arg("closed") = false);
  m.def("h_trace", [](const std::vector<std::array<double, 3>>& pts, const std::vector<double>& param, double t) {
    const auto r = h_trace(to_points(pts), param, t, false);
    return std::make_pair(r.h, r.defect);
  }, py::arg("points"), py::arg("param") = std::vector<double>{}, py::arg("t") = 0.0);
  m.def("gauss_linking", [](const std::vector<std::array<double, 3>>& a, const std::vector<std::array<double, 3>>& b,
                            bool closed_a, bool closed_b) {
    return gauss_linking(Curve{to_points(a), closed_a}, Curve{to_points(b), closed_b});
  }, py::arg("a"), py::arg("b"), py::arg("closed_a") = true, py::arg("closed_b") = true);

  m.def("_report", [](const BiPolyUV& f, const std::string& config) {
    py::gil_scoped_release release;
    return js(cmd_report(f, config_of(config)));
  });
}

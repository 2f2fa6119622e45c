#include <doctest.h>

#include <sstream>

#include "qplink/pipeline.hpp"

using namespace qplink;

TEST_CASE("polynomial JSON round trip") {
  auto f = to_holomorphic(expand_product(figure_eight_parametrization(), 1.0 / 3.0));
  f.braid = parse_braid("1 -2 1 -2");
  const auto g = poly_from_json(Json::parse(dump(to_json(f))));
  CHECK((f - g).max_abs() == 0.0);
  CHECK(g.lambda == f.lambda);
  CHECK(g.shift == 4);
  REQUIRE(g.braid);
  CHECK(*g.braid == *f.braid);
  CHECK(dump(to_json(g)) == dump(to_json(f)));

  const auto plain = poly_from_json(Json::parse(R"({"terms": [{"du": 1, "dv": 0, "re": 1, "im": 0}], "lambda": 0.5})"));
  CHECK(plain.coeff(1, 0) == 1.0);
  CHECK_FALSE(plain.braid);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"({"terms": [{"du": 1}]})")), Error);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"({"terms": [{"du": -1, "dv": 0, "re": 1}]})")), Error);
}

TEST_CASE("parametrization JSON round trip") {
  const auto p = parametrize(parse_braid("1 1 -2"));
  const auto q = parametrization_from_json(Json::parse(dump(to_json(p))));
  REQUIRE(q.components.size() == p.components.size());
  for (std::size_t c = 0; c < p.components.size(); ++c) {
    CHECK(q.components[c].slots == p.components[c].slots);
    CHECK(q.components[c].x.coefficients() == p.components[c].x.coefficients());
    CHECK(q.components[c].y.coefficients() == p.components[c].y.coefficients());
  }
  CHECK(braid_from_json(to_json(parse_braid("2 -1", 4))) == parse_braid("2 -1", 4));
}

TEST_CASE("OBJ round trip keeps curves and closure exactly") {
  std::vector<Curve> curves(2);
  for (int i = 0; i < 30; ++i) {
    curves[0].points.push_back({std::cos(0.2 * i) / 3.0, std::sin(0.2 * i), 1e-17 * i});
    curves[1].points.push_back({0.1 * i, -0.7, 12345.678901234567});
  }
  curves[1].closed = false;
  std::stringstream ss;
  write_obj(ss, curves);
  const auto back = read_obj(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0].closed);
  CHECK_FALSE(back[1].closed);
  CHECK(back[0].points == curves[0].points);
  CHECK(back[1].points == curves[1].points);
  CHECK(gauss_linking(back[0], back[1]) == gauss_linking(curves[0], curves[1]));

  std::stringstream bad("v 0 0 0\nl 1 5\n");
  CHECK_THROWS_AS(read_obj(bad), Error);
}

TEST_CASE("curve CSV round trip") {
  std::vector<Curve> curves(2);
  curves[0].points = {{0.1, 0.2, 0.3}, {1.0 / 3.0, 2.0, 3.0}, {0, 1, 0}};
  curves[1].points = {{5, 6, 7}, {8, 9, 10}, {1e-300, -2.5, 7}};
  std::stringstream ss;
  write_curve_csv(ss, curves);
  const auto back = read_curve_csv(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0].points == curves[0].points);
  CHECK(back[1].points == curves[1].points);

  std::stringstream pc("x,y,z,s\n0,0,1,0.5\n1,2,3,0.75\n");
  const auto c = read_param_curve_csv(pc);
  CHECK(c.points.size() == 2);
  CHECK(c.param == std::vector<double>{0.5, 0.75});
  std::stringstream bad("x,y,z,component\n1,2,oops,0\n");
  CHECK_THROWS_AS(read_curve_csv(bad), Error);
}

TEST_CASE("configuration JSON round trip and validation") {
  PipelineConfig c;
  c.braid = "1 1 1";
  c.lambda = 0.25;
  c.times = {0.0, 1.0};
  c.seed = 99;
  const auto back = config_from_json(to_json(c));
  CHECK(dump(to_json(back)) == dump(to_json(c)));
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"fd_step": -1})")).validate(), Error);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"seed": "x"})")), Error);
}

TEST_CASE("identical seeds give byte-identical reports") {
  PipelineConfig c;
  c.em_points = 30;
  c.contact_points = 30;
  c.times = {0.0, 1.0};
  c.null_lines.box = 3.0;
  c.null_lines.resolution = 32;
  c.seed = 7;
  const auto h = BiPolyUV::monomial(1, 0);
  CHECK(dump(cmd_report(h, c)) == dump(cmd_report(h, c)));
  CHECK(cmd_em_sample(h, c) == cmd_em_sample(h, c));
  c.seed = 8;
  PipelineConfig d = c;
  d.seed = 7;
  CHECK(cmd_em_sample(h, c) != cmd_em_sample(h, d));
}

TEST_CASE("construct reports degrees against bounds") {
  PipelineConfig c;
  c.parametrization = "figure-eight";
  c.lambda = 1.0 / 3.0;
  const auto fig8 = cmd_construct(c);
  CHECK(fig8.report["total_degree"] == 8);
  CHECK(fig8.report["bounds"]["total_degree_bound"] == 44);
  CHECK(fig8.report["readout_word"] == "1 -2 1 -2");

  PipelineConfig t;
  t.braid = "1 1 1";
  t.lambda = 0.25;
  CHECK(cmd_construct(t).report["deg_u"] == 2);

  PipelineConfig e;
  e.braid = "";
  e.strands = 1;
  e.lambda = 0.5;
  const auto empty = cmd_construct(e);
  CHECK(empty.report["non_generic"] == true);
  CHECK(empty.report.contains("notice"));

  PipelineConfig mismatch = c;
  mismatch.braid = "1 1 1";
  CHECK_THROWS_AS(cmd_construct(mismatch), Error);
}

TEST_CASE("report records stage failures with their module") {
  PipelineConfig c;
  c.em_points = 10;
  c.contact_points = 10;
  c.times = {0.0, 1.0};
  c.null_lines.box = 3.0;
  c.null_lines.resolution = 32;
  c.s3.t_count = 64;
  auto f = to_holomorphic(expand_product(figure_eight_parametrization(), 2.0));
  const auto b = cmd_report(f, c);
  CHECK(b["verify_link"]["ok"] == false);
  CHECK(b["verify_link"]["module"] == "s3link");
  CHECK(b["all_pass"] == false);
}

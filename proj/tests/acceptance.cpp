// One PASS/FAIL line per acceptance criterion, with measured values and
// runtimes. Exit status is the number of failed criteria.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "qplink/degree.hpp"
#include "qplink/exact.hpp"
#include "qplink/pipeline.hpp"

using namespace qplink;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void run(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("criterion %2d %s  %s: %s [%.2f s, limit %.0f s%s]\n", id, pass ? "PASS" : "FAIL", name, o.detail.c_str(),
              secs, limit_s, in_time ? "" : ", exceeded");
  std::fflush(stdout);
}

const BraidWord kFig8 = parse_braid("1 -2 1 -2");

BiPolyUV fig8(double lambda) {
  auto f = to_holomorphic(expand_product(figure_eight_parametrization(), lambda));
  f.braid = kFig8;
  return f;
}

// Worked g_lambda, term by term.
cplx golden_g(double l, cplx u, double t) {
  const cplx e2 = std::polar(1.0, 2 * t), em2 = std::polar(1.0, -2 * t);
  const cplx e4 = std::polar(1.0, 4 * t), em4 = std::polar(1.0, -4 * t);
  return u * u * u - 0.75 * u * l * l * (e2 - em2) - 0.125 * (4 * l * l * l * (e2 + em2) + l * l * l * (e4 - em4));
}

exact::GaussianRational q(long n, long d) { return {exact::Rational(n, d), exact::Rational(0)}; }

Outcome golden_expansion() {
  const exact::SymbolicPoly want = {
      {{3, 0, 0}, q(1, 1)},   {{1, 2, 2}, q(-3, 4)},  {{1, 2, -2}, q(3, 4)}, {{0, 3, 2}, q(-1, 2)},
      {{0, 3, -2}, q(-1, 2)}, {{0, 3, 4}, q(-1, 8)}, {{0, 3, -4}, q(1, 8)},
  };
  const auto e = exact::expand_product_exact(exact::figure_eight_exact());
  const auto exact_err = exact::max_coefficient_error(e, want);
  const double l = 1.0 / 3.0;
  const auto g = expand_product(figure_eight_parametrization(), l);
  double err = 0.0;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const cplx u(d(rng), d(rng));
    const double t = kPi * d(rng);
    err = std::max(err, std::abs(g.eval(u, t) - golden_g(l, u, t)));
  }
  // coefficientwise against the worked form
  const double l2 = l * l, l3 = l2 * l;
  err = std::max({err, std::abs(g.coeffs[3].coeff(0) - 1.0), std::abs(g.coeffs[1].coeff(2) + 0.75 * l2),
                  std::abs(g.coeffs[1].coeff(-2) - 0.75 * l2), std::abs(g.coeffs[0].coeff(2) + 0.5 * l3),
                  std::abs(g.coeffs[0].coeff(-2) + 0.5 * l3), std::abs(g.coeffs[0].coeff(4) + 0.125 * l3),
                  std::abs(g.coeffs[0].coeff(-4) - 0.125 * l3)});
  const bool ok = exact_err == 0 && err <= 1e-12;
  return {ok, "symbolic coefficient error " + exact_err.str() + fmt(", numeric error %.2e at lambda 1/3", err)};
}

Outcome golden_holomorphic() {
  const double l = 1.0 / 3.0;
  const auto f = fig8(l);
  const auto ref = figure_eight_reference(l);
  const cplx scale = f.coeff(3, 4) / ref.coeff(3, 4);
  const double err = (f - scale * ref).max_abs() / f.max_abs();
  const long bound = degree_bounds(kFig8).total_degree_bound;
  const bool ok = err <= 1e-12 && f.total_degree() == 8 && bound == 44;
  return {ok, fmt("scalar %.6g, relative mismatch %.2e, total degree %d, bound %ld", scale.real(), err,
                  f.total_degree(), bound)};
}

Outcome link_extraction() {
  std::ostringstream os;
  bool ok = true;
  const auto link = trace_link(fig8(1.0 / 3.0));
  const auto inv = word_invariants(kFig8);
  const bool l1_ok = link.l1.components == 1 && link.l1.component_strands == std::vector<int>{3} &&
                     link.l1.permutation == closure_permutation(kFig8) && link.l1.exponent_sum == inv.exponent_sum &&
                     link.l1.linking_matrix == inv.linking_matrix;
  const bool l0_ok = link.l0.components == 2 && link.l0.u_winding == 4;
  const bool gap_ok = link.layer_gap >= 0.5;
  const bool extra_ok = link.extra_components <= kFig8.strands;
  ok = l1_ok && l0_ok && gap_ok && extra_ok;
  os << "figure-eight: L1 " << (l1_ok ? "ok" : "MISMATCH") << " (" << link.l1.components << " comp, word "
     << to_string(link.l1.word) << ", exp sum " << link.l1.exponent_sum << "); L0 " << (l0_ok ? "ok" : "MISMATCH")
     << " (" << link.l0.components << " comp, u-winding " << link.l0.u_winding << ", want 2 comp / 4 strands); gap "
     << fmt("%.5f", link.layer_gap) << (gap_ok ? " ok" : " < 0.5") << "; extra " << link.extra_components << " <= 3";

  for (const char* word : {"1 1 1", "1 1"}) {
    PipelineConfig cfg;
    cfg.braid = word;
    const auto c = cmd_construct(cfg);  // auto-tuned
    const auto l = trace_link(c.polynomial);
    const auto w = word_invariants(c.braid);
    const bool good = l.extra_components <= c.braid.strands && l.l1.permutation == closure_permutation(c.braid) &&
                      l.l1.exponent_sum == w.exponent_sum && l.l1.linking_matrix == w.linking_matrix;
    ok = ok && good;
    os << "; " << word << " at lambda " << c.report["lambda"].get<double>() << ": extra " << l.extra_components
       << " <= " << c.braid.strands << (good ? " ok" : " FAIL");
  }
  return {ok, os.str()};
}

Outcome maxwell() {
  PipelineConfig cfg;
  cfg.em_points = 200;
  cfg.seed = 2024;
  const auto r = cmd_em_verify(fig8(1.0 / 3.0), cfg);
  std::ostringstream os;
  for (const char* k : {"div_b", "div_e", "faraday", "ampere"})
    os << k << ' ' << fmt("%.4f", r["residuals"][k]["ratio"].get<double>()) << ' ';
  return {r["second_order"].get<bool>(), "step 1e-2 -> 5e-3 ratios: " + os.str() + "(want [3, 5])"};
}

Outcome nullness_check() {
  PipelineConfig cfg;
  cfg.em_points = 1000;
  cfg.seed = 7;
  const auto a = cmd_em_verify(fig8(1.0 / 3.0), cfg);
  const auto b = cmd_em_verify(BiPolyUV::constant(1.0), cfg);
  const double wa = a["max_e_dot_b_relative"].get<double>(), wb = b["max_e_dot_b_relative"].get<double>();
  return {wa <= 1e-10 && wb <= 1e-10, fmt("max |E.B|/(|E||B|): h = f~ %.2e, h = 1 %.2e (1000 points each)", wa, wb)};
}

Outcome null_circle() {
  double worst_r = 0.0, worst_z = 0.0;
  bool one = true;
  for (double t : {0.0, 1.0}) {
    const auto set = trace_null_lines(BiPolyUV::monomial(1, 0), t);
    one = one && set.lines.size() == 1 && set.lines[0].closed;
    for (const auto& line : set.lines)
      for (const auto& p : line.points) {
        worst_r = std::max(worst_r, std::abs(std::hypot(p[0], p[1]) - std::sqrt(1.0 + t * t)));
        worst_z = std::max(worst_z, std::abs(p[2]));
      }
  }
  return {one && worst_r <= 1e-6 && worst_z <= 1e-6,
          fmt("single closed circle at t = 0, 1; radius error %.2e, |z| max %.2e", worst_r, worst_z)};
}

Outcome stability() {
  PipelineConfig cfg;
  const auto r = stability_over_time(fig8(1.0 / 3.0), cfg.times, cfg.null_lines);
  std::ostringstream os;
  os << "components";
  for (int c : r.component_counts) os << ' ' << c;
  os << "; linking ";
  for (const auto& row : r.linking.front())
    for (int v : row) os << v << ' ';
  double defect = 0.0;
  for (double d : r.linking_defects) defect = std::max(defect, d);
  os << fmt("at every t; max Gauss defect %.3f", defect);
  return {r.stable, os.str()};
}

Outcome contact() {
  PipelineConfig cfg;
  cfg.contact_points = 500;
  cfg.seed = 11;
  const auto r = cmd_contact_check(cfg);
  return {r["orthogonal"].get<bool>() && r["contact"].get<bool>(),
          fmt("|ReW.ImW| relative max %.2e; formula min %.3e; numeric min %.3e; ratio in [%.8f, %.8f]",
              r["orthogonality_max"].get<double>(), r["paper_formula_min"].get<double>(),
              r["numeric_min"].get<double>(), r["ratio_stats"]["min"].get<double>(),
              r["ratio_stats"]["max"].get<double>())};
}

Outcome legendrian() {
  const auto f = fig8(1.0 / 3.0);
  std::ostringstream os;
  bool ok = true;
  for (auto which : {FieldKind::E, FieldKind::B}) {
    FieldLineOptions o;
    o.max_length = 10.0;
    o.stop_on_closure = false;
    const auto line = integrate_field_line(f, which, {0.5, 0.5, 0.3}, 0.0, o);
    const double leg = legendrian_residual(line.points, 0.0);
    const auto tr = h_trace(line.points, line.field_time, 0.0);
    double err = 0.0;
    for (std::size_t i = 0; i < tr.h.size(); ++i) {
      const auto j = projection_jet(SpacetimePoint::at(line.points[i], 0.0));
      const cplx want = f.eval(j.u, j.v);
      // B lines carry F = -i h W along the tangent, so i times the recovered value is h
      const cplx got = which == FieldKind::E ? tr.h[i] : cplx{0.0, 1.0} * tr.h[i];
      err = std::max(err, std::abs(got - want) / std::abs(want));
    }
    ok = ok && leg < 1e-6 && err <= 1e-4;
    os << (which == FieldKind::E ? "E" : "; B") << fmt(" line (%zu pts): residual %.2e, h-trace error %.2e",
                                                        line.points.size(), leg, err);
  }
  return {ok, os.str()};
}

BraidWord corpus_word(std::mt19937_64& rng) {
  const int s = 2 + static_cast<int>(rng() % 3);
  const int l = (s - 1) + static_cast<int>(rng() % (7 - (s - 1)));
  BraidWord b;
  b.strands = s;
  for (int g = 1; g < s; ++g) b.letters.push_back({g, (rng() & 1) ? 1 : -1});
  while (static_cast<int>(b.letters.size()) < l) b.letters.push_back({1 + static_cast<int>(rng() % (s - 1)), (rng() & 1) ? 1 : -1});
  std::shuffle(b.letters.begin(), b.letters.end(), rng);
  return b;
}

Outcome properties() {
  std::mt19937_64 rng(20240611);
  int readout_ok = 0, pointwise_ok = 0, phase_free = 0;
  double worst = 0.0;
  for (int k = 0; k < 25; ++k) {
    const auto b = corpus_word(rng);
    const auto p = parametrize(b);
    const auto rep = validate(p, 64 * static_cast<int>(b.length()) * 8);
    const auto inv = word_invariants(b);
    if (rep.valid && rep.readout.permutation == closure_permutation(b) && rep.readout.exponent_sum == inv.exponent_sum &&
        rep.readout.linking_matrix == inv.linking_matrix)
      ++readout_ok;
    const double l = 0.25;
    const auto g = expand_product(p, l);
    if (g.phase_free()) {
      ++phase_free;
      ++pointwise_ok;
      continue;
    }
    const auto f = to_holomorphic(g);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double e = 0.0;
    for (int i = 0; i < 50; ++i) {
      const cplx u(d(rng), d(rng));
      const double t = kPi * d(rng);
      const cplx want = std::polar(1.0, f.shift * t) * g.eval(u, t);
      e = std::max(e, std::abs(f.eval(u, std::polar(1.0, t)) - want) / std::max(1.0, std::abs(want)));
    }
    worst = std::max(worst, e);
    if (e <= 1e-10) ++pointwise_ok;
  }

  PipelineConfig cfg;
  cfg.em_points = 50;
  cfg.contact_points = 50;
  cfg.times = {0.0, 1.0};
  cfg.null_lines.box = 3.0;
  cfg.null_lines.resolution = 48;
  cfg.s3.t_count = 256;
  cfg.seed = 99;
  const auto f = fig8(1.0 / 3.0);
  const bool deterministic = dump(cmd_report(f, cfg)) == dump(cmd_report(f, cfg)) &&
                             cmd_em_sample(f, cfg) == cmd_em_sample(f, cfg);
  PipelineConfig cc;
  cc.braid = "1 1 -2 1";
  cc.lambda = 0.25;
  const bool construct_det = dump(cmd_construct(cc).report) == dump(cmd_construct(cc).report) &&
                             dump(to_json(cmd_construct(cc).polynomial)) == dump(to_json(cmd_construct(cc).polynomial));

  const bool ok = readout_ok == 25 && pointwise_ok == 25 && deterministic && construct_det;
  return {ok, fmt("readout = word invariants %d/25; f~(u, e^it) = e^idt g %d/25 (max %.2e, %d phase-free); "
                  "reports byte-identical: %s",
                  readout_ok, pointwise_ok, worst, phase_free, deterministic && construct_det ? "yes" : "no")};
}

}  // namespace

int main() {
  run(1, "golden expansion", 1, golden_expansion);
  run(2, "golden holomorphic polynomial", 1, golden_holomorphic);
  run(3, "link extraction", 180, link_extraction);  // 60 s per braid, three braids
  run(4, "Maxwell residual convergence", 30, maxwell);
  run(5, "nullness", 10, nullness_check);
  run(6, "analytic null-line family", 30, null_circle);
  run(7, "null-line stability", 300, stability);
  run(8, "contact checks", 10, contact);
  run(9, "Legendrian loop closure", 60, legendrian);
  run(10, "property suites", 600, properties);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}

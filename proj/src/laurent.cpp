#include "qplink/laurent.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace qplink {

// ---------------------------------------------------------------- LaurentPoly

cplx LaurentPoly::coeff(int e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? cplx{} : it->second;
}

void LaurentPoly::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
}

double LaurentPoly::max_abs() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

int LaurentPoly::min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentPoly::max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

cplx LaurentPoly::eval(cplx q) const {
  cplx sum = 0.0;
  for (const auto& [e, c] : terms_) sum += c * std::pow(q, e);
  return sum;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) terms_[e] += c;
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) terms_[e] -= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.terms_[ea + eb] += ca * cb;
  return out;
}

LaurentPoly operator*(cplx s, const LaurentPoly& a) {
  LaurentPoly out = a;
  for (auto& [e, c] : out.terms_) c *= s;
  return out;
}

// ----------------------------------------------------------- UPolyOverLaurent

cplx UPolyOverLaurent::eval(cplx u, double t) const {
  cplx sum = 0.0;
  for (int m = degree_u(); m >= 0; --m) {
    cplx c = 0.0;
    for (const auto& [k, a] : coeffs[m].terms()) c += a * std::polar(1.0, k * t);
    sum = sum * u + c;
  }
  return sum;
}

int UPolyOverLaurent::min_phase() const {
  int m = std::numeric_limits<int>::max();
  for (const auto& c : coeffs)
    if (!c.empty()) m = std::min(m, c.min_exponent());
  return m == std::numeric_limits<int>::max() ? 0 : m;
}

int UPolyOverLaurent::max_phase() const {
  int m = std::numeric_limits<int>::min();
  for (const auto& c : coeffs)
    if (!c.empty()) m = std::max(m, c.max_exponent());
  return m == std::numeric_limits<int>::min() ? 0 : m;
}

bool UPolyOverLaurent::phase_free() const {
  for (const auto& c : coeffs)
    for (const auto& [k, a] : c.terms())
      if (k != 0) return false;
  return true;
}

UPolyOverLaurent expand_product(const BraidParametrization& p, double lambda) {
  if (!(lambda > 0.0)) throw Error("laurent", "lambda must be positive");
  int period = 1;
  for (const auto& c : p.components) period = std::lcm(period, c.strand_count);

  // Expand at unit scale; the lambda-dependence is the homogeneity
  // coefficient(u^m) ~ lambda^{s-m}, applied at the end.
  std::vector<LaurentPoly> poly{LaurentPoly(1.0)};
  int expected_shift = 0;
  for (const auto& comp : p.components) {
    const int sc = comp.strand_count;
    const int k_max = std::max(comp.x.degree(), comp.y.degree());
    expected_shift += comp.time_multiplier * k_max;
    for (int j = 0; j < sc; ++j) {
      LaurentPoly root;
      for (int k = -k_max; k <= k_max; ++k) {
        const cplx c = comp.x.coeff(k) + cplx(0.0, 1.0) * comp.y.coeff(k);
        if (c == cplx{}) continue;
        // e^{ik(w t + 2 pi j)/s_C} = e^{2 pi i k j / s_C} q^{k w P / s_C}
        const cplx phase = std::polar(1.0, kTwoPi * static_cast<double>((k * j) % sc) / sc);
        root.add(k * comp.time_multiplier * (period / sc), c * phase);
      }
      std::vector<LaurentPoly> next(poly.size() + 1);
      for (std::size_t m = 0; m < poly.size(); ++m) {
        next[m + 1] += poly[m];
        next[m] -= root * poly[m];
      }
      for (auto& c : next) c.prune(kExpansionPrune);
      poly = std::move(next);
    }
  }

  double scale = 0.0;
  for (const auto& c : poly) scale = std::max(scale, c.max_abs());
  UPolyOverLaurent g;
  g.period = period;
  g.lambda = lambda;
  g.expected_shift = expected_shift;
  const int s = static_cast<int>(poly.size()) - 1;
  g.coeffs.resize(poly.size());
  for (int m = 0; m <= s; ++m) {
    const double factor = std::pow(lambda, s - m);
    for (const auto& [e, c] : poly[m].terms()) {
      if (e % period != 0) {
        if (std::abs(c) >= kLatticeTolerance * scale)
          throw Error("laurent", "off-lattice coefficient of size " + std::to_string(std::abs(c)) +
                                     " at q-exponent " + std::to_string(e));
        continue;
      }
      g.coeffs[m].add(e / period, factor * c);
    }
  }
  return g;
}

cplx root_product(const BraidParametrization& p, double lambda, cplx u, double t) {
  cplx prod = 1.0;
  for (const auto& comp : p.components)
    for (int j = 0; j < comp.strand_count; ++j) {
      const auto pt = comp.strand_point(j, t);
      prod *= u - lambda * cplx(pt[0], pt[1]);
    }
  return prod;
}

// ------------------------------------------------------------------ MixedPoly

cplx MixedPoly::eval(cplx u, cplx v) const {
  cplx sum = 0.0;
  const cplx vb = std::conj(v);
  for (const auto& [e, c] : terms) sum += c * std::pow(u, e[0]) * std::pow(v, e[1]) * std::pow(vb, e[2]);
  return sum;
}

MixedPoly to_semiholomorphic(const UPolyOverLaurent& g) {
  MixedPoly f;
  for (int m = 0; m <= g.degree_u(); ++m)
    for (const auto& [k, c] : g.coeffs[m].terms()) {
      const std::array<int, 3> key{m, std::max(k, 0), std::max(-k, 0)};
      f.terms[key] += c;
    }
  return f;
}

// ------------------------------------------------------------------- BiPolyUV

BiPolyUV::BiPolyUV(const std::vector<Term>& terms, double prune_tol) {
  for (const auto& t : terms) {
    if (t.du < 0 || t.dv < 0) throw Error("laurent", "negative exponent in polynomial term");
    terms_[{t.du, t.dv}] += t.c;
  }
  std::erase_if(terms_, [prune_tol](const auto& kv) {
    return kv.second == cplx{} || std::abs(kv.second) < prune_tol;
  });
  for (const auto& [k, c] : terms_) {
    deg_u_ = std::max(deg_u_, k.first);
    deg_v_ = std::max(deg_v_, k.second);
  }
  dense_.assign(deg_u_ + 1, std::vector<cplx>(deg_v_ + 1, cplx{}));
  for (const auto& [k, c] : terms_) dense_[k.first][k.second] = c;
}

BiPolyUV BiPolyUV::monomial(int du, int dv, cplx c) { return BiPolyUV({{du, dv, c}}); }

std::vector<BiPolyUV::Term> BiPolyUV::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back({k.first, k.second, c});
  return out;
}

cplx BiPolyUV::coeff(int du, int dv) const {
  auto it = terms_.find({du, dv});
  return it == terms_.end() ? cplx{} : it->second;
}

int BiPolyUV::total_degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
  return d;
}

double BiPolyUV::max_abs() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

namespace {
cplx horner(const std::vector<cplx>& c, cplx x) {
  cplx s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}
}  // namespace

std::vector<cplx> BiPolyUV::univariate_in_u(cplx v) const {
  std::vector<cplx> out(deg_u_ + 1);
  for (int a = 0; a <= deg_u_; ++a) out[a] = horner(dense_[a], v);
  return out;
}

cplx BiPolyUV::eval(cplx u, cplx v) const {
  cplx s = 0.0;
  for (int a = deg_u_; a >= 0; --a) s = s * u + horner(dense_[a], v);
  return s;
}

BiPolyUV::ValueGrad BiPolyUV::eval_grad(cplx u, cplx v) const {
  // Horner for each row in v with derivative, then Horner in u with derivative.
  ValueGrad r{0.0, 0.0, 0.0};
  for (int a = deg_u_; a >= 0; --a) {
    cplx val = 0.0, dval = 0.0;
    const auto& row = dense_[a];
    for (auto it = row.rbegin(); it != row.rend(); ++it) {
      dval = dval * v + val;
      val = val * v + *it;
    }
    r.du = r.du * u + r.value;
    r.value = r.value * u + val;
    r.dv = r.dv * u + dval;
  }
  return r;
}

BiPolyUV BiPolyUV::derivative_u() const {
  std::vector<Term> t;
  for (const auto& [k, c] : terms_)
    if (k.first > 0) t.push_back({k.first - 1, k.second, c * static_cast<double>(k.first)});
  return BiPolyUV(t);
}

BiPolyUV BiPolyUV::derivative_v() const {
  std::vector<Term> t;
  for (const auto& [k, c] : terms_)
    if (k.second > 0) t.push_back({k.first, k.second - 1, c * static_cast<double>(k.second)});
  return BiPolyUV(t);
}

BiPolyUV BiPolyUV::rescaled(double factor) const {
  std::vector<Term> t;
  for (const auto& [k, c] : terms_) t.push_back({k.first, k.second, c * std::pow(factor, deg_u_ - k.first)});
  BiPolyUV out(t);
  out.lambda = lambda * factor;
  out.shift = shift;
  out.non_generic = non_generic;
  out.braid = braid;
  return out;
}

BiPolyUV operator+(const BiPolyUV& a, const BiPolyUV& b) {
  auto t = a.terms();
  for (const auto& x : b.terms()) t.push_back(x);
  return BiPolyUV(t);
}

BiPolyUV operator-(const BiPolyUV& a, const BiPolyUV& b) { return a + (-1.0) * b; }

BiPolyUV operator*(const BiPolyUV& a, const BiPolyUV& b) {
  std::vector<BiPolyUV::Term> t;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) t.push_back({x.du + y.du, x.dv + y.dv, x.c * y.c});
  return BiPolyUV(t);
}

BiPolyUV operator*(cplx s, const BiPolyUV& a) {
  auto t = a.terms();
  for (auto& x : t) x.c *= s;
  return BiPolyUV(t);
}

BiPolyUV to_holomorphic(const UPolyOverLaurent& g) {
  const int s = g.degree_u();
  std::vector<BiPolyUV::Term> terms;
  if (g.phase_free()) {
    for (int m = 0; m <= s; ++m) terms.push_back({m, 0, g.coeffs[m].coeff(0)});
    BiPolyUV f(terms);
    f.lambda = g.lambda;
    f.non_generic = true;
    return f;
  }
  const int d = -g.min_phase();
  for (int m = 0; m <= s; ++m)
    for (const auto& [k, c] : g.coeffs[m].terms()) terms.push_back({m, k + d, c});
  BiPolyUV f(terms);
  f.lambda = g.lambda;
  f.shift = d;
  // Every surviving term already cleared the expansion prune, and for long
  // single-component words the constant term is legitimately many orders
  // below the largest coefficient, so compare against c00 rather than max.
  const cplx c00 = f.coeff(0, 0);
  if (c00 == cplx{}) throw Error("laurent", "f(u, 0) vanishes identically");
  for (int m = 1; m <= s; ++m)
    if (std::abs(f.coeff(m, 0)) > 1e-9 * std::abs(c00))
      throw Error("laurent", "f(u, 0) depends on u");
  return f;
}

BiPolyUV bateman_factor(const BiPolyUV& f, const BiPolyUV& g) {
  return f.derivative_u() * g.derivative_v() - f.derivative_v() * g.derivative_u();
}

BiPolyUV figure_eight_reference(double lambda) {
  const double l2 = lambda * lambda, l3 = l2 * lambda;
  BiPolyUV f({{3, 4, 8.0},
              {1, 6, -6.0 * l2},
              {1, 2, 6.0 * l2},
              {0, 6, -4.0 * l3},
              {0, 2, -4.0 * l3},
              {0, 8, -l3},
              {0, 0, l3}});
  f.lambda = lambda;
  f.shift = 4;
  return f;
}

}  // namespace qplink

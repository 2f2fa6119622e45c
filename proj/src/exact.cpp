#include "qplink/exact.hpp"

#include <algorithm>
#include <numeric>

namespace qplink::exact {

namespace {

using Poly = std::vector<Rational>;  // ascending

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Exact division by a monic divisor.
Poly poly_div_exact(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  Poly q(num.size() - dn, Rational(0));
  for (std::size_t i = num.size(); i-- > dn;) {
    const Rational c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

Poly cyclotomic(int n) {
  Poly xn(n + 1, Rational(0));
  xn[0] = -1;
  xn[n] = 1;
  Poly result = xn;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) result = poly_div_exact(result, cyclotomic(d));
  return result;
}

Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace

CyclotomicField::CyclotomicField(int n) : n_(n), phi_(cyclotomic(n)) {
  if (n < 1) throw Error("exact", "cyclotomic order must be positive");
}

CyclotomicField::Element CyclotomicField::reduce(std::vector<Rational> poly) const {
  const std::size_t dim = dimension();
  for (std::size_t i = poly.size(); i-- > dim;) {
    const Rational c = poly[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dim; ++j) poly[i - dim + j] -= c * phi_[j];
  }
  poly.resize(dim, Rational(0));
  return poly;
}

CyclotomicField::Element CyclotomicField::one() const {
  Element e = zero();
  if (!e.empty()) e[0] = 1;
  return e;
}

CyclotomicField::Element CyclotomicField::zeta_power(long k) const {
  const long r = ((k % n_) + n_) % n_;
  std::vector<Rational> p(r + 1, Rational(0));
  p[r] = 1;
  return reduce(std::move(p));
}

CyclotomicField::Element CyclotomicField::from_gaussian(const GaussianRational& g) const {
  if (n_ % 4 != 0) throw Error("exact", "field does not contain i");
  Element e = one();
  for (auto& c : e) c *= g.re;
  Element i = zeta_power(n_ / 4);
  for (auto& c : i) c *= g.im;
  return add(e, i);
}

CyclotomicField::Element CyclotomicField::add(const Element& a, const Element& b) const {
  Element out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

CyclotomicField::Element CyclotomicField::sub(const Element& a, const Element& b) const {
  Element out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

CyclotomicField::Element CyclotomicField::mul(const Element& a, const Element& b) const {
  return reduce(poly_mul(a, b));
}

bool CyclotomicField::is_zero(const Element& a) const {
  return std::all_of(a.begin(), a.end(), [](const Rational& r) { return r == 0; });
}

GaussianRational CyclotomicField::to_gaussian(const Element& a) const {
  if (n_ % 4 != 0) throw Error("exact", "field does not contain i");
  const Element i = zeta_power(n_ / 4);
  GaussianRational g{Rational(0), Rational(0)};
  for (std::size_t j = 1; j < i.size(); ++j)
    if (i[j] != 0) {
      g.im = a[j] / i[j];
      break;
    }
  g.re = a[0] - g.im * i[0];
  if (!is_zero(sub(a, from_gaussian(g)))) throw Error("exact", "element is not a Gaussian rational");
  return g;
}

cplx CyclotomicField::to_complex(const Element& a) const {
  cplx sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    sum += a[k].convert_to<double>() * std::polar(1.0, kTwoPi * static_cast<double>(k) / n_);
  return sum;
}

SymbolicPoly expand_product_exact(const std::vector<ExactComponent>& components) {
  int period = 1;
  for (const auto& c : components) period = std::lcm(period, c.strand_count);
  const CyclotomicField field(std::lcm(4, period));
  const int n = field.order();

  // (power of u, q-exponent) -> coefficient
  using Key = std::pair<int, int>;
  std::map<Key, CyclotomicField::Element> poly{{{0, 0}, field.one()}};
  int s = 0;
  for (const auto& comp : components) {
    const int sc = comp.strand_count;
    for (int j = 0; j < sc; ++j) {
      std::map<int, CyclotomicField::Element> root;
      for (const auto& [k, c] : comp.root_coeffs) {
        if (c.is_zero()) continue;
        const auto phase = field.zeta_power(static_cast<long>(k) * j * (n / sc));
        const int e = k * comp.time_multiplier * (period / sc);
        auto term = field.mul(field.from_gaussian(c), phase);
        auto it = root.find(e);
        root[e] = it == root.end() ? term : field.add(it->second, term);
      }
      std::map<Key, CyclotomicField::Element> next;
      auto accumulate = [&](Key key, const CyclotomicField::Element& v) {
        auto it = next.find(key);
        if (it == next.end()) next.emplace(key, v);
        else it->second = field.add(it->second, v);
      };
      for (const auto& [key, c] : poly) {
        accumulate({key.first + 1, key.second}, c);
        for (const auto& [e, r] : root) accumulate({key.first, key.second + e}, field.sub(field.zero(), field.mul(r, c)));
      }
      std::erase_if(next, [&](const auto& kv) { return field.is_zero(kv.second); });
      poly = std::move(next);
      ++s;
    }
  }

  SymbolicPoly out;
  for (const auto& [key, c] : poly) {
    if (key.second % period != 0)
      throw Error("exact", "nonzero coefficient off the e^{it} lattice");
    out[{key.first, s - key.first, key.second / period}] = field.to_gaussian(c);
  }
  return out;
}

SymbolicPoly to_holomorphic_exact(const SymbolicPoly& g, int* shift) {
  int lowest = 0;
  bool first = true;
  for (const auto& [key, c] : g) {
    if (first || std::get<2>(key) < lowest) lowest = std::get<2>(key);
    first = false;
  }
  const int d = -lowest;
  if (shift) *shift = d;
  SymbolicPoly out;
  for (const auto& [key, c] : g) out[{std::get<0>(key), std::get<1>(key), std::get<2>(key) + d}] = c;
  return out;
}

std::vector<ExactComponent> figure_eight_exact() {
  ExactComponent c;
  c.strand_count = 3;
  c.time_multiplier = 2;
  const Rational half(1, 2);
  // cos(tau) + i sin(2 tau) = (e^{i tau} + e^{-i tau} + e^{2 i tau} - e^{-2 i tau}) / 2
  c.root_coeffs[1] = {half, Rational(0)};
  c.root_coeffs[-1] = {half, Rational(0)};
  c.root_coeffs[2] = {half, Rational(0)};
  c.root_coeffs[-2] = {-half, Rational(0)};
  return {c};
}

Rational max_coefficient_error(const SymbolicPoly& a, const SymbolicPoly& b) {
  Rational worst(0);
  auto visit = [&](const SymbolicKey& key) {
    GaussianRational x{Rational(0), Rational(0)}, y{Rational(0), Rational(0)};
    if (auto it = a.find(key); it != a.end()) x = it->second;
    if (auto it = b.find(key); it != b.end()) y = it->second;
    worst = std::max({worst, abs_rational(x.re - y.re), abs_rational(x.im - y.im)});
  };
  for (const auto& [k, c] : a) visit(k);
  for (const auto& [k, c] : b) visit(k);
  return worst;
}

cplx eval_symbolic(const SymbolicPoly& g, double lambda, cplx u, double t) {
  cplx sum = 0.0;
  for (const auto& [key, c] : g)
    sum += c.to_complex() * std::pow(u, std::get<0>(key)) * std::pow(lambda, std::get<1>(key)) *
           std::polar(1.0, std::get<2>(key) * t);
  return sum;
}

}  // namespace qplink::exact

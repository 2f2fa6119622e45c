#include "qplink/trig.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "qplink/degree.hpp"

namespace qplink {

TrigPolynomial::TrigPolynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() % 2 == 0) throw Error("trig", "coefficient vector must have odd length");
}

TrigPolynomial TrigPolynomial::constant(double c) { return TrigPolynomial({cplx{c, 0.0}}); }

TrigPolynomial TrigPolynomial::from_half(const std::vector<cplx>& nonneg) {
  if (nonneg.empty()) return TrigPolynomial();
  const int d = static_cast<int>(nonneg.size()) - 1;
  std::vector<cplx> c(2 * d + 1);
  c[d] = {nonneg[0].real(), 0.0};
  for (int k = 1; k <= d; ++k) {
    c[d + k] = nonneg[k];
    c[d - k] = std::conj(nonneg[k]);
  }
  return TrigPolynomial(std::move(c));
}

cplx TrigPolynomial::coeff(int k) const {
  const int d = degree();
  if (k < -d || k > d) return {0.0, 0.0};
  return coeffs_[k + d];
}

cplx TrigPolynomial::eval_complex(double t) const {
  const int d = degree();
  const cplx step = std::polar(1.0, t);
  cplx sum = 0.0;
  // Horner in e^{it}, then shift by e^{-idt}
  for (int i = 2 * d; i >= 0; --i) sum = sum * step + coeffs_[i];
  return sum * std::polar(1.0, -d * t);
}

double TrigPolynomial::derivative(double t) const {
  const int d = degree();
  cplx sum = 0.0;
  for (int k = -d; k <= d; ++k) sum += cplx(0.0, k) * coeffs_[k + d] * std::polar(1.0, k * t);
  return sum.real();
}

double TrigPolynomial::symmetry_defect() const {
  double worst = std::abs(coeff(0).imag());
  for (int k = 1; k <= degree(); ++k) worst = std::max(worst, std::abs(coeff(-k) - std::conj(coeff(k))));
  return worst;
}

void TrigPolynomial::prune(double tol) {
  int d = degree();
  std::vector<cplx> c = coeffs_;
  for (auto& z : c)
    if (std::abs(z) <= tol) z = 0.0;
  int keep = 0;
  for (int k = 1; k <= d; ++k)
    if (c[d + k] != cplx{} || c[d - k] != cplx{}) keep = k;
  coeffs_.assign(c.begin() + (d - keep), c.begin() + (d + keep + 1));
}

std::array<double, 2> ComponentParametrization::strand_point(int j, double t) const {
  const double tau = (time_multiplier * t + kTwoPi * j) / strand_count;
  return {x(tau), y(tau)};
}

std::vector<std::array<double, 2>> BraidParametrization::points(double t) const {
  std::vector<std::array<double, 2>> out(total_strands());
  for (const auto& c : components)
    for (int j = 0; j < c.strand_count; ++j) out[c.slots[j]] = c.strand_point(j, t);
  return out;
}

int BraidParametrization::total_strands() const {
  int n = 0;
  for (const auto& c : components) n += c.strand_count;
  return n;
}

std::array<double, 2> model_strand_point(const BraidWord& b, int slot, double t) {
  const int l = static_cast<int>(b.length());
  const double center = 0.5 * (b.strands - 1);
  if (l == 0) return {slot - center, 0.0};
  const double scaled = std::clamp(t / kTwoPi, 0.0, 1.0) * l;
  const int window = std::min(static_cast<int>(scaled), l - 1);
  const double local = scaled - window;
  int pos = slot;
  for (int k = 0; k < window; ++k) {
    const int g = b.letters[k].generator;
    if (pos == g - 1) pos = g;
    else if (pos == g) pos = g - 1;
  }
  const auto& letter = b.letters[window];
  const double shift = 0.5 * (1.0 - std::cos(kPi * local));
  const double bump = std::sin(kPi * local);
  if (pos == letter.generator - 1) return {pos - center + shift, letter.sign * bump};
  if (pos == letter.generator) return {pos - center - shift, -letter.sign * bump};
  return {pos - center, 0.0};
}

StrandSamples sample_strand_paths(const BraidWord& b, int samples_per_letter) {
  if (samples_per_letter < 4) throw Error("trig", "samples_per_letter must be at least 4");
  StrandSamples out;
  out.strands = b.strands;
  const int l = static_cast<int>(b.length());
  const auto comps = components(b);
  for (const auto& cyc : comps.cycles) {
    ComponentSamples cs;
    cs.strand_count = static_cast<int>(cyc.size());
    cs.slots = cyc;
    long n = 1;
    if (l > 0) {
      const long cap = 2 * degree_bound_term(b.strands, l, cs.strand_count) + 1;
      n = std::min<long>(static_cast<long>(samples_per_letter) * l * cs.strand_count, cap);
      if (n % 2 == 0) ++n;
      n = std::max<long>(n, 1);
    }
    cs.x.resize(n);
    cs.y.resize(n);
    for (long i = 0; i < n; ++i) {
      const double tau = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
      const int piece = std::min(static_cast<int>(tau * cs.strand_count / kTwoPi), cs.strand_count - 1);
      const double t = cs.strand_count * tau - kTwoPi * piece;
      const auto p = model_strand_point(b, cyc[piece], t);
      cs.x[i] = p[0];
      cs.y[i] = p[1];
    }
    out.components.push_back(std::move(cs));
  }
  return out;
}

TrigPolynomial interpolate_samples(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n % 2 == 0) throw Error("trig", "interpolation needs an odd number of samples");
  const int k_max = static_cast<int>(n / 2);
  std::vector<cplx> half(k_max + 1);
  double scale = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      sum += values[i] * std::polar(1.0, -kTwoPi * static_cast<double>(k) * static_cast<double>(i) /
                                             static_cast<double>(n));
    half[k] = sum / static_cast<double>(n);
    scale = std::max(scale, std::abs(half[k]));
  }
  auto p = TrigPolynomial::from_half(half);
  p.prune(1e-13 * std::max(1.0, scale));
  return p;
}

BraidParametrization interpolate(const StrandSamples& samples) {
  BraidParametrization p;
  p.strands = samples.strands;
  for (const auto& cs : samples.components) {
    if (cs.x.size() != cs.y.size()) throw Error("trig", "x/y sample counts differ");
    ComponentParametrization c;
    c.strand_count = cs.strand_count;
    c.slots = cs.slots;
    c.x = interpolate_samples(cs.x);
    c.y = interpolate_samples(cs.y);
    p.components.push_back(std::move(c));
  }
  return p;
}

BraidParametrization parametrize(const BraidWord& b, int samples_per_letter) {
  return interpolate(sample_strand_paths(b, samples_per_letter));
}

BraidParametrization figure_eight_parametrization() {
  ComponentParametrization c;
  c.strand_count = 3;
  c.time_multiplier = 2;
  c.slots = {0, 1, 2};
  c.x = TrigPolynomial::from_half({0.0, 0.5});
  c.y = TrigPolynomial::from_half({0.0, 0.0, cplx(0.0, -0.5)});
  BraidParametrization p;
  p.strands = 3;
  p.components.push_back(std::move(c));
  return p;
}

CrossingReadout read_crossings(const std::vector<std::vector<std::array<double, 2>>>& tracks) {
  CrossingReadout r;
  if (tracks.empty()) throw Error("trig", "empty track set");
  const int n = static_cast<int>(tracks.front().size());
  r.word.strands = std::max(n, 1);
  r.min_separation = std::numeric_limits<double>::infinity();
  auto by_x = [&](std::size_t i) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return tracks[i][a][0] < tracks[i][b][0]; });
    return order;
  };
  for (const auto& row : tracks)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < a; ++b)
        r.min_separation = std::min(r.min_separation, std::hypot(row[a][0] - row[b][0], row[a][1] - row[b][1]));

  std::vector<int> current = by_x(0);
  for (std::size_t i = 1; i < tracks.size(); ++i) {
    const auto target = by_x(i);
    std::vector<int> rank(n);
    for (int p = 0; p < n; ++p) rank[target[p]] = p;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int p = 0; p + 1 < n; ++p) {
        const int a = current[p], b = current[p + 1];
        if (rank[a] <= rank[b]) continue;
        const double d0 = tracks[i - 1][a][0] - tracks[i - 1][b][0];
        const double d1 = tracks[i][a][0] - tracks[i][b][0];
        const double f = (d0 != d1) ? std::clamp(d0 / (d0 - d1), 0.0, 1.0) : 0.5;
        const double ya = (1 - f) * tracks[i - 1][a][1] + f * tracks[i][a][1];
        const double yb = (1 - f) * tracks[i - 1][b][1] + f * tracks[i][b][1];
        r.word.letters.push_back({p + 1, ya >= yb ? 1 : -1});
        std::swap(current[p], current[p + 1]);
        changed = true;
      }
    }
  }
  r.permutation = closure_permutation(r.word);
  const auto inv = word_invariants(r.word);
  r.exponent_sum = inv.exponent_sum;
  r.linking_matrix = inv.linking_matrix;
  r.components = static_cast<int>(inv.linking_matrix.size());
  return r;
}

ValidityReport validate(const BraidParametrization& p, int grid_size) {
  if (grid_size < 64) throw Error("trig", "validation grid must have at least 64 points");
  // Cell-centred grid starting half a cell before t = 0, so an exchange that
  // happens exactly at t = 0 is read as the first letter.
  std::vector<std::vector<std::array<double, 2>>> tracks(grid_size + 1);
  for (int i = 0; i <= grid_size; ++i) tracks[i] = p.points(kTwoPi * (i - 0.5) / grid_size);
  ValidityReport rep;
  rep.readout = read_crossings(tracks);
  rep.min_separation = rep.readout.min_separation;
  rep.valid = rep.min_separation > kMinSeparation;
  return rep;
}

}  // namespace qplink

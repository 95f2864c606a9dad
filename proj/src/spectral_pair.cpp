#include "fracspec/spectral_pair.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "fracspec/errors.hpp"
#include "fracspec/phase_sum.hpp"

namespace fracspec {

Rational Box::measure() const {
  Rational m = 1;
  for (std::size_t j = 0; j < dim(); ++j) m *= hi[j] - lo[j];
  return m;
}

bool Box::contains(const RatVec& x) const {
  for (std::size_t j = 0; j < dim(); ++j)
    if (x[j] < lo[j] || x[j] >= hi[j]) return false;
  return true;
}

Box Box::translated(const RatVec& a) const { return Box{add(lo, a), add(hi, a)}; }

Rational intersection_measure(const Box& a, const Box& b) {
  Rational m = 1;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const Rational lo = std::max(a.lo[j], b.lo[j]);
    const Rational hi = std::min(a.hi[j], b.hi[j]);
    if (hi <= lo) return 0;
    m *= hi - lo;
  }
  return m;
}

BoxUnion::BoxUnion(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
  if (boxes_.empty()) throw std::invalid_argument("BoxUnion: no boxes");
  const std::size_t d = boxes_.front().dim();
  for (const auto& box : boxes_) {
    if (box.lo.size() != d || box.hi.size() != d || d == 0)
      throw std::invalid_argument("BoxUnion: inconsistent dimensions");
    for (std::size_t j = 0; j < d; ++j)
      if (!(box.lo[j] < box.hi[j])) throw std::invalid_argument("BoxUnion: empty or inverted box");
  }
  for (std::size_t i = 0; i < boxes_.size(); ++i)
    for (std::size_t k = i + 1; k < boxes_.size(); ++k)
      if (intersection_measure(boxes_[i], boxes_[k]) != 0) throw std::invalid_argument("BoxUnion: overlapping boxes");
}

Rational BoxUnion::measure() const {
  Rational m = 0;
  for (const auto& box : boxes_) m += box.measure();
  return m;
}

bool BoxUnion::contains(const RatVec& x) const {
  return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) { return b.contains(x); });
}

BoxUnion BoxUnion::translated(const RatVec& a) const {
  std::vector<Box> moved;
  moved.reserve(boxes_.size());
  for (const auto& box : boxes_) moved.push_back(box.translated(a));
  return BoxUnion(std::move(moved));
}

Rational intersection_measure(const BoxUnion& a, const BoxUnion& b) {
  Rational m = 0;
  for (const auto& x : a.boxes())
    for (const auto& y : b.boxes()) m += intersection_measure(x, y);
  return m;
}

bool equal_ae(const BoxUnion& a, const BoxUnion& b) {
  const Rational ma = a.measure();
  return ma == b.measure() && intersection_measure(a, b) == ma;
}

Complex chi_hat(const BoxUnion& omega, const RatVec& t) {
  const std::size_t d = omega.dim();
  // Axes with t_j ≠ 0 share the denominator i2πt_j across boxes, so the sum
  // over boxes is a rational combination of roots of unity times a constant.
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < d; ++j)
    if (t[j] != 0) active.push_back(j);

  PhaseSum sum;
  for (const auto& box : omega.boxes()) {
    Rational weight = 1;
    for (std::size_t j = 0; j < d; ++j)
      if (t[j] == 0) weight *= box.hi[j] - box.lo[j];
    // expand Π_j (ζ^{t_j hi_j} - ζ^{t_j lo_j})
    const std::size_t terms = std::size_t{1} << active.size();
    for (std::size_t mask = 0; mask < terms; ++mask) {
      Rational phase = 0;
      int sign = 1;
      for (std::size_t k = 0; k < active.size(); ++k) {
        const std::size_t j = active[k];
        if (mask & (std::size_t{1} << k)) {
          phase += t[j] * box.lo[j];
          sign = -sign;
        } else {
          phase += t[j] * box.hi[j];
        }
      }
      sum.add(sign * weight, phase);
    }
  }
  const auto result = sum.evaluate();
  if (result.zero) return Complex(0.0, 0.0);
  Complex denom(1.0, 0.0);
  for (const auto j : active) denom *= Complex(0.0, 2.0 * std::numbers::pi * to_double(t[j]));
  return result.value / denom;
}

Complex chi_hat(const BoxUnion& omega, const RealVec& t) {
  Complex total(0.0, 0.0);
  for (const auto& box : omega.boxes()) {
    Complex term(1.0, 0.0);
    for (std::size_t j = 0; j < box.dim(); ++j) {
      const double a = to_double(box.lo[j]);
      const double b = to_double(box.hi[j]);
      const double len = b - a;
      const double x = std::numbers::pi * t[j] * len;
      const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
      term *= unit_phase(0.5 * t[j] * (a + b)) * (len * sinc);
    }
    total += term;
  }
  return total;
}

TruncatedSpectrum truncated_spectrum(const SimpleFactorSpec& spec, double radius) {
  const Lattice gamma0 = dual_lattice(spec.Gamma());
  const std::size_t d = spec.dim();
  double max_digit = 0.0;
  for (const auto& ell : spec.digits_L()) max_digit = std::max(max_digit, norm2(ell));
  double inv_norm = 0.0;
  for (const auto& row : gamma0.basis_inverse().to_real())
    for (double v : row) inv_norm += v * v;
  const long bound = static_cast<long>(std::ceil(std::sqrt(inv_norm) * (radius + max_digit))) + 1;

  std::set<RatVec> seen;
  std::vector<RatVec> points;
  std::vector<long> c(d, -bound);
  while (true) {
    RatVec coords(d);
    for (std::size_t i = 0; i < d; ++i) coords[i] = c[i];
    const RatVec g = gamma0.basis() * coords;
    for (const auto& ell : spec.digits_L()) {
      RatVec p = add(ell, g);
      if (norm2(p) <= radius + 1e-12 && seen.insert(p).second) points.push_back(std::move(p));
    }
    std::size_t k = d;
    while (k-- > 0) {
      if (++c[k] <= bound) break;
      c[k] = -bound;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  std::sort(points.begin(), points.end(), [](const RatVec& a, const RatVec& b) {
    const double na = norm2(a), nb = norm2(b);
    if (na != nb) return na < nb;
    return a < b;
  });
  return TruncatedSpectrum{std::move(points)};
}

Eigen::MatrixXcd orthogonality_matrix(const BoxUnion& omega, const TruncatedSpectrum& spectrum) {
  const auto n = static_cast<Eigen::Index>(spectrum.points.size());
  const double m = to_double(omega.measure());
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = Complex(1.0, 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex v = chi_hat(omega, sub(spectrum.points[j], spectrum.points[i])) / m;
      gram(i, j) = v;
      gram(j, i) = std::conj(v);
    }
  }
  return gram;
}

namespace {

struct Interval {
  Rational lo, hi;
};

std::vector<Interval> wrap_interval(const Rational& lo, const Rational& hi, const Rational& period) {
  const Rational shift = Rational(floor_of(lo / period)) * period;
  const Rational a = lo - shift;
  const Rational b = hi - shift;
  if (b <= period) return {{a, b}};
  return {{a, period}, {Rational(0), b - period}};
}

std::vector<Box> reduce_pieces(const BoxUnion& omega, const Lattice& K) {
  if (!K.rectangular()) throw UnsupportedGeometry("exact reduction needs a rectangular lattice");
  const std::size_t d = omega.dim();
  RatVec period(d);
  for (std::size_t j = 0; j < d; ++j) period[j] = abs(K.basis()(j, j));

  std::vector<Box> pieces;
  for (const auto& box : omega.boxes()) {
    std::vector<std::vector<Interval>> axes(d);
    for (std::size_t j = 0; j < d; ++j) {
      if (box.hi[j] - box.lo[j] > period[j])
        throw NotEmbeddable("a box is longer than the lattice period along axis " + std::to_string(j));
      axes[j] = wrap_interval(box.lo[j], box.hi[j], period[j]);
    }
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      Box piece{RatVec(d), RatVec(d)};
      for (std::size_t j = 0; j < d; ++j) {
        piece.lo[j] = axes[j][idx[j]].lo;
        piece.hi[j] = axes[j][idx[j]].hi;
      }
      if (piece.measure() > 0) pieces.push_back(std::move(piece));
      std::size_t k = d;
      while (k-- > 0) {
        if (++idx[k] < axes[k].size()) break;
        idx[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t k = i + 1; k < pieces.size(); ++k)
      if (intersection_measure(pieces[i], pieces[k]) != 0)
        throw NotEmbeddable("reductions overlap: " + format_vec(pieces[i].lo) + " and " + format_vec(pieces[k].lo));
  return pieces;
}

// Number of pairs (box, k ∈ K) with x - k in the box.
std::size_t cover_multiplicity(const BoxUnion& omega, const Lattice& K, const RatVec& x) {
  const std::size_t d = omega.dim();
  const auto inv = K.basis_inverse().to_real();
  std::size_t count = 0;
  for (const auto& box : omega.boxes()) {
    // coefficient ranges of K⁻¹(x - y) for y in the box
    std::vector<long> lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
      double mn = 0.0, mx = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double xj = to_double(x[j]);
        const double v1 = inv[i][j] * (xj - to_double(box.lo[j]));
        const double v2 = inv[i][j] * (xj - to_double(box.hi[j]));
        mn += std::min(v1, v2);
        mx += std::max(v1, v2);
      }
      lo[i] = static_cast<long>(std::floor(mn)) - 1;
      hi[i] = static_cast<long>(std::ceil(mx)) + 1;
    }
    std::vector<long> c = lo;
    while (true) {
      RatVec coords(d);
      for (std::size_t i = 0; i < d; ++i) coords[i] = c[i];
      if (box.contains(sub(x, K.basis() * coords))) ++count;
      std::size_t k = d;
      while (k-- > 0) {
        if (++c[k] <= hi[k]) break;
        c[k] = lo[k];
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  return count;
}

class PointSampler {
 public:
  PointSampler(const BoxUnion& omega, std::uint64_t seed) : omega_(omega), rng_(seed) {
    std::vector<double> weights;
    for (const auto& box : omega.boxes()) weights.push_back(to_double(box.measure()));
    pick_ = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
  }

  // Uniform point of Ω on the dyadic grid of step 2^-32 per box side.
  RatVec next() {
    const Box& box = omega_.boxes()[pick_(rng_)];
    RatVec x(box.dim());
    for (std::size_t j = 0; j < box.dim(); ++j) {
      const Rational u(Integer(rng_() >> 32), Integer(1) << 32);
      x[j] = box.lo[j] + (box.hi[j] - box.lo[j]) * u;
    }
    return x;
  }

 private:
  const BoxUnion& omega_;
  std::mt19937_64 rng_;
  std::discrete_distribution<std::size_t> pick_;
};

}  // namespace

BoxUnion reduce_mod_lattice(const BoxUnion& omega, const Lattice& K) { return BoxUnion(reduce_pieces(omega, K)); }

MembershipResult translation_membership(const BoxUnion& omega, const Lattice& K, const RatVec& a,
                                        const SamplingOptions& sampling) {
  if (K.contains(a)) return {true, true, 0, 0, 0.0};
  if (K.rectangular()) {
    const BoxUnion base = reduce_mod_lattice(omega, K);
    const BoxUnion moved = reduce_mod_lattice(omega.translated(a), K);
    return {equal_ae(base, moved), true, 0, 0, 0.0};
  }
  // Translation preserves measure, so Ω + a ⊆ Ω + K a.e. already forces
  // equality mod K when Ω embeds in the torus.
  PointSampler sampler(omega, sampling.seed);
  MembershipResult result;
  result.exact = false;
  result.samples = sampling.samples;
  for (std::size_t i = 0; i < sampling.samples; ++i)
    if (cover_multiplicity(omega, K, add(sampler.next(), a)) == 0) ++result.mismatches;
  result.member = result.mismatches == 0;
  result.miss_bound = result.member ? 3.0 / static_cast<double>(sampling.samples) : 1.0;
  return result;
}

TilingReport tiling_check(const BoxUnion& d_prime, const Lattice& gamma, const std::vector<RatVec>& translates,
                          const BoxUnion& omega_prime, const SamplingOptions& sampling) {
  TilingReport report;

  const Rational cell = gamma.covolume();
  const Rational m = d_prime.measure();
  if (m != cell) {
    report.fundamental_domain = false;
    report.detail += "measure of D' is " + format_rational(m) + ", cell volume is " + format_rational(cell) + ". ";
  } else if (gamma.rectangular()) {
    try {
      reduce_mod_lattice(d_prime, gamma);
      report.fundamental_domain = true;
    } catch (const NotEmbeddable& e) {
      report.detail += std::string(e.what()) + ". ";
    }
  } else {
    report.fundamental_domain_exact = false;
    report.samples = sampling.samples;
    PointSampler sampler(d_prime, sampling.seed);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < sampling.samples; ++i)
      if (cover_multiplicity(d_prime, gamma, sampler.next()) != 1) ++bad;
    report.fundamental_domain = bad == 0;
    report.miss_bound = bad == 0 ? 3.0 / static_cast<double>(sampling.samples) : 1.0;
    if (bad) report.detail += std::to_string(bad) + " sampled points of D' are covered twice mod Gamma. ";
  }

  std::vector<Box> pieces;
  for (const auto& a : translates)
    for (const auto& box : d_prime.boxes()) pieces.push_back(box.translated(a));
  report.translates_disjoint = true;
  for (std::size_t i = 0; i < pieces.size() && report.translates_disjoint; ++i)
    for (std::size_t k = i + 1; k < pieces.size(); ++k)
      if (intersection_measure(pieces[i], pieces[k]) != 0) {
        report.translates_disjoint = false;
        report.detail += "translates overlap. ";
        break;
      }

  report.translate_measure = m * static_cast<long>(translates.size());
  report.omega_measure = omega_prime.measure();
  if (report.translates_disjoint) {
    const BoxUnion tiled(pieces);
    report.covers_omega = equal_ae(tiled, omega_prime);
    if (!report.covers_omega) report.detail += "union of translates differs from Omega'. ";
  }
  return report;
}

}  // namespace fracspec

#include "fracspec/cuntz.hpp"

#include <algorithm>
#include <set>

#include "fracspec/errors.hpp"
#include "fracspec/phase_sum.hpp"

namespace fracspec {

ExponentialVector apply_generator(const SimpleFactorSpec& spec, const RatVec& ell, const ExponentialVector& v) {
  if (!spec.digit_index(ell)) throw UnknownDigit(format_vec(ell) + " is not in L");
  if (v.is_zero()) return ExponentialVector::zero(spec.dim());
  return {v.coeff, add(spec.E_transpose() * v.freq, ell)};
}

ExponentialVector apply_adjoint(const SimpleFactorSpec& spec, const RatVec& ell, const ExponentialVector& v) {
  if (!spec.digit_index(ell)) throw UnknownDigit(format_vec(ell) + " is not in L");
  if (v.is_zero()) return ExponentialVector::zero(spec.dim());
  const RatVec shifted = sub(v.freq, ell);
  const Complex c = mask_B(spec, shifted) * v.coeff;
  if (c == Complex(0.0, 0.0)) return ExponentialVector::zero(spec.dim());
  return {c, spec.E_transpose_inverse() * shifted};
}

RatVec word_frequency(const SimpleFactorSpec& spec, const Word& w) {
  RatVec xi(spec.dim(), Rational(0));
  for (std::size_t k = w.letters.size(); k-- > 0;) xi = tau_apply(spec, w.letters[k], xi);
  return xi;
}

Complex inner_product(const FourierTransform& transform, const ExponentialVector& u, const ExponentialVector& v) {
  if (u.is_zero() || v.is_zero()) return Complex(0.0, 0.0);
  return std::conj(u.coeff) * v.coeff * transform.product(sub(v.freq, u.freq));
}

std::vector<RatVec> dual_box(const Lattice& K, int radius) {
  const Lattice k0 = dual_lattice(K);
  const std::size_t d = K.dim();
  std::vector<RatVec> points;
  std::vector<long> c(d, -radius);
  while (true) {
    RatVec coords(d);
    for (std::size_t i = 0; i < d; ++i) coords[i] = c[i];
    points.push_back(k0.basis() * coords);
    std::size_t k = d;
    while (k-- > 0) {
      if (++c[k] <= radius) break;
      c[k] = -radius;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return points;
}

RelationReport relation_residuals(const SimpleFactorSpec& spec, int box, const TransformSettings& settings) {
  RelationReport report;
  report.box = box;
  report.degenerate = spec.K().same_as(spec.A());
  const FourierTransform transform(spec, settings);
  const auto samples = dual_box(spec.K(), box);
  report.samples = samples.size();
  const auto& L = spec.digits_L();

  std::vector<RatVec> images, plain, range;
  for (const auto& u : samples) {
    const RatVec eu = spec.E_transpose() * u;
    images.push_back(eu);
    plain.push_back(u);
    for (const auto& ell : L)
      for (const auto& ell2 : L)
        if (ell != ell2) range.push_back(add(eu, sub(ell2, ell)));
  }
  const auto image_values = transform.product_batch(images);
  const auto plain_values = transform.product_batch(plain);
  for (std::size_t i = 0; i < samples.size(); ++i)
    report.isometry = std::max(report.isometry, std::abs(image_values[i] - plain_values[i]));

  const auto range_values = transform.product_batch(range);
  report.range_terms = range_values.size();
  for (const auto& v : range_values) {
    if (v == Complex(0.0, 0.0)) ++report.range_exact_zeros;
    report.range_orthogonality = std::max(report.range_orthogonality, std::abs(v));
  }

  for (const auto& s : samples) {
    Complex total(0.0, 0.0);
    for (const auto& ell : L) total += mask_B(spec, sub(s, ell));
    report.completeness = std::max(report.completeness, std::abs(total - Complex(1.0, 0.0)));
  }
  return report;
}

Complex state_eval(const FourierTransform& transform, const Word& alpha, const Word& beta) {
  const auto& spec = transform.spec();
  ExponentialVector v = ExponentialVector::unit(RatVec(spec.dim(), Rational(0)));
  // T*_β = T*_{βm}⋯T*_{β1}: β1 acts first
  for (const auto& ell : beta.letters) v = apply_adjoint(spec, ell, v);
  for (std::size_t k = alpha.letters.size(); k-- > 0;) v = apply_generator(spec, alpha.letters[k], v);
  return inner_product(transform, ExponentialVector::unit(RatVec(spec.dim(), Rational(0))), v);
}

Complex state_eval(const SimpleFactorSpec& spec, const Word& alpha, const Word& beta,
                   const TransformSettings& settings) {
  return state_eval(FourierTransform(spec, settings), alpha, beta);
}

std::vector<Word> all_words(const SimpleFactorSpec& spec, int max_length) {
  std::vector<Word> words;
  std::vector<Word> current{Word{}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const auto& w : current)
      for (const auto& ell : spec.digits_L()) {
        Word longer = w;
        longer.letters.push_back(ell);
        next.push_back(std::move(longer));
      }
    words.insert(words.end(), next.begin(), next.end());
    current = std::move(next);
  }
  return words;
}

MeasureSource MeasureSource::from_spec(const SimpleFactorSpec& spec, int quadrature_depth) {
  return MeasureSource{spec.name() + " depth " + std::to_string(quadrature_depth),
                       refine_measure(build_ifs(spec), quadrature_depth), spec.digits_B()};
}

MeasureSource MeasureSource::external(std::string label, DiscreteMeasure measure,
                                      std::optional<std::vector<RatVec>> mask_digits) {
  return MeasureSource{std::move(label), std::move(measure), std::move(mask_digits)};
}

ConsistencyReport classify_consistency(const MeasureSource& source, const Lattice& K, const Lattice& Gamma,
                                    const std::vector<RatVec>& L, int box, double tolerance) {
  const LatticeInclusion inclusion = inclusion_matrix(K, Gamma);
  ConsistencyReport report;
  report.tolerance = tolerance;
  report.box = box;
  const std::size_t d = K.dim();
  const RatVec zero(d, Rational(0));

  auto structure = [&](std::string name, bool ok, std::string detail) {
    report.structure.push_back({name, ok, std::move(detail)});
    if (!ok) report.failing.push_back(std::move(name));
  };

  {
    const Lattice k0 = dual_lattice(K);
    const Lattice gamma0 = dual_lattice(Gamma);
    bool ok = std::find(L.begin(), L.end(), zero) != L.end();
    std::set<RatVec> keys;
    for (const auto& ell : L) ok = ok && k0.contains(ell) && keys.insert(gamma0.reduce(ell)).second;
    structure("dual_L", ok, "0 in L, L inside the dual of K, distinct mod the dual of Gamma");
  }
  {
    const Integer index = inclusion.index();
    const bool ok = !L.empty() && index % L.size() == 0;
    structure("cardinality", ok, "|L| = " + std::to_string(L.size()) + " must divide [Gamma:K] = " + index.str());
  }
  const RatMat E = K.basis() * Gamma.basis_inverse();
  {
    const auto moduli = E.eigenvalue_moduli();
    const bool ok = std::all_of(moduli.begin(), moduli.end(), [](double m) { return m > 1.0; });
    structure("expansive", ok, "all eigenvalues of the inclusion map outside the unit circle");
  }

  const RatMat Et = E.transpose();
  const auto& mu = source.measure;
  auto transform = [&](const RatVec& t) { return integrate_exponential(mu, to_real(t)); };

  const auto samples = dual_box(K, box);
  for (const auto& u : samples) {
    const RatVec eu = Et * u;
    report.isometry = std::max(report.isometry, std::abs(transform(eu) - transform(u)));
    for (const auto& ell : L)
      for (const auto& ell2 : L)
        if (ell != ell2)
          report.range_orthogonality = std::max(report.range_orthogonality, std::abs(transform(add(eu, sub(ell2, ell)))));
  }
  if (report.isometry >= tolerance) report.failing.push_back("isometry");
  if (report.range_orthogonality >= tolerance) report.failing.push_back("range_orthogonality");

  if (source.mask_digits) {
    const auto& digits = *source.mask_digits;
    double worst = 0.0;
    for (const auto& s : samples) {
      PhaseSum total;
      for (const auto& ell : L)
        for (const auto& b : digits) total.add(Rational(1, static_cast<long>(digits.size())), dot(b, sub(s, ell)));
      const auto r = total.evaluate();
      worst = std::max(worst, std::abs((r.zero ? Complex(0.0, 0.0) : r.value) - Complex(1.0, 0.0)));
    }
    report.completeness = worst;
    if (worst >= tolerance) report.failing.push_back("completeness");
  } else {
    report.failing.push_back("completeness (no mask digits supplied)");
  }

  report.consistent = report.failing.empty();
  return report;
}

}  // namespace fracspec

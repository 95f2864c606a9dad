#include "fracspec/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fracspec/cuntz.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/fourier.hpp"
#include "fracspec/hutchinson.hpp"
#include "fracspec/spec_io.hpp"
#include "fracspec/spectral_pair.hpp"
#include "fracspec/spectrum.hpp"
#include "fracspec/table.hpp"

namespace fracspec {

namespace {

// Collects failed sub-checks of one criterion.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& what) { notes_.push_back(what); }
  bool passed() const { return failures_.empty(); }
  std::string detail() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + std::string("FAILED ") + f;
    for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

SimpleFactorSpec builtin(const std::string& name) { return builtin_spec(name)->to_spec(); }

RealVec random_vector(std::mt19937_64& rng, std::size_t d, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  RealVec t(d);
  for (auto& x : t) x = dist(rng);
  return t;
}

RealVec apply(const RatMat& m, const RealVec& t) {
  const auto r = m.to_real();
  RealVec out(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) out[i] += r[i][j] * t[j];
  return out;
}

// 1. σ at s = 2 for scale4, enumeration depths 4..12, product depth 30.
void sigma_reproduction(Verdict& v, const AcceptanceOptions& options) {
  const auto spec = builtin("scale4");
  TransformSettings settings;
  settings.product_depth = 30;
  const auto rows = sigma_table(spec, RatVec{Rational(2)}, 4, 12, settings);

  std::ifstream in(options.data_dir + "/sigma_scale4_s2_golden.json");
  v.require(static_cast<bool>(in), "golden data readable from " + options.data_dir);
  if (!in) return;
  const auto golden = nlohmann::json::parse(in);
  const auto& values = golden.at("values");
  v.require(values.size() == rows.size(), "golden table has one row per depth");

  double worst_calibration = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) v.require(rows[i].sigma >= rows[i - 1].sigma, "monotone at depth " + std::to_string(rows[i].depth));
    v.require(rows[i].sigma <= 1.0 + 1e-9, "Bessel bound at depth " + std::to_string(rows[i].depth));
    if (i < values.size()) {
      v.require(values[i].at("enum_depth").get<int>() == rows[i].depth, "golden depth order");
      worst_calibration = std::max(worst_calibration, std::abs(rows[i].sigma - values[i].at("sigma").get<double>()));
    }
  }
  v.require(worst_calibration <= 1e-6, "calibration against quadrature golden data within 1e-6");
  const double final_gap = std::abs(1.0 - rows.back().sigma);
  v.require(final_gap <= 2e-3, "final sigma within 2e-3 of 1");
  v.note("sigma(12) = " + format_double(rows.back().sigma) + ", |1 - sigma| = " + sci(final_gap) +
         ", max |sigma - golden| = " + sci(worst_calibration));
}

// 2. Exact orthogonality zeros at depth 6, Gram identity at depth 5.
void orthogonality_zeros(Verdict& v, const AcceptanceOptions&) {
  const auto spec = builtin("scale4");
  const FourierTransform transform(spec);
  const auto e6 = enumerate_spectrum(spec, 6);
  std::vector<RatVec> diffs;
  for (std::size_t i = 0; i < e6.size(); ++i)
    for (std::size_t j = 0; j < e6.size(); ++j)
      if (i != j) diffs.push_back(sub(e6.elements[i], e6.elements[j]));
  const auto values = transform.product_batch(diffs);
  std::size_t nonzero = 0;
  for (const auto& z : values)
    if (z != Complex(0.0, 0.0)) ++nonzero;
  v.require(nonzero == 0, std::to_string(nonzero) + " of " + std::to_string(values.size()) + " pairs not exactly zero");

  const auto e5 = enumerate_spectrum(spec, 5);
  const auto gram = gram_matrix(transform, e5.elements);
  const double dev = (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  v.require(dev <= 1e-8, "depth-5 Gram matrix equals identity within 1e-8");
  v.note(std::to_string(values.size() / 2) + " unordered pairs (" + std::to_string(values.size()) +
         " ordered) exactly zero; Gram deviation " + sci(dev));
}

// 3. Functional equation, quadrature depth 12 and the product identity.
void functional_equation(Verdict& v, const AcceptanceOptions& options) {
  const auto spec = builtin("scale4");
  TransformSettings settings;
  settings.quadrature_depth = 12;
  const FourierTransform transform(spec, settings);
  std::mt19937_64 rng(options.seed);
  double worst_quad = 0.0, worst_prod = 0.0;
  for (int i = 0; i < 100; ++i) {
    const RealVec t = random_vector(rng, 1, -8.0, 8.0);
    worst_quad = std::max(worst_quad, functional_equation_residual(transform, t));
    worst_prod = std::max(worst_prod, product_functional_residual(transform, t));
  }
  v.require(worst_quad < 1e-5, "quadrature residual < 1e-5");
  v.require(worst_prod < 1e-13, "product residual < 1e-13");
  v.note("max quadrature residual " + sci(worst_quad) + ", max product residual " + sci(worst_prod));
}

// 4. Cuntz relations on scale4, box 32, product depth 40.
void cuntz_relations(Verdict& v, const AcceptanceOptions&) {
  TransformSettings settings;
  settings.product_depth = 40;
  const auto report = relation_residuals(builtin("scale4"), 32, settings);
  v.require(report.isometry < 1e-9, "isometry residual < 1e-9");
  v.require(report.range_exact_zeros == report.range_terms && report.range_orthogonality == 0.0,
            "range-orthogonality terms exactly 0");
  v.require(report.completeness < 1e-12, "completeness residual < 1e-12");
  v.note("isometry " + sci(report.isometry) + ", range zeros " + std::to_string(report.range_exact_zeros) + "/" +
         std::to_string(report.range_terms) + ", completeness " + sci(report.completeness));
}

// 5. State values ω(T₀) = ω(T₀T₀*) = 1, ω(T₁) = 0, positivity on 30 words.
void state_values(Verdict& v, const AcceptanceOptions&) {
  const auto spec = builtin("scale4");
  const FourierTransform transform(spec);
  const Word t0{{RatVec{Rational(0)}}};
  const Word t1{{RatVec{Rational(1)}}};
  const Complex id = state_eval(transform, Word{}, Word{});
  const Complex w0 = state_eval(transform, t0, Word{});
  const Complex w00 = state_eval(transform, t0, t0);
  const Complex w1 = state_eval(transform, t1, Word{});
  v.require(std::abs(id - 1.0) <= 1e-12, "omega(I) = 1");
  v.require(std::abs(w0 - 1.0) <= 1e-12, "omega(T0) = 1");
  v.require(std::abs(w00 - 1.0) <= 1e-12, "omega(T0 T0*) = 1");
  v.require(std::abs(w1) <= 1e-12, "omega(T1) = 0");
  const auto words = all_words(spec, 4);
  v.require(words.size() == 30, "30 words of length 1..4");
  double lo = 1.0, hi = 0.0;
  for (const auto& w : words) {
    const Complex value = state_eval(transform, w, w);
    v.require(std::abs(value.imag()) <= 1e-12 && value.real() >= 0.0 && value.real() <= 1.0 + 1e-9,
              "omega(T_a T_a*) in [0, 1 + 1e-9]");
    lo = std::min(lo, value.real());
    hi = std::max(hi, value.real());
  }
  v.note("omega(T_a T_a*) over 30 words in [" + format_double(lo) + ", " + format_double(hi) + "]");
}

void tiling_for(Verdict& v, const std::string& name) {
  const auto doc = *builtin_spec(name);
  const auto spec = doc.to_spec();
  const auto translates = coset_representatives(spec.K(), spec.A(), spec.digits_B());
  const BoxUnion omega_prime = reduce_mod_lattice(*doc.omega, spec.K());
  const auto report = tiling_check(*doc.d_prime, spec.Gamma(), translates, omega_prime);
  v.require(report.passed() && report.fundamental_domain_exact, name + " tiling passes exactly");
  v.require(report.translate_measure == report.omega_measure, name + " measure accounting");
}

// 6. Tiling of Ω' by translates of D' (exact).
void tiling(Verdict& v, const AcceptanceOptions&) {
  tiling_for(v, "scale4");
  tiling_for(v, "scale4x2");
  v.note("scale4 and scale4x2 tile exactly in rational arithmetic");
}

// 7. Every pair of the 1024 depth-10 atoms is separated by s = 1.
void separation(Verdict& v, const AcceptanceOptions&) {
  const auto spec = builtin("scale4");
  const auto mu = refine_measure(build_ifs(spec), 10);
  const WitnessSearch search(spec, 4);
  v.require(search.candidates().front() == RatVec{Rational(1)}, "first candidate is s = 1");
  const auto n = static_cast<std::ptrdiff_t>(mu.size());
  const auto& pts = mu.points();
  const std::size_t d = mu.dim();
  long bad = 0;
#pragma omp parallel for reduction(+ : bad) schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    for (std::ptrdiff_t j = i + 1; j < n; ++j)
      if (search.find_index(std::span(&pts[i * d], d), std::span(&pts[j * d], d)) != 0) ++bad;
  v.require(mu.size() == 1024, "1024 atoms");
  v.require(bad == 0, std::to_string(bad) + " pairs without witness s = 1");
  v.note(std::to_string(mu.size() * (mu.size() - 1) / 2) + " pairs separated by s = 1");
}

// 8. Middle-third negative control.
void negative_control(Verdict& v, const AcceptanceOptions&) {
  for (int ell = 1; ell <= 3; ++ell) {
    const auto report = validate_simple_factor(middle_third_document(ell).to_spec());
    v.require(!report.passed("separation") || !report.passed("unitarity"),
              "middle third with L = {0," + std::to_string(ell) + "} fails separation/unitarity");
    v.require(!report.ok(), "middle third with L = {0," + std::to_string(ell) + "} rejected");
  }
  const auto spec = middle_third_document(1).to_spec();
  const auto source = MeasureSource::from_spec(spec, 12);
  const auto report = classify_consistency(source, spec.K(), spec.Gamma(), spec.digits_L());
  v.require(!report.consistent, "consistency classifier reports inconsistency");
  v.require(report.completeness && *report.completeness > 0.4, "completeness residual > 0.4");
  v.note("completeness residual " + format_double(report.completeness.value_or(-1.0)));
}

// 9. μ̂_n(t) = B(t)·μ̂_{n-1}((Eᵀ)⁻¹t), quadrature, n ≤ 10.
void self_similarity(Verdict& v, const AcceptanceOptions& options) {
  double worst = 0.0;
  for (const std::string name : {"scale4", "scale4x2"}) {
    const auto spec = builtin(name);
    const auto ifs = build_ifs(spec);
    std::vector<DiscreteMeasure> levels;
    for (int n = 0; n <= 10; ++n) levels.push_back(refine_measure(ifs, n));
    std::mt19937_64 rng(options.seed + 9);
    for (int i = 0; i < 20; ++i) {
      const RealVec t = random_vector(rng, spec.dim(), -8.0, 8.0);
      const RealVec contracted = apply(spec.E_transpose_inverse(), t);
      const Complex b = mask_B(spec, t);
      for (int n = 1; n <= 10; ++n) {
        const Complex lhs = integrate_exponential(levels[n], t);
        const Complex rhs = b * integrate_exponential(levels[n - 1], contracted);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  v.require(worst < 1e-12, "refinement identity within 1e-12");
  v.note("max residual " + sci(worst));
}

// 10. Hermitian symmetry, |μ̂| ≤ 1, K⁰-invariance, dual involution, round trip.
void property_suite(Verdict& v, const AcceptanceOptions& options) {
  std::mt19937_64 rng(options.seed + 10);
  double herm = 0.0, bound = 0.0, invariance = 0.0;
  for (const std::string name : {"scale4", "scale4x2"}) {
    const auto spec = builtin(name);
    TransformSettings settings;
    settings.quadrature_depth = spec.dim() == 1 ? 12 : 8;
    const FourierTransform transform(spec, settings);
    for (int i = 0; i < 50; ++i) {
      const RealVec t = random_vector(rng, spec.dim(), -16.0, 16.0);
      RealVec neg = t;
      for (auto& x : neg) x = -x;
      for (const bool quad : {false, true}) {
        const Complex a = quad ? transform.quadrature(t) : transform.product(t);
        const Complex b = quad ? transform.quadrature(neg) : transform.product(neg);
        herm = std::max(herm, std::abs(a - std::conj(b)));
        bound = std::max(bound, std::abs(a) - 1.0);
      }
    }
    std::vector<RatVec> images, plain;
    for (const auto& u : dual_box(spec.K(), 32)) {
      images.push_back(spec.E_transpose() * u);
      plain.push_back(u);
    }
    const auto a = transform.product_batch(images);
    const auto b = transform.product_batch(plain);
    for (std::size_t i = 0; i < a.size(); ++i) invariance = std::max(invariance, std::abs(a[i] - b[i]));
  }
  v.require(herm <= 1e-12, "Hermitian symmetry");
  v.require(bound <= 1e-12, "|mu_hat| <= 1");
  v.require(invariance < 1e-9, "K0-invariance on |u| <= 32");

  for (const auto& name : builtin_spec_names()) {
    const auto doc = *builtin_spec(name);
    for (const auto* basis : {&doc.K_basis, &doc.A_basis, &doc.Gamma_basis}) {
      const Lattice lat(*basis);
      v.require(dual_lattice(dual_lattice(lat)).same_as(lat), name + " dual involution");
    }
    const auto again = parse_spec_text(spec_to_json(doc).dump());
    v.require(spec_to_json(again) == spec_to_json(doc) && again.K_basis == doc.K_basis &&
                  again.digits_B == doc.digits_B && again.digits_L == doc.digits_L,
              name + " round trip");
  }
  v.note("Hermitian " + sci(herm) + ", K0-invariance " + sci(invariance));
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  using Check = std::function<void(Verdict&, const AcceptanceOptions&)>;
  const std::vector<std::pair<std::string, Check>> criteria = {
      {"sigma reproduction (scale4, s = 2, depths 4..12)", sigma_reproduction},
      {"orthogonality zeros (depth 6) and Gram identity (depth 5)", orthogonality_zeros},
      {"functional equation (quadrature and product)", functional_equation},
      {"Cuntz relations (scale4, box 32)", cuntz_relations},
      {"state values", state_values},
      {"tiling (scale4, scale4x2)", tiling},
      {"separation of points (1024 depth-10 atoms)", separation},
      {"negative control (middle third)", negative_control},
      {"self-similarity identity (n <= 10)", self_similarity},
      {"property suite", property_suite},
  };
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    CriterionResult result;
    result.id = static_cast<int>(i + 1);
    result.name = criteria[i].first;
    const auto start = std::chrono::steady_clock::now();
    Verdict verdict;
    try {
      criteria[i].second(verdict, options);
      result.passed = verdict.passed();
      result.detail = verdict.detail();
    } catch (const std::exception& e) {
      result.passed = false;
      result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(result));
  }
  return results;
}

void print_acceptance(const std::vector<CriterionResult>& results, std::ostream& out) {
  int passed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.id << "  " << r.name << " (" << std::fixed
        << std::setprecision(2) << r.seconds << " s)" << std::defaultfloat << "\n         " << r.detail << "\n";
    passed += r.passed ? 1 : 0;
  }
  out << passed << "/" << results.size() << " acceptance criteria passed\n";
}

}  // namespace fracspec

#include "fracspec/fourier.hpp"

#include <mutex>

#include "fracspec/errors.hpp"
#include "fracspec/kernels.hpp"
#include "fracspec/phase_sum.hpp"

namespace fracspec {

std::string to_string(Backend backend) {
  switch (backend) {
    case Backend::product:
      return "product";
    case Backend::quadrature:
      return "quadrature";
    case Backend::both:
      return "both";
  }
  return "product";
}

Backend parse_backend(const std::string& name) {
  if (name == "product") return Backend::product;
  if (name == "quadrature") return Backend::quadrature;
  if (name == "both") return Backend::both;
  throw ParseError("unknown backend \"" + name + "\"");
}

void TransformSettings::check() const {
  if (product_depth < 1 || product_depth > max_product_depth)
    throw BudgetExceeded("product depth " + std::to_string(product_depth) + " outside [1, " +
                         std::to_string(max_product_depth) + "]");
  if (quadrature_depth < 0) throw BudgetExceeded("negative quadrature depth");
}

Complex mask_B(const SimpleFactorSpec& spec, const RatVec& t) {
  PhaseSum sum;
  for (const auto& b : spec.digits_B()) sum.add(1, dot(b, t));
  const auto result = sum.evaluate();
  if (result.zero) return Complex(0.0, 0.0);
  return result.value / static_cast<double>(spec.N());
}

Complex mask_B(const SimpleFactorSpec& spec, const RealVec& t) {
  Complex s(0.0, 0.0);
  for (const auto& b : spec.digits_B()) {
    double phase = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) phase += to_double(b[j]) * t[j];
    s += unit_phase(phase);
  }
  return s / static_cast<double>(spec.N());
}

struct FourierTransform::Cache {
  std::once_flag once;
  std::unique_ptr<DiscreteMeasure> measure;
  kernels::RealMatrix et_inv;
  std::vector<RealVec> real_digits;
};

FourierTransform::FourierTransform(const SimpleFactorSpec& spec, TransformSettings settings)
    : spec_(std::make_shared<SimpleFactorSpec>(spec)),
      settings_(settings),
      digits_(spec.digits_B()),
      cache_(std::make_shared<Cache>()) {
  settings_.check();
  cache_->et_inv = kernels::RealMatrix::from(spec.E_transpose_inverse());
  for (const auto& b : digits_) cache_->real_digits.push_back(to_real(b));
}

Complex FourierTransform::product(const RatVec& t) const { return product(t, settings_.product_depth); }

Complex FourierTransform::product(const RatVec& t, int depth) const {
  RatVec u = t;
  Complex p(1.0, 0.0);
  const double n = static_cast<double>(digits_.size());
  for (int k = 0; k < depth; ++k) {
    PhaseSum sum;
    bool trivial = true;
    for (const auto& b : digits_) {
      const Rational phase = dot(b, u);
      if (!is_integer(phase)) trivial = false;
      sum.add(1, phase);
    }
    if (!trivial) {
      const auto factor = sum.evaluate();
      if (factor.zero) return Complex(0.0, 0.0);
      p *= factor.value / n;
    }
    if (is_zero(u)) break;  // every later factor is B(0) = 1
    u = spec_->E_transpose_inverse() * u;
  }
  return p;
}

Complex FourierTransform::product(const RealVec& t) const { return product(t, settings_.product_depth); }

Complex FourierTransform::product(const RealVec& t, int depth) const {
  return kernels::product_transform_serial(cache_->real_digits, cache_->et_inv, depth, t).front();
}

std::vector<Complex> FourierTransform::product_batch(const std::vector<RatVec>& freqs) const {
  std::vector<Complex> out(freqs.size());
  const auto n = static_cast<std::ptrdiff_t>(freqs.size());
  if (settings_.parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      out[static_cast<std::size_t>(i)] = product(freqs[static_cast<std::size_t>(i)]);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      out[static_cast<std::size_t>(i)] = product(freqs[static_cast<std::size_t>(i)]);
  }
  return out;
}

const DiscreteMeasure& FourierTransform::measure() const {
  std::call_once(cache_->once, [this] {
    RefineOptions options;
    options.atom_budget = settings_.atom_budget;
    options.parallel = settings_.parallel;
    try {
      cache_->measure =
          std::make_unique<DiscreteMeasure>(refine_measure(build_ifs(*spec_), settings_.quadrature_depth, options));
    } catch (const DepthTooLarge& e) {
      throw BudgetExceeded(e.what());
    }
  });
  return *cache_->measure;
}

Complex FourierTransform::quadrature(const RealVec& t) const {
  return integrate_exponential(measure(), t, settings_.parallel);
}

TransformValue FourierTransform::evaluate(const RatVec& t) const {
  switch (settings_.backend) {
    case Backend::product:
      return {product(t), Backend::product, settings_.product_depth, 0.0};
    case Backend::quadrature:
      return {quadrature(to_real(t)), Backend::quadrature, settings_.quadrature_depth, 0.0};
    case Backend::both: {
      const Complex p = product(t);
      return {p, Backend::both, settings_.product_depth, std::abs(p - quadrature(to_real(t)))};
    }
  }
  return {};
}

TransformValue FourierTransform::evaluate(const RealVec& t) const {
  switch (settings_.backend) {
    case Backend::product:
      return {product(t), Backend::product, settings_.product_depth, 0.0};
    case Backend::quadrature:
      return {quadrature(t), Backend::quadrature, settings_.quadrature_depth, 0.0};
    case Backend::both: {
      const Complex p = product(t);
      return {p, Backend::both, settings_.product_depth, std::abs(p - quadrature(t))};
    }
  }
  return {};
}

TransformValue mu_hat(const SimpleFactorSpec& spec, const RatVec& t, const TransformSettings& settings) {
  return FourierTransform(spec, settings).evaluate(t);
}

TransformValue mu_hat(const SimpleFactorSpec& spec, const RealVec& t, const TransformSettings& settings) {
  return FourierTransform(spec, settings).evaluate(t);
}

namespace {

RealVec apply_real(const RatMat& m, const RealVec& t) {
  const auto r = m.to_real();
  RealVec out(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) out[i] += r[i][j] * t[j];
  return out;
}

}  // namespace

double functional_equation_residual(const FourierTransform& transform, const RealVec& t) {
  const RealVec et = apply_real(transform.spec().E_transpose(), t);
  return std::abs(transform.quadrature(et) - mask_B(transform.spec(), et) * transform.quadrature(t));
}

double functional_equation_residual(const SimpleFactorSpec& spec, const RealVec& t, const TransformSettings& settings) {
  return functional_equation_residual(FourierTransform(spec, settings), t);
}

double product_functional_residual(const FourierTransform& transform, const RealVec& t) {
  const int depth = transform.settings().product_depth;
  const RealVec et = apply_real(transform.spec().E_transpose(), t);
  return std::abs(transform.product(et, depth) - mask_B(transform.spec(), et) * transform.product(t, depth - 1));
}

}  // namespace fracspec

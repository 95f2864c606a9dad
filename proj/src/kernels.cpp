#include "fracspec/kernels.hpp"

#include <cmath>
#include <numbers>

#include "fracspec/phase_sum.hpp"

namespace fracspec::kernels {

namespace {

Complex mask_value(const std::vector<RealVec>& digits, const double* u, std::size_t dim) {
  Complex s(0.0, 0.0);
  for (const auto& b : digits) {
    double phase = 0.0;
    for (std::size_t j = 0; j < dim; ++j) phase += b[j] * u[j];
    s += unit_phase(phase);
  }
  return s / static_cast<double>(digits.size());
}

Complex product_one(const std::vector<RealVec>& digits, const RealMatrix& et_inv, int depth, const double* t0) {
  const std::size_t d = et_inv.dim;
  std::vector<double> t(t0, t0 + d), next(d);
  Complex p(1.0, 0.0);
  for (int k = 0; k < depth; ++k) {
    p *= mask_value(digits, t.data(), d);
    if (p == Complex(0.0, 0.0)) break;
    for (std::size_t i = 0; i < d; ++i) {
      next[i] = 0.0;
      for (std::size_t j = 0; j < d; ++j) next[i] += et_inv(i, j) * t[j];
    }
    t.swap(next);
  }
  return p;
}

}  // namespace

RealMatrix RealMatrix::from(const RatMat& m) {
  RealMatrix r{m.dim(), std::vector<double>(m.dim() * m.dim())};
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r.data[i * m.dim() + j] = to_double(m(i, j));
  return r;
}

std::vector<double> refine_atoms_serial(const RealMatrix& e_inv, const std::vector<RealVec>& digits, int depth) {
  const std::size_t d = e_inv.dim;
  std::vector<double> atoms(d, 0.0);
  for (int level = 0; level < depth; ++level) {
    const std::size_t old_count = atoms.size() / d;
    std::vector<double> next(old_count * digits.size() * d);
    for (std::size_t i = 0; i < old_count; ++i) {
      const double* x = &atoms[i * d];
      for (std::size_t b = 0; b < digits.size(); ++b) {
        double* y = &next[(b + digits.size() * i) * d];
        for (std::size_t r = 0; r < d; ++r) {
          y[r] = digits[b][r];
          for (std::size_t c = 0; c < d; ++c) y[r] += e_inv(r, c) * x[c];
        }
      }
    }
    atoms.swap(next);
  }
  return atoms;
}

std::vector<double> refine_atoms_parallel(const RealMatrix& e_inv, const std::vector<RealVec>& digits, int depth) {
  const std::size_t d = e_inv.dim;
  const std::size_t n_digits = digits.size();
  std::vector<double> atoms(d, 0.0);
  for (int level = 0; level < depth; ++level) {
    const auto old_count = static_cast<std::ptrdiff_t>(atoms.size() / d);
    std::vector<double> next(static_cast<std::size_t>(old_count) * n_digits * d);
#pragma omp parallel for schedule(static) if (old_count >= 1024)
    for (std::ptrdiff_t i = 0; i < old_count; ++i) {
      const double* x = &atoms[static_cast<std::size_t>(i) * d];
      for (std::size_t b = 0; b < n_digits; ++b) {
        double* y = &next[(b + n_digits * static_cast<std::size_t>(i)) * d];
        for (std::size_t r = 0; r < d; ++r) {
          y[r] = digits[b][r];
          for (std::size_t c = 0; c < d; ++c) y[r] += e_inv(r, c) * x[c];
        }
      }
    }
    atoms.swap(next);
  }
  return atoms;
}

Complex exp_sum_serial(std::span<const double> points, std::size_t dim, double weight, std::span<const double> t) {
  Complex s(0.0, 0.0);
  const std::size_t count = points.size() / dim;
  for (std::size_t i = 0; i < count; ++i) {
    double phase = 0.0;
    for (std::size_t j = 0; j < dim; ++j) phase += t[j] * points[i * dim + j];
    s += unit_phase(phase);
  }
  return weight * s;
}

Complex exp_sum_parallel(std::span<const double> points, std::size_t dim, double weight, std::span<const double> t) {
  const std::size_t count = points.size() / dim;
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<Complex> partial(chunks);
  const auto signed_chunks = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < signed_chunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = std::min(count, begin + kChunk);
    Complex s(0.0, 0.0);
    for (std::size_t i = begin; i < end; ++i) {
      double phase = 0.0;
      for (std::size_t j = 0; j < dim; ++j) phase += t[j] * points[i * dim + j];
      s += unit_phase(phase);
    }
    partial[static_cast<std::size_t>(c)] = s;
  }
  return weight * pairwise_sum(partial);
}

std::vector<Complex> product_transform_serial(const std::vector<RealVec>& digits, const RealMatrix& et_inv,
                                              int depth, std::span<const double> freqs) {
  const std::size_t d = et_inv.dim;
  std::vector<Complex> out(freqs.size() / d);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = product_one(digits, et_inv, depth, &freqs[i * d]);
  return out;
}

std::vector<Complex> product_transform_parallel(const std::vector<RealVec>& digits, const RealMatrix& et_inv,
                                                int depth, std::span<const double> freqs) {
  const std::size_t d = et_inv.dim;
  std::vector<Complex> out(freqs.size() / d);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = product_one(digits, et_inv, depth, &freqs[static_cast<std::size_t>(i) * d]);
  return out;
}

Complex pairwise_sum(std::span<const Complex> values) {
  if (values.empty()) return Complex(0.0, 0.0);
  if (values.size() == 1) return values[0];
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

}  // namespace fracspec::kernels

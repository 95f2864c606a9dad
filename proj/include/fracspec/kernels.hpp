#ifndef FRACSPEC_KERNELS_HPP
#define FRACSPEC_KERNELS_HPP

// Floating-point inner loops. Each kernel has a serial reference version,
// kept for testing and benchmarking, and an OpenMP version. The parallel
// reductions sum fixed-size chunks and combine the chunk totals pairwise, so
// their result does not depend on the thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "fracspec/rational.hpp"

namespace fracspec::kernels {

/// Dense row-major d×d matrix.
struct RealMatrix {
  std::size_t dim = 0;
  std::vector<double> data;

  static RealMatrix from(const RatMat& m);
  double operator()(std::size_t i, std::size_t j) const { return data[i * dim + j]; }
};

inline constexpr std::size_t kChunk = 4096;

/// Atoms Σ_{k=1}^{n} E^{-(k-1)} b_k of the depth-n measure, row-major
/// (N^n × d). Atom i uses digit (i / N^{k-1}) mod N at level k, so the
/// first N^{n-1} atoms are the depth-(n-1) atoms when digits[0] = 0.
///
/// Both build the atoms by repeated push-forward x ↦ E⁻¹x + b; the parallel
/// version splits each level over the parent atoms and gives identical bits.
std::vector<double> refine_atoms_serial(const RealMatrix& e_inv, const std::vector<RealVec>& digits, int depth);
std::vector<double> refine_atoms_parallel(const RealMatrix& e_inv, const std::vector<RealVec>& digits, int depth);

/// weight · Σ_i e^{i2π t·x_i} over row-major points.
Complex exp_sum_serial(std::span<const double> points, std::size_t dim, double weight, std::span<const double> t);
Complex exp_sum_parallel(std::span<const double> points, std::size_t dim, double weight, std::span<const double> t);

/// Product backend in floating point: Π_{k<depth} B((Eᵀ)^{-k} t) for each
/// row of `freqs` (row-major, count × d).
std::vector<Complex> product_transform_serial(const std::vector<RealVec>& digits, const RealMatrix& et_inv,
                                              int depth, std::span<const double> freqs);
std::vector<Complex> product_transform_parallel(const std::vector<RealVec>& digits, const RealMatrix& et_inv,
                                                int depth, std::span<const double> freqs);

/// Pairwise sum of chunk partials; deterministic for a fixed input length.
Complex pairwise_sum(std::span<const Complex> values);

/// Neumaier-compensated sum in the order given.
double compensated_sum(std::span<const double> values);

}  // namespace fracspec::kernels

#endif  // FRACSPEC_KERNELS_HPP

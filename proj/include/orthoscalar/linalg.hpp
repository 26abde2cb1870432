#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace orthoscalar {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Outcome of a thresholded singular-value rank decision.
struct RankDecision {
  Eigen::Index rank = 0;
  Eigen::Index columns = 0;
  double sigma_max = 0.0;
  double threshold = 0.0;
  /// Ratio of the smallest retained singular value to the largest discarded
  /// one (floored at machine precision times sigma_max).
  double gap = 0.0;
  Eigen::VectorXd singular_values;

  Eigen::Index nullity() const { return columns - rank; }
  bool reliable(double min_gap = 1e3) const { return gap >= min_gap; }
};

/// Singular value sigma counts as zero when sigma < rel_tol * sigma_max.
RankDecision numerical_rank(const Eigen::MatrixXd& m, double rel_tol);

/// Orthonormal basis of the numerical null space of a complex matrix,
/// one column per null direction.
ComplexMatrix null_space(const ComplexMatrix& m, double rel_tol);

/// Basis of d x d Hermitian matrices (real dimension d^2): diagonal units,
/// then E_ij + E_ji and i(E_ij - E_ji) for i < j.
std::vector<ComplexMatrix> hermitian_basis(Eigen::Index d);

/// Real coordinates of a Hermitian matrix matching hermitian_basis ordering
/// (diagonal, then Re and Im of the strict upper triangle).
Eigen::VectorXd hermitian_coordinates(const ComplexMatrix& h);

/// Real and imaginary parts of every entry, column-major, real parts first.
Eigen::VectorXd realify(const ComplexMatrix& m);

/// Haar-distributed unitary from a QR of a complex Gaussian matrix.
ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng);

/// Complex Gaussian matrix with independent N(0, scale^2) real and imaginary parts.
ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, double scale, std::mt19937_64& rng);

/// Unitary polar factor U of X = U P (via SVD).
ComplexMatrix polar_unitary(const ComplexMatrix& x);

}  // namespace orthoscalar

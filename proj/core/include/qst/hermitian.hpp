#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qst/rng.hpp"

namespace qst {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense d x d Hermitian matrix. Construction checks hermiticity to 1e-12
// (max entry deviation) and then stores the exactly symmetrized matrix
// (m + m^dagger)/2, so downstream spectral code sees clean input.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix m);
  static HermitianMatrix zero(int dim);
  static HermitianMatrix identity(int dim);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& mat() const { return mat_; }
  Complex operator()(int j, int k) const { return mat_(j, k); }
  double trace() const { return mat_.trace().real(); }
  double frobenius_norm() const { return mat_.norm(); }

 private:
  Matrix mat_;
};

// Eigendecomposition with eigenvalues sorted descending and a deterministic
// eigenvector phase convention (first component above threshold made real
// and positive).
struct EigenDecomposition {
  Eigen::VectorXd values;  // descending
  Matrix vectors;          // columns are eigenvectors

  Matrix reconstruct() const {
    return vectors * values.asDiagonal() * vectors.adjoint();
  }
};

// Unit-trace positive semidefinite Hermitian matrix. Construction checks
// |trace - 1| <= 1e-10 and min eigenvalue >= -1e-10, and caches the spectrum
// and the numerical rank (eigenvalues above 1e-9 * largest).
class DensityMatrix {
 public:
  explicit DensityMatrix(const HermitianMatrix& h);
  explicit DensityMatrix(Matrix m) : DensityMatrix(HermitianMatrix(std::move(m))) {}
  static DensityMatrix maximally_mixed(int dim);
  // Diagonal state diag(spectrum) with spectrum sorted descending.
  static DensityMatrix diagonal(Eigen::VectorXd spectrum);

  int dim() const { return hermitian_.dim(); }
  int rank() const { return rank_; }
  const Matrix& mat() const { return hermitian_.mat(); }
  const HermitianMatrix& hermitian() const { return hermitian_; }
  // Eigenvalues sorted descending (cached at construction).
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  HermitianMatrix hermitian_;
  Eigen::VectorXd eigenvalues_;
  int rank_;
};

// Hilbert-Schmidt inner product Tr(a b); real for Hermitian arguments.
double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b);
// Squared Hilbert-Schmidt distance ||a - b||_F^2.
double hs_dist2(const HermitianMatrix& a, const HermitianMatrix& b);

EigenDecomposition eigh(const HermitianMatrix& h);
EigenDecomposition eigh(const Matrix& m);  // symmetrizes, then decomposes

// GUE(n) sample scaled so diagonal entries are N(0, eps^2) and off-diagonal
// entries have independent N(0, eps^2/2) real and imaginary parts; the
// large-n spectral law is then the semicircle of radius 2*eps*sqrt(n).
HermitianMatrix sample_gue(int n, double eps, RngStream& rng);

// rho0 + delta with delta = sample_gue(d, eps). With traceless set, delta is
// replaced by delta - (Tr delta / d) * I so the result has unit trace.
HermitianMatrix sample_perturbed_state(const DensityMatrix& rho0, double eps,
                                       bool traceless, RngStream& rng);

enum class SpectrumRule { kEqualWeights, kUniformSimplex };

// Haar-random rank-r state U diag(p_1..p_r, 0..0) U^dagger; U from QR of a
// complex Ginibre matrix with R-diagonal phase fix, p from the spectrum rule.
DensityMatrix random_rank_r_state(int d, int r, SpectrumRule spectrum,
                                  RngStream& rng);

// Spectrum vector (descending, sums to 1, r entries) for the given rule.
Eigen::VectorXd sample_spectrum(int r, SpectrumRule rule, RngStream& rng);

}  // namespace qst

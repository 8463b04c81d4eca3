#include "qst/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qst {

namespace {
constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kEigTol = 1e-10;
constexpr double kRankRel = 1e-9;
}  // namespace

HermitianMatrix::HermitianMatrix(Matrix m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("HermitianMatrix: matrix must be square, dim >= 1");
  }
  const double dev = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
  if (dev > kHermTol) {
    throw std::invalid_argument("HermitianMatrix: input is not Hermitian (max |m - m^H| = " +
                                std::to_string(dev) + ")");
  }
  mat_ = 0.5 * (m + m.adjoint().eval());
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(Matrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(Matrix::Identity(dim, dim));
}

double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("hs_inner: dimension mismatch");
  }
  // Tr(a b) = sum_jk a_jk conj(b_jk) for Hermitian b.
  return a.mat().cwiseProduct(b.mat().conjugate()).sum().real();
}

double hs_dist2(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("hs_dist2: dimension mismatch");
  }
  return (a.mat() - b.mat()).squaredNorm();
}

EigenDecomposition eigh(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigendecomposition failed");
  }
  const int d = h.dim();
  EigenDecomposition out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  // Eigen sorts ascending; flip to descending.
  for (int j = 0; j < d; ++j) {
    out.values(j) = solver.eigenvalues()(d - 1 - j);
    out.vectors.col(j) = solver.eigenvectors().col(d - 1 - j);
  }
  // Phase fix: first component with non-negligible magnitude made real-positive.
  for (int j = 0; j < d; ++j) {
    const double scale = out.vectors.col(j).cwiseAbs().maxCoeff();
    for (int i = 0; i < d; ++i) {
      const Complex v = out.vectors(i, j);
      if (std::abs(v) > 1e-12 * scale) {
        out.vectors.col(j) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
  return out;
}

EigenDecomposition eigh(const Matrix& m) { return eigh(HermitianMatrix(m)); }

DensityMatrix::DensityMatrix(const HermitianMatrix& h) : hermitian_(h), rank_(0) {
  const double tr = hermitian_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                std::to_string(tr - 1.0));
  }
  EigenDecomposition dec = eigh(hermitian_);
  eigenvalues_ = dec.values;
  if (eigenvalues_(eigenvalues_.size() - 1) < -kEigTol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(eigenvalues_(eigenvalues_.size() - 1)));
  }
  const double largest = std::max(eigenvalues_(0), 0.0);
  for (int j = 0; j < eigenvalues_.size(); ++j) {
    if (eigenvalues_(j) > kRankRel * largest) ++rank_;
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(Eigen::VectorXd spectrum) {
  std::sort(spectrum.begin(), spectrum.end(), std::greater<double>());
  const int d = static_cast<int>(spectrum.size());
  Matrix m = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) m(j, j) = spectrum(j);
  return DensityMatrix(m);
}

HermitianMatrix sample_gue(int n, double eps, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_gue: n must be >= 1");
  if (eps <= 0.0) throw std::invalid_argument("sample_gue: eps must be > 0");
  Matrix m(n, n);
  const double off_sigma = eps / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    m(j, j) = Complex(eps * rng.gaussian(), 0.0);
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const Complex z = rng.gaussian_complex(off_sigma);
      m(j, k) = z;
      m(k, j) = std::conj(z);
    }
  }
  return HermitianMatrix(std::move(m));
}

HermitianMatrix sample_perturbed_state(const DensityMatrix& rho0, double eps,
                                       bool traceless, RngStream& rng) {
  if (eps <= 0.0) throw std::invalid_argument("sample_perturbed_state: eps must be > 0");
  const int d = rho0.dim();
  Matrix delta = sample_gue(d, eps, rng).mat();
  if (traceless) {
    const double tr = delta.trace().real();
    delta -= (tr / d) * Matrix::Identity(d, d);
  }
  return HermitianMatrix(rho0.mat() + delta);
}

Eigen::VectorXd sample_spectrum(int r, SpectrumRule rule, RngStream& rng) {
  if (r < 1) throw std::invalid_argument("sample_spectrum: r must be >= 1");
  Eigen::VectorXd p(r);
  switch (rule) {
    case SpectrumRule::kEqualWeights:
      p.setConstant(1.0 / r);
      break;
    case SpectrumRule::kUniformSimplex: {
      // Normalized i.i.d. exponentials are uniform on the simplex.
      double total = 0.0;
      for (int j = 0; j < r; ++j) {
        p(j) = -std::log(rng.uniform_pos());
        total += p(j);
      }
      p /= total;
      std::sort(p.begin(), p.end(), std::greater<double>());
      break;
    }
  }
  return p;
}

DensityMatrix random_rank_r_state(int d, int r, SpectrumRule spectrum,
                                  RngStream& rng) {
  if (r < 1 || r > d) throw std::invalid_argument("random_rank_r_state: need 1 <= r <= d");
  Eigen::VectorXd p = sample_spectrum(r, spectrum, rng);
  // Haar unitary: QR of complex Ginibre, with the R diagonal's phases folded
  // into Q so the distribution is exactly Haar.
  Matrix g(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      g(j, k) = rng.gaussian_complex(1.0 / std::sqrt(2.0));
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix rdiag = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = rdiag(j, j);
    const double a = std::abs(rjj);
    q.col(j) *= (a > 0.0) ? rjj / a : Complex(1.0, 0.0);
  }
  Matrix rho = Matrix::Zero(d, d);
  for (int j = 0; j < r; ++j) {
    rho += p(j) * (q.col(j) * q.col(j).adjoint());
  }
  return DensityMatrix(std::move(rho));
}

}  // namespace qst

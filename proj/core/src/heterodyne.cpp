#include "qst/heterodyne.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qst {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQFloor = 1e-300;

// Rows are the overlap vectors of each sample.
Matrix overlap_matrix(const HeterodyneDataset& data, int d) {
  Matrix a(data.samples.size(), d);
  for (size_t s = 0; s < data.samples.size(); ++s) {
    a.row(s) = coherent_overlap(data.samples[s], d).transpose();
  }
  return a;
}

// q_s = v_s^H rho v_s for all samples at once.
Eigen::VectorXd sample_probabilities(const Matrix& a, const Matrix& rho) {
  return (a.conjugate() * rho).cwiseProduct(a).rowwise().sum().real();
}

double loglik_from_probs(const Eigen::VectorXd& q) {
  double total = 0.0;
  for (Eigen::Index s = 0; s < q.size(); ++s) {
    if (q(s) <= kQFloor) return -std::numeric_limits<double>::infinity();
    total += std::log(q(s));
  }
  return total - static_cast<double>(q.size()) * std::log(kPi);
}

}  // namespace

Vector coherent_overlap(Complex alpha, int d) {
  if (d < 1) throw std::invalid_argument("coherent_overlap: d must be >= 1");
  Vector v(d);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < d; ++n) {
    v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  return v;
}

double husimi_q(const DensityMatrix& rho, Complex alpha) {
  const Vector v = coherent_overlap(alpha, rho.dim());
  const double q = (v.adjoint() * rho.mat() * v)(0).real() / kPi;
  if (q < -1e-14) {
    throw std::runtime_error("husimi_q: negative value (PSD violation)");
  }
  return std::max(q, 0.0);
}

HeterodyneDataset sample_husimi(const DensityMatrix& rho, int n, RngStream& rng,
                                std::string label) {
  if (n < 1) throw std::invalid_argument("sample_husimi: n must be >= 1");
  const double t = rho.dim() + 1.0;
  const double sigma = std::sqrt(t / 2.0);
  const double span = 2.0 * std::sqrt(t);

  // Ratio of target to proposal density; the envelope constant is its grid
  // maximum times a safety factor.
  const auto ratio = [&](Complex alpha) {
    return husimi_q(rho, alpha) * kPi * t * std::exp(std::norm(alpha) / t);
  };
  const auto build_bound = [&](int grid) {
    double best = 0.0;
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        const double x = -span + 2.0 * span * i / (grid - 1);
        const double y = -span + 2.0 * span * j / (grid - 1);
        best = std::max(best, ratio(Complex(x, y)));
      }
    }
    return 1.05 * best;
  };

  HeterodyneDataset out;
  out.rho0_label = std::move(label);
  out.seed = rng.seed();
  out.n_samples = n;

  int grid = 200;
  double bound = build_bound(grid);
  const RngStream initial = rng;
  for (;;) {
    bool violated = false;
    out.samples.clear();
    out.samples.reserve(n);
    RngStream local = initial;
    while (static_cast<int>(out.samples.size()) < n) {
      const Complex alpha = local.gaussian_complex(sigma);
      const double rat = ratio(alpha);
      if (rat > bound) {
        violated = true;
        break;
      }
      const double u = local.uniform();
      if (u * bound <= rat) out.samples.push_back(alpha);
    }
    if (!violated) {
      rng = local;
      return out;
    }
    grid *= 2;
    if (grid > 12800) {
      throw std::runtime_error("sample_husimi: envelope too small");
    }
    bound = build_bound(grid);
  }
}

double loglikelihood(const DensityMatrix& rho, const HeterodyneDataset& data,
                     int d_model) {
  if (rho.dim() != d_model) {
    throw std::invalid_argument("loglikelihood: rho.dim must equal d_model");
  }
  if (data.samples.empty()) {
    throw std::invalid_argument("loglikelihood: empty dataset");
  }
  const Matrix a = overlap_matrix(data, d_model);
  return loglik_from_probs(sample_probabilities(a, rho.mat()));
}

DensityMatrix embed(const DensityMatrix& rho, int d_model) {
  if (d_model < rho.dim()) {
    throw std::invalid_argument("embed: d_model smaller than state dimension");
  }
  if (d_model == rho.dim()) return rho;
  Matrix m = Matrix::Zero(d_model, d_model);
  m.topLeftCorner(rho.dim(), rho.dim()) = rho.mat();
  return DensityMatrix(std::move(m));
}

MleResult mle_fit(const HeterodyneDataset& data, int d_model, const MleOptions& opts) {
  if (d_model < 2) throw std::invalid_argument("mle_fit: d_model must be >= 2");
  if (data.samples.empty()) throw std::invalid_argument("mle_fit: empty dataset");
  const int n = static_cast<int>(data.samples.size());
  const Matrix a = overlap_matrix(data, d_model);
  const Matrix eye = Matrix::Identity(d_model, d_model);

  Matrix rho = eye / static_cast<double>(d_model);
  Eigen::VectorXd q = sample_probabilities(a, rho);
  double loglik = loglik_from_probs(q);
  double gamma = opts.gamma0;
  int iters = 0;
  bool converged = false;

  while (iters < opts.max_iters) {
    ++iters;
    // R(rho) = (1/N) sum_s P_s / q_s built as a single dense product.
    const Eigen::VectorXd w = q.cwiseMax(kQFloor).cwiseInverse() / n;
    const Matrix r_op = a.transpose() * w.asDiagonal() * a.conjugate();

    bool accepted = false;
    while (gamma >= 1e-12) {
      const Matrix y = eye + gamma * r_op;
      Matrix cand = y * rho * y.adjoint();
      cand = 0.5 * (cand + cand.adjoint().eval());
      cand /= cand.trace().real();
      const Eigen::VectorXd q_cand = sample_probabilities(a, cand);
      const double ll_cand = loglik_from_probs(q_cand);
      if (ll_cand >= loglik) {
        const double gain = ll_cand - loglik;
        rho = std::move(cand);
        q = q_cand;
        loglik = ll_cand;
        accepted = true;
        if (gain < opts.tol) converged = true;
        gamma = std::min(opts.gamma0, gamma * 2.0);
        break;
      }
      gamma *= 0.5;
    }
    if (!accepted || converged) break;
  }

  // Clean negligible negative eigenvalues before constructing the result.
  EigenDecomposition dec = eigh(HermitianMatrix(rho));
  Eigen::VectorXd vals = dec.values.cwiseMax(0.0);
  vals /= vals.sum();
  Matrix cleaned = dec.vectors * vals.asDiagonal() * dec.vectors.adjoint();
  MleResult out{DensityMatrix(std::move(cleaned)), loglik, iters, converged};
  return out;
}

double lambda_empirical(const DensityMatrix& rho0, const HeterodyneDataset& data,
                        int d_model, const MleOptions& opts) {
  const MleResult fit = mle_fit(data, d_model, opts);
  const double ref = loglikelihood(embed(rho0, d_model), data, d_model);
  return 2.0 * (fit.loglik - ref);
}

std::vector<Matrix> gell_mann_basis(int d) {
  if (d < 2) throw std::invalid_argument("gell_mann_basis: d must be >= 2");
  std::vector<Matrix> basis;
  basis.reserve(static_cast<size_t>(d) * d - 1);
  for (int l = 1; l < d; ++l) {
    Matrix m = Matrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int i = 0; i < l; ++i) m(i, i) = norm;
    m(l, l) = -static_cast<double>(l) * norm;
    basis.push_back(std::move(m));
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix x = Matrix::Zero(d, d);
      x(j, k) = inv_sqrt2;
      x(k, j) = inv_sqrt2;
      basis.push_back(std::move(x));
      Matrix y = Matrix::Zero(d, d);
      y(j, k) = Complex(0.0, -inv_sqrt2);
      y(k, j) = Complex(0.0, inv_sqrt2);
      basis.push_back(std::move(y));
    }
  }
  return basis;
}

namespace {

// W_si = (v_s^H B_i v_s) / q_s without materializing the basis matrices.
Eigen::MatrixXd fisher_design(const Matrix& a, const Eigen::VectorXd& q, int d) {
  const int n = static_cast<int>(a.rows());
  const int m = d * d - 1;
  Eigen::MatrixXd w(n, m);
  const double sqrt2 = std::sqrt(2.0);
  for (int s = 0; s < n; ++s) {
    int col = 0;
    double prefix = 0.0;  // running sum of |v_i|^2 for the diagonal elements
    for (int l = 1; l < d; ++l) {
      prefix += std::norm(a(s, l - 1));
      const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
      w(s, col++) = (prefix - l * std::norm(a(s, l))) * norm;
    }
    for (int j = 0; j < d; ++j) {
      for (int k = j + 1; k < d; ++k) {
        const Complex cross = std::conj(a(s, j)) * a(s, k);
        w(s, col++) = sqrt2 * cross.real();
        w(s, col++) = sqrt2 * cross.imag();
      }
    }
    w.row(s) /= std::max(q(s), kQFloor);
  }
  return w;
}

FisherEstimate condition_from_matrix(Eigen::MatrixXd h, int n_datasets) {
  FisherEstimate out;
  out.n_datasets_averaged = n_datasets;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  const double largest = solver.eigenvalues().maxCoeff();
  double smallest = solver.eigenvalues().minCoeff();
  const double floor = 1e-14 * largest;
  if (smallest < floor) {
    smallest = floor;
    out.capped = true;
  }
  out.condition_number = largest / smallest;
  out.matrix = std::move(h);
  return out;
}

}  // namespace

FisherEstimate fisher_hessian(const DensityMatrix& rho_eval,
                              const HeterodyneDataset& data, int d_model,
                              double regularizer) {
  if (rho_eval.dim() != d_model) {
    throw std::invalid_argument("fisher_hessian: rho_eval.dim must equal d_model");
  }
  const Matrix reg = (1.0 - regularizer) * rho_eval.mat() +
                     regularizer * Matrix::Identity(d_model, d_model) / d_model;
  const Matrix a = overlap_matrix(data, d_model);
  const Eigen::VectorXd q = sample_probabilities(a, reg);
  const Eigen::MatrixXd w = fisher_design(a, q, d_model);
  return condition_from_matrix(w.transpose() * w, 1);
}

FisherEstimate average_fisher(const DensityMatrix& rho_eval,
                              const std::vector<HeterodyneDataset>& datasets,
                              int d_model, double regularizer) {
  if (datasets.empty()) throw std::invalid_argument("average_fisher: no datasets");
  Eigen::MatrixXd total;
  for (const auto& data : datasets) {
    FisherEstimate f = fisher_hessian(rho_eval, data, d_model, regularizer);
    if (total.size() == 0) {
      total = std::move(f.matrix);
    } else {
      total += f.matrix;
    }
  }
  total /= static_cast<double>(datasets.size());
  return condition_from_matrix(std::move(total), static_cast<int>(datasets.size()));
}

}  // namespace qst

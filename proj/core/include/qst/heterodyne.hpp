#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qst/hermitian.hpp"

namespace qst {

// Fock-basis coherent-state overlap vector, v_n = <n|alpha> for n < d,
// via the stable recurrence v_{n+1} = v_n alpha / sqrt(n+1).
Vector coherent_overlap(Complex alpha, int d);

// Husimi Q-function Q(alpha) = <alpha|rho|alpha>/pi (clamped at 0; throws on
// a PSD violation below -1e-14).
double husimi_q(const DensityMatrix& rho, Complex alpha);

struct HeterodyneDataset {
  std::vector<Complex> samples;
  std::string rho0_label;
  std::uint64_t seed = 0;
  int n_samples = 0;
};

// Exact i.i.d. draws from Q_rho by rejection sampling against a complex
// Gaussian envelope (per-axis variance T/2, T = dim + 1). The envelope bound
// is 1.05x the grid maximum of Q/proposal; a bound violation during sampling
// rebuilds the bound on a finer grid and restarts deterministically.
HeterodyneDataset sample_husimi(const DensityMatrix& rho, int n, RngStream& rng,
                                std::string label = "");

// Sum over samples of log Q(alpha_s) (the 1/pi per sample included); returns
// -infinity as a sentinel if any sample has Q <= 1e-300.
double loglikelihood(const DensityMatrix& rho, const HeterodyneDataset& data,
                     int d_model);

struct MleOptions {
  int max_iters = 100000;
  double tol = 1e-10;    // accepted per-iteration loglikelihood gain
  double gamma0 = 1.0;   // initial dilution
};

struct MleResult {
  DensityMatrix rho;
  double loglik = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Maximum-likelihood state over the d_model-dimensional model by diluted
// R rho R fixed-point iteration with backtracking (monotone ascent).
MleResult mle_fit(const HeterodyneDataset& data, int d_model,
                  const MleOptions& opts = {});

// Zero-pad rho into a d_model-dimensional model (d_model >= rho.dim()).
DensityMatrix embed(const DensityMatrix& rho, int d_model);

// 2 [ loglik(mle_fit) - loglik(embed(rho0)) ]; >= 0 up to optimizer slack.
double lambda_empirical(const DensityMatrix& rho0, const HeterodyneDataset& data,
                        int d_model, const MleOptions& opts = {});

struct FisherEstimate {
  Eigen::MatrixXd matrix;  // (d^2-1) x (d^2-1), traceless Hermitian basis
  double condition_number = 1.0;
  bool capped = false;  // smallest eigenvalue below 1e-14 * largest
  int n_datasets_averaged = 1;
};

// Orthonormal traceless Hermitian basis (generalized Gell-Mann matrices,
// fixed ordering: d-1 diagonal elements, then for j<k the symmetric and
// antisymmetric pair).
std::vector<Matrix> gell_mann_basis(int d);

// Outer-product Hessian of the negative loglikelihood at rho_eval
// (regularized to full support):
//   H_ij = sum_s (v_s^H B_i v_s)(v_s^H B_j v_s) / Tr(rho P_s)^2.
FisherEstimate fisher_hessian(const DensityMatrix& rho_eval,
                              const HeterodyneDataset& data, int d_model,
                              double regularizer = 1e-6);

// Arithmetic average of the per-dataset Hessian matrices, conditioned after
// averaging.
FisherEstimate average_fisher(const DensityMatrix& rho_eval,
                              const std::vector<HeterodyneDataset>& datasets,
                              int d_model, double regularizer = 1e-6);

}  // namespace qst

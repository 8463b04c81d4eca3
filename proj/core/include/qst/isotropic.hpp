#pragma once

#include <cstdint>
#include <vector>

#include "qst/hermitian.hpp"
#include "qst/projection.hpp"

namespace qst {

enum class ProjectionMode { kStateSet, kCone };

struct IsotropicConfig {
  int d = 2;
  int r = 1;
  double eps = 1e-4;
  int trials = 500;
  ProjectionMode projection = ProjectionMode::kCone;
  std::uint64_t seed = 0;
  SpectrumRule spectrum = SpectrumRule::kEqualWeights;
  bool traceless = true;
  int workers = 0;  // 0 = hardware concurrency
};

struct TrialResult {
  double lambda = 0.0;
  Eigen::MatrixXd lambda_jk;   // in rho0's eigenbasis
  double delta_support = 0.0;  // sum of raw GUE diagonal over the support
};

struct IsotropicSummary {
  double mean_lambda = 0.0;
  double stderr_lambda = 0.0;
  Eigen::MatrixXd mean_lambda_jk;
  Eigen::MatrixXd stderr_lambda_jk;
  Eigen::ArrayXXi l_mask;  // 1 = "L" entry, 0 = kite, in rho0's eigenbasis
  int trials = 0;
  // Diagnostics for the support-diagonal perturbation sum (mean ~ 0,
  // variance ~ r eps^2 for the raw GUE draw).
  double delta_mean = 0.0;
  double delta_var = 0.0;
};

// Partition of matrix-element errors in rho0's eigenbasis (support indices
// first): entry (j,k) is "L" iff j != k and at least one index is on the
// support; everything else (all diagonals plus the kernel block) is "kite".
// The ordered-pair L count is 2rd - r(r+1).
Eigen::ArrayXXi l_kite_mask(const DensityMatrix& rho0);
Eigen::ArrayXXi l_kite_mask(int r, int d);

// One simulated unconstrained estimate at the infinite-sample limit,
// projected per `mode`; lambda = Tr[(rho0 - rhohat)^2]/eps^2 and its
// elementwise decomposition lambda_jk = |(rhohat - rho0)_jk|^2/eps^2,
// both in rho0's eigenbasis.
TrialResult run_trial(const DensityMatrix& rho0, double eps, ProjectionMode mode,
                      bool traceless, RngStream& rng);

// Averages run_trial over config.trials independent substreams split from
// config.seed; bit-identical for a fixed seed regardless of worker count.
IsotropicSummary run_experiment(const IsotropicConfig& config);

struct SweepRow {
  int d = 0;
  int r = 0;
  int trials = 0;
  double eps = 0.0;
  double mean_lambda = 0.0;
  double stderr_lambda = 0.0;
  double theory_lambda = 0.0;  // closed form for r < d, Wilks for r = d
  double wilks = 0.0;
};

// One row per (d, r) with r <= d; per-cell seeds derived from base.seed.
std::vector<SweepRow> sweep(const std::vector<int>& d_values,
                            const std::vector<int>& r_values,
                            const IsotropicConfig& base);

}  // namespace qst

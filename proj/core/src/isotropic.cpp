#include "qst/isotropic.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "qst/null_theory.hpp"

namespace qst {

namespace {

// Substream keys under an experiment's master seed.
constexpr std::uint64_t kKeySpectrum = 1;
constexpr std::uint64_t kKeyTrials = 2;

TrialResult run_trial_in_frame(const DensityMatrix& rho0_diag, double eps,
                               ProjectionMode mode, bool traceless, RngStream& rng) {
  const int d = rho0_diag.dim();
  const int r = rho0_diag.rank();

  HermitianMatrix delta = sample_gue(d, eps, rng);
  double delta_support = 0.0;
  for (int j = 0; j < r; ++j) delta_support += delta(j, j).real();

  Matrix dm = delta.mat();
  if (traceless) {
    const double tr = dm.trace().real();
    dm -= (tr / d) * Matrix::Identity(d, d);
  }
  const HermitianMatrix h(rho0_diag.mat() + dm);

  const ProjectionResult proj = (mode == ProjectionMode::kCone)
                                    ? project_to_cone(h, rho0_diag)
                                    : project_to_states(h);

  TrialResult out;
  out.delta_support = delta_support;
  out.lambda_jk = (proj.projected.mat() - rho0_diag.mat()).cwiseAbs2() / (eps * eps);
  out.lambda = out.lambda_jk.sum();
  return out;
}

}  // namespace

Eigen::ArrayXXi l_kite_mask(int r, int d) {
  if (r < 1 || r > d) throw std::invalid_argument("l_kite_mask: need 1 <= r <= d");
  Eigen::ArrayXXi mask = Eigen::ArrayXXi::Zero(d, d);
  int count = 0;
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      if (j != k && (j < r || k < r)) {
        mask(j, k) = 1;
        ++count;
      }
    }
  }
  // Ordered-pair count of {(j,k) : j != k, j or k on the support}.
  if (count != 2 * r * d - r * (r + 1)) {
    throw std::logic_error("l_kite_mask: L count mismatch");
  }
  return mask;
}

Eigen::ArrayXXi l_kite_mask(const DensityMatrix& rho0) {
  return l_kite_mask(rho0.rank(), rho0.dim());
}

TrialResult run_trial(const DensityMatrix& rho0, double eps, ProjectionMode mode,
                      bool traceless, RngStream& rng) {
  // All statistics live in rho0's eigenbasis; rotate there once and work
  // with the diagonal representative (the GUE ensemble is basis-invariant).
  const DensityMatrix rho0_diag = DensityMatrix::diagonal(rho0.eigenvalues());
  return run_trial_in_frame(rho0_diag, eps, mode, traceless, rng);
}

IsotropicSummary run_experiment(const IsotropicConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  if (!(config.eps > 0.0)) throw std::invalid_argument("run_experiment: eps must be > 0");
  if (config.r < 1 || config.r > config.d) {
    throw std::invalid_argument("run_experiment: need 1 <= r <= d");
  }

  const RngStream master(config.seed);
  RngStream spectrum_rng = master.split(kKeySpectrum);
  const Eigen::VectorXd support = sample_spectrum(config.r, config.spectrum, spectrum_rng);
  Eigen::VectorXd full = Eigen::VectorXd::Zero(config.d);
  full.head(config.r) = support;
  const DensityMatrix rho0 = DensityMatrix::diagonal(full);

  const int trials = config.trials;
  std::vector<TrialResult> results(trials);
  const RngStream trial_base = master.split(kKeyTrials);

  const auto run_range = [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      RngStream rng = trial_base.split(static_cast<std::uint64_t>(t));
      results[t] = run_trial_in_frame(rho0, config.eps, config.projection,
                                      config.traceless, rng);
    }
  };

  int workers = config.workers > 0
                    ? config.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, trials);
  if (workers == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(trials, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  // Reduction in trial order, independent of scheduling.
  IsotropicSummary s;
  s.trials = trials;
  s.l_mask = l_kite_mask(rho0);
  const int d = config.d;
  Eigen::MatrixXd sum_jk = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd sumsq_jk = Eigen::MatrixXd::Zero(d, d);
  double sum_l = 0.0, sumsq_l = 0.0, sum_delta = 0.0, sumsq_delta = 0.0;
  for (const TrialResult& t : results) {
    sum_l += t.lambda;
    sumsq_l += t.lambda * t.lambda;
    sum_delta += t.delta_support;
    sumsq_delta += t.delta_support * t.delta_support;
    sum_jk += t.lambda_jk;
    sumsq_jk += t.lambda_jk.cwiseAbs2();
  }
  const double tn = static_cast<double>(trials);
  s.mean_lambda = sum_l / tn;
  s.mean_lambda_jk = sum_jk / tn;
  s.delta_mean = sum_delta / tn;
  if (trials > 1) {
    const double var_l = std::max(0.0, (sumsq_l - tn * s.mean_lambda * s.mean_lambda) / (tn - 1.0));
    s.stderr_lambda = std::sqrt(var_l / tn);
    s.delta_var = std::max(0.0, (sumsq_delta - tn * s.delta_mean * s.delta_mean) / (tn - 1.0));
    Eigen::MatrixXd var_jk =
        ((sumsq_jk - tn * s.mean_lambda_jk.cwiseAbs2()) / (tn - 1.0)).cwiseMax(0.0);
    s.stderr_lambda_jk = (var_jk / tn).cwiseSqrt();
  } else {
    s.stderr_lambda = 0.0;
    s.delta_var = 0.0;
    s.stderr_lambda_jk = Eigen::MatrixXd::Zero(d, d);
  }
  return s;
}

std::vector<SweepRow> sweep(const std::vector<int>& d_values,
                            const std::vector<int>& r_values,
                            const IsotropicConfig& base) {
  if (d_values.empty() || r_values.empty()) {
    throw std::invalid_argument("sweep: empty range");
  }
  std::vector<SweepRow> rows;
  const RngStream master(base.seed);
  for (int d : d_values) {
    for (int r : r_values) {
      if (r > d) continue;
      IsotropicConfig cell = base;
      cell.d = d;
      cell.r = r;
      cell.seed = master.split_path({static_cast<std::uint64_t>(d),
                                     static_cast<std::uint64_t>(r)})
                      .seed();
      const IsotropicSummary s = run_experiment(cell);
      SweepRow row;
      row.d = d;
      row.r = r;
      row.trials = cell.trials;
      row.eps = cell.eps;
      row.mean_lambda = s.mean_lambda;
      row.stderr_lambda = s.stderr_lambda;
      row.wilks = wilks_expected(d * d - 1);
      row.theory_lambda = (r < d) ? lambda_expected(r, d).lambda_total : row.wilks;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace qst

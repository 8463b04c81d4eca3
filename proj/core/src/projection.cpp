#include "qst/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qst {

namespace {

double trace_equation(std::span<const double> eigs, std::span<const ClipMode> mask,
                      double q) {
  double total = 0.0;
  for (size_t j = 0; j < eigs.size(); ++j) {
    const double t = eigs[j] - q;
    total += (mask[j] == ClipMode::kFree) ? t : std::max(t, 0.0);
  }
  return total;
}

}  // namespace

double solve_q(std::span<const double> eigs, std::span<const ClipMode> mask) {
  if (eigs.empty() || eigs.size() != mask.size()) {
    throw std::invalid_argument("solve_q: need matching non-empty eigs/mask");
  }
  const bool all_free =
      std::all_of(mask.begin(), mask.end(), [](ClipMode m) { return m == ClipMode::kFree; });
  if (all_free) {
    double sum = 0.0;
    for (double e : eigs) sum += e;
    return (sum - 1.0) / static_cast<double>(eigs.size());
  }
  double lo = *std::min_element(eigs.begin(), eigs.end()) - 1.0;
  double hi = *std::max_element(eigs.begin(), eigs.end());
  double flo = trace_equation(eigs, mask, lo) - 1.0;
  double fhi = trace_equation(eigs, mask, hi) - 1.0;
  if (flo < 0.0 || fhi > 1e-12) {
    throw std::runtime_error("solve_q: no root bracketed in [min(e)-1, max(e)]; f(lo)=" +
                             std::to_string(flo) + " f(hi)=" + std::to_string(fhi));
  }
  double q = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    q = 0.5 * (lo + hi);
    const double f = trace_equation(eigs, mask, q) - 1.0;
    if (std::abs(f) <= 1e-14) return q;
    if (f > 0.0) {
      lo = q;
    } else {
      hi = q;
    }
  }
  const double res = std::abs(trace_equation(eigs, mask, q) - 1.0);
  if (res > 1e-12) {
    throw std::runtime_error("solve_q: bisection stalled, residual " + std::to_string(res));
  }
  return q;
}

double solve_q_all_clip(std::span<const double> eigs) {
  std::vector<ClipMode> mask(eigs.size(), ClipMode::kClip);
  return solve_q(eigs, mask);
}

ProjectionResult project_to_states(const HermitianMatrix& h) {
  if (std::abs(h.trace() - 1.0) > 0.5) {
    throw std::invalid_argument("project_to_states: trace too far from 1");
  }
  const EigenDecomposition dec = eigh(h);
  std::vector<double> eigs(dec.values.begin(), dec.values.end());
  const double q = solve_q_all_clip(eigs);
  const int d = h.dim();
  Eigen::VectorXd clipped(d);
  int clipped_count = 0;
  for (int j = 0; j < d; ++j) {
    const double t = eigs[j] - q;
    clipped(j) = std::max(t, 0.0);
    if (t <= 0.0) ++clipped_count;
  }
  Matrix out = dec.vectors * clipped.asDiagonal() * dec.vectors.adjoint();
  return ProjectionResult{HermitianMatrix(std::move(out)), q, clipped_count};
}

ProjectionResult project_to_cone(const HermitianMatrix& h, const DensityMatrix& rho0) {
  const int d = rho0.dim();
  if (h.dim() != d) throw std::invalid_argument("project_to_cone: dimension mismatch");
  const int r = rho0.rank();
  const int n = d - r;

  // Regime check: perturbation small against the support spectrum.
  const EigenDecomposition pert = eigh(HermitianMatrix(h.mat() - rho0.mat()));
  const double pert_norm =
      std::max(std::abs(pert.values(0)), std::abs(pert.values(d - 1)));
  const double min_support = rho0.eigenvalues()(r - 1);
  if (pert_norm >= 0.5 * min_support) {
    throw std::domain_error("project_to_cone: outside tangent-cone regime");
  }

  // Work in rho0's eigenbasis with the support block first. An exactly
  // diagonal, descending rho0 (the harness layout) keeps the frame identity,
  // which makes the L-invariance below exact rather than float-approximate.
  const bool diagonal_frame =
      (rho0.mat() - Matrix(rho0.mat().diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0 &&
      [&] {
        for (int j = 0; j + 1 < d; ++j) {
          if (rho0.mat()(j, j).real() < rho0.mat()(j + 1, j + 1).real()) return false;
        }
        return true;
      }();
  Matrix basis;
  Matrix ht;
  if (diagonal_frame) {
    ht = h.mat();
  } else {
    basis = eigh(rho0.hermitian()).vectors;
    ht = basis.adjoint() * h.mat() * basis;
  }

  std::vector<double> eigs(d);
  std::vector<ClipMode> mask(d);
  for (int j = 0; j < r; ++j) {
    eigs[j] = ht(j, j).real();
    mask[j] = ClipMode::kFree;
  }
  EigenDecomposition ker;
  if (n > 0) {
    ker = eigh(Matrix(ht.bottomRightCorner(n, n)));
    for (int j = 0; j < n; ++j) {
      eigs[r + j] = ker.values(j);
      mask[r + j] = ClipMode::kClip;
    }
  }
  const double q = solve_q(eigs, mask);

  Matrix out = ht;
  for (int j = 0; j < r; ++j) out(j, j) -= q;
  int clipped_count = 0;
  if (n > 0) {
    Eigen::VectorXd kvals(n);
    for (int j = 0; j < n; ++j) {
      const double t = ker.values(j) - q;
      kvals(j) = std::max(t, 0.0);
      if (t <= 0.0) ++clipped_count;
    }
    out.bottomRightCorner(n, n) = ker.vectors * kvals.asDiagonal() * ker.vectors.adjoint();
  }
  if (!diagonal_frame) {
    out = basis * out * basis.adjoint();
  }
  return ProjectionResult{HermitianMatrix(std::move(out)), q, clipped_count};
}

DensityMatrix oracle_project(const HermitianMatrix& h) {
  const int d = h.dim();
  if (d > 6) throw std::invalid_argument("oracle_project: dim must be <= 6");
  // Dykstra's alternating projections onto the PSD cone and the unit-trace
  // hyperplane (with the cone increment; the hyperplane is affine).
  Matrix x = h.mat();
  Matrix p = Matrix::Zero(d, d);  // cone increment
  const Matrix eye = Matrix::Identity(d, d);
  double prev_change = 0.0;
  for (long iter = 0; iter < 1000000; ++iter) {
    const Matrix y = x + p;
    EigenDecomposition dec = eigh(HermitianMatrix(0.5 * (y + y.adjoint().eval())));
    Eigen::VectorXd vals = dec.values.cwiseMax(0.0);
    Matrix x_cone = dec.vectors * vals.asDiagonal() * dec.vectors.adjoint();
    p = y - x_cone;
    const double shift = (x_cone.trace().real() - 1.0) / d;
    Matrix x_next = x_cone - shift * eye;
    const double change = (x_next - x).norm();
    x = std::move(x_next);
    const double min_eig = eigh(HermitianMatrix(0.5 * (x + x.adjoint().eval()))).values(d - 1);
    if (change <= 1e-13 && prev_change <= 1e-13 && min_eig >= -1e-12) {
      // Snap tiny negatives so the DensityMatrix invariants hold exactly.
      EigenDecomposition fin = eigh(HermitianMatrix(0.5 * (x + x.adjoint().eval())));
      Eigen::VectorXd v = fin.values.cwiseMax(0.0);
      v /= v.sum();
      Matrix rho = fin.vectors * v.asDiagonal() * fin.vectors.adjoint();
      return DensityMatrix(std::move(rho));
    }
    prev_change = change;
  }
  throw std::runtime_error("oracle_project: no convergence after 1e6 iterations");
}

}  // namespace qst

#pragma once

#include <span>
#include <vector>

#include "qst/hermitian.hpp"

namespace qst {

// Whether an eigenvalue term in the trace equation is clipped at zero,
// (e - q)^+, or enters linearly, (e - q).
enum class ClipMode { kClip, kFree };

struct ProjectionResult {
  HermitianMatrix projected;  // unit trace; PSD for the state-set projection
  double q = 0.0;             // trace-shift multiplier
  int clipped_count = 0;      // eigenvalues set to zero
};

// Solves sum_free (e_j - q) + sum_clip (e_j - q)^+ = 1 for q by bisection on
// [min(e) - 1, max(e)] (the left side is non-increasing in q); residual
// tolerance 1e-14. All-free inputs are solved in closed form.
double solve_q(std::span<const double> eigs, std::span<const ClipMode> mask);
double solve_q_all_clip(std::span<const double> eigs);

// Hilbert-Schmidt-closest density matrix to h (trace within 0.5 of 1):
// eigendecompose, shift the spectrum by q, truncate negatives.
ProjectionResult project_to_states(const HermitianMatrix& h);

// Metric projection of h onto the solid tangent cone of the state set at a
// rank-deficient rho0: in rho0's eigenbasis (support block first) the
// support diagonal shifts by q, the kernel block is spectrally truncated at
// q, and every off-diagonal entry coupling to the support is untouched.
// Requires h - rho0 small: max |eig(h - rho0)| < min nonzero eig(rho0) / 2.
ProjectionResult project_to_cone(const HermitianMatrix& h, const DensityMatrix& rho0);

// Independent ground truth for project_to_states (dim <= 6): Dykstra
// alternation between the PSD cone and the unit-trace hyperplane, run to a
// 1e-12 residual.
DensityMatrix oracle_project(const HermitianMatrix& h);

}  // namespace qst

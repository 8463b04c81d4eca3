#pragma once

namespace qst {

// Closed-form prediction for the expected loglikelihood ratio of a rank-r
// true state against the full d-dimensional state-space model, split into
// the boundary-insensitive "L" total and the constrained "kite" total.
struct NullTheoryPrediction {
  int r = 0;
  int d = 0;
  int n = 0;        // d - r
  double x = 0.0;   // (15 pi r / 2n)^(2/5)
  double z = 0.0;   // dimensionless trace shift q/eps
  double lambda_L = 0.0;
  double lambda_kite = 0.0;
  double lambda_total = 0.0;
  double wilks = 0.0;  // classical baseline, d^2 - 1
  // Set when r > d/2, where the prediction degrades (gracefully).
  bool accuracy_warning = false;
};

// Mean of a chi^2_K variable (the classical null theory for K extra
// parameters); companion variance 2K.
double wilks_expected(int K);
double wilks_variance(int K);

// Expected contribution of the unconstrained off-diagonal ("L") elements:
// 2rd - r(r+1), the dimension of the rank-r manifold.
double lambda_L(int r, int d);

// Root z in (0, 2 sqrt(n)) of  r z = (4/15pi) n^(1/4) (2 sqrt(n) - z)^(5/2),
// by bisection (left side increasing, right side decreasing); residual < 1e-12.
double solve_quintic_z(int r, int n);

// Algebraic large-n approximation of the quintic root:
//   x = (15 pi r / 2n)^(2/5),  z = 2 sqrt(n) (1 - x/2 + x^2/10 - x^3/200).
double z_approx(int r, int n);

// Kite total for given z:
//   r + r z^2 + n(n+z^2)/pi (pi/2 - asin(z/2sqrt(n)))
//     - z(z^2+26n)/(24 pi) sqrt(4n - z^2).
// Throws if z is outside [0, 2 sqrt(n)].
double lambda_kite(int r, int n, double z);

// Full prediction with z = z_approx(r, n); lambda_total = lambda_L + lambda_kite.
NullTheoryPrediction lambda_expected(int r, int d);

// d -> infinity limit at fixed r:
//   rd [6 - 20/7 y + 20/21 y^2] - 5 r^2,  y = (15 pi r / 2d)^(2/5).
double lambda_asymptotic(int r, int d);

}  // namespace qst

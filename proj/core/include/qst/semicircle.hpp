#pragma once

#include <vector>

namespace qst {

// Wigner semicircle distribution of radius R:
//   pdf(k) = 2/(pi R^2) sqrt(R^2 - k^2) on [-R, R].
class Semicircle {
 public:
  explicit Semicircle(double radius);

  double radius() const { return radius_; }
  double pdf(double kappa) const;  // 0 outside the support
  // CDF(k) = 1/2 + k sqrt(R^2-k^2)/(pi R^2) + asin(k/R)/pi, clamped outside.
  double cdf(double kappa) const;
  // Monotone bisection inverse; |cdf(result) - u| <= 1e-12. Throws outside [0,1].
  double inverse_cdf(double u) const;

 private:
  double radius_;
};

// Inverse-CDF ansatz for the expected sorted eigenvalues of a GUE(n) matrix
// scaled by eps (semicircle radius R = 2 eps sqrt(n)):
//   kbar_j = CDF^-1((j - 1/2)/n), returned sorted descending.
// The result is antisymmetric by construction (upper half mirrored).
std::vector<double> order_statistics(int n, double eps);

}  // namespace qst

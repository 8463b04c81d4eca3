#include "qst/semicircle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qst {

namespace {
constexpr double kPi = std::numbers::pi;
}

Semicircle::Semicircle(double radius) : radius_(radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("Semicircle: radius must be > 0");
  }
}

double Semicircle::pdf(double kappa) const {
  if (std::abs(kappa) >= radius_) return 0.0;
  const double r2 = radius_ * radius_;
  return 2.0 / (kPi * r2) * std::sqrt(r2 - kappa * kappa);
}

double Semicircle::cdf(double kappa) const {
  if (kappa <= -radius_) return 0.0;
  if (kappa >= radius_) return 1.0;
  const double r2 = radius_ * radius_;
  return 0.5 + kappa * std::sqrt(r2 - kappa * kappa) / (kPi * r2) +
         std::asin(kappa / radius_) / kPi;
}

double Semicircle::inverse_cdf(double u) const {
  if (u < 0.0 || u > 1.0) {
    throw std::invalid_argument("Semicircle::inverse_cdf: u must be in [0, 1]");
  }
  if (u == 0.0) return -radius_;
  if (u == 1.0) return radius_;
  if (u == 0.5) return 0.0;
  double lo = -radius_, hi = radius_;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double c = cdf(mid);
    if (std::abs(c - u) <= 1e-12) return mid;
    if (c < u) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-16 * radius_) break;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> order_statistics(int n, double eps) {
  if (n < 1) throw std::invalid_argument("order_statistics: n must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("order_statistics: eps must be > 0");
  const Semicircle sc(2.0 * eps * std::sqrt(static_cast<double>(n)));
  std::vector<double> kbar(n);
  // Fill the upper half from the inverse CDF and mirror it, so the vector is
  // exactly antisymmetric; middle entry of an odd n is the median 0.
  for (int i = 0; i < n / 2; ++i) {
    // i-th largest corresponds to j = n - i in CDF^-1((j - 1/2)/n).
    const double u = (static_cast<double>(n - i) - 0.5) / n;
    const double k = sc.inverse_cdf(u);
    kbar[i] = k;
    kbar[n - 1 - i] = -k;
  }
  if (n % 2 == 1) kbar[n / 2] = 0.0;
  return kbar;
}

}  // namespace qst

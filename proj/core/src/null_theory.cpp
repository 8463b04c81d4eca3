#include "qst/null_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qst {

namespace {
constexpr double kPi = std::numbers::pi;
}

double wilks_expected(int K) {
  if (K < 1) throw std::invalid_argument("wilks_expected: K must be >= 1");
  return static_cast<double>(K);
}

double wilks_variance(int K) {
  if (K < 1) throw std::invalid_argument("wilks_variance: K must be >= 1");
  return 2.0 * K;
}

double lambda_L(int r, int d) {
  if (r < 1 || r > d) throw std::invalid_argument("lambda_L: need 1 <= r <= d");
  return 2.0 * r * d - static_cast<double>(r) * (r + 1);
}

double solve_quintic_z(int r, int n) {
  if (r < 1 || n < 1) throw std::invalid_argument("solve_quintic_z: need r, n >= 1");
  const double edge = 2.0 * std::sqrt(static_cast<double>(n));
  const double coeff = 4.0 / (15.0 * kPi) * std::pow(static_cast<double>(n), 0.25);
  const auto f = [&](double z) {
    return r * z - coeff * std::pow(edge - z, 2.5);
  };
  // f(0) < 0 and f(edge) > 0, with f strictly increasing on the bracket.
  double lo = 0.0, hi = edge;
  double z = 0.5 * edge;
  for (int iter = 0; iter < 200; ++iter) {
    z = 0.5 * (lo + hi);
    const double fz = f(z);
    if (std::abs(fz) <= 1e-12) return z;
    if (fz < 0.0) {
      lo = z;
    } else {
      hi = z;
    }
  }
  return z;
}

double z_approx(int r, int n) {
  if (r < 1 || n < 1) throw std::invalid_argument("z_approx: need r, n >= 1");
  const double x = std::pow(15.0 * kPi * r / (2.0 * n), 0.4);
  const double series = 1.0 - 0.5 * x + x * x / 10.0 - x * x * x / 200.0;
  return 2.0 * std::sqrt(static_cast<double>(n)) * series;
}

double lambda_kite(int r, int n, double z) {
  if (r < 1 || n < 1) throw std::invalid_argument("lambda_kite: need r, n >= 1");
  const double edge = 2.0 * std::sqrt(static_cast<double>(n));
  if (z < 0.0 || z > edge) {
    throw std::domain_error("lambda_kite: z outside [0, 2 sqrt(n)]");
  }
  const double z2 = z * z;
  const double tail = static_cast<double>(n) * (n + z2) / kPi *
                          (kPi / 2.0 - std::asin(z / edge)) -
                      z * (z2 + 26.0 * n) / (24.0 * kPi) * std::sqrt(4.0 * n - z2);
  return r + r * z2 + tail;
}

NullTheoryPrediction lambda_expected(int r, int d) {
  if (r < 1 || r >= d) throw std::invalid_argument("lambda_expected: need 1 <= r <= d-1");
  NullTheoryPrediction p;
  p.r = r;
  p.d = d;
  p.n = d - r;
  p.x = std::pow(15.0 * kPi * r / (2.0 * p.n), 0.4);
  p.accuracy_warning = (2 * r > d);
  const double edge = 2.0 * std::sqrt(static_cast<double>(p.n));
  // The series can leave the physical range for extreme r/n; the prediction
  // there is already flagged as unreliable.
  p.z = std::clamp(z_approx(r, p.n), 0.0, edge);
  p.lambda_L = lambda_L(r, d);
  p.lambda_kite = lambda_kite(r, p.n, p.z);
  p.lambda_total = p.lambda_L + p.lambda_kite;
  p.wilks = wilks_expected(d * d - 1);
  return p;
}

double lambda_asymptotic(int r, int d) {
  if (r < 1 || d <= r) throw std::invalid_argument("lambda_asymptotic: need d > r >= 1");
  const double y = std::pow(15.0 * kPi * r / (2.0 * d), 0.4);
  return r * static_cast<double>(d) *
             (6.0 - 20.0 / 7.0 * y + 20.0 / 21.0 * y * y) -
         5.0 * static_cast<double>(r) * r;
}

}  // namespace qst

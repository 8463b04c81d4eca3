#include "qst/states.hpp"

#include <cmath>
#include <stdexcept>

namespace qst {

namespace {

DensityMatrix fock(int n) {
  Matrix m = Matrix::Zero(n + 1, n + 1);
  m(n, n) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix uniform_superposition(int terms) {
  Vector psi = Vector::Constant(terms, 1.0 / std::sqrt(static_cast<double>(terms)));
  return DensityMatrix(Matrix(psi * psi.adjoint()));
}

DensityMatrix thermal(int dim, double nbar) {
  Matrix m = Matrix::Zero(dim, dim);
  double total = 0.0;
  for (int n = 0; n < dim; ++n) {
    const double p = std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1);
    m(n, n) = p;
    total += p;
  }
  m /= total;
  return DensityMatrix(std::move(m));
}

}  // namespace

DensityMatrix make_state(const std::string& label) {
  if (label == "fock0") return fock(0);
  if (label == "fock1") return fock(1);
  if (label == "fock2") return fock(2);
  if (label == "plus01") return uniform_superposition(2);
  if (label == "plus012") return uniform_superposition(3);
  if (label == "thermal2") return thermal(2, 0.5);
  if (label == "thermal3") return thermal(3, 0.5);
  if (label == "thermal4") return thermal(4, 0.5);
  if (label == "thermal5") return thermal(5, 0.5);
  throw std::invalid_argument("make_state: unknown label '" + label + "'");
}

std::vector<std::string> default_state_roster() {
  return {"fock0", "fock1",    "fock2",    "plus01",   "plus012",
          "thermal2", "thermal3", "thermal4", "thermal5"};
}

}  // namespace qst

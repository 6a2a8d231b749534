#include "openqfi/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "openqfi/error.hpp"

namespace openqfi {

namespace {

void require_two_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw Error(ErrorCode::BadDimension, "entanglement measures need a two-qubit state");
}

// Clamp roundoff-level negatives before taking a square root.
double safe_sqrt(double x) { return x >= -1e-12 ? std::sqrt(std::max(0.0, x)) : std::sqrt(x); }

}  // namespace

double concurrence(const DensityMatrix& rho) {
  require_two_qubit(rho);
  // rho (Y(x)Y) rho* (Y(x)Y) is not Hermitian, but it is similar to
  // sqrt(rho) rho~ sqrt(rho), which is Hermitian PSD with the same spectrum.
  const auto& eig = rho.eig();
  ComplexMatrix root_diag(4);
  for (std::size_t k = 0; k < 4; ++k) root_diag(k, k) = safe_sqrt(eig.values[k]);
  const ComplexMatrix root = eig.vectors * root_diag * eig.vectors.adjoint();

  const ComplexMatrix yy = kron(pauli::y(), pauli::y());
  const ComplexMatrix flipped = yy * rho.matrix().conj() * yy;
  ComplexMatrix r = root * flipped * root;
  r = cplx(0.5) * (r + r.adjoint());

  std::vector<double> mu = hermitian_eig(r).values;
  for (auto& x : mu) x = safe_sqrt(x);
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double negativity(const DensityMatrix& rho) {
  require_two_qubit(rho);
  const double n = (trace_norm(partial_transpose(rho.matrix(), 2)) - 1.0) / 2.0;
  return n >= -1e-12 ? std::max(0.0, n) : n;
}

}  // namespace openqfi

#include "openqfi/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "openqfi/error.hpp"

namespace openqfi {

Direction::Direction(double nx, double ny, double nz) : n_{nx, ny, nz} {
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-12) {
    throw Error(ErrorCode::Validation, "direction is not a unit vector (norm " + format_number(norm) + ")");
  }
}

Direction Direction::normalized(double nx, double ny, double nz) {
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw Error(ErrorCode::Validation, "cannot normalize a zero vector");
  return {nx / norm, ny / norm, nz / norm};
}

const ComplexMatrix& CollectiveSpin::component(int axis) const {
  switch (axis) {
    case 0: return jx;
    case 1: return jy;
    case 2: return jz;
    default: throw Error(ErrorCode::Validation, "axis must be 0, 1 or 2");
  }
}

ComplexMatrix CollectiveSpin::along(const Direction& n) const {
  return cplx(n.nx()) * jx + cplx(n.ny()) * jy + cplx(n.nz()) * jz;
}

CollectiveSpin collective_spin_ops(int n_particles) {
  if (n_particles < 1) throw Error(ErrorCode::Validation, "need at least one particle");
  if (n_particles > kMaxParticles) {
    throw Error(ErrorCode::TooManyParticles, std::to_string(n_particles) + " particles requested, at most " +
                                                 std::to_string(kMaxParticles) + " supported");
  }
  const std::size_t dim = std::size_t{1} << n_particles;
  const ComplexMatrix id2 = ComplexMatrix::identity(2);

  auto collective = [&](const ComplexMatrix& sigma) {
    ComplexMatrix total(dim);
    for (int site = 0; site < n_particles; ++site) {
      ComplexMatrix term = site == 0 ? sigma : id2;
      for (int k = 1; k < n_particles; ++k) term = kron(term, k == site ? sigma : id2);
      total += term;
    }
    return cplx(0.5) * total;
  };
  return {collective(pauli::x()), collective(pauli::y()), collective(pauli::z()), n_particles};
}

namespace {

void require_match(const DensityMatrix& rho, const CollectiveSpin& spin) {
  if (rho.dim() != spin.jx.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state dimension " + std::to_string(rho.dim()) +
                                                  " does not match spin operators of dimension " +
                                                  std::to_string(spin.jx.dim()));
  }
}

// Operator expressed in the eigenbasis of rho: V^dagger A V.
ComplexMatrix in_eigenbasis(const DensityMatrix& rho, const ComplexMatrix& a) {
  const ComplexMatrix& v = rho.eig().vectors;
  return v.adjoint() * a * v;
}

// (p_i - p_j)^2 / (p_i + p_j), or 0 for dropped pairs.
double spectral_weight(const std::vector<double>& p, std::size_t i, std::size_t j) {
  const double sum = p[i] + p[j];
  if (i == j || sum <= kSpectralCutoff) return 0.0;
  const double diff = p[i] - p[j];
  return diff * diff / sum;
}

Mat3 require_symmetric(const Mat3& c) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(c[i][j] - c[j][i]) > 1e-10) throw Error(ErrorCode::NotSymmetric, "C matrix is not symmetric");
  return c;
}

ComplexMatrix to_complex(const Mat3& c) {
  ComplexMatrix m(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = c[i][j];
  return m;
}

}  // namespace

double qfi_direction(const DensityMatrix& rho, const Direction& dir, const CollectiveSpin& spin) {
  require_match(rho, spin);
  const ComplexMatrix jn = in_eigenbasis(rho, spin.along(dir));
  const auto& p = rho.eig().values;
  double f = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) f += 2.0 * spectral_weight(p, i, j) * std::norm(jn(i, j));
  return f;
}

Mat3 c_matrix(const DensityMatrix& rho, const CollectiveSpin& spin) {
  require_match(rho, spin);
  const std::array<ComplexMatrix, 3> jt = {in_eigenbasis(rho, spin.jx), in_eigenbasis(rho, spin.jy),
                                           in_eigenbasis(rho, spin.jz)};
  const auto& p = rho.eig().values;
  Mat3 c{};
  for (int k = 0; k < 3; ++k) {
    for (int l = k; l < 3; ++l) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) {
          const double w = spectral_weight(p, i, j);
          if (w == 0.0) continue;
          s += w * (jt[k](i, j) * jt[l](j, i) + jt[l](i, j) * jt[k](j, i));
        }
      if (std::abs(s.imag()) > 1e-10) {
        throw Error(ErrorCode::NotHermitian, "C matrix entry has imaginary part " + format_number(s.imag()));
      }
      c[k][l] = c[l][k] = s.real();
    }
  }
  return c;
}

double qfi_pure(std::span<const cplx> psi, const Direction& dir, const CollectiveSpin& spin) {
  if (psi.size() != spin.jx.dim()) throw Error(ErrorCode::DimensionMismatch, "state vector length");
  const double norm2 = inner(psi, psi).real();
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10) throw Error(ErrorCode::NotNormalized, "state vector is not normalized");
  const ComplexMatrix jn = spin.along(dir);
  const std::vector<cplx> jpsi = jn * psi;
  const double mean = inner(psi, jpsi).real();
  const double second = inner(jpsi, jpsi).real();  // <J_n^2> since J_n is Hermitian
  return std::max(0.0, 4.0 * (second - mean * mean));
}

Direction optimal_direction(const Mat3& c) {
  const HermitianEig eig = hermitian_eig(to_complex(require_symmetric(c)));
  const double top = eig.values.back();
  const double tie_tol = 1e-10 * std::max(1.0, std::abs(top));

  std::vector<std::array<double, 3>> basis;
  for (std::size_t k = 0; k < 3; ++k) {
    if (top - eig.values[k] <= tie_tol) {
      basis.push_back({eig.vectors(0, k).real(), eig.vectors(1, k).real(), eig.vectors(2, k).real()});
    }
  }

  std::array<double, 3> best = basis.back();
  if (basis.size() > 1) {
    // Project the coordinate axes, x first, onto the top eigenspace.
    for (int axis = 0; axis < 3; ++axis) {
      std::array<double, 3> proj{};
      for (const auto& u : basis)
        for (int i = 0; i < 3; ++i) proj[i] += u[axis] * u[i];
      const double len = std::sqrt(proj[0] * proj[0] + proj[1] * proj[1] + proj[2] * proj[2]);
      if (len > 1e-8) {
        for (auto& x : proj) x /= len;
        best = proj;
        break;
      }
    }
  }
  // Components at roundoff level are zero; this keeps output stable across
  // steady-state routes.
  for (double& x : best)
    if (std::abs(x) <= 1e-12) x = 0.0;
  for (double x : best) {
    if (x != 0.0) {
      if (x < 0.0)
        for (auto& y : best) y = -y;
      break;
    }
  }
  return Direction::normalized(best[0], best[1], best[2]);
}

QfiResult mean_qfi_max(const DensityMatrix& rho, const CollectiveSpin& spin) {
  QfiResult out;
  out.c = c_matrix(rho, spin);
  const HermitianEig eig = hermitian_eig(to_complex(out.c));
  // The spectral sum is a sum of non-negative terms; clamp solver noise.
  out.lambda_max = std::max(0.0, eig.values.back());
  out.f_max = out.lambda_max;
  out.mean_f = out.lambda_max / spin.n_particles;
  out.opt_dir = optimal_direction(out.c);
  return out;
}

ShotNoiseClass classify(double mean_f, int n_particles) {
  if (n_particles < 1) throw Error(ErrorCode::Validation, "need at least one particle");
  if (!std::isfinite(mean_f) || mean_f < -1e-9 || mean_f > n_particles + 1e-9) {
    throw Error(ErrorCode::OutOfRange, "mean QFI " + format_number(mean_f) + " outside [0, " +
                                           std::to_string(n_particles) + "]");
  }
  return mean_f > 1.0 + 1e-12 ? ShotNoiseClass::SubShotNoiseUseful : ShotNoiseClass::WithinShotNoise;
}

DensityMatrix rotate(const DensityMatrix& rho, const Direction& dir, double phi, const CollectiveSpin& spin) {
  require_match(rho, spin);
  const HermitianEig gen = hermitian_eig(spin.along(dir));
  const std::size_t n = rho.dim();
  ComplexMatrix phases(n);
  for (std::size_t k = 0; k < n; ++k) phases(k, k) = std::exp(cplx(0.0, phi * gen.values[k]));
  const ComplexMatrix u = gen.vectors * phases * gen.vectors.adjoint();
  ComplexMatrix out = u * rho.matrix() * u.adjoint();
  out = cplx(0.5) * (out + out.adjoint());
  return DensityMatrix(std::move(out));
}

PhaseEstimate qcrb(double f, long n_measurements) {
  if (!(f > 0.0) || !std::isfinite(f)) throw Error(ErrorCode::NonPositiveF, "Fisher information must be positive");
  if (n_measurements < 1) throw Error(ErrorCode::Validation, "number of measurements must be positive");
  return {n_measurements, 1.0 / std::sqrt(static_cast<double>(n_measurements) * f)};
}

}  // namespace openqfi

#pragma once

// Quantum Fisher information for SU(2) rotation angles generated by the
// collective spin J_n = n_x J_x + n_y J_y + n_z J_z, J_a = 1/2 sum_i sigma_a^(i).

#include <array>
#include <span>

#include "openqfi/dynamics.hpp"
#include "openqfi/qlinalg.hpp"

namespace openqfi {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Unit vector in R^3. Construction normalizes nothing; a non-unit input
/// (beyond 1e-12) throws Validation.
class Direction {
 public:
  Direction(double nx, double ny, double nz);

  static Direction x() { return {1.0, 0.0, 0.0}; }
  static Direction y() { return {0.0, 1.0, 0.0}; }
  static Direction z() { return {0.0, 0.0, 1.0}; }
  /// Scales a nonzero vector to unit length.
  static Direction normalized(double nx, double ny, double nz);

  double nx() const noexcept { return n_[0]; }
  double ny() const noexcept { return n_[1]; }
  double nz() const noexcept { return n_[2]; }
  const std::array<double, 3>& components() const noexcept { return n_; }

 private:
  std::array<double, 3> n_;
};

struct CollectiveSpin {
  ComplexMatrix jx, jy, jz;
  int n_particles = 0;

  const ComplexMatrix& component(int axis) const;
  /// n_x J_x + n_y J_y + n_z J_z
  ComplexMatrix along(const Direction& n) const;
};

inline constexpr int kMaxParticles = 4;

CollectiveSpin collective_spin_ops(int n_particles);

struct QfiResult {
  Mat3 c{};
  double lambda_max = 0.0;
  double f_max = 0.0;
  double mean_f = 0.0;  ///< QFI per particle
  Direction opt_dir = Direction::x();
};

struct PhaseEstimate {
  long n_measurements = 0;
  double delta_phi = 0.0;
};

/// Eigenvalue pairs with p_i + p_j at or below this are dropped from the
/// spectral sums.
inline constexpr double kSpectralCutoff = 1e-12;

double qfi_direction(const DensityMatrix& rho, const Direction& dir, const CollectiveSpin& spin);

/// Symmetric 3x3 matrix with F(n) = n^T C n. Throws NotHermitian if any entry
/// carries an imaginary residue above 1e-10.
Mat3 c_matrix(const DensityMatrix& rho, const CollectiveSpin& spin);

/// 4 Var(J_n) for a normalized pure state.
double qfi_pure(std::span<const cplx> psi, const Direction& dir, const CollectiveSpin& spin);

QfiResult mean_qfi_max(const DensityMatrix& rho, const CollectiveSpin& spin);

/// Leading eigenvector of c. Within a degenerate top eigenspace the vector
/// with the largest |n_x| wins, then the largest |n_y|. The first component
/// above 1e-12 in modulus is made positive.
Direction optimal_direction(const Mat3& c);

enum class ShotNoiseClass { WithinShotNoise, SubShotNoiseUseful };

ShotNoiseClass classify(double mean_f, int n_particles);

/// U rho U^dagger with U = exp(i phi J_n).
DensityMatrix rotate(const DensityMatrix& rho, const Direction& dir, double phi, const CollectiveSpin& spin);

/// Cramer-Rao bound 1/sqrt(N_m F).
PhaseEstimate qcrb(double f, long n_measurements);

}  // namespace openqfi

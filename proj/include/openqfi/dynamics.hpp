#pragma once

// Two-qubit open system: ZZ coupling, local dephasing and a reset channel that
// replaces either qubit with a fixed pure state. Steady states are available
// in closed form (reset state |+>) and from two numerical routes.

#include <array>
#include <string_view>

#include "openqfi/qlinalg.hpp"

namespace openqfi {

using QubitState = std::array<cplx, 2>;

/// (|0> + |1>)/sqrt(2)
QubitState plus_state();

struct ModelParams {
  double r = 0.0;      ///< reset rate
  double gamma = 0.0;  ///< dephasing rate
  double g = 0.0;      ///< ZZ coupling
  QubitState reset_state = plus_state();

  /// Throws InvalidParams for negative or non-finite rates or an
  /// unnormalized reset state.
  void validate() const;
};

/// A validated state: Hermitian, unit trace and positive semidefinite to
/// 1e-10. The spectrum is computed once at construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat);

  static DensityMatrix pure(std::span<const cplx> psi);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  const HermitianEig& eig() const noexcept { return eig_; }
  std::size_t dim() const noexcept { return mat_.dim(); }

 private:
  ComplexMatrix mat_;
  HermitianEig eig_;
};

inline constexpr double kStateTol = 1e-10;

/// g * sigma_z (x) sigma_z
ComplexMatrix hamiltonian(const ModelParams& p);

/// Right-hand side of the master equation for an arbitrary 4x4 operator.
ComplexMatrix liouvillian_apply(const ModelParams& p, const ComplexMatrix& rho);

/// 16x16 matrix of the master equation acting on column-stacked vec(rho).
ComplexMatrix liouvillian_superoperator(const ModelParams& p);

/// Column-stacking vectorization and its inverse.
std::vector<cplx> vec(const ComplexMatrix& m);
ComplexMatrix unvec(std::span<const cplx> v);

DensityMatrix closed_form_steady_state(const ModelParams& p);

enum class SteadyStateMethod { ClosedForm, Nullspace, Integrate };

std::string_view to_string(SteadyStateMethod m) noexcept;
/// Accepts "closed-form", "nullspace", "integrate"; throws Validation.
SteadyStateMethod parse_method(std::string_view name);

inline constexpr double kKernelGapTol = 1e-10;
inline constexpr double kIntegrateResidual = 1e-12;
inline constexpr long kIntegrateMaxSteps = 10'000'000;
inline constexpr long kRehermitizeEvery = 1000;

DensityMatrix steady_state(const ModelParams& p, SteadyStateMethod method);

}  // namespace openqfi

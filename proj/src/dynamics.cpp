#include "openqfi/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "openqfi/error.hpp"

namespace openqfi {

namespace {

const cplx kI{0.0, 1.0};

bool is_plus(const QubitState& s) {
  const double amp = 1.0 / std::sqrt(2.0);
  return std::abs(s[0] - amp) <= 1e-12 && std::abs(s[1] - amp) <= 1e-12;
}

ComplexMatrix reset_projector(const QubitState& s) { return ComplexMatrix::outer(s, s); }

std::string describe(const ModelParams& p) {
  return "(r=" + format_number(p.r) + ", gamma=" + format_number(p.gamma) + ", g=" + format_number(p.g) + ")";
}

}  // namespace

QubitState plus_state() {
  const double amp = 1.0 / std::sqrt(2.0);
  return {amp, amp};
}

void ModelParams::validate() const {
  for (double x : {r, gamma, g}) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorCode::InvalidParams, "rates must be finite and non-negative " + describe(*this));
    }
  }
  const double n2 = std::norm(reset_state[0]) + std::norm(reset_state[1]);
  if (std::abs(n2 - 1.0) > 1e-12) throw Error(ErrorCode::InvalidParams, "reset state is not normalized");
}

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (mat_.hermiticity_defect() > kStateTol) throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
  if (std::abs(mat_.trace() - 1.0) > kStateTol) throw Error(ErrorCode::InvalidState, "density matrix trace is not 1");
  eig_ = hermitian_eig(mat_);
  if (eig_.values.front() < -kStateTol) {
    throw Error(ErrorCode::InvalidState, "negative eigenvalue " + format_number(eig_.values.front()));
  }
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> psi) { return DensityMatrix(ComplexMatrix::outer(psi, psi)); }

ComplexMatrix hamiltonian(const ModelParams& p) {
  return cplx(p.g) * kron(pauli::z(), pauli::z());
}

ComplexMatrix liouvillian_apply(const ModelParams& p, const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw Error(ErrorCode::BadDimension, "Liouvillian acts on 4x4 operators");
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  const ComplexMatrix h = hamiltonian(p);
  const ComplexMatrix z1 = kron(pauli::z(), id2);
  const ComplexMatrix z2 = kron(id2, pauli::z());
  const ComplexMatrix chi = reset_projector(p.reset_state);

  ComplexMatrix out = -kI * (h * rho - rho * h);
  out += cplx(p.gamma / 2.0) * (z1 * rho * z1 - rho + z2 * rho * z2 - rho);
  // Resetting qubit i leaves the other qubit in tr_i(rho).
  out += cplx(p.r) * (kron(chi, partial_trace(rho, 1)) - rho);
  out += cplx(p.r) * (kron(partial_trace(rho, 2), chi) - rho);
  return out;
}

std::vector<cplx> vec(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<cplx> v(n * n);
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t row = 0; row < n; ++row) v[col * n + row] = m(row, col);
  return v;
}

ComplexMatrix unvec(std::span<const cplx> v) {
  const auto n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size()) throw Error(ErrorCode::BadDimension, "vector length is not a perfect square");
  ComplexMatrix m(n);
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t row = 0; row < n; ++row) m(row, col) = v[col * n + row];
  return m;
}

ComplexMatrix liouvillian_superoperator(const ModelParams& p) {
  // X rho Y  ->  (Y^T (x) X) vec(rho)
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  const ComplexMatrix id4 = ComplexMatrix::identity(4);
  const ComplexMatrix id16 = ComplexMatrix::identity(16);
  const ComplexMatrix h = hamiltonian(p);
  const ComplexMatrix z1 = kron(pauli::z(), id2);
  const ComplexMatrix z2 = kron(id2, pauli::z());

  ComplexMatrix l = -kI * (kron(id4, h) - kron(h.transpose(), id4));
  l += cplx(p.gamma / 2.0) * (kron(z1.transpose(), z1) + kron(z2.transpose(), z2) - cplx(2.0) * id16);

  // Reset as a Kraus sum: |chi><k| on the reset qubit, identity elsewhere.
  ComplexMatrix reset(16);
  for (std::size_t k = 0; k < 2; ++k) {
    ComplexMatrix chi_k(2);
    chi_k(0, k) = p.reset_state[0];
    chi_k(1, k) = p.reset_state[1];
    for (const ComplexMatrix& x : {kron(chi_k, id2), kron(id2, chi_k)}) reset += kron(x.conj(), x);
  }
  l += cplx(p.r) * (reset - cplx(2.0) * id16);
  return l;
}

DensityMatrix closed_form_steady_state(const ModelParams& p) {
  p.validate();
  if (!is_plus(p.reset_state)) {
    throw Error(ErrorCode::UnsupportedResetState, "closed form exists only for the |+> reset state");
  }
  if (p.r == 0.0 && p.gamma == 0.0 && p.g == 0.0) {
    throw Error(ErrorCode::DegenerateLimit, "all rates vanish; every state is stationary");
  }

  const double r = p.r;
  const double half = r + p.gamma / 2.0;
  const double denom = 2.0 * p.g * p.g + half * (r + p.gamma);

  ComplexMatrix rho = cplx(0.25) * ComplexMatrix::identity(4);
  if (r > 0.0) {
    const cplx anti = r * r * half / (4.0 * (r + p.gamma) * denom);
    const cplx upper = r * cplx(half, -p.g) / (4.0 * denom);
    const cplx lower = std::conj(upper);
    rho(0, 3) = rho(1, 2) = rho(2, 1) = rho(3, 0) = anti;
    rho(0, 1) = rho(0, 2) = rho(3, 1) = rho(3, 2) = upper;
    rho(1, 0) = rho(1, 3) = rho(2, 0) = rho(2, 3) = lower;
  }
  return DensityMatrix(std::move(rho));
}

std::string_view to_string(SteadyStateMethod m) noexcept {
  switch (m) {
    case SteadyStateMethod::ClosedForm: return "closed-form";
    case SteadyStateMethod::Nullspace: return "nullspace";
    case SteadyStateMethod::Integrate: return "integrate";
  }
  return "unknown";
}

SteadyStateMethod parse_method(std::string_view name) {
  if (name == "closed-form") return SteadyStateMethod::ClosedForm;
  if (name == "nullspace") return SteadyStateMethod::Nullspace;
  if (name == "integrate") return SteadyStateMethod::Integrate;
  throw Error(ErrorCode::Validation, "unknown steady-state method '" + std::string(name) + "'");
}

namespace {

ComplexMatrix normalize_state(ComplexMatrix rho) {
  rho = cplx(0.5) * (rho + rho.adjoint());
  const cplx tr = rho.trace();
  return cplx(1.0) / tr * rho;
}

DensityMatrix nullspace_steady_state(const ModelParams& p) {
  const ComplexMatrix l = liouvillian_superoperator(p);
  const HermitianEig eig = hermitian_eig(l.adjoint() * l);
  if (eig.values[1] < kKernelGapTol) {
    throw Error(ErrorCode::DegenerateSteadyState,
                "Liouvillian kernel is not one-dimensional at " + describe(p) +
                    " (second singular value^2 = " + format_number(eig.values[1]) + ")");
  }
  return DensityMatrix(normalize_state(unvec(eig.vector(0))));
}

DensityMatrix integrated_steady_state(const ModelParams& p) {
  const ComplexMatrix l = liouvillian_superoperator(p);
  const double h = 0.01 / std::max({p.r, p.gamma, 4.0 * p.g, 1.0});

  std::vector<cplx> y = vec(cplx(0.25) * ComplexMatrix::identity(4));
  std::vector<cplx> k1(16), k2(16), k3(16), k4(16), tmp(16);
  auto deriv = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
    for (std::size_t i = 0; i < 16; ++i) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < 16; ++j) s += l(i, j) * in[j];
      out[i] = s;
    }
  };

  for (long step = 0; step < kIntegrateMaxSteps; ++step) {
    deriv(y, k1);
    double residual = 0.0;
    for (const auto& z : k1) residual = std::max(residual, std::abs(z));
    if (residual < kIntegrateResidual) return DensityMatrix(normalize_state(unvec(y)));

    for (std::size_t i = 0; i < 16; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    deriv(tmp, k2);
    for (std::size_t i = 0; i < 16; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    deriv(tmp, k3);
    for (std::size_t i = 0; i < 16; ++i) tmp[i] = y[i] + h * k3[i];
    deriv(tmp, k4);
    for (std::size_t i = 0; i < 16; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    if ((step + 1) % kRehermitizeEvery == 0) {
      ComplexMatrix m = unvec(y);
      y = vec(cplx(0.5) * (m + m.adjoint()));
    }
  }
  throw Error(ErrorCode::NoConvergence, "RK4 integration hit the step cap at " + describe(p));
}

}  // namespace

DensityMatrix steady_state(const ModelParams& p, SteadyStateMethod method) {
  p.validate();
  if (method == SteadyStateMethod::ClosedForm) return closed_form_steady_state(p);
  if (method == SteadyStateMethod::Integrate && p.r <= 0.0) {
    throw Error(ErrorCode::DegenerateSteadyState, "integration needs r > 0; kernel is degenerate at " + describe(p));
  }
  DensityMatrix rho = method == SteadyStateMethod::Nullspace ? nullspace_steady_state(p) : integrated_steady_state(p);
  const double residual = liouvillian_apply(p, rho.matrix()).max_abs();
  if (residual > 1e-9) {
    throw Error(ErrorCode::NoConvergence,
                "steady-state residual " + format_number(residual) + " exceeds 1e-9 at " + describe(p));
  }
  return rho;
}

}  // namespace openqfi

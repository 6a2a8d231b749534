#pragma once

// Small dense complex linear algebra used by the rest of the library.
// Matrices here never exceed 16x16, so everything is a plain row-major
// std::vector and the eigensolver is a cyclic complex Jacobi iteration.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace openqfi {

using cplx = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of size dim x dim.
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major entries; entries.size() must equal dim*dim.
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries);
  /// Nested row lists, e.g. {{1, 0}, {0, -1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |a><b| for column vectors a and b.
  static ComplexMatrix outer(std::span<const cplx> a, std::span<const cplx> b);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const cplx> entries() const noexcept { return data_; }

  cplx& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;
  /// Largest entry modulus.
  double max_abs() const;
  /// Frobenius norm.
  double norm() const;
  /// max |M - M^dagger| over all entries.
  double hermiticity_defect() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cplx s);
std::vector<cplx> operator*(const ComplexMatrix& m, std::span<const cplx> v);

/// <a|b>, conjugating a.
cplx inner(std::span<const cplx> a, std::span<const cplx> b);

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascend; column k of
/// `vectors` belongs to eigenvalue k and has its first non-negligible
/// component (modulus > 1e-12) real and positive.
struct HermitianEig {
  std::vector<double> values;
  ComplexMatrix vectors;

  std::vector<cplx> vector(std::size_t k) const;
};

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kJacobiOffdiagTol = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;

/// Throws NotHermitian when max|M - M^dagger| exceeds kHermitianTol and
/// NoConvergence when the sweep cap is hit.
HermitianEig hermitian_eig(const ComplexMatrix& m);

/// Basis order follows the usual convention: index i*dim(B)+k for A-index i
/// and B-index k, so qubit 1 is the left factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Two-qubit partial trace; `qubit` is 1 or 2 and names the traced factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, int qubit);

/// Two-qubit partial transpose on the named qubit (1 or 2).
ComplexMatrix partial_transpose(const ComplexMatrix& m, int qubit);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& m);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace openqfi

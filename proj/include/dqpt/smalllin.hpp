#pragma once

// Dense complex linear algebra for the 2- and 4-dimensional Hilbert spaces
// that appear in a single momentum sector.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace dqpt::lin {

using cplx = std::complex<double>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-10;

/// Column vector of dimension 2 or 4.
class ComplexVector {
 public:
  explicit ComplexVector(int dim);
  ComplexVector(std::initializer_list<cplx> values);

  int dim() const { return dim_; }
  cplx& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
  const cplx& operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

  double norm() const;
  /// <this|other>
  cplx dot(const ComplexVector& other) const;

 private:
  int dim_;
  std::array<cplx, 4> v_{};
};

/// Row-major square matrix of dimension 2 or 4.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim);
  ComplexMatrix(int dim, std::initializer_list<cplx> row_major);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix diagonal(const std::vector<double>& d);
  static ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b);

  int dim() const { return dim_; }
  cplx& operator()(int r, int c) { return a_[idx(r, c)]; }
  const cplx& operator()(int r, int c) const { return a_[idx(r, c)]; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  /// max_ij |A_ij - conj(A_ji)|
  double max_asymmetry() const;
  /// max_ij |A_ij|
  double max_abs() const;

  ComplexVector column(int c) const;
  ComplexVector operator*(const ComplexVector& v) const;
  ComplexMatrix operator*(const ComplexMatrix& other) const;
  ComplexMatrix operator+(const ComplexMatrix& other) const;
  ComplexMatrix operator-(const ComplexMatrix& other) const;
  ComplexMatrix operator*(cplx s) const;

 private:
  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r * dim_ + c);
  }
  int dim_;
  std::array<cplx, 16> a_{};
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // eigenvectors as columns
};

/// Cyclic complex Jacobi. For dim 2 a single rotation is exact.
/// Throws std::invalid_argument when the input is not Hermitian.
EigenSystem eig_hermitian(const ComplexMatrix& m);

/// exp(-i H t)
ComplexMatrix propagator(const ComplexMatrix& hamiltonian, double t);

/// exp(-i H t)|psi>. Rejects states whose norm differs from 1 by more than
/// kNormTolerance. t == 0 returns psi unchanged.
ComplexVector evolve(const ComplexMatrix& hamiltonian, const ComplexVector& psi,
                     double t);

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity (eigenvalues >= -1e-12).
  explicit DensityMatrix(ComplexMatrix m);
  static DensityMatrix pure(const ComplexVector& psi);

  int dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

enum class Subsystem { first, second };

/// 4-dim states use index = 2 * n_first + n_second.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// In nats. Eigenvalues in [-1e-12, 0) are clamped to zero and anything
/// below 1e-14 contributes nothing.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace dqpt::lin

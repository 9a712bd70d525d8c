#include "dqpt/smalllin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dqpt::lin {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("dimension must be 2 or 4, got " +
                                std::to_string(dim));
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r) {
    for (int c = 0; c < a.dim(); ++c) {
      if (r != c) s += std::norm(a(r, c));
    }
  }
  return std::sqrt(s);
}

}  // namespace

ComplexVector::ComplexVector(int dim) : dim_(dim) { check_dim(dim); }

ComplexVector::ComplexVector(std::initializer_list<cplx> values)
    : dim_(static_cast<int>(values.size())) {
  check_dim(dim_);
  std::copy(values.begin(), values.end(), v_.begin());
}

double ComplexVector::norm() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += std::norm((*this)[i]);
  return std::sqrt(s);
}

cplx ComplexVector::dot(const ComplexVector& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  cplx s = 0.0;
  for (int i = 0; i < dim_; ++i) s += std::conj((*this)[i]) * other[i];
  return s;
}

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<cplx> row_major)
    : dim_(dim) {
  check_dim(dim);
  if (row_major.size() != static_cast<std::size_t>(dim * dim)) {
    throw std::invalid_argument("entries length must equal dim^2");
  }
  std::copy(row_major.begin(), row_major.end(), a_.begin());
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
  ComplexMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector& a,
                                   const ComplexVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  ComplexMatrix m(a.dim());
  for (int r = 0; r < a.dim(); ++r) {
    for (int c = 0; c < a.dim(); ++c) m(r, c) = a[r] * std::conj(b[c]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) m(r, c) = std::conj((*this)(c, r));
  }
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx s = 0.0;
  for (int i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

double ComplexMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return worst;
}

double ComplexMatrix::max_abs() const {
  double worst = 0.0;
  for (int i = 0; i < dim_ * dim_; ++i) {
    worst = std::max(worst, std::abs(a_[static_cast<std::size_t>(i)]));
  }
  return worst;
}

ComplexVector ComplexMatrix::column(int c) const {
  ComplexVector v(dim_);
  for (int r = 0; r < dim_; ++r) v[r] = (*this)(r, c);
  return v;
}

ComplexVector ComplexMatrix::operator*(const ComplexVector& v) const {
  if (v.dim() != dim_) throw std::invalid_argument("dimension mismatch");
  ComplexVector out(dim_);
  for (int r = 0; r < dim_; ++r) {
    cplx s = 0.0;
    for (int c = 0; c < dim_; ++c) s += (*this)(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  ComplexMatrix out(dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      cplx s = 0.0;
      for (int j = 0; j < dim_; ++j) s += (*this)(r, j) * other(j, c);
      out(r, c) = s;
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < static_cast<std::size_t>(dim_ * dim_); ++i) {
    out.a_[i] = a_[i] + other.a_[i];
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
  return *this + other * cplx(-1.0);
}

ComplexMatrix ComplexMatrix::operator*(cplx s) const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < static_cast<std::size_t>(dim_ * dim_); ++i) {
    out.a_[i] = a_[i] * s;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw std::invalid_argument("kron is defined for 2x2 factors only");
  }
  ComplexMatrix out(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

EigenSystem eig_hermitian(const ComplexMatrix& m) {
  const double asym = m.max_asymmetry();
  if (asym >= kHermitianTolerance) {
    std::ostringstream msg;
    msg << "eig_hermitian: matrix is not Hermitian (max asymmetry " << asym
        << ")";
    throw std::invalid_argument(msg.str());
  }
  const int n = m.dim();
  // Symmetrize so that rounding in the input cannot bias the rotations.
  ComplexMatrix a = (m + m.adjoint()) * cplx(0.5);
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(a.max_abs(), 1e-300);
  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-17 * scale) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx g = a(p, q);
        const double mag = std::abs(g);
        if (mag <= 1e-300) continue;
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        // Rotation in the (p, q) plane with the phase of a_pq absorbed;
        // the small-angle branch keeps |angle| <= pi/4.
        const double angle =
            alpha == beta ? std::numbers::pi / 4.0
                          : 0.5 * std::atan(2.0 * mag / (alpha - beta));
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        const cplx phase = g / mag;
        ComplexMatrix rot = ComplexMatrix::identity(n);
        rot(p, p) = c;
        rot(q, p) = s * std::conj(phase);
        rot(p, q) = -s * phase;
        rot(q, q) = c;
        a = rot.adjoint() * a * rot;
        v = v * rot;
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });

  EigenSystem out{std::vector<double>(static_cast<std::size_t>(n)),
                  ComplexMatrix(n)};
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    out.values[static_cast<std::size_t>(j)] = a(src, src).real();
    for (int r = 0; r < n; ++r) out.vectors(r, j) = v(r, src);
  }
  return out;
}

ComplexMatrix propagator(const ComplexMatrix& hamiltonian, double t) {
  const EigenSystem es = eig_hermitian(hamiltonian);
  const int n = hamiltonian.dim();
  ComplexMatrix phases(n);
  for (int j = 0; j < n; ++j) {
    phases(j, j) = std::polar(1.0, -es.values[static_cast<std::size_t>(j)] * t);
  }
  return es.vectors * phases * es.vectors.adjoint();
}

ComplexVector evolve(const ComplexMatrix& hamiltonian, const ComplexVector& psi,
                     double t) {
  const double nrm = psi.norm();
  if (std::abs(nrm - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "evolve: state is not normalized (norm " << nrm << ")";
    throw std::invalid_argument(msg.str());
  }
  if (t == 0.0) return psi;
  return propagator(hamiltonian, t) * psi;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(m) {
  const double asym = m_.max_asymmetry();
  if (asym >= kHermitianTolerance) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (max asymmetry " << asym << ")";
    throw std::invalid_argument(msg.str());
  }
  const cplx tr = m_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr.real() << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
  const EigenSystem es = eig_hermitian(m_);
  if (es.values.front() < -kHermitianTolerance) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << es.values.front();
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double nrm = psi.norm();
  if (std::abs(nrm - 1.0) > kNormTolerance) {
    throw std::invalid_argument("pure state must be normalized");
  }
  ComplexMatrix m = ComplexMatrix::outer(psi, psi);
  // Remove the O(eps) anti-Hermitian part left by the outer product.
  return DensityMatrix((m + m.adjoint()) * cplx(0.5));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("partial_trace requires a 4-dimensional state");
  }
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      cplx s = 0.0;
      for (int other = 0; other < 2; ++other) {
        s += keep == Subsystem::first ? m(2 * i + other, 2 * j + other)
                                      : m(2 * other + i, 2 * other + j);
      }
      out(i, j) = s;
    }
  }
  return DensityMatrix(out);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const EigenSystem es = eig_hermitian(rho.matrix());
  double s = 0.0;
  for (double lambda : es.values) {
    const double p = lambda < 0.0 ? 0.0 : lambda;
    if (p < 1e-14) continue;
    s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

}  // namespace dqpt::lin

#pragma once

#include "entwb/core.hpp"

namespace entwb {

/** Kronecker product, row-major index convention:
 *  (A (x) B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l]. */
inline Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline double hermiticity_defect(const Matrix& M) {
  return (M - M.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& M, double tol = 1e-12) {
  if (M.rows() != M.cols()) return false;
  double scale = 1.0 + M.cwiseAbs().maxCoeff();
  return hermiticity_defect(M) <= tol * scale;
}

struct EigenResult {
  RealVector values;   // ascending
  Matrix vectors;      // orthonormal columns, vectors.col(k) <-> values(k)
  double residual;     // ||M V - V diag(values)||_F
};

/** Hermitian eigendecomposition. Deterministic for identical input bits.
 *  Throws NotHermitian when the symmetry defect exceeds tol*(1+max|M|). */
inline EigenResult hermitian_eig(const Matrix& M, double tol = 1e-12) {
  if (M.rows() != M.cols())
    throw NotHermitian("matrix is not square");
  if (!is_hermitian(M, tol))
    throw NotHermitian("symmetry defect above tolerance");
  Matrix H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(H);
  if (solver.info() != Eigen::Success)
    throw Error("eigensolver failed to converge");
  EigenResult r;
  r.values = solver.eigenvalues();
  r.vectors = solver.eigenvectors();
  r.residual = (M * r.vectors - r.vectors * r.values.asDiagonal().toDenseMatrix().cast<Complex>()).norm();
  return r;
}

/** Spectral threshold: tau = tol * max(1, ||M||_2) from precomputed eigenvalues. */
inline double spectral_threshold(const RealVector& eigenvalues, double tol) {
  double top = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return tol * std::max(1.0, top);
}

struct Inertia {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;
  double threshold = 0.0;
  bool operator==(const Inertia& o) const {
    return n_plus == o.n_plus && n_minus == o.n_minus && n_zero == o.n_zero;
  }
};

inline Inertia inertia_from_values(const RealVector& values, double tol) {
  Inertia in;
  in.threshold = spectral_threshold(values, tol);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > in.threshold) ++in.n_plus;
    else if (values(i) < -in.threshold) ++in.n_minus;
    else ++in.n_zero;
  }
  return in;
}

inline Inertia inertia_of(const Matrix& M, double tol = 1e-9) {
  return inertia_from_values(hermitian_eig(M).values, tol);
}

inline int rank_of(const Matrix& M, double tol = 1e-9) {
  Inertia in = inertia_of(M, tol);
  return in.n_plus + in.n_minus;
}

/** Orthonormal basis of the span of eigenvectors with |eigenvalue| > tau. */
inline Matrix range_basis(const Matrix& M, double tol = 1e-9) {
  EigenResult eig = hermitian_eig(M);
  double tau = spectral_threshold(eig.values, tol);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (std::abs(eig.values(i)) > tau) keep.push_back(i);
  Matrix B(M.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) B.col(k) = eig.vectors.col(keep[k]);
  return B;
}

/** Rank of an arbitrary (not necessarily square) matrix by singular values
 *  above tol * max(1, s_max). */
inline int column_rank(const Matrix& M, double tol = 1e-9) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(M);
  const auto& s = svd.singularValues();
  double tau = tol * std::max(1.0, s.size() ? s(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tau) ++r;
  return r;
}

/** Relative distance of v from span(basis): ||v - B B^dag v|| / ||v||, in [0,1]. */
inline double subspace_residual(const Vector& v, const Matrix& basis) {
  double nv = v.norm();
  if (nv <= 0.0) throw ZeroVector("subspace_residual requires a nonzero vector");
  if (basis.cols() == 0) return 1.0;
  if (basis.rows() != v.size())
    throw DimensionMismatch("basis rows must match vector length");
  Vector p = basis * (basis.adjoint() * v);
  return (v - p).norm() / nv;
}

}  // namespace entwb

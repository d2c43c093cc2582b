#pragma once

// Reference computations that avoid the library's own code paths: rank-one
// sums instead of operator composition, Hermitian eigen-solvers and Jacobi
// SVDs, closed forms where the fixtures have them.

#include "framemult/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>

namespace oracle {

using framemult::Complex;
using framemult::Index;
using framemult::Matrix;
using framemult::RealVector;
using framemult::Vector;

inline Matrix multiplier(const Vector& m, const Matrix& phi, const Matrix& psi) {
  Matrix out = Matrix::Zero(phi.rows(), phi.rows());
  for (Index n = 0; n < m.size(); ++n) out += m[n] * phi.col(n) * psi.col(n).adjoint();
  return out;
}

inline Matrix frame_operator(const Matrix& phi) {
  Matrix s = Matrix::Zero(phi.rows(), phi.rows());
  for (Index n = 0; n < phi.cols(); ++n) s += phi.col(n) * phi.col(n).adjoint();
  return s;
}

// Ascending eigenvalues of a Hermitian matrix.
inline RealVector hermitian_eigs(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// One-sided Jacobi, unlike the divide-and-conquer SVD of the library.
inline RealVector singular_values(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

inline double op_norm(const Matrix& a) { return singular_values(a).maxCoeff(); }
inline double min_sv(const Matrix& a) { return singular_values(a).minCoeff(); }

inline double lower_frame_bound(const Matrix& phi) { return hermitian_eigs(frame_operator(phi)).minCoeff(); }
inline double bessel_bound(const Matrix& phi) { return hermitian_eigs(frame_operator(phi)).maxCoeff(); }

inline Matrix inverse(const Matrix& a) { return Eigen::FullPivLU<Matrix>(a).inverse(); }

inline Matrix random_matrix(std::mt19937_64& rng, Index r, Index c, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Matrix out(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) out(i, j) = Complex(n(rng), n(rng));
  return out;
}

inline Vector random_vector(std::mt19937_64& rng, Index d) {
  return random_matrix(rng, d, 1).col(0);
}

// inf over duals of B(W - dual) for phi = (e1, e1, e2, ...), W = c phi: the
// e1 block gives |c - x|^2 + |c - 1 + x|^2 minimised at x = 1/2 (complex
// part 0), the rest gives |c - 1|^2.
inline double repeat_first_optimal_dual_mu(double c) {
  const double e1 = 2.0 * (c - 0.5) * (c - 0.5);
  return std::max(e1, (c - 1.0) * (c - 1.0));
}

}  // namespace oracle

#pragma once

#include <string>

#include "cvlqr/errors.hpp"
#include "cvlqr/types.hpp"

namespace cvlqr::detail {

// Inverse of a square matrix; throws SingularBimatrix when sigma_min is below
// 1e-12 sigma_max.
template <typename Matrix>
Matrix checked_inverse(const Matrix& m, const std::string& what) {
  if (m.rows() != m.cols()) throw DimensionMismatch(what + ": not square");
  if (m.rows() == 0) return m;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-12 * sv(0))) {
    throw SingularBimatrix(what + ": matrix is singular");
  }
  return svd.matrixV() * sv.cwiseInverse().asDiagonal() *
         svd.matrixU().adjoint();
}

template <typename Matrix>
Matrix hermitian_part(const Matrix& m) {
  return 0.5 * (m + m.adjoint());
}

// Principal power of a Hermitian positive definite matrix (exponent +-1/2).
template <typename Matrix>
Matrix hermitian_power(const Matrix& m, double exponent,
                       const std::string& what) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  const auto& ev = es.eigenvalues();
  if (ev.size() == 0 || !(ev(0) > 1e-12 * std::max(1.0, ev(ev.size() - 1)))) {
    throw NotPositiveDefinite(what + " is not positive definite");
  }
  const auto powered = ev.array().pow(exponent).matrix();
  return es.eigenvectors() * powered.asDiagonal() *
         es.eigenvectors().adjoint();
}

template <typename Matrix>
bool is_hermitian_pd(const Matrix& m, double rel_tol = 1e-10) {
  if (m.rows() == 0 || m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > rel_tol * scale) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) > rel_tol * scale;
}

}  // namespace cvlqr::detail

#include "cvlqr/random_instances.hpp"

#include <cmath>

namespace cvlqr {

CMatrix InstanceGenerator::complex_matrix(Eigen::Index rows,
                                          Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

RMatrix InstanceGenerator::real_matrix(Eigen::Index rows, Eigen::Index cols) {
  RMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal();
  return m;
}

CVector InstanceGenerator::complex_vector(Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

RVector InstanceGenerator::real_vector(Eigen::Index n) {
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
  return v;
}

CMatrix InstanceGenerator::hermitian_pd(Eigen::Index n) {
  const CMatrix x = complex_matrix(n, n);
  return x * x.adjoint() / static_cast<double>(n) + CMatrix::Identity(n, n);
}

RMatrix InstanceGenerator::symmetric_pd(Eigen::Index n) {
  const RMatrix x = real_matrix(n, n);
  return x * x.transpose() / static_cast<double>(n) + RMatrix::Identity(n, n);
}

AntilinearSystem InstanceGenerator::antilinear_system(Eigen::Index n,
                                                      Eigen::Index m,
                                                      double scale) {
  const double s = scale / std::sqrt(2.0 * static_cast<double>(n));
  CMatrix a2 = s * complex_matrix(n, n);
  CMatrix b2 = complex_matrix(n, m) / std::sqrt(2.0);
  return {std::move(a2), std::move(b2)};
}

ComplexLinearSystem InstanceGenerator::complex_system(Eigen::Index n,
                                                      Eigen::Index m,
                                                      double scale) {
  const double s = scale / std::sqrt(4.0 * static_cast<double>(n));
  Bimatrix a(s * complex_matrix(n, n), s * complex_matrix(n, n));
  Bimatrix b(complex_matrix(n, m) / 2.0, complex_matrix(n, m) / 2.0);
  return {std::move(a), std::move(b)};
}

CostWeights InstanceGenerator::weights(Eigen::Index n, Eigen::Index m) {
  CMatrix q = hermitian_pd(n);
  CMatrix r = hermitian_pd(m);
  return {std::move(q), std::move(r)};
}

DelaySystem InstanceGenerator::delay_system(Eigen::Index n, Eigen::Index p,
                                            double scale) {
  const double s = scale / std::sqrt(static_cast<double>(n));
  DelaySystem ds;
  ds.a0 = s * real_matrix(n, n);
  ds.ad = s * real_matrix(n, n);
  ds.g = real_matrix(n, p);
  ds.q0 = symmetric_pd(n);
  ds.r0 = symmetric_pd(p);
  return ds;
}

}  // namespace cvlqr

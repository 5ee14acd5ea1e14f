#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cvlqr {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kJ{0.0, 1.0};

}  // namespace cvlqr

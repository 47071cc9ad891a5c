#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cavitydyn {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = DenseMatrix<double>;
using ComplexVector = DenseVector<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Default Fock-space truncation. Pure loss never raises the photon number,
// so states supported on n <= 2 need only D = 3; the headroom covers the
// preparation protocol and truncation diagnostics.
inline constexpr int kDefaultDim = 8;

}  // namespace cavitydyn

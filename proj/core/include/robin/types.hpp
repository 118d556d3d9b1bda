#pragma once

#include <Eigen/Dense>
#include <complex>

namespace robin {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Condition-number guard for every matrix inversion in the precoder path.
inline constexpr double kConditionLimit = 1e12;

} // namespace robin

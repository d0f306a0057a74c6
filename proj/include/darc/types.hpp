#pragma once

#include <complex>

#include <Eigen/Core>

namespace darc {

using Complex = std::complex<double>;
using CoeffVec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline Complex unit_circle(double theta) { return std::polar(1.0, theta); }

}  // namespace darc

#pragma once

#include <Eigen/Core>

namespace slope {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace slope

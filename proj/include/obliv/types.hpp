#pragma once

#include <Eigen/Core>

namespace obliv {

// Dense row-major storage so sample rows are contiguous and bind to
// Eigen::Ref without copies.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using RowRef = Eigen::Ref<const Eigen::RowVectorXd>;
using Index = Eigen::Index;

} // namespace obliv

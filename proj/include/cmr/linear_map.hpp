#pragma once

#include <functional>

#include <Eigen/Dense>

#include "cmr/sensing_operator.hpp"

namespace cmr {

/// Type-erased matrix-free operator, the interface the solvers work on.
struct LinearMap {
  int rows = 0;
  int cols = 0;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> forward;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> adjoint;
};

/// View of A itself.
LinearMap as_map(const SensingOperator& op);

/// View of the column-normalized operator A~ = A D^{-1}.
LinearMap normalized_map(const SensingOperator& op, const ColumnScaling& scaling);

}  // namespace cmr

#include "cmr/linear_map.hpp"

namespace cmr {

LinearMap as_map(const SensingOperator& op) {
  LinearMap map;
  map.rows = op.rows();
  map.cols = op.cols();
  map.forward = [&op](const Eigen::VectorXcd& x) { return op.apply(x); };
  map.adjoint = [&op](const Eigen::VectorXcd& y) {
    return op.apply_adjoint(y);
  };
  return map;
}

LinearMap normalized_map(const SensingOperator& op,
                         const ColumnScaling& scaling) {
  LinearMap map;
  map.rows = op.rows();
  map.cols = op.cols();
  Eigen::VectorXcd inv =
      scaling.norms.cwiseInverse().cast<std::complex<double>>();
  map.forward = [&op, inv](const Eigen::VectorXcd& z) {
    return op.apply(z.cwiseProduct(inv));
  };
  map.adjoint = [&op, inv](const Eigen::VectorXcd& y) {
    return op.apply_adjoint(y).cwiseProduct(inv);
  };
  return map;
}

}  // namespace cmr

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace subcell {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Raised for precondition violations and construction failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed interval [left, right].
struct Interval {
  double left = -1.0;
  double right = 1.0;

  double length() const { return right - left; }
  double midpoint() const { return 0.5 * (left + right); }
  bool contains(double x, double tol = 0.0) const {
    return x >= left - tol && x <= right + tol;
  }
};

}  // namespace subcell

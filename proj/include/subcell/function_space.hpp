#pragma once

#include "subcell/common.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace subcell {

/// Strictly increasing nodes contained in an interval.
class NodeSet {
 public:
  NodeSet(std::vector<double> nodes, Interval interval);

  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  const std::vector<double>& values() const { return nodes_; }
  const Interval& interval() const { return interval_; }

 private:
  std::vector<double> nodes_;
  Interval interval_;
};

struct BasisFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// Finite-dimensional exactness space with an evaluable basis.
///
/// `span_key` identifies the span independent of the basis used to
/// represent it, e.g. Legendre and monomial bases of degree d share "P_d".
class FunctionSpace {
 public:
  FunctionSpace(std::vector<BasisFunction> basis, std::string descriptor,
                std::string span_key);

  std::size_t dimension() const { return basis_.size(); }
  const std::string& descriptor() const { return descriptor_; }
  const std::string& span_key() const { return span_key_; }

  double value(std::size_t k, double x) const { return basis_[k].value(x); }
  double derivative(std::size_t k, double x) const {
    return basis_[k].derivative(x);
  }

  /// Row vector [f_1(x), ..., f_K(x)].
  Vector evaluate(double x) const;

  bool same_span(const FunctionSpace& other) const {
    return span_key_ == other.span_key_ && dimension() == other.dimension();
  }

 private:
  std::vector<BasisFunction> basis_;
  std::string descriptor_;
  std::string span_key_;
};

using SpacePtr = std::shared_ptr<const FunctionSpace>;

/// P_d represented by Legendre polynomials scaled to `interval`.
SpacePtr polynomial_space(int degree, Interval interval = {-1.0, 1.0});

/// P_d in the raw monomial basis {1, x, ..., x^d}. Only sensible for small d.
SpacePtr monomial_space(int degree);

/// V(n, k) = f_k(x_n).
Matrix vandermonde(const FunctionSpace& space, const NodeSet& nodes);
Matrix vandermonde(const FunctionSpace& space, const std::vector<double>& x);

/// V'(n, k) = f_k'(x_n).
Matrix vandermonde_derivative(const FunctionSpace& space, const NodeSet& nodes);
Matrix vandermonde_derivative(const FunctionSpace& space,
                              const std::vector<double>& x);

/// Legendre polynomial P_n and its first derivative at x in [-1, 1].
struct LegendreValue {
  double value;
  double derivative;
};
LegendreValue legendre(int n, double x);

}  // namespace subcell

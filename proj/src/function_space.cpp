#include "subcell/function_space.hpp"

#include <cmath>
#include <sstream>

namespace subcell {

NodeSet::NodeSet(std::vector<double> nodes, Interval interval)
    : nodes_(std::move(nodes)), interval_(interval) {
  if (nodes_.empty()) throw Error("node set is empty");
  if (!(interval_.left <= interval_.right)) throw Error("node set interval is reversed");
  const double slack = 1e-12 * std::max(1.0, interval_.length());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!interval_.contains(nodes_[i], slack)) {
      std::ostringstream msg;
      msg << "node " << nodes_[i] << " outside [" << interval_.left << ", "
          << interval_.right << "]";
      throw Error(msg.str());
    }
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw Error("nodes are not strictly increasing");
    }
  }
}

FunctionSpace::FunctionSpace(std::vector<BasisFunction> basis,
                             std::string descriptor, std::string span_key)
    : basis_(std::move(basis)),
      descriptor_(std::move(descriptor)),
      span_key_(std::move(span_key)) {
  if (basis_.empty()) throw Error("function space needs at least one basis function");
}

Vector FunctionSpace::evaluate(double x) const {
  Vector row(dimension());
  for (std::size_t k = 0; k < dimension(); ++k) row[k] = value(k, x);
  return row;
}

LegendreValue legendre(int n, double x) {
  if (n == 0) return {1.0, 0.0};
  double p_prev = 1.0, p = x;
  double dp_prev = 0.0, dp = 1.0;
  for (int k = 1; k < n; ++k) {
    const double p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
    // P'_{k+1} = P'_{k-1} + (2k + 1) P_k
    const double dp_next = dp_prev + (2.0 * k + 1.0) * p;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  return {p, dp};
}

SpacePtr polynomial_space(int degree, Interval interval) {
  if (degree < 0) throw Error("polynomial degree must be nonnegative");
  if (!(interval.length() > 0.0)) throw Error("polynomial space needs a nondegenerate interval");
  const double mid = interval.midpoint();
  const double scale = 2.0 / interval.length();
  std::vector<BasisFunction> basis;
  basis.reserve(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) {
    basis.push_back({
        [k, mid, scale](double x) { return legendre(k, scale * (x - mid)).value; },
        [k, mid, scale](double x) {
          return scale * legendre(k, scale * (x - mid)).derivative;
        },
    });
  }
  std::ostringstream descriptor;
  descriptor << "polynomials degree <= " << degree << " (Legendre on ["
             << interval.left << ", " << interval.right << "])";
  return std::make_shared<FunctionSpace>(std::move(basis), descriptor.str(),
                                         "P_" + std::to_string(degree));
}

SpacePtr monomial_space(int degree) {
  if (degree < 0) throw Error("polynomial degree must be nonnegative");
  std::vector<BasisFunction> basis;
  for (int k = 0; k <= degree; ++k) {
    basis.push_back({
        [k](double x) { return std::pow(x, k); },
        [k](double x) { return k == 0 ? 0.0 : k * std::pow(x, k - 1); },
    });
  }
  return std::make_shared<FunctionSpace>(
      std::move(basis), "polynomials degree <= " + std::to_string(degree) + " (monomials)",
      "P_" + std::to_string(degree));
}

Matrix vandermonde(const FunctionSpace& space, const std::vector<double>& x) {
  Matrix V(x.size(), space.dimension());
  for (std::size_t n = 0; n < x.size(); ++n)
    for (std::size_t k = 0; k < space.dimension(); ++k) V(n, k) = space.value(k, x[n]);
  return V;
}

Matrix vandermonde(const FunctionSpace& space, const NodeSet& nodes) {
  return vandermonde(space, nodes.values());
}

Matrix vandermonde_derivative(const FunctionSpace& space,
                              const std::vector<double>& x) {
  Matrix V(x.size(), space.dimension());
  for (std::size_t n = 0; n < x.size(); ++n)
    for (std::size_t k = 0; k < space.dimension(); ++k)
      V(n, k) = space.derivative(k, x[n]);
  return V;
}

Matrix vandermonde_derivative(const FunctionSpace& space, const NodeSet& nodes) {
  return vandermonde_derivative(space, nodes.values());
}

}  // namespace subcell

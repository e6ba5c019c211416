#pragma once

#include "subcell/common.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace subcell {

using RhsFunction = std::function<void(double t, const Vector& w, Vector& dw)>;
using Observer = std::function<void(double t, const Vector& w)>;

struct IntegratorOptions {
  double atol = 1e-8;
  double rtol = 1e-8;
  double initial_step = 0.0;  // 0: automatic
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 5'000'000;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

/// Raised when step control fails; `time()` is where it gave up.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Dormand-Prince 5(4) with PI step-size control and max-norm error
///   max_i |err_i| / (atol + rtol * max(|y_i|, |y_new_i|)).
/// `w` holds the initial state on entry and the state at t1 on exit. The
/// observer sees every requested sample time in [t0, t1] (cubic Hermite
/// dense output between steps).
IntegrationStats integrate(const RhsFunction& rhs, Vector& w, double t0, double t1,
                           const IntegratorOptions& options,
                           const std::vector<double>& sample_times = {},
                           const Observer& observer = {});

/// Evenly spaced sample times t0, t0 + dt, ..., t1 (n + 1 points).
std::vector<double> uniform_samples(double t0, double t1, std::size_t n);

}  // namespace subcell

#include "subcell/time_integration.hpp"

#include "subcell/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace subcell {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Fifth-order weights minus embedded fourth-order weights.
constexpr std::array<double, 7> kE{71.0 / 57600,      0.0,          -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExponent = 0.2 - 0.75 * kBeta;
// The new step is h / fac with fac in [1 / kMaxFactor, 1 / kMinFactor].
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;

std::string at_time(const std::string& what, double t) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at t = " << t;
  return os.str();
}

double max_norm(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Starting step from the scaled sizes of the state and its derivative.
double initial_step(const RhsFunction& rhs, double t0, const Vector& w, const Vector& f0,
                    double span, const IntegratorOptions& opt, std::size_t& evals) {
  const Vector scale = (opt.atol + opt.rtol * w.cwiseAbs().array()).matrix();
  const double d0 = max_norm(w.cwiseQuotient(scale));
  const double d1 = max_norm(f0.cwiseQuotient(scale));
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  const Vector w1 = w + h0 * f0;
  Vector f1(w.size());
  rhs(t0 + h0, w1, f1);
  ++evals;
  const double d2 = max_norm((f1 - f0).cwiseQuotient(scale)) / h0;
  const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                              : std::pow(0.01 / std::max(d1, d2), 0.2);
  return std::min({100.0 * h0, h1, span, opt.max_step});
}

}  // namespace

std::vector<double> uniform_samples(double t0, double t1, std::size_t n) {
  std::vector<double> times(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    times[i] = i == n ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n);
  return times;
}

IntegrationStats integrate(const RhsFunction& rhs, Vector& w, double t0, double t1,
                           const IntegratorOptions& opt, const std::vector<double>& sample_times,
                           const Observer& observer) {
  if (!(t1 >= t0)) throw Error("final time precedes initial time");
  if (!(opt.atol > 0.0) || !(opt.rtol >= 0.0)) throw Error("tolerances must be positive");
  IntegrationStats stats;
  const auto& kern = kernels::active();
  const auto n = static_cast<std::size_t>(w.size());

  std::vector<double> samples;
  for (double s : sample_times)
    if (s >= t0 && s <= t1) samples.push_back(s);
  std::sort(samples.begin(), samples.end());
  std::size_t next_sample = 0;
  auto emit_until = [&](double t_end, const auto& value_at) {
    while (next_sample < samples.size() && samples[next_sample] <= t_end) {
      if (observer) observer(samples[next_sample], value_at(samples[next_sample]));
      ++next_sample;
    }
  };

  const double span = t1 - t0;
  if (span == 0.0) {
    emit_until(t0, [&](double) { return w; });
    return stats;
  }

  std::array<Vector, 7> k;
  for (auto& ki : k) ki.resize(w.size());
  rhs(t0, w, k[0]);
  ++stats.rhs_evaluations;
  emit_until(t0, [&](double) { return w; });

  double h = opt.initial_step > 0.0 ? opt.initial_step
                                    : initial_step(rhs, t0, w, k[0], span, opt, stats.rhs_evaluations);
  double t = t0;
  double err_old = 1e-4;
  bool last_rejected = false;
  Vector stage(w.size()), w_new(w.size()), err(w.size());
  const Vector zero = Vector::Zero(w.size());
  std::array<const double*, 7> kp{};

  while (t < t1) {
    if (stats.accepted + stats.rejected >= opt.max_steps)
      throw IntegrationError(at_time("step limit exceeded", t), t);
    if (h < 1e-14 * span) throw IntegrationError(at_time("step size underflow", t), t);
    h = std::min(h, opt.max_step);
    const bool final_step = t + h >= t1;
    if (final_step) h = t1 - t;

    for (std::size_t s = 1; s < 7; ++s) {
      for (std::size_t j = 0; j < s; ++j) kp[j] = k[j].data();
      kern.stage_combination(s == 6 ? w_new.data() : stage.data(), w.data(), h, kp.data(),
                             kA[s], s, n);
      const Vector& ys = s == 6 ? w_new : stage;
      rhs(t + kC[s] * h, ys, k[s]);
      ++stats.rhs_evaluations;
    }
    for (std::size_t j = 0; j < 7; ++j) kp[j] = k[j].data();
    kern.stage_combination(err.data(), zero.data(), h, kp.data(), kE.data(), 7, n);
    double err_norm = kern.scaled_max_error(err.data(), w.data(), w_new.data(), opt.atol,
                                            opt.rtol, n);
    if (!std::isfinite(err_norm)) err_norm = 1e10;

    const double fac11 = std::pow(err_norm, kExponent);
    if (err_norm <= 1.0) {
      double fac = fac11 / std::pow(err_old, kBeta) / kSafety;
      fac = std::clamp(fac, 1.0 / kMaxFactor, 1.0 / kMinFactor);
      if (last_rejected) fac = std::max(fac, 1.0);
      err_old = std::max(err_norm, 1e-4);

      const double t_new = final_step ? t1 : t + h;
      // Cubic Hermite between (t, w, k0) and (t_new, w_new, k6).
      emit_until(t_new, [&](double ts) -> Vector {
        if (ts == t_new) return w_new;
        const double th = (ts - t) / h;
        const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
        const double h10 = th * (1 - th) * (1 - th);
        const double h01 = th * th * (3 - 2 * th);
        const double h11 = th * th * (th - 1);
        return h00 * w + h10 * h * k[0] + h01 * w_new + h11 * h * k[6];
      });
      w.swap(w_new);
      std::swap(k[0], k[6]);
      t = t_new;
      ++stats.accepted;
      last_rejected = false;
      h /= fac;
    } else {
      ++stats.rejected;
      last_rejected = true;
      h /= std::min(1.0 / kMinFactor, fac11 / kSafety);
    }
  }
  return stats;
}

}  // namespace subcell

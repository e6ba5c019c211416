#include "subcell/equations.hpp"

#include <algorithm>
#include <cmath>

namespace subcell {

double ConservationLaw::energy_density(const State& w) const { return 2.0 * entropy(w); }

State ConservationLaw::energy_gradient(const State& w) const {
  const State v = entropy_variables(w);
  return {2.0 * v[0], 2.0 * v[1], 2.0 * v[2]};
}

// ---------------------------------------------------------------- advection

double Advection::max_speed(const State&, const State&) const { return std::abs(alpha_); }

WaveSpeeds Advection::wave_speeds(const State&, const State&) const { return {alpha_, alpha_}; }

double Advection::entropy_potential(const State& w) const { return 0.5 * alpha_ * w[0] * w[0]; }

// ---------------------------------------------------------------- Burgers

double Burgers::max_speed(const State& wl, const State& wr) const {
  return std::max(std::abs(wl[0]), std::abs(wr[0]));
}

WaveSpeeds Burgers::wave_speeds(const State& wl, const State& wr) const {
  return {std::min(wl[0], wr[0]), std::max(wl[0], wr[0])};
}

double Burgers::entropy_potential(const State& w) const { return w[0] * w[0] * w[0] / 6.0; }

// ---------------------------------------------------------------- Maxwell

Maxwell::Maxwell(double c) : c_(c) {
  if (!(c > 0.0)) throw Error("Maxwell speed c must be positive");
}

// eta = (E^2 + c^2 B^2) / 2, so the entropy variables are (E, c^2 B) and the
// entropy flux is c^2 E B.
double Maxwell::entropy(const State& w) const {
  return 0.5 * (w[0] * w[0] + c_ * c_ * w[1] * w[1]);
}

State Maxwell::entropy_variables(const State& w) const { return {w[0], c_ * c_ * w[1], 0.0}; }

double Maxwell::entropy_potential(const State& w) const { return c_ * c_ * w[0] * w[1]; }

// ---------------------------------------------------------------- Euler

Euler::Euler(double gamma) : gamma_(gamma) {
  if (!(gamma > 1.0)) throw Error("ratio of specific heats must exceed 1");
}

double Euler::pressure(const State& w) const {
  return (gamma_ - 1.0) * (w[2] - 0.5 * w[1] * w[1] / w[0]);
}

double Euler::sound_speed(const State& w) const {
  return std::sqrt(gamma_ * pressure(w) / w[0]);
}

void Euler::validate(const State& w) const {
  if (!(w[0] > 0.0) || !std::isfinite(w[1]) || !(pressure(w) > 0.0))
    throw Error("invalid thermodynamic state");
}

State Euler::flux(const State& w) const {
  const double v = w[1] / w[0];
  const double p = pressure(w);
  return {w[1], w[1] * v + p, (w[2] + p) * v};
}

double Euler::max_speed(const State& wl, const State& wr) const {
  return std::max(std::abs(wl[1] / wl[0]) + sound_speed(wl),
                  std::abs(wr[1] / wr[0]) + sound_speed(wr));
}

WaveSpeeds Euler::wave_speeds(const State& wl, const State& wr) const {
  const double vl = wl[1] / wl[0];
  const double vr = wr[1] / wr[0];
  const double cl = sound_speed(wl);
  const double cr = sound_speed(wr);
  return {std::min(vl - cl, vr - cr), std::max(vl + cl, vr + cr)};
}

double Euler::entropy(const State& w) const {
  const double s = std::log(pressure(w)) - gamma_ * std::log(w[0]);
  return -w[0] * s / (gamma_ - 1.0);
}

State Euler::entropy_variables(const State& w) const {
  const double p = pressure(w);
  const double s = std::log(p) - gamma_ * std::log(w[0]);
  const double v = w[1] / w[0];
  return {(gamma_ - s) / (gamma_ - 1.0) - 0.5 * w[0] * v * v / p, w[1] / p, -w[0] / p};
}

double Euler::energy_density(const State& w) const {
  return w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
}

State Euler::energy_gradient(const State& w) const {
  return {2.0 * w[0], 2.0 * w[1], 2.0 * w[2]};
}

// ---------------------------------------------------------------- fluxes

std::string to_string(FluxKind kind) {
  switch (kind) {
    case FluxKind::upwind: return "upwind";
    case FluxKind::godunov: return "godunov";
    case FluxKind::rusanov: return "rusanov";
    case FluxKind::hll: return "hll";
    case FluxKind::central: return "central";
    case FluxKind::entropy_conservative: return "entropy_conservative";
  }
  return "unknown";
}

FluxKind flux_kind_from_string(const std::string& name) {
  for (auto k : {FluxKind::upwind, FluxKind::godunov, FluxKind::rusanov, FluxKind::hll,
                 FluxKind::central, FluxKind::entropy_conservative})
    if (to_string(k) == name) return k;
  if (name == "ec") return FluxKind::entropy_conservative;
  throw Error("unknown flux '" + name + "'");
}

namespace {

State combine(const State& a, double sa, const State& b, double sb) {
  return {sa * a[0] + sb * b[0], sa * a[1] + sb * b[1], sa * a[2] + sb * b[2]};
}

State central_flux(const ConservationLaw& law, const State& wl, const State& wr) {
  return combine(law.flux(wl), 0.5, law.flux(wr), 0.5);
}

State rusanov_flux(const ConservationLaw& law, const State& wl, const State& wr) {
  const double lambda = law.max_speed(wl, wr);
  State f = central_flux(law, wl, wr);
  for (std::size_t i = 0; i < kMaxVars; ++i) f[i] -= 0.5 * lambda * (wr[i] - wl[i]);
  return f;
}

State hll_flux(const ConservationLaw& law, const State& wl, const State& wr) {
  const auto [sl, sr] = law.wave_speeds(wl, wr);
  if (sl >= 0.0) return law.flux(wl);
  if (sr <= 0.0) return law.flux(wr);
  const State fl = law.flux(wl);
  const State fr = law.flux(wr);
  State f{};
  for (std::size_t i = 0; i < kMaxVars; ++i)
    f[i] = (sr * fl[i] - sl * fr[i] + sl * sr * (wr[i] - wl[i])) / (sr - sl);
  return f;
}

State burgers_godunov(const State& wl, const State& wr) {
  const double ul = wl[0];
  const double ur = wr[0];
  double f;
  if (ul <= ur) {
    // Rarefaction (or constant): minimise f over [ul, ur].
    if (ul >= 0.0) f = 0.5 * ul * ul;
    else if (ur <= 0.0) f = 0.5 * ur * ur;
    else f = 0.0;
  } else {
    f = std::max(0.5 * ul * ul, 0.5 * ur * ur);
  }
  return {f, 0.0, 0.0};
}

// Exact Riemann solution of the linear system: the right-going invariant
// E + cB comes from the left, the left-going one E - cB from the right.
State maxwell_upwind(const Maxwell& law, const State& wl, const State& wr) {
  const double c = law.speed_of_light();
  const double right_going = wl[0] + c * wl[1];
  const double left_going = wr[0] - c * wr[1];
  const double e = 0.5 * (right_going + left_going);
  const double b = 0.5 * (right_going - left_going) / c;
  return {c * c * b, e, 0.0};
}

State advection_upwind(const Advection& law, const State& wl, const State& wr) {
  return {law.alpha() * (law.alpha() >= 0.0 ? wl[0] : wr[0]), 0.0, 0.0};
}

[[noreturn]] void undefined(FluxKind kind, const ConservationLaw& law) {
  throw Error("flux '" + to_string(kind) + "' is not defined for " + law.name());
}

}  // namespace

State numerical_flux(FluxKind kind, const ConservationLaw& law, const State& wl,
                     const State& wr) {
  const auto* advection = dynamic_cast<const Advection*>(&law);
  const auto* maxwell = dynamic_cast<const Maxwell*>(&law);
  const bool burgers = dynamic_cast<const Burgers*>(&law) != nullptr;
  switch (kind) {
    case FluxKind::upwind:
      if (advection) return advection_upwind(*advection, wl, wr);
      if (maxwell) return maxwell_upwind(*maxwell, wl, wr);
      undefined(kind, law);
    case FluxKind::godunov:
      if (advection) return advection_upwind(*advection, wl, wr);
      if (maxwell) return maxwell_upwind(*maxwell, wl, wr);
      if (burgers) return burgers_godunov(wl, wr);
      undefined(kind, law);
    case FluxKind::rusanov: return rusanov_flux(law, wl, wr);
    case FluxKind::hll: return hll_flux(law, wl, wr);
    case FluxKind::central: return central_flux(law, wl, wr);
    case FluxKind::entropy_conservative: return volume_flux(kind, law, wl, wr);
  }
  undefined(kind, law);
}

bool is_fully_upwind(FluxKind kind, const ConservationLaw& law, const State& wl,
                     const State& wr) {
  const auto* advection = dynamic_cast<const Advection*>(&law);
  const bool burgers = dynamic_cast<const Burgers*>(&law) != nullptr;
  switch (kind) {
    case FluxKind::upwind:
      return advection && advection->alpha() > 0.0;
    case FluxKind::godunov:
      if (advection) return advection->alpha() > 0.0;
      return burgers && wl[0] > 0.0 && wr[0] > 0.0;
    case FluxKind::hll:
      return law.wave_speeds(wl, wr).min >= 0.0;
    case FluxKind::rusanov:
    case FluxKind::central:
    case FluxKind::entropy_conservative:
      return false;
  }
  return false;
}

double logarithmic_mean(double x, double y) {
  const double u = (x * (x - 2.0 * y) + y * y) / (x * (x + 2.0 * y) + y * y);
  if (u < 1e-4)
    return (x + y) / (2.0 + u * (2.0 / 3.0 + u * (2.0 / 5.0 + u * 2.0 / 7.0)));
  return (y - x) / std::log(y / x);
}

State euler_entropy_conservative_flux(const Euler& law, const State& wl, const State& wr) {
  const double g = law.gamma();
  const double rl = wl[0], rr = wr[0];
  const double vl = wl[1] / rl, vr = wr[1] / rr;
  const double pl = law.pressure(wl), pr = law.pressure(wr);

  const double rho_mean = logarithmic_mean(rl, rr);
  const double inv_rho_p_mean = pl * pr / logarithmic_mean(rl * pr, rr * pl);
  const double v_avg = 0.5 * (vl + vr);
  const double p_avg = 0.5 * (pl + pr);

  const double f1 = rho_mean * v_avg;
  const double f2 = f1 * v_avg + p_avg;
  const double f3 = f1 * (0.5 * vl * vr + inv_rho_p_mean / (g - 1.0)) + 0.5 * (pl * vr + pr * vl);
  return {f1, f2, f3};
}

State volume_flux(FluxKind kind, const ConservationLaw& law, const State& wl,
                  const State& wr) {
  if (kind == FluxKind::central) return central_flux(law, wl, wr);
  if (kind != FluxKind::entropy_conservative)
    throw Error("flux '" + to_string(kind) + "' is not a symmetric volume flux");
  if (const auto* euler = dynamic_cast<const Euler*>(&law))
    return euler_entropy_conservative_flux(*euler, wl, wr);
  if (dynamic_cast<const Burgers*>(&law))
    return {(wl[0] * wl[0] + wl[0] * wr[0] + wr[0] * wr[0]) / 6.0, 0.0, 0.0};
  // Quadratic entropy with a linear flux: the arithmetic mean conserves it.
  return central_flux(law, wl, wr);
}

std::unique_ptr<ConservationLaw> make_law(const std::string& name, double parameter) {
  if (name == "advection") return std::make_unique<Advection>(parameter);
  if (name == "burgers") return std::make_unique<Burgers>();
  if (name == "maxwell") return std::make_unique<Maxwell>(parameter);
  if (name == "euler") return std::make_unique<Euler>(parameter);
  throw Error("unknown conservation law '" + name + "'");
}

}  // namespace subcell

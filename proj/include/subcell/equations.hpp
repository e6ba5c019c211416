#pragma once

#include "subcell/common.hpp"

#include <array>
#include <memory>
#include <string>

namespace subcell {

/// Conserved variables at one point. Only the first `n_vars()` entries of a
/// law are meaningful.
using State = std::array<double, 3>;

constexpr std::size_t kMaxVars = 3;

struct WaveSpeeds {
  double min;
  double max;
};

/// w_t + f(w)_x = 0 with an entropy (energy) pair.
class ConservationLaw {
 public:
  virtual ~ConservationLaw() = default;

  virtual std::string name() const = 0;
  virtual std::size_t n_vars() const = 0;
  virtual bool is_linear() const = 0;

  /// Throws Error("invalid thermodynamic state") where applicable.
  virtual void validate(const State& w) const { (void)w; }
  virtual State flux(const State& w) const = 0;
  /// Largest absolute characteristic speed over both states.
  virtual double max_speed(const State& wl, const State& wr) const = 0;
  /// Signal speed estimates used by HLL.
  virtual WaveSpeeds wave_speeds(const State& wl, const State& wr) const = 0;

  virtual double entropy(const State& w) const = 0;
  virtual State entropy_variables(const State& w) const = 0;
  /// Entropy potential psi = v . f - F (v entropy variables, F entropy flux).
  virtual double entropy_potential(const State& w) const = 0;
  /// Quadratic energy density used by the overset energy (2 * eta for the
  /// quadratic-entropy laws).
  virtual double energy_density(const State& w) const;
  /// Gradient of energy_density with respect to the conserved variables.
  virtual State energy_gradient(const State& w) const;
};

class Advection final : public ConservationLaw {
 public:
  explicit Advection(double alpha = 1.0) : alpha_(alpha) {}
  double alpha() const { return alpha_; }

  std::string name() const override { return "advection"; }
  std::size_t n_vars() const override { return 1; }
  bool is_linear() const override { return true; }
  State flux(const State& w) const override { return {alpha_ * w[0], 0, 0}; }
  double max_speed(const State&, const State&) const override;
  WaveSpeeds wave_speeds(const State&, const State&) const override;
  double entropy(const State& w) const override { return 0.5 * w[0] * w[0]; }
  State entropy_variables(const State& w) const override { return {w[0], 0, 0}; }
  double entropy_potential(const State& w) const override;

 private:
  double alpha_;
};

class Burgers final : public ConservationLaw {
 public:
  std::string name() const override { return "burgers"; }
  std::size_t n_vars() const override { return 1; }
  bool is_linear() const override { return false; }
  State flux(const State& w) const override { return {0.5 * w[0] * w[0], 0, 0}; }
  double max_speed(const State& wl, const State& wr) const override;
  WaveSpeeds wave_speeds(const State& wl, const State& wr) const override;
  double entropy(const State& w) const override { return 0.5 * w[0] * w[0]; }
  State entropy_variables(const State& w) const override { return {w[0], 0, 0}; }
  double entropy_potential(const State& w) const override;
};

/// E_t + c^2 B_x = 0, B_t + E_x = 0. Variables (E, B).
class Maxwell final : public ConservationLaw {
 public:
  explicit Maxwell(double c = 1.0);
  double speed_of_light() const { return c_; }

  std::string name() const override { return "maxwell"; }
  std::size_t n_vars() const override { return 2; }
  bool is_linear() const override { return true; }
  State flux(const State& w) const override { return {c_ * c_ * w[1], w[0], 0}; }
  double max_speed(const State&, const State&) const override { return c_; }
  WaveSpeeds wave_speeds(const State&, const State&) const override {
    return {-c_, c_};
  }
  double entropy(const State& w) const override;
  State entropy_variables(const State& w) const override;
  double entropy_potential(const State& w) const override;

 private:
  double c_;
};

/// Compressible Euler, variables (rho, rho v, rho e), ideal gas.
class Euler final : public ConservationLaw {
 public:
  explicit Euler(double gamma = 1.4);
  double gamma() const { return gamma_; }

  std::string name() const override { return "euler"; }
  std::size_t n_vars() const override { return 3; }
  bool is_linear() const override { return false; }
  void validate(const State& w) const override;
  State flux(const State& w) const override;
  double max_speed(const State& wl, const State& wr) const override;
  WaveSpeeds wave_speeds(const State& wl, const State& wr) const override;
  /// S = -rho s / (gamma - 1), s = log(p / rho^gamma).
  double entropy(const State& w) const override;
  State entropy_variables(const State& w) const override;
  double entropy_potential(const State& w) const override { return w[1]; }
  /// Sum of squares of the conserved variables.
  double energy_density(const State& w) const override;
  State energy_gradient(const State& w) const override;

  double pressure(const State& w) const;
  double sound_speed(const State& w) const;

 private:
  double gamma_;
};

enum class FluxKind { upwind, godunov, rusanov, hll, central, entropy_conservative };

std::string to_string(FluxKind kind);
FluxKind flux_kind_from_string(const std::string& name);

/// Surface flux f*(wl, wr). Throws if `kind` is not defined for the law.
State numerical_flux(FluxKind kind, const ConservationLaw& law, const State& wl,
                     const State& wr);

/// True when f*(wl, .) = f(wl) for every right state reachable in this
/// regime, i.e. the coupling is fully upwind at a sub-cell point.
bool is_fully_upwind(FluxKind kind, const ConservationLaw& law, const State& wl,
                     const State& wr);

/// Symmetric two-point volume flux for flux differencing.
State volume_flux(FluxKind kind, const ConservationLaw& law, const State& wl,
                  const State& wr);

/// Entropy-conservative Euler flux that also conserves kinetic energy
/// (logarithmic means of rho and rho / p).
State euler_entropy_conservative_flux(const Euler& law, const State& wl,
                                      const State& wr);

/// Logarithmic mean (x - y) / (log x - log y) with a series branch near x = y.
double logarithmic_mean(double x, double y);

std::unique_ptr<ConservationLaw> make_law(const std::string& name,
                                          double parameter);

}  // namespace subcell

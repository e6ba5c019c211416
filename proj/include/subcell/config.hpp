#pragma once

#include "subcell/equations.hpp"
#include "subcell/overset_mesh.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace subcell {

/// Raised for unreadable or invalid configuration; maps to a usage error.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// One experiment, read from a sectioned key = value file.
///
///   [domain]    a, b, c, d, periodic
///   [law]       name, alpha, gamma, speed, offset, amplitude, wavenumber, source
///   [mesh]      degree, elements, elements_u, elements_v, family, split, coupling
///   [flux]      surface, subcell, volume, compare
///   [integrate] t_start, t_end, atol, rtol, samples, max_steps
///   [output]    directory, name
struct ExperimentConfig {
  OversetDomain domain;
  bool periodic = true;

  std::string law = "advection";
  double alpha = 2.0;
  double gamma = 1.4;
  double speed = 1.0;  // Maxwell c
  // Initial data offset + amplitude * sin(wavenumber * pi * x); for Euler the
  // density, with rho v = rho and rho e = rho^2.
  double offset = 0.0;
  double amplitude = 1.0;
  double wavenumber = 1.0;
  bool manufactured_source = false;

  int degree = 3;
  std::vector<int> elements{10};  // convergence sweep; first entry otherwise
  std::optional<int> elements_u;
  std::optional<int> elements_v;
  SubcellFamily family = SubcellFamily::lobatto;
  SplitPolicy split = SplitPolicy::both;
  CouplingMode coupling = CouplingMode::subcell;

  FluxKind surface_flux = FluxKind::upwind;
  FluxKind subcell_flux = FluxKind::upwind;
  std::optional<FluxKind> volume_flux;  // nullopt: derivative form
  std::optional<FluxKind> compare_flux;

  double t_start = 0.0;
  double t_end = 2.0;
  double atol = 1e-8;
  double rtol = 1e-8;
  std::size_t samples = 200;
  std::size_t max_steps = 5'000'000;

  std::string output_directory = "output";
  std::string name = "experiment";

  int n_u() const { return elements_u.value_or(elements.front()); }
  int n_v() const { return elements_v.value_or(elements.front()); }
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

SplitPolicy split_policy_from_string(const std::string& s);
CouplingMode coupling_mode_from_string(const std::string& s);
SubcellFamily subcell_family_from_string(const std::string& s);
std::string to_string(SplitPolicy p);
std::string to_string(CouplingMode m);
std::string to_string(SubcellFamily f);

}  // namespace subcell

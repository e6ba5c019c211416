#include "subcell/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace subcell {

namespace pt = boost::property_tree;

SplitPolicy split_policy_from_string(const std::string& s) {
  if (s == "both") return SplitPolicy::both;
  if (s == "b_only") return SplitPolicy::b_only;
  if (s == "none") return SplitPolicy::none;
  throw ConfigError("unknown split policy '" + s + "' (both, b_only, none)");
}

CouplingMode coupling_mode_from_string(const std::string& s) {
  if (s == "subcell") return CouplingMode::subcell;
  if (s == "baseline") return CouplingMode::baseline;
  throw ConfigError("unknown coupling '" + s + "' (subcell, baseline)");
}

SubcellFamily subcell_family_from_string(const std::string& s) {
  if (s == "lobatto") return SubcellFamily::lobatto;
  if (s == "radau") return SubcellFamily::radau;
  throw ConfigError("unknown operator family '" + s + "' (lobatto, radau)");
}

std::string to_string(SplitPolicy p) {
  switch (p) {
    case SplitPolicy::both: return "both";
    case SplitPolicy::b_only: return "b_only";
    case SplitPolicy::none: return "none";
  }
  return "?";
}

std::string to_string(CouplingMode m) {
  return m == CouplingMode::subcell ? "subcell" : "baseline";
}

std::string to_string(SubcellFamily f) { return f == SubcellFamily::lobatto ? "lobatto" : "radau"; }

namespace {

const std::map<std::string, std::set<std::string>> kKnownKeys{
    {"domain", {"a", "b", "c", "d", "periodic"}},
    {"law", {"name", "alpha", "gamma", "speed", "offset", "amplitude", "wavenumber", "source"}},
    {"mesh", {"degree", "elements", "elements_u", "elements_v", "family", "split", "coupling"}},
    {"flux", {"surface", "subcell", "volume", "compare"}},
    {"integrate", {"t_start", "t_end", "atol", "rtol", "samples", "max_steps"}},
    {"output", {"directory", "name"}},
};

void reject_unknown(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    const auto known = kKnownKeys.find(section);
    if (known == kKnownKeys.end()) {
      if (body.empty()) throw ConfigError("key '" + section + "' outside any section");
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      (void)value;
      if (!known->second.count(key))
        throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
    }
  }
}

template <typename T>
T read(const pt::ptree& tree, const std::string& path, T fallback) {
  const auto node = tree.get_child_optional(path);
  if (!node) return fallback;
  try {
    return node->get_value<T>();
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError("cannot parse value '" + node->data() + "' of key '" + path + "'");
  }
}

std::optional<std::string> read_string(const pt::ptree& tree, const std::string& path) {
  const auto node = tree.get_child_optional(path);
  if (!node) return std::nullopt;
  return node->data();
}

bool parse_bool(const std::string& path, const std::string& s) {
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw ConfigError("cannot parse value '" + s + "' of key '" + path + "' as boolean");
}

std::vector<int> parse_int_list(const std::string& path, const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      out.push_back(n);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse value '" + s + "' of key '" + path + "' as integer list");
    }
  }
  if (out.empty()) throw ConfigError("key '" + path + "' needs at least one value");
  return out;
}

FluxKind parse_flux(const std::string& path, const std::string& s) {
  try {
    return flux_kind_from_string(s);
  } catch (const Error& e) {
    throw ConfigError(std::string(e.what()) + " for key '" + path + "'");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }
  reject_unknown(tree);

  ExperimentConfig cfg;
  try {
    cfg.domain = OversetDomain(read(tree, "domain.a", cfg.domain.a), read(tree, "domain.b", cfg.domain.b),
                               read(tree, "domain.c", cfg.domain.c), read(tree, "domain.d", cfg.domain.d));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string(e.what()) + " for section [domain]");
  }
  if (auto s = read_string(tree, "domain.periodic")) cfg.periodic = parse_bool("domain.periodic", *s);

  cfg.law = read<std::string>(tree, "law.name", cfg.law);
  if (cfg.law != "advection" && cfg.law != "burgers" && cfg.law != "maxwell" && cfg.law != "euler")
    throw ConfigError("unknown law '" + cfg.law + "' for key 'law.name'");
  cfg.alpha = read(tree, "law.alpha", cfg.alpha);
  cfg.gamma = read(tree, "law.gamma", cfg.gamma);
  cfg.speed = read(tree, "law.speed", cfg.speed);
  cfg.offset = read(tree, "law.offset", cfg.offset);
  cfg.amplitude = read(tree, "law.amplitude", cfg.amplitude);
  cfg.wavenumber = read(tree, "law.wavenumber", cfg.wavenumber);
  if (auto s = read_string(tree, "law.source")) {
    if (*s == "manufactured") cfg.manufactured_source = true;
    else if (*s != "none") throw ConfigError("unknown source '" + *s + "' for key 'law.source'");
  }

  cfg.degree = read(tree, "mesh.degree", cfg.degree);
  if (auto s = read_string(tree, "mesh.elements")) cfg.elements = parse_int_list("mesh.elements", *s);
  if (tree.get_child_optional("mesh.elements_u")) cfg.elements_u = read<int>(tree, "mesh.elements_u", 0);
  if (tree.get_child_optional("mesh.elements_v")) cfg.elements_v = read<int>(tree, "mesh.elements_v", 0);
  if (auto s = read_string(tree, "mesh.family")) cfg.family = subcell_family_from_string(*s);
  if (auto s = read_string(tree, "mesh.split")) cfg.split = split_policy_from_string(*s);
  if (auto s = read_string(tree, "mesh.coupling")) cfg.coupling = coupling_mode_from_string(*s);

  if (auto s = read_string(tree, "flux.surface")) cfg.surface_flux = parse_flux("flux.surface", *s);
  if (auto s = read_string(tree, "flux.subcell")) cfg.subcell_flux = parse_flux("flux.subcell", *s);
  if (auto s = read_string(tree, "flux.volume")) {
    if (*s == "derivative") cfg.volume_flux.reset();
    else cfg.volume_flux = parse_flux("flux.volume", *s);
  }
  if (auto s = read_string(tree, "flux.compare")) cfg.compare_flux = parse_flux("flux.compare", *s);

  cfg.t_start = read(tree, "integrate.t_start", cfg.t_start);
  cfg.t_end = read(tree, "integrate.t_end", cfg.t_end);
  cfg.atol = read(tree, "integrate.atol", cfg.atol);
  cfg.rtol = read(tree, "integrate.rtol", cfg.rtol);
  cfg.samples = read(tree, "integrate.samples", cfg.samples);
  cfg.max_steps = read(tree, "integrate.max_steps", cfg.max_steps);

  cfg.output_directory = read<std::string>(tree, "output.directory", cfg.output_directory);
  cfg.name = read<std::string>(tree, "output.name", cfg.name);

  if (cfg.degree < 1) throw ConfigError("mesh.degree must be at least 1");
  for (int n : cfg.elements)
    if (n < 1) throw ConfigError("mesh.elements entries must be positive");
  if (cfg.n_u() < 1 || cfg.n_v() < 1) throw ConfigError("element counts must be positive");
  if (!(cfg.t_end >= cfg.t_start)) throw ConfigError("integrate.t_end precedes integrate.t_start");
  if (!(cfg.atol > 0.0) || !(cfg.rtol > 0.0)) throw ConfigError("tolerances must be positive");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace subcell

#include <doctest.h>

#include "subcell/config.hpp"
#include "subcell/csv.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace subcell;

TEST_CASE("a full configuration is read") {
  const auto cfg = parse_config(R"(
[domain]
a = -2
b = -0.5
c = 0.5
d = 2
periodic = false
[law]
name = burgers
[mesh]
degree = 4
elements = 5, 10 ,20
elements_v = 7
family = radau
split = b_only
[flux]
surface = godunov
subcell = rusanov
volume = entropy_conservative
[integrate]
t_end = 0.5
samples = 10
[output]
name = demo
)");
  CHECK(cfg.domain.a == -2.0);
  CHECK_FALSE(cfg.periodic);
  CHECK(cfg.law == "burgers");
  CHECK(cfg.elements == std::vector<int>{5, 10, 20});
  CHECK(cfg.n_u() == 5);
  CHECK(cfg.n_v() == 7);
  CHECK(cfg.family == SubcellFamily::radau);
  CHECK(cfg.split == SplitPolicy::b_only);
  CHECK(cfg.subcell_flux == FluxKind::rusanov);
  CHECK(cfg.volume_flux == FluxKind::entropy_conservative);
  CHECK(cfg.samples == 10);
  CHECK(cfg.name == "demo");
}

TEST_CASE("unknown keys and sections are named") {
  CHECK_THROWS_WITH_AS(parse_config("[mesh]\ndegre = 3\n"),
                       "unknown key 'degre' in section [mesh]", ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[solver]\nx = 1\n"), "unknown section [solver]", ConfigError);
}

TEST_CASE("malformed values are rejected") {
  CHECK_THROWS_AS(parse_config("[mesh]\ndegree = three\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[mesh]\ndegree = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[mesh]\nelements = 10,x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[domain]\nperiodic = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[domain]\nb = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[flux]\nsurface = roe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[law]\nname = mhd\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.ini"), ConfigError);
}

TEST_CASE("every preset parses") {
  for (const auto& entry : std::filesystem::directory_iterator(SUBCELL_PRESET_DIR)) {
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path().string()));
  }
}

TEST_CASE("csv files carry a schema header and full precision") {
  const auto dir = std::filesystem::temp_directory_path() / "subcell_csv_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "t.csv").string();
  {
    CsvWriter csv(path, "errors", {"n", "value", "order"});
    csv << 10 << 0.1 << std::optional<double>{};
    csv.end_row();
    CHECK_THROWS_AS(csv.end_row(), std::exception);
  }
  std::ifstream in(path);
  std::string header, columns, row;
  std::getline(in, header);
  std::getline(in, columns);
  std::getline(in, row);
  CHECK(header == "# subcell-overset errors schema v1");
  CHECK(columns == "n,value,order");
  CHECK(row == "10,0.10000000000000001,");
  std::filesystem::remove_all(dir);
}

TEST_CASE("output directory override") {
  const auto dir = (std::filesystem::temp_directory_path() / "subcell_env_out").string();
  ::setenv("SUBCELL_OUTPUT_DIR", dir.c_str(), 1);
  CHECK(resolve_output_directory("ignored") == dir);
  CHECK(std::filesystem::is_directory(dir));
  ::unsetenv("SUBCELL_OUTPUT_DIR");
  std::filesystem::remove_all(dir);
}

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

int run(const std::string& args) {
  const auto out = std::filesystem::temp_directory_path() / "subcell_cli_test";
  const std::string cmd = "SUBCELL_OUTPUT_DIR=" + out.string() + " " + SUBCELL_CLI_PATH + " " + args +
                          " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string preset(const std::string& name) {
  return std::string(SUBCELL_PRESET_DIR) + "/" + name + ".ini";
}

}  // namespace

TEST_CASE("cli exit codes") {
  CHECK(run("verify --degrees 1 2 3") == 0);
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("run --config /nonexistent.ini") == 2);

  const auto bad = std::filesystem::temp_directory_path() / "subcell_bad.ini";
  std::ofstream(bad) << "[mesh]\ndegre = 3\n";
  CHECK(run("run --config " + bad.string()) == 2);
  std::filesystem::remove(bad);

  CHECK(run("spectrum --config " + preset("spectra-fig5") + " --degree 2 --elements 5 6") == 0);
  CHECK(run("run --config " + preset("burgers-fig6") + " --elements 4") == 0);
  CHECK(std::filesystem::exists(std::filesystem::temp_directory_path() / "subcell_cli_test" /
                                "burgers-fig6_diagnostics.csv"));
  std::filesystem::remove_all(std::filesystem::temp_directory_path() / "subcell_cli_test");
}

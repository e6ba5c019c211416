#pragma once

#include <fstream>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace subcell {

/// Versioned CSV: a "# subcell-overset <kind> schema v<N>" comment line, a
/// column line, then rows. Numbers are written with 17 significant digits.
class CsvWriter {
 public:
  static constexpr int kSchemaVersion = 1;

  CsvWriter(const std::string& path, const std::string& kind,
            const std::vector<std::string>& columns);

  CsvWriter& operator<<(double value);
  CsvWriter& operator<<(long long value);
  CsvWriter& operator<<(int value) { return *this << static_cast<long long>(value); }
  CsvWriter& operator<<(std::size_t value) { return *this << static_cast<long long>(value); }
  CsvWriter& operator<<(const std::string& value);
  CsvWriter& operator<<(const char* value) { return *this << std::string(value); }
  /// Empty field for undefined values.
  CsvWriter& operator<<(const std::optional<double>& value);
  void end_row();

  const std::string& path() const { return path_; }

 private:
  void separator();

  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t field_ = 0;
};

/// Output directory: the SUBCELL_OUTPUT_DIR environment variable if set,
/// the configured directory otherwise. Created if missing.
std::string resolve_output_directory(const std::string& configured);

}  // namespace subcell

#include "subcell/csv.hpp"

#include "subcell/common.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>

namespace subcell {

CsvWriter::CsvWriter(const std::string& path, const std::string& kind,
                     const std::vector<std::string>& columns)
    : path_(path), out_(path), columns_(columns.size()) {
  if (!out_) throw Error("cannot write '" + path + "'");
  out_ << "# subcell-overset " << kind << " schema v" << kSchemaVersion << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n' << std::setprecision(17);
}

void CsvWriter::separator() {
  if (field_ >= columns_) throw Error("too many fields in row of '" + path_ + "'");
  if (field_++ > 0) out_ << ',';
}

CsvWriter& CsvWriter::operator<<(double value) {
  separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::operator<<(long long value) {
  separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& value) {
  separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::optional<double>& value) {
  separator();
  if (value) out_ << *value;
  return *this;
}

void CsvWriter::end_row() {
  if (field_ != columns_) throw Error("incomplete row in '" + path_ + "'");
  out_ << '\n';
  field_ = 0;
}

std::string resolve_output_directory(const std::string& configured) {
  const char* env = std::getenv("SUBCELL_OUTPUT_DIR");
  const std::string dir = env && *env ? std::string(env) : configured;
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace subcell

#include "subcell/verification.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

namespace subcell {

void Report::check(std::string name, double residual, double tolerance,
                   std::string detail) {
  // NaN residuals fail.
  const bool ok = residual <= tolerance;
  entries_.push_back({std::move(name), residual, tolerance, ok, std::move(detail)});
}

void Report::require(std::string name, bool ok, std::string detail) {
  entries_.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok, std::move(detail)});
}

void Report::merge(const Report& other) {
  for (const auto& e : other.entries_) entries_.push_back(e);
}

bool Report::passed() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const CheckEntry& e) { return e.passed; });
}

const CheckEntry* Report::find(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

void Report::print(std::ostream& os) const {
  std::size_t width = 8;
  for (const auto& e : entries_) width = std::max(width, e.name.size());
  if (!title_.empty()) os << title_ << '\n';
  for (const auto& e : entries_) {
    os << "  " << std::left << std::setw(static_cast<int>(width)) << e.name << "  "
       << std::right << std::scientific << std::setprecision(3) << std::setw(10)
       << e.residual << "  <= " << std::setw(9) << e.tolerance << "  "
       << (e.passed ? "pass" : "FAIL");
    if (!e.detail.empty()) os << "  (" << e.detail << ")";
    os << '\n';
  }
  os << std::defaultfloat;
}

void Report::print_rows(std::ostream& os) const {
  for (const auto& e : entries_) {
    os << title_ << ',' << e.name << ',' << std::setprecision(17) << e.residual
       << ',' << e.tolerance << ',' << (e.passed ? 1 : 0) << '\n';
  }
}

double tolerance_for_degree(int degree) {
  if (degree <= 3) return 1e-13;
  if (degree <= 6) return 1e-11;
  return 1e-10;
}

}  // namespace subcell

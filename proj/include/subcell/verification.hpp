#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subcell {

/// One checked invariant: its worst residual and the tolerance it was held to.
struct CheckEntry {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

class Report {
 public:
  explicit Report(std::string title = {}) : title_(std::move(title)) {}

  /// Records `residual <= tolerance` as a check.
  void check(std::string name, double residual, double tolerance,
             std::string detail = {});
  /// Records a boolean check. Residual is 0 on success, 1 on failure.
  void require(std::string name, bool ok, std::string detail = {});
  void merge(const Report& other);

  bool passed() const;
  const std::vector<CheckEntry>& entries() const { return entries_; }
  const std::string& title() const { return title_; }
  const CheckEntry* find(const std::string& name) const;

  /// Aligned text table.
  void print(std::ostream& os) const;
  /// One CSV row per entry: title,name,residual,tolerance,passed.
  void print_rows(std::ostream& os) const;

 private:
  std::string title_;
  std::vector<CheckEntry> entries_;
};

/// 1e-13 for d <= 3, 1e-11 up to d = 6, 1e-10 beyond.
double tolerance_for_degree(int degree);

}  // namespace subcell

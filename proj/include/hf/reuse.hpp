#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hf/library.hpp"
#include "hf/model.hpp"

namespace hf {

/// Housings survive this many assembly cycles before the tabs fatigue and a
/// reprint is required.
inline constexpr int kDurabilityCycleLimit = 7;

struct ReuseLine {
  std::string part_number;
  int count = 0;
};

struct ReuseReport {
  std::vector<ReuseLine> matched;      // reusable per part number
  std::vector<ReuseLine> only_in_old;  // salvage left over
  std::vector<ReuseLine> only_in_new;  // must be purchased
  /// Same part number in a different package: not mechanically interchangeable.
  std::vector<std::string> package_mismatch;
  int matched_total = 0;
  int new_total = 0;
  double reusable_fraction = 1.0;
};

/// Multiset intersection of the two BOMs keyed by (partNumber, package).
/// Raises MissingPartNumbers listing components without part numbers.
ReuseReport diff_reuse(const BoardDesign& old_board, const BoardDesign& new_board);

std::string reuse_report_text(const ReuseReport& report, bool tsv);

struct DurabilityWarning {
  std::string housing_id;
  int count = 0;
};

/// Assembly cycle counts per housing, persisted as a line-oriented file.
class CycleLedger {
 public:
  /// Increments and returns a warning once the housing reaches the limit.
  std::optional<DurabilityWarning> record_cycle(const std::string& housing_id);

  void set_count(const std::string& housing_id, int count);
  int count(const std::string& housing_id) const;
  const std::map<std::string, int>& counts() const { return counts_; }

  friend bool operator==(const CycleLedger&, const CycleLedger&) = default;

 private:
  std::map<std::string, int> counts_;
};

CycleLedger load_ledger(const std::string& bytes);
std::string save_ledger(const CycleLedger& ledger);

/// Missing file loads as an empty ledger.
CycleLedger load_ledger_file(const std::string& path);
/// Writes under an advisory file lock (single writer).
void save_ledger_file(const CycleLedger& ledger, const std::string& path);

}  // namespace hf

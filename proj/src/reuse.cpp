#include "hf/reuse.hpp"

#include <algorithm>
#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "hf/errors.hpp"
#include "hf/textio.hpp"

namespace hf {

namespace {

using BomKey = std::pair<std::string, std::string>;  // partNumber, package

std::map<BomKey, int> bom_multiset(const BoardDesign& board) {
  std::vector<std::string> missing;
  std::map<BomKey, int> bom;
  for (const auto& comp : board.components) {
    if (comp.part_number.empty()) {
      missing.push_back(comp.ref_des);
      continue;
    }
    ++bom[{comp.part_number, comp.package}];
  }
  if (!missing.empty()) {
    std::string joined;
    for (const auto& ref : missing) {
      if (!joined.empty()) joined += ", ";
      joined += ref;
    }
    raise(ErrorCode::MissingPartNumbers,
          "components without part numbers: " + joined);
  }
  return bom;
}

}  // namespace

ReuseReport diff_reuse(const BoardDesign& old_board, const BoardDesign& new_board) {
  auto old_bom = bom_multiset(old_board);
  auto new_bom = bom_multiset(new_board);

  ReuseReport report;
  for (const auto& [key, new_count] : new_bom) {
    report.new_total += new_count;
    auto it = old_bom.find(key);
    int old_count = it != old_bom.end() ? it->second : 0;
    int matched = std::min(old_count, new_count);
    if (matched > 0) {
      report.matched.push_back({key.first, matched});
      report.matched_total += matched;
    }
    if (new_count > matched) {
      report.only_in_new.push_back({key.first, new_count - matched});
    }
  }
  for (const auto& [key, old_count] : old_bom) {
    auto it = new_bom.find(key);
    int new_count = it != new_bom.end() ? it->second : 0;
    if (old_count > new_count) {
      report.only_in_old.push_back({key.first, old_count - new_count});
    }
    if (new_count == 0) {
      // Same part number under a different package on the other side?
      for (const auto& [new_key, n] : new_bom) {
        if (new_key.first == key.first && new_key.second != key.second) {
          report.package_mismatch.push_back(key.first);
        }
      }
    }
  }
  std::sort(report.package_mismatch.begin(), report.package_mismatch.end());
  report.package_mismatch.erase(
      std::unique(report.package_mismatch.begin(), report.package_mismatch.end()),
      report.package_mismatch.end());

  report.reusable_fraction =
      report.new_total == 0
          ? 1.0
          : static_cast<double>(report.matched_total) / report.new_total;
  return report;
}

std::string reuse_report_text(const ReuseReport& report, bool tsv) {
  std::ostringstream out;
  if (tsv) {
    out << "reusable\t" << report.matched_total << '\t' << report.new_total << '\t'
        << format_double(report.reusable_fraction) << '\n';
    for (const auto& line : report.matched)
      out << "matched\t" << line.part_number << '\t' << line.count << '\n';
    for (const auto& line : report.only_in_old)
      out << "only-in-old\t" << line.part_number << '\t' << line.count << '\n';
    for (const auto& line : report.only_in_new)
      out << "only-in-new\t" << line.part_number << '\t' << line.count << '\n';
    for (const auto& part : report.package_mismatch)
      out << "package-mismatch\t" << part << '\n';
    return out.str();
  }
  long pct = std::lround(report.reusable_fraction * 100.0);
  out << "reusable: " << report.matched_total << '/' << report.new_total << " ("
      << pct << "%)\n";
  for (const auto& line : report.matched) {
    out << "  reuse " << line.count << " x " << line.part_number << '\n';
  }
  for (const auto& line : report.only_in_old) {
    out << "  left over " << line.count << " x " << line.part_number << '\n';
  }
  for (const auto& line : report.only_in_new) {
    out << "  purchase " << line.count << " x " << line.part_number << '\n';
  }
  for (const auto& part : report.package_mismatch) {
    out << "  package mismatch: " << part << " exists in a different package\n";
  }
  return out.str();
}

std::optional<DurabilityWarning> CycleLedger::record_cycle(const std::string& housing_id) {
  int count = ++counts_[housing_id];
  if (count >= kDurabilityCycleLimit) {
    return DurabilityWarning{housing_id, count};
  }
  return std::nullopt;
}

void CycleLedger::set_count(const std::string& housing_id, int count) {
  counts_[housing_id] = count;
}

int CycleLedger::count(const std::string& housing_id) const {
  auto it = counts_.find(housing_id);
  return it != counts_.end() ? it->second : 0;
}

CycleLedger load_ledger(const std::string& bytes) {
  LineReader reader(bytes);
  std::string_view line;
  int line_no = 0;
  if (!reader.next(line, line_no)) raise(ErrorCode::Syntax, "empty ledger file");
  {
    auto header = split_tokens(line);
    if (header.size() != 2 || header[0] != "reuse-ledger" || header[1] != "v1")
      raise(ErrorCode::Syntax,
            "line " + std::to_string(line_no) + ": expected 'reuse-ledger v1' header");
  }
  CycleLedger ledger;
  while (reader.next(line, line_no)) {
    auto tok = split_tokens(line);
    if (tok.size() != 2)
      raise(ErrorCode::Syntax,
            "line " + std::to_string(line_no) + ": expected '<housingId> <count>'");
    int value = 0;
    try {
      value = std::stoi(tok[1]);
    } catch (...) {
      raise(ErrorCode::Syntax,
            "line " + std::to_string(line_no) + ": invalid count '" + tok[1] + "'");
    }
    if (value < 0)
      raise(ErrorCode::Syntax,
            "line " + std::to_string(line_no) + ": cycle counts cannot be negative");
    ledger.set_count(tok[0], value);
  }
  return ledger;
}

std::string save_ledger(const CycleLedger& ledger) {
  std::ostringstream out;
  out << "reuse-ledger v1\n";
  for (const auto& [id, count] : ledger.counts()) {
    out << id << ' ' << count << '\n';
  }
  return out.str();
}

CycleLedger load_ledger_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return CycleLedger{};
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_ledger(buf.str());
}

void save_ledger_file(const CycleLedger& ledger, const std::string& path) {
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0)
    raise(ErrorCode::Io, "cannot write ledger '" + path + "': " + std::strerror(errno));
  ::flock(fd, LOCK_EX);
  std::string bytes = save_ledger(ledger);
  ssize_t written = ::write(fd, bytes.data(), bytes.size());
  ::flock(fd, LOCK_UN);
  ::close(fd);
  if (written != static_cast<ssize_t>(bytes.size()))
    raise(ErrorCode::Io, "short write to ledger '" + path + "'");
}

}  // namespace hf

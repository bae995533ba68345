#pragma once

#include <map>
#include <string>
#include <vector>

#include "hf/model.hpp"

namespace hf {

/// Package library: validated entries keyed by name plus an alias table
/// mapping EDA footprint names (e.g. "R_0805_2012Metric") onto package names.
class LibraryFile {
 public:
  static constexpr int kSchemaVersion = 1;

  /// Validates and inserts; raises DuplicatePackage / InvariantViolation.
  void add(PackageSpec pkg);
  void add_alias(const std::string& from, const std::string& to);

  /// Package by name or alias; nullptr when unknown.
  const PackageSpec* find(const std::string& name) const;
  /// Resolved package name for a footprint reference (identity when the name
  /// is already a package), empty when unknown.
  std::string resolve_name(const std::string& name) const;

  const std::vector<PackageSpec>& packages() const { return packages_; }
  const std::map<std::string, std::string>& aliases() const { return aliases_; }

  friend bool operator==(const LibraryFile&, const LibraryFile&) = default;

 private:
  std::vector<PackageSpec> packages_;  // insertion order preserved for round-trips
  std::map<std::string, std::string> aliases_;
};

/// Built-in library covering the validated two-terminal and IC package set
/// plus the custom parts used by the bundled example boards.
LibraryFile default_library();

LibraryFile load_library(const std::string& bytes);
std::string save_library(const LibraryFile& lib);

LibraryFile load_library_file(const std::string& path);
void save_library_file(const LibraryFile& lib, const std::string& path);

}  // namespace hf

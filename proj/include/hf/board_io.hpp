#pragma once

#include <string>
#include <vector>

#include "hf/library.hpp"
#include "hf/model.hpp"

namespace hf {

enum class SourceFormat { NativeBoard, KicadPcbSubset };

/// Format by file extension: ".kicad_pcb" selects the KiCad subset reader,
/// everything else the native reader.
SourceFormat format_for_path(const std::string& path);

struct ParseResult {
  BoardDesign board;
  /// Sections/expressions the subset reader skipped (KiCad input only).
  std::vector<std::string> warnings;
};

/// Parses and validates a board. Every referenced footprint must resolve in
/// `lib`; every component footprint must lie inside the outline.
ParseResult parse_board(const std::string& bytes, SourceFormat fmt,
                        const LibraryFile& lib);

/// Native serialization; parse(serialize(b)) is structurally identical to b,
/// coordinates bit-exact.
std::string serialize_board(const BoardDesign& board);

ParseResult parse_board_file(const std::string& path, const LibraryFile& lib);
ParseResult parse_board_file(const std::string& path, SourceFormat fmt,
                             const LibraryFile& lib);
void save_board_file(const BoardDesign& board, const std::string& path);

/// Shared post-parse validation (outline validity, refDes uniqueness,
/// footprint containment). Raises on violation.
void validate_board(const BoardDesign& board, const LibraryFile& lib);

}  // namespace hf

#include <fstream>
#include <sstream>

#include "hf/board_io.hpp"
#include "hf/errors.hpp"
#include "hf/textio.hpp"

namespace hf {

SourceFormat format_for_path(const std::string& path) {
  const std::string ext = ".kicad_pcb";
  if (path.size() >= ext.size() &&
      path.compare(path.size() - ext.size(), ext.size(), ext) == 0)
    return SourceFormat::KicadPcbSubset;
  return SourceFormat::NativeBoard;
}

void validate_board(const BoardDesign& board, const LibraryFile& lib) {
  if (board.outline.outer.empty())
    raise(ErrorCode::MissingOutline, "board '" + board.name + "' has no outline");
  if (auto reason = validate_polygon(board.outline))
    raise(ErrorCode::DegenerateOutline, "board outline: " + *reason);
  if (board.thickness <= 0.0)
    raise(ErrorCode::InvariantViolation, "board thickness must be positive");

  for (std::size_t i = 0; i < board.components.size(); ++i) {
    for (std::size_t j = i + 1; j < board.components.size(); ++j) {
      if (board.components[i].ref_des == board.components[j].ref_des)
        raise(ErrorCode::InvariantViolation,
              "duplicate refDes '" + board.components[i].ref_des + "'");
    }
  }

  for (const auto& comp : board.components) {
    const PackageSpec* pkg = lib.find(comp.package);
    if (pkg == nullptr)
      raise(ErrorCode::UnknownPackage,
            "component '" + comp.ref_des + "' references unknown package '" +
                comp.package + "'");
    for (Point2 corner : component_body_ring(*pkg, comp)) {
      if (!polygon_contains(board.outline, corner))
        raise(ErrorCode::ComponentOutsideOutline,
              "component '" + comp.ref_des + "' footprint leaves the board outline");
    }
    for (const auto& [pad, net] : comp.nets_by_pad) {
      bool known = false;
      for (const auto& p : pkg->pads) known = known || p.name == pad;
      if (!known)
        raise(ErrorCode::InvariantViolation,
              "component '" + comp.ref_des + "' binds unknown pad '" + pad + "'");
    }
  }
}

namespace {

[[noreturn]] void syntax_error(int line, const std::string& msg) {
  raise(ErrorCode::Syntax, "line " + std::to_string(line) + ": " + msg);
}

BoardDesign parse_native(const std::string& bytes, const LibraryFile& lib) {
  LineReader reader(bytes);
  std::string_view line;
  int line_no = 0;
  if (!reader.next(line, line_no)) raise(ErrorCode::Syntax, "empty board file");
  {
    auto header = split_tokens(line);
    if (header.size() != 2 || header[0] != "boardspec" || header[1] != "v1")
      syntax_error(line_no, "expected 'boardspec v1' header");
  }

  BoardDesign board;
  bool saw_outline = false;

  while (reader.next(line, line_no)) {
    auto tok = split_tokens(line);
    const std::string& kw = tok[0];
    if (kw == "name") {
      if (tok.size() != 2) syntax_error(line_no, "name wants one token");
      board.name = tok[1];
    } else if (kw == "thickness") {
      if (tok.size() != 2) syntax_error(line_no, "thickness wants one value");
      board.thickness = parse_double_token(tok[1], line_no, "thickness");
    } else if (kw == "outline") {
      if (saw_outline) syntax_error(line_no, "duplicate outline");
      if (tok.size() < 7 || tok.size() % 2 != 1)
        syntax_error(line_no, "outline wants at least 3 x/y pairs");
      for (std::size_t i = 1; i + 1 < tok.size(); i += 2) {
        board.outline.outer.push_back(
            {parse_double_token(tok[i], line_no, "outline x"),
             parse_double_token(tok[i + 1], line_no, "outline y")});
      }
      saw_outline = true;
    } else if (kw == "component") {
      // component <refDes> <package> <x> <y> <rot> [part <pn>] [net <pad>=<net>]...
      if (tok.size() < 6) syntax_error(line_no, "component wants refDes, package, x, y, rot");
      ComponentInstance comp;
      comp.ref_des = tok[1];
      comp.package = tok[2];
      comp.placement.position.x = parse_double_token(tok[3], line_no, "component x");
      comp.placement.position.y = parse_double_token(tok[4], line_no, "component y");
      comp.placement.rotation = parse_double_token(tok[5], line_no, "rotation");
      std::size_t i = 6;
      while (i < tok.size()) {
        if (tok[i] == "part") {
          if (i + 1 >= tok.size()) syntax_error(line_no, "part wants a value");
          comp.part_number = tok[i + 1];
          i += 2;
        } else if (tok[i] == "net") {
          if (i + 1 >= tok.size()) syntax_error(line_no, "net wants <pad>=<net>");
          const std::string& binding = tok[i + 1];
          auto eq = binding.find('=');
          if (eq == std::string::npos || eq == 0 || eq + 1 >= binding.size())
            syntax_error(line_no, "net binding must look like <pad>=<net>");
          comp.nets_by_pad[binding.substr(0, eq)] = binding.substr(eq + 1);
          i += 2;
        } else {
          syntax_error(line_no, "unexpected token '" + tok[i] + "' on component line");
        }
      }
      board.components.push_back(std::move(comp));
    } else if (kw == "pad") {
      if (tok.size() != 5 && tok.size() != 7)
        syntax_error(line_no, "pad wants: pad <cx> <cy> <w> <h> [net <name>]");
      FreePad pad;
      pad.rect.center.x = parse_double_token(tok[1], line_no, "pad x");
      pad.rect.center.y = parse_double_token(tok[2], line_no, "pad y");
      pad.rect.w = parse_double_token(tok[3], line_no, "pad width");
      pad.rect.h = parse_double_token(tok[4], line_no, "pad height");
      if (tok.size() == 7) {
        if (tok[5] != "net") syntax_error(line_no, "expected 'net' before pad net name");
        pad.net = tok[6];
      }
      board.free_pads.push_back(std::move(pad));
    } else {
      syntax_error(line_no, "unknown keyword '" + kw + "'");
    }
  }

  if (!saw_outline) raise(ErrorCode::MissingOutline, "board file has no outline");
  validate_board(board, lib);
  return board;
}

}  // namespace

BoardDesign parse_kicad_subset(const std::string& bytes, const LibraryFile& lib,
                               std::vector<std::string>& warnings);

ParseResult parse_board(const std::string& bytes, SourceFormat fmt,
                        const LibraryFile& lib) {
  ParseResult result;
  switch (fmt) {
    case SourceFormat::NativeBoard:
      result.board = parse_native(bytes, lib);
      break;
    case SourceFormat::KicadPcbSubset:
      result.board = parse_kicad_subset(bytes, lib, result.warnings);
      break;
  }
  return result;
}

std::string serialize_board(const BoardDesign& board) {
  std::ostringstream out;
  out << "boardspec v1\n";
  if (!board.name.empty()) out << "name " << board.name << '\n';
  out << "thickness " << format_double(board.thickness) << '\n';
  out << "outline";
  for (const auto& p : board.outline.outer) {
    out << ' ' << format_double(p.x) << ' ' << format_double(p.y);
  }
  out << '\n';
  for (const auto& comp : board.components) {
    out << "component " << comp.ref_des << ' ' << comp.package << ' '
        << format_double(comp.placement.position.x) << ' '
        << format_double(comp.placement.position.y) << ' '
        << format_double(comp.placement.rotation);
    if (!comp.part_number.empty()) out << " part " << comp.part_number;
    for (const auto& [pad, net] : comp.nets_by_pad) {
      out << " net " << pad << '=' << net;
    }
    out << '\n';
  }
  for (const auto& pad : board.free_pads) {
    out << "pad " << format_double(pad.rect.center.x) << ' '
        << format_double(pad.rect.center.y) << ' ' << format_double(pad.rect.w)
        << ' ' << format_double(pad.rect.h);
    if (!pad.net.empty()) out << " net " << pad.net;
    out << '\n';
  }
  return out.str();
}

ParseResult parse_board_file(const std::string& path, SourceFormat fmt,
                             const LibraryFile& lib) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::Io, "cannot open board file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  ParseResult result = parse_board(buf.str(), fmt, lib);
  if (result.board.name.empty()) {
    // Fall back to the file stem for artifact naming.
    std::string stem = path;
    auto slash = stem.find_last_of("/\\");
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    auto dot = stem.find_last_of('.');
    if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
    result.board.name = stem;
  }
  return result;
}

ParseResult parse_board_file(const std::string& path, const LibraryFile& lib) {
  return parse_board_file(path, format_for_path(path), lib);
}

void save_board_file(const BoardDesign& board, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::Io, "cannot write board file '" + path + "'");
  out << serialize_board(board);
}

}  // namespace hf

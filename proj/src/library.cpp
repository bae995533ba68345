#include "hf/library.hpp"

#include <fstream>
#include <sstream>

#include "hf/errors.hpp"
#include "hf/textio.hpp"

namespace hf {

void LibraryFile::add(PackageSpec pkg) {
  if (find(pkg.name) != nullptr)
    raise(ErrorCode::DuplicatePackage, "duplicate package '" + pkg.name + "'");
  if (auto reason = validate_package(pkg)) {
    raise(ErrorCode::InvariantViolation,
          "package '" + pkg.name + "': " + *reason);
  }
  packages_.push_back(std::move(pkg));
}

void LibraryFile::add_alias(const std::string& from, const std::string& to) {
  aliases_[from] = to;
}

const PackageSpec* LibraryFile::find(const std::string& name) const {
  for (const auto& pkg : packages_) {
    if (pkg.name == name) return &pkg;
  }
  auto it = aliases_.find(name);
  if (it != aliases_.end()) {
    for (const auto& pkg : packages_) {
      if (pkg.name == it->second) return &pkg;
    }
  }
  return nullptr;
}

std::string LibraryFile::resolve_name(const std::string& name) const {
  const PackageSpec* pkg = find(name);
  return pkg != nullptr ? pkg->name : std::string{};
}

namespace {

PackageSpec chip_package(std::string name, double l, double w, double t,
                         double pad_cx, double pad_w, double pad_h) {
  PackageSpec pkg;
  pkg.name = std::move(name);
  pkg.cls = PackageClass::TwoTerminal;
  pkg.body_l = l;
  pkg.body_w = w;
  pkg.body_t = t;
  pkg.pads = {{"1", {{-pad_cx, 0.0}, pad_w, pad_h}},
              {"2", {{pad_cx, 0.0}, pad_w, pad_h}}};
  return pkg;
}

PackageSpec dual_row_ic(std::string name, double l, double w, double t,
                        double pitch, double row_cy, double row_w, double row_h,
                        double bolt_x) {
  PackageSpec pkg;
  pkg.name = std::move(name);
  pkg.cls = PackageClass::IcExtendedPin;
  pkg.body_l = l;
  pkg.body_w = w;
  pkg.body_t = t;
  pkg.pin_pitch = pitch;
  pkg.pads = {{"row1", {{0.0, -row_cy}, row_w, row_h}},
              {"row2", {{0.0, row_cy}, row_w, row_h}}};
  pkg.bolt_offsets = {{-bolt_x, 0.0}, {bolt_x, 0.0}};
  return pkg;
}

PackageSpec custom_package(std::string name, double l, double w, double t,
                           std::vector<PadRect> pads, double cut_l, double cut_w) {
  PackageSpec pkg;
  pkg.name = std::move(name);
  pkg.cls = PackageClass::Custom;
  pkg.body_l = l;
  pkg.body_w = w;
  pkg.body_t = t;
  pkg.pads = std::move(pads);
  CavityPrism prism;
  prism.through = true;
  prism.plan = Rect{{0.0, 0.0}, cut_l, cut_w}.corners();
  pkg.cavity_prisms = {std::move(prism)};
  return pkg;
}

}  // namespace

LibraryFile default_library() {
  LibraryFile lib;

  lib.add(chip_package("0402", 1.0, 0.5, 0.35, 0.5, 0.5, 0.6));
  lib.add(chip_package("0603", 1.55, 0.80, 0.45, 0.775, 0.8, 0.95));
  lib.add(chip_package("0805", 2.0, 1.25, 0.6, 0.95, 0.9, 1.4));
  lib.add(chip_package("1206", 3.2, 1.6, 0.6, 1.45, 1.1, 1.8));

  lib.add(dual_row_ic("SOIC-8", 4.9, 3.9, 1.75, 1.27, 2.7, 4.41, 1.5, 4.2));
  lib.add(dual_row_ic("SOIC-14", 8.65, 3.9, 1.75, 1.27, 2.7, 8.22, 1.5, 5.8));
  lib.add(dual_row_ic("TSSOP-14", 5.0, 4.4, 1.2, 0.65, 2.9, 4.3, 1.0, 4.3));

  {
    PackageSpec pkg;
    pkg.name = "TQFP-32";
    pkg.cls = PackageClass::IcExtendedPin;
    pkg.body_l = 7.0;
    pkg.body_w = 7.0;
    pkg.body_t = 1.0;
    pkg.pin_pitch = 0.8;
    pkg.pads = {{"rowN", {{0.0, 4.0}, 6.15, 1.0}},
                {"rowS", {{0.0, -4.0}, 6.15, 1.0}},
                {"rowE", {{4.0, 0.0}, 1.0, 6.15}},
                {"rowW", {{-4.0, 0.0}, 1.0, 6.15}}};
    pkg.bolt_offsets = {{-6.2, -6.2}, {6.2, -6.2}, {-6.2, 6.2}, {6.2, 6.2}};
    lib.add(std::move(pkg));
  }

  {
    PackageSpec pkg;
    pkg.name = "QFN-20";
    pkg.cls = PackageClass::IcBottomPad;
    pkg.body_l = 5.0;
    pkg.body_w = 5.0;
    pkg.body_t = 0.9;
    pkg.pin_pitch = 0.65;
    pkg.raised_pad_required = true;
    int n = 1;
    const double offs[5] = {-1.3, -0.65, 0.0, 0.65, 1.3};
    for (double o : offs) pkg.pads.push_back({std::to_string(n++), {{o, -2.1}, 0.3, 0.8}});
    for (double o : offs) pkg.pads.push_back({std::to_string(n++), {{2.1, o}, 0.8, 0.3}});
    for (double o : offs) pkg.pads.push_back({std::to_string(n++), {{-o, 2.1}, 0.3, 0.8}});
    for (double o : offs) pkg.pads.push_back({std::to_string(n++), {{-2.1, -o}, 0.8, 0.3}});
    pkg.bolt_offsets = {{-4.0, -4.0}, {4.0, -4.0}, {-4.0, 4.0}, {4.0, 4.0}};
    lib.add(std::move(pkg));
  }

  {
    // 4x4 ball grid with one corner depopulated; 0.25 mm square lands.
    PackageSpec pkg;
    pkg.name = "UFBGA-15";
    pkg.cls = PackageClass::IcBottomPad;
    pkg.body_l = 3.0;
    pkg.body_w = 3.0;
    pkg.body_t = 0.6;
    pkg.pin_pitch = 0.65;
    pkg.raised_pad_required = true;
    const double coords[4] = {-0.975, -0.325, 0.325, 0.975};
    int n = 1;
    for (double y : coords) {
      for (double x : coords) {
        if (x == 0.975 && y == 0.975) continue;
        pkg.pads.push_back({std::to_string(n++), {{x, y}, 0.25, 0.25}});
      }
    }
    pkg.bolt_offsets = {{-3.0, -3.0}, {3.0, -3.0}, {-3.0, 3.0}, {3.0, 3.0}};
    lib.add(std::move(pkg));
  }

  lib.add(custom_package("DISP-8X7SEG", 33.0, 14.0, 8.0,
                         {{"1", {{-15.0, -6.0}, 1.5, 1.0}}, {"2", {{15.0, -6.0}, 1.5, 1.0}}},
                         33.4, 14.4));
  lib.add(custom_package("BTN-6MM", 6.0, 6.0, 4.0,
                         {{"1", {{-2.6, 0.0}, 1.2, 1.0}}, {"2", {{2.6, 0.0}, 1.2, 1.0}}},
                         6.4, 6.4));
  lib.add(custom_package("BAT-CR2032", 30.0, 24.0, 5.5,
                         {{"1", {{-14.0, 0.0}, 2.0, 2.0}}, {"2", {{14.0, 0.0}, 2.0, 2.0}}},
                         30.4, 24.4));
  lib.add(custom_package("JST-PH-2", 8.0, 6.0, 7.0,
                         {{"1", {{-1.0, -2.4}, 1.0, 1.0}}, {"2", {{1.0, -2.4}, 1.0, 1.0}}},
                         8.4, 6.4));
  lib.add(custom_package("HDR-1x2", 6.0, 3.0, 9.0,
                         {{"1", {{-1.27, 0.0}, 1.0, 1.0}}, {"2", {{1.27, 0.0}, 1.0, 1.0}}},
                         6.4, 3.4));

  lib.add_alias("R_0402_1005Metric", "0402");
  lib.add_alias("R_0603_1608Metric", "0603");
  lib.add_alias("R_0805_2012Metric", "0805");
  lib.add_alias("C_0805_2012Metric", "0805");
  lib.add_alias("R_1206_3216Metric", "1206");
  lib.add_alias("LED_1206_3216Metric", "1206");
  lib.add_alias("SOIC-8_3.9x4.9mm_P1.27mm", "SOIC-8");
  lib.add_alias("SOIC-14_3.9x8.65mm_P1.27mm", "SOIC-14");
  lib.add_alias("TSSOP-14_4.4x5mm_P0.65mm", "TSSOP-14");
  lib.add_alias("TQFP-32_7x7mm_P0.8mm", "TQFP-32");
  lib.add_alias("QFN-20_5x5mm_P0.65mm", "QFN-20");
  return lib;
}

namespace {

[[noreturn]] void syntax_error(int line, const std::string& msg) {
  raise(ErrorCode::Syntax, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

LibraryFile load_library(const std::string& bytes) {
  LineReader reader(bytes);
  std::string_view line;
  int line_no = 0;
  if (!reader.next(line, line_no)) raise(ErrorCode::Syntax, "empty library file");
  {
    auto header = split_tokens(line);
    if (header.size() != 2 || header[0] != "packlib" || header[1] != "v1")
      syntax_error(line_no, "expected 'packlib v1' header");
  }

  LibraryFile lib;
  PackageSpec current;
  bool in_package = false;

  while (reader.next(line, line_no)) {
    auto tok = split_tokens(line);
    const std::string& kw = tok[0];
    if (!in_package) {
      if (kw == "package") {
        if (tok.size() != 3) syntax_error(line_no, "package wants: package <name> <class>");
        current = PackageSpec{};
        current.name = tok[1];
        auto cls = package_class_from_name(tok[2]);
        if (!cls) syntax_error(line_no, "unknown package class '" + tok[2] + "'");
        current.cls = *cls;
        in_package = true;
      } else if (kw == "alias") {
        if (tok.size() != 3) syntax_error(line_no, "alias wants: alias <from> <to>");
        lib.add_alias(tok[1], tok[2]);
      } else {
        syntax_error(line_no, "unexpected '" + kw + "' outside a package block");
      }
      continue;
    }
    if (kw == "body") {
      if (tok.size() != 4) syntax_error(line_no, "body wants 3 dimensions");
      current.body_l = parse_double_token(tok[1], line_no, "length");
      current.body_w = parse_double_token(tok[2], line_no, "width");
      current.body_t = parse_double_token(tok[3], line_no, "thickness");
    } else if (kw == "pitch") {
      if (tok.size() != 2) syntax_error(line_no, "pitch wants 1 value");
      current.pin_pitch = parse_double_token(tok[1], line_no, "pitch");
    } else if (kw == "raised-pad") {
      current.raised_pad_required = true;
    } else if (kw == "pad") {
      if (tok.size() != 6) syntax_error(line_no, "pad wants: pad <name> <cx> <cy> <w> <h>");
      PadRect pad;
      pad.name = tok[1];
      pad.rect.center.x = parse_double_token(tok[2], line_no, "pad x");
      pad.rect.center.y = parse_double_token(tok[3], line_no, "pad y");
      pad.rect.w = parse_double_token(tok[4], line_no, "pad width");
      pad.rect.h = parse_double_token(tok[5], line_no, "pad height");
      current.pads.push_back(std::move(pad));
    } else if (kw == "bolt") {
      if (tok.size() != 3) syntax_error(line_no, "bolt wants: bolt <x> <y>");
      current.bolt_offsets.push_back({parse_double_token(tok[1], line_no, "bolt x"),
                                      parse_double_token(tok[2], line_no, "bolt y")});
    } else if (kw == "cavity") {
      if (tok.size() < 8 || tok.size() % 2 != 0)
        syntax_error(line_no, "cavity wants: cavity <depth|through> <x y>{3,}");
      CavityPrism prism;
      if (tok[1] == "through") {
        prism.through = true;
      } else {
        prism.depth = parse_double_token(tok[1], line_no, "cavity depth");
      }
      for (std::size_t i = 2; i + 1 < tok.size(); i += 2) {
        prism.plan.push_back({parse_double_token(tok[i], line_no, "cavity x"),
                              parse_double_token(tok[i + 1], line_no, "cavity y")});
      }
      current.cavity_prisms.push_back(std::move(prism));
    } else if (kw == "end") {
      lib.add(std::move(current));
      in_package = false;
    } else {
      syntax_error(line_no, "unknown keyword '" + kw + "' in package block");
    }
  }
  if (in_package) raise(ErrorCode::Syntax, "unterminated package block for '" + current.name + "'");
  return lib;
}

std::string save_library(const LibraryFile& lib) {
  std::ostringstream out;
  out << "packlib v1\n";
  for (const auto& pkg : lib.packages()) {
    out << "package " << pkg.name << ' ' << package_class_name(pkg.cls) << '\n';
    out << "body " << format_double(pkg.body_l) << ' ' << format_double(pkg.body_w)
        << ' ' << format_double(pkg.body_t) << '\n';
    if (pkg.pin_pitch > 0.0) out << "pitch " << format_double(pkg.pin_pitch) << '\n';
    if (pkg.raised_pad_required) out << "raised-pad\n";
    for (const auto& pad : pkg.pads) {
      out << "pad " << pad.name << ' ' << format_double(pad.rect.center.x) << ' '
          << format_double(pad.rect.center.y) << ' ' << format_double(pad.rect.w)
          << ' ' << format_double(pad.rect.h) << '\n';
    }
    for (const auto& bolt : pkg.bolt_offsets) {
      out << "bolt " << format_double(bolt.x) << ' ' << format_double(bolt.y) << '\n';
    }
    for (const auto& prism : pkg.cavity_prisms) {
      out << "cavity ";
      if (prism.through) {
        out << "through";
      } else {
        out << format_double(prism.depth);
      }
      for (const auto& p : prism.plan) {
        out << ' ' << format_double(p.x) << ' ' << format_double(p.y);
      }
      out << '\n';
    }
    out << "end\n";
  }
  for (const auto& [from, to] : lib.aliases()) {
    out << "alias " << from << ' ' << to << '\n';
  }
  return out.str();
}

LibraryFile load_library_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::Io, "cannot open library file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_library(buf.str());
}

void save_library_file(const LibraryFile& lib, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::Io, "cannot write library file '" + path + "'");
  out << save_library(lib);
}

}  // namespace hf

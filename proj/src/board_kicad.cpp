#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hf/board_io.hpp"
#include "hf/errors.hpp"
#include "hf/textio.hpp"

namespace hf {

namespace {

// Minimal s-expression reader for the board subset. Only lists, atoms and
// quoted strings; enough for pcbnew output old and new.
struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> children;

  const SExpr* child(const std::string& tag) const {
    for (const auto& c : children) {
      if (!c.is_atom && !c.children.empty() && c.children[0].is_atom &&
          c.children[0].atom == tag)
        return &c;
    }
    return nullptr;
  }

  // Positional atom arguments after the tag.
  std::string arg(std::size_t i) const {
    std::size_t seen = 0;
    for (std::size_t k = 1; k < children.size(); ++k) {
      if (children[k].is_atom) {
        if (seen == i) return children[k].atom;
        ++seen;
      }
    }
    return {};
  }

  std::string tag() const {
    if (!is_atom && !children.empty() && children[0].is_atom) return children[0].atom;
    return {};
  }
};

class SExprParser {
 public:
  explicit SExprParser(const std::string& text) : text_(text) {}

  SExpr parse_root() {
    skip_ws();
    SExpr root = parse_node(0);
    skip_ws();
    if (pos_ != text_.size())
      fail("trailing data after top-level expression");
    if (root.is_atom) fail("expected a top-level list");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    raise(ErrorCode::Syntax,
          "offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  SExpr parse_node(int depth) {
    if (depth > 200) fail("expression nesting too deep");
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SExpr node;
      node.is_atom = false;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unterminated list");
        if (text_[pos_] == ')') {
          ++pos_;
          return node;
        }
        node.children.push_back(parse_node(depth + 1));
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      ++pos_;
      SExpr node;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        node.atom.push_back(text_[pos_++]);
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      ++pos_;
      return node;
    }
    SExpr node;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           text_[pos_] != '"' && text_[pos_] != ' ' && text_[pos_] != '\t' &&
           text_[pos_] != '\n' && text_[pos_] != '\r') {
      node.atom.push_back(text_[pos_++]);
    }
    if (node.atom.empty()) fail("empty atom");
    return node;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

double parse_num(const std::string& s, const char* what) {
  return parse_double_token(s, 0, what);
}

bool is_edge_layer(const SExpr& node) {
  const SExpr* layer = node.child("layer");
  if (layer == nullptr) return false;
  return layer->arg(0) == "Edge.Cuts";
}

Point2 read_xy(const SExpr& node, const char* what) {
  return {parse_num(node.arg(0), what), parse_num(node.arg(1), what)};
}

struct EdgeSegment {
  Point2 a, b;
};

std::vector<Point2> chain_outline(std::vector<EdgeSegment> segments) {
  if (segments.empty())
    raise(ErrorCode::MissingOutline, "no Edge.Cuts geometry found");
  constexpr double kJoinTol = 1e-3;
  std::vector<Point2> ring;
  ring.push_back(segments.front().a);
  ring.push_back(segments.front().b);
  segments.erase(segments.begin());
  while (!segments.empty()) {
    Point2 tail = ring.back();
    bool extended = false;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      if (distance(segments[i].a, tail) < kJoinTol) {
        ring.push_back(segments[i].b);
        segments.erase(segments.begin() + i);
        extended = true;
        break;
      }
      if (distance(segments[i].b, tail) < kJoinTol) {
        ring.push_back(segments[i].a);
        segments.erase(segments.begin() + i);
        extended = true;
        break;
      }
    }
    if (!extended)
      raise(ErrorCode::DegenerateOutline, "board edge segments do not form a closed loop");
  }
  if (ring.size() < 4 || distance(ring.front(), ring.back()) > kJoinTol)
    raise(ErrorCode::DegenerateOutline, "board edge loop is not closed");
  ring.pop_back();
  if (ring.size() < 3)
    raise(ErrorCode::DegenerateOutline, "board edge loop has fewer than 3 corners");
  if (ring_signed_area(ring) < 0.0) std::reverse(ring.begin(), ring.end());
  return ring;
}

std::string footprint_reference(const SExpr& fp) {
  for (const auto& c : fp.children) {
    if (c.tag() == "fp_text" && c.arg(0) == "reference") return c.arg(1);
    if (c.tag() == "property" && c.arg(0) == "Reference") return c.arg(1);
  }
  return {};
}

}  // namespace

BoardDesign parse_kicad_subset(const std::string& bytes, const LibraryFile& lib,
                               std::vector<std::string>& warnings) {
  SExprParser parser(bytes);
  SExpr root = parser.parse_root();
  if (root.tag() != "kicad_pcb")
    raise(ErrorCode::Syntax, "top-level expression is not kicad_pcb");

  BoardDesign board;
  std::vector<EdgeSegment> edges;
  std::vector<Point2> poly_outline;

  if (const SExpr* general = root.child("general")) {
    if (const SExpr* th = general->child("thickness")) {
      board.thickness = parse_num(th->arg(0), "board thickness");
    }
  }

  for (const auto& node : root.children) {
    const std::string tag = node.tag();
    if (tag == "gr_line") {
      if (!is_edge_layer(node)) continue;
      const SExpr* start = node.child("start");
      const SExpr* end = node.child("end");
      if (start == nullptr || end == nullptr)
        raise(ErrorCode::Syntax, "gr_line without start/end");
      edges.push_back({read_xy(*start, "edge x/y"), read_xy(*end, "edge x/y")});
    } else if (tag == "gr_rect") {
      if (!is_edge_layer(node)) continue;
      const SExpr* start = node.child("start");
      const SExpr* end = node.child("end");
      if (start == nullptr || end == nullptr)
        raise(ErrorCode::Syntax, "gr_rect without start/end");
      Point2 a = read_xy(*start, "edge x/y");
      Point2 b = read_xy(*end, "edge x/y");
      edges.push_back({{a.x, a.y}, {b.x, a.y}});
      edges.push_back({{b.x, a.y}, {b.x, b.y}});
      edges.push_back({{b.x, b.y}, {a.x, b.y}});
      edges.push_back({{a.x, b.y}, {a.x, a.y}});
    } else if (tag == "gr_poly") {
      if (!is_edge_layer(node)) continue;
      const SExpr* pts = node.child("pts");
      if (pts == nullptr) raise(ErrorCode::Syntax, "gr_poly without pts");
      for (const auto& xy : pts->children) {
        if (xy.tag() == "xy") poly_outline.push_back(read_xy(xy, "poly x/y"));
      }
    } else if (tag == "footprint" || tag == "module") {
      ComponentInstance comp;
      const std::string footprint_name = node.arg(0);
      std::string resolved = lib.resolve_name(footprint_name);
      comp.ref_des = footprint_reference(node);
      if (comp.ref_des.empty()) comp.ref_des = "?" + std::to_string(board.components.size() + 1);
      if (resolved.empty())
        raise(ErrorCode::UnknownPackage, "component '" + comp.ref_des +
                                             "' references unknown package '" +
                                             footprint_name + "'");
      comp.package = resolved;
      const SExpr* at = node.child("at");
      if (at == nullptr) raise(ErrorCode::Syntax, "footprint without placement");
      comp.placement.position = read_xy(*at, "footprint x/y");
      std::string rot = at->arg(2);
      comp.placement.rotation = rot.empty() ? 0.0 : parse_num(rot, "footprint rotation");
      const PackageSpec* pkg = lib.find(resolved);
      for (const auto& sub : node.children) {
        if (sub.tag() != "pad") continue;
        const std::string pad_name = sub.arg(0);
        const SExpr* net = sub.child("net");
        if (net == nullptr) continue;
        bool known = false;
        for (const auto& p : pkg->pads) known = known || p.name == pad_name;
        if (!known) {
          warnings.push_back("footprint '" + comp.ref_des + "': dropped net on pad '" +
                             pad_name + "' absent from package '" + resolved + "'");
          continue;
        }
        comp.nets_by_pad[pad_name] = net->arg(1);
      }
      board.components.push_back(std::move(comp));
    } else if (tag == "kicad_pcb" || tag == "version" || tag == "generator" ||
               tag == "general" || node.is_atom) {
      // handled above or irrelevant
    } else if (!tag.empty()) {
      warnings.push_back("skipped section '" + tag + "'");
    }
  }

  if (!poly_outline.empty()) {
    if (ring_signed_area(poly_outline) < 0.0)
      std::reverse(poly_outline.begin(), poly_outline.end());
    board.outline.outer = poly_outline;
  } else {
    board.outline.outer = chain_outline(std::move(edges));
  }
  validate_board(board, lib);
  return board;
}

}  // namespace hf

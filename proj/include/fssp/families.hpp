#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fssp/grid.hpp"

namespace fssp {

enum class Family {
  LSP, gLSP, LSP_ab, gLSP_ab,
  RECT_WALL, gRECT_WALL, RECT_WALL_ab, gRECT_WALL_ab, SQ_WALL, gSQ_WALL,
  RECT, gRECT, RECT_ab, gRECT_ab, SQ, gSQ,
  LSP_C_abcd, EX1, EX2A, EX2B, EX2C, EX2D,
};

enum class Shape { LPath, Wall, Rect, Ex2, Custom };

const char* family_name(Family f);
std::optional<Family> parse_family(const std::string& s);
Shape family_shape(Family f);
bool family_has_ratio(Family f);       // a,b meaningful
bool family_generalized(Family f);     // general may sit anywhere

struct VariationSpec {
  Family family = Family::LSP;
  int a = 1, b = 1;  // ratio
  int c = 0, d = 0;  // LSP-C offsets
  friend bool operator==(const VariationSpec&, const VariationSpec&) = default;
};

std::string spec_string(const VariationSpec& s);

// Geometric parameters. For L-paths and walls `i` is the general's node index;
// for rectangles (r, s) is the general cell; `l` is the scale where a law uses one
// (EX1 keeps r in `l`).
struct Params {
  int w = 0, h = 0, i = 0, r = 0, s = 0, l = 0;
  friend bool operator==(const Params&, const Params&) = default;
};

struct Configuration {
  VariationSpec spec;
  Shape shape = Shape::Custom;
  Params params;
  std::shared_ptr<const CellSet> cells;
  // L-path: p_0..p_{w+h}.  Wall (and the outer wall of EX2): p_0..p_{2w+2h-1}, index mod 2w+2h.
  std::vector<Cell> nodes;

  const CellSet& set() const { return *cells; }
  Cell general() const { return cells->general(); }
  Cell node(int idx) const;
  int node_count() const { return static_cast<int>(nodes.size()); }
  int node_index(Cell c) const;  // -1 if not a labelled node
  std::string name() const;      // C_L(w,h,i), C_RW(w,h,i), C_R(w,h,(r,s)), ...
  int scale() const;             // enumeration scale index
};

// Raw geometry helpers (no family law applied).
std::vector<Cell> lpath_nodes(int w, int h);
std::vector<Cell> wall_nodes(int w, int h);
std::vector<Cell> ex2_cells(Family f, int w);

Configuration make_lpath(int w, int h, int i);        // Custom-tagged L-path
Configuration make_wall(int w, int h, int i);
Configuration make_rect(int w, int h, Cell general);
Configuration make_custom(std::vector<Cell> cells, Cell general);

Configuration build(const VariationSpec& spec, const Params& p);
bool member(const VariationSpec& spec, const Configuration& c);
// Calls f for every member with scale <= max_scale in canonical order; stop when f returns false.
void enumerate(const VariationSpec& spec, int max_scale,
               const std::function<bool(const Configuration&)>& f);
std::vector<Configuration> enumerate_all(const VariationSpec& spec, int max_scale);

// Descriptor: FAMILY[:k=v,...]; keys a,b,c,d (variation) and w,h,i,r,s,l (parameters).
struct Descriptor {
  VariationSpec spec;
  Params params;
  std::vector<std::string> keys;  // parameter keys actually given
};
Descriptor parse_descriptor(const std::string& text);
std::string format_descriptor(const Configuration& c);
Configuration build_from_descriptor(const std::string& text);

// Dihedral symmetry of a w x h bounding box; maps (x,y) with 0<=x<=w, 0<=y<=h.
struct BoxSymmetry {
  int k = 0;  // 0..7: rotations by k%4 quarter turns, reflected when k>=4
  int w = 0, h = 0;
  Cell apply(Cell c) const;
  int out_w() const;
  int out_h() const;
};

// Maps a wall general placement into the domain w <= h, 0 <= i <= w + h.
struct WallNormal {
  BoxSymmetry sym;  // original box -> normalized box
  int w = 0, h = 0, i = 0;
};
WallNormal normalize_wall(int w, int h, int i);

}  // namespace fssp

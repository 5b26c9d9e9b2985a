#pragma once

#include <string>
#include <vector>

#include "fssp/automaton.hpp"
#include "fssp/families.hpp"

namespace fssp {

// A mirrored LSP-C piece inside C_R(w, h): the corner (general) sits at (i, j), one arm
// runs east along row j to x = w, the other north along column i to y = h.
struct CoverPiece {
  Cell general_at{};
  int arm_w = 0, arm_h = 0;  // w - i, h - j
  int activation = 0;        // i + j
  int firing_time = 0;       // activation + arm_w + arm_h
  int a = 1, b = 1, c = 0, d = 0, l = 0;

  VariationSpec spec() const { return {Family::LSP_C_abcd, a, b, c, d}; }
  std::vector<Cell> cells() const;
  // The un-mirrored member C_L(arm_w, arm_h, arm_w) and the reflection into it.
  Configuration unmirrored() const;
  Cell to_unmirrored(Cell rect_cell) const;
};

// Staircase of generals from (0, 0) to (w, h): a diagonal step when the next corner is
// valid, else the valid axis step closer to b*i = a*j (ties go east).
std::vector<CoverPiece> cover_rect(int a, int b, int w, int h);

struct CoverCheck {
  bool ok = false;
  std::vector<Cell> uncovered;
  std::vector<std::string> problems;
  explicit operator bool() const { return ok; }
};
CoverCheck verify_cover(const std::vector<CoverPiece>& pieces, int w, int h);

struct ComposedRun {
  bool ok = false;
  int latest = -1;                   // latest absolute firing time over the rectangle
  std::vector<int> piece_fire;       // absolute firing time per piece (-1 if it failed)
  std::vector<std::vector<int>> first_fire;  // [y][x] earliest absolute fire, -1 if never
};
// Each piece runs its own check-and-broadcast partial solution, started at its activation time.
ComposedRun cover_composed(const std::vector<CoverPiece>& pieces, int w, int h, Model model = Model::BoundarySensitive);

std::string cover_table(const std::vector<CoverPiece>& pieces);
// One letter per piece; a cell shows the piece whose corner is nearest along its arm.
std::string cover_diagram(const std::vector<CoverPiece>& pieces, int w, int h);

}  // namespace fssp

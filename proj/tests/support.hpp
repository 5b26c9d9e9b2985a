#pragma once

// Shared fixtures for the unit tests and the acceptance driver.

#include <string>
#include <vector>

#include "fssp/automaton.hpp"
#include "fssp/families.hpp"
#include "fssp/line.hpp"
#include "fssp/solutions.hpp"

namespace fssp::testing {

struct SweepSpec {
  VariationSpec spec;
  int scale = 6;
};

// Families with a check-and-broadcast construction, ratios up to max_ab.
inline std::vector<SweepSpec> cab_sweep(int max_ab, int scale) {
  std::vector<SweepSpec> out;
  for (Family f : {Family::LSP, Family::gLSP, Family::RECT_WALL, Family::gRECT_WALL})
    out.push_back({{f, 1, 1}, scale});
  for (int a = 1; a <= max_ab; ++a)
    for (int b = 1; b <= max_ab; ++b) {
      for (Family f : {Family::LSP_ab, Family::gLSP_ab, Family::RECT_WALL_ab, Family::gRECT_WALL_ab, Family::RECT_ab})
        out.push_back({{f, a, b}, scale});
      for (int c = 0; c < a; ++c)
        for (int d = 0; d < b; ++d) out.push_back({{Family::LSP_C_abcd, a, b, c, d}, scale});
    }
  out.push_back({{Family::EX1}, 2});
  for (Family f : {Family::EX2A, Family::EX2B, Family::EX2C, Family::EX2D}) out.push_back({{f}, scale});
  return out;
}

struct Bundled {
  std::string name;
  AutomatonPtr automaton;
  VariationSpec home;  // family whose members it is meant for
};

inline std::vector<Bundled> bundled_automata() {
  std::vector<Bundled> out;
  auto cab = [&](const VariationSpec& s, const Params& p, Model m) {
    Configuration c = build(s, p);
    out.push_back({"cab " + spec_string(s) + " " + c.name() + " " + model_name(m), generate_cab(s, c, m).automaton, s});
  };
  out.push_back({"lsp32 table", explicit_lsp32().automaton, {Family::LSP_ab, 3, 2}});
  out.push_back({"corner check LSP[1,1] l=3", explicit_corner_check(1, 1, 3).automaton, {Family::LSP_ab, 1, 1}});
  Params p;
  p.l = 2, p.i = 2;
  cab({Family::gLSP_ab, 2, 3}, p, Model::BoundarySensitive);
  cab({Family::gLSP_ab, 2, 3}, p, Model::Traditional);
  Params q;
  q.w = 2, q.h = 3;
  cab({Family::RECT_WALL}, q, Model::BoundarySensitive);
  q.i = 3;
  cab({Family::gRECT_WALL}, q, Model::Traditional);
  Params r;
  r.l = 2, r.i = 1;
  cab({Family::gRECT_WALL_ab, 1, 1}, r, Model::Traditional);
  Params e;
  e.w = 4;
  cab({Family::EX2A}, e, Model::BoundarySensitive);
  for (Family f : {Family::LSP_ab, Family::gLSP_ab, Family::RECT_WALL_ab}) {
    VariationSpec s{f, 1, 1};
    out.push_back({"generic " + spec_string(s), generic_solution(s), s});
  }
  out.push_back({"ex2d minimal", ex2d_minimal(), {Family::EX2D}});
  out.push_back({"bent line", bend_line(minimal_line()), {Family::LSP}});
  Params s11;
  s11.l = 2;
  VariationSpec l11{Family::LSP_ab, 1, 1};
  out.push_back({"generic x cab(C_L(2,2))",
                 product(generic_solution(l11), generate_cab(l11, build(l11, s11), Model::Traditional).automaton,
                         FireRule::Either),
                 l11});
  return out;
}

}  // namespace fssp::testing

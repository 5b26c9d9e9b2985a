#include "fssp/mft.hpp"

#include <algorithm>

namespace fssp {

const char* mft_model_name(MftModel m) {
  switch (m) {
    case MftModel::Traditional: return "tr";
    case MftModel::BoundarySensitive: return "bs";
    case MftModel::Both: return "both";
  }
  return "?";
}

std::pair<int, int> fold_square(int w, int r, int s) {
  r = std::min(r, w - r);
  s = std::min(s, w - s);
  if (r > s) std::swap(r, s);
  return {r, s};
}

namespace {

MftResult lsp_ab(int a, int b, int w, int h) {
  if (a > b) return {2 * w, "lsp_ab:a>b"};
  return {w + h, "lsp_ab:a<=b"};
}

MftResult glsp_ab(int a, int b, int w, int h, int i) {
  if (a > b) {
    auto r = glsp_ab(b, a, h, w, w + h - i);
    r.case_label += ":mirrored";
    return r;
  }
  if (i < 2 * w) return {w + h, "glsp_ab:i<2w"};
  return {i - w + h, "glsp_ab:i>=2w"};
}

MftResult grect_wall(int w0, int h0, int i0) {
  WallNormal n = normalize_wall(w0, h0, i0);
  int w = n.w, h = n.h, i = n.i;
  if (i <= w) return {w + 2 * h, "gwall:i<=w"};
  if (h <= 2 * w) {
    if (i <= h) return {-i + 2 * w + 2 * h, "gwall:h<=2w:w<i<=h"};
    if (i <= 2 * w) return {2 * w + h, "gwall:h<=2w:h<i<=2w"};
    return {i + h, "gwall:h<=2w:2w<i"};
  }
  // i <= w + h/2 compared exactly as 2i <= 2w + h
  if (2 * i <= 2 * w + h) return {-i + 2 * w + 2 * h, "gwall:2w<h:i<=w+h/2"};
  return {i + h, "gwall:2w<h:i>w+h/2"};
}

MftResult grect(int w, int h, int r, int s) {
  r = std::min(r, w - r);
  s = std::min(s, h - s);
  return {w + h + std::max(w, h) - r - s, "grect"};
}

MftResult gsq(int w, int r, int s) {
  auto [rr, ss] = fold_square(w, r, s);
  return {2 * w - std::min(rr, ss - rr), "gsq"};
}

MftResult formula(const VariationSpec& sp, const Configuration& c) {
  const Params& p = c.params;
  int w = p.w, h = p.h;
  switch (sp.family) {
    case Family::LSP: return {2 * (w + h), "lsp"};
    case Family::gLSP: return {std::max(w + h + p.i, 2 * w + 2 * h - p.i), "glsp"};
    case Family::LSP_ab: return lsp_ab(sp.a, sp.b, w, h);
    case Family::gLSP_ab: return glsp_ab(sp.a, sp.b, w, h, p.i);
    case Family::RECT_WALL: return {w + h + std::max(w, h), "rect_wall"};
    case Family::SQ_WALL:
    case Family::RECT_WALL_ab: return {w + h, "rect_wall_ab"};
    case Family::gRECT_WALL: return grect_wall(w, h, p.i);
    case Family::gSQ_WALL:
    case Family::gRECT_WALL_ab: return {w + h, "grect_wall_ab"};
    case Family::RECT: return {w + h + std::max(w, h), "rect"};
    case Family::gRECT: return grect(w, h, p.r, p.s);
    case Family::SQ:
    case Family::RECT_ab: return {w + h, "rect_ab"};
    case Family::gSQ: return gsq(w, p.r, p.s);
    case Family::gRECT_ab:
      if (sp.a != sp.b) {
        bool corner = (p.r == 0 || p.r == w) && (p.s == 0 || p.s == h);
        if (corner) return {w + h, "grect_ab:corner"};
        throw Error(ErrorKind::UnknownMft, "gRECT_ab with a != b has no known formula off the corners");
      }
      return gsq(w, p.r, p.s);
    case Family::LSP_C_abcd: return {w + h, "lsp_c"};
    case Family::EX1: return {2 * w, "ex1"};
    case Family::EX2A:
    case Family::EX2B:
    case Family::EX2C:
    case Family::EX2D: return {2 * w, "ex2"};
  }
  throw Error(ErrorKind::UnknownMft, "no formula");
}

}  // namespace

MftResult mft(const VariationSpec& spec, const Configuration& c, Model model) {
  if (!member(spec, c)) throw Error(ErrorKind::MemberCheckFailure, c.name() + " is not in " + spec_string(spec));
  if (c.set().size() == 1) {
    if (model == Model::BoundarySensitive) return {0, "singleton", MftModel::BoundarySensitive};
    return {1, "singleton", MftModel::Traditional};
  }
  MftResult r = formula(spec, c);
  r.model = MftModel::Both;
  return r;
}

bool mft_bounds_consistency(int bs, int tr) { return bs <= tr && tr <= bs + 1; }

bool mft_bounds_consistency(const VariationSpec& spec, const Configuration& c) {
  return mft_bounds_consistency(mft(spec, c, Model::BoundarySensitive).value,
                                mft(spec, c, Model::Traditional).value);
}

}  // namespace fssp

#include "fssp/covering.hpp"

#include <cstdlib>
#include <set>
#include <sstream>

#include "fssp/engine.hpp"
#include "fssp/solutions.hpp"

namespace fssp {

std::vector<Cell> CoverPiece::cells() const {
  std::vector<Cell> out;
  for (int x = general_at.x + arm_w; x > general_at.x; --x) out.push_back({x, general_at.y});
  for (int y = general_at.y; y <= general_at.y + arm_h; ++y) out.push_back({general_at.x, y});
  return out;
}

Configuration CoverPiece::unmirrored() const {
  Params p;
  p.l = l;
  return build(spec(), p);
}

Cell CoverPiece::to_unmirrored(Cell rc) const { return {arm_w - (rc.x - general_at.x), rc.y - general_at.y}; }

namespace {

bool valid_at(int a, int b, int w, int h, int i, int j) {
  if (i > w || j > h) return false;
  return (w - i) / a == (h - j) / b;
}

CoverPiece make_piece(int a, int b, int w, int h, int i, int j) {
  CoverPiece p;
  p.general_at = {i, j};
  p.arm_w = w - i;
  p.arm_h = h - j;
  p.activation = i + j;
  p.a = a, p.b = b;
  p.l = p.arm_w / a;
  p.c = p.arm_w - a * p.l;
  p.d = p.arm_h - b * p.l;
  p.firing_time = p.activation + p.arm_w + p.arm_h;
  return p;
}

}  // namespace

std::vector<CoverPiece> cover_rect(int a, int b, int w, int h) {
  VariationSpec rect{Family::RECT_ab, a, b};
  if (a < 1 || b < 1 || w < 0 || h < 0 || w % a || h % b || w / a != h / b)
    throw Error(ErrorKind::MemberCheckFailure, "C_R(" + std::to_string(w) + "," + std::to_string(h) +
                                                   ") is not a member of " + spec_string(rect));
  std::vector<CoverPiece> out;
  int i = 0, j = 0;
  out.push_back(make_piece(a, b, w, h, i, j));
  while (i < w || j < h) {
    bool dg = valid_at(a, b, w, h, i + 1, j + 1);
    bool ex = valid_at(a, b, w, h, i + 1, j), ny = valid_at(a, b, w, h, i, j + 1);
    if (dg) {
      ++i, ++j;
    } else if (ex && ny) {
      if (std::abs(b * (i + 1) - a * j) <= std::abs(b * i - a * (j + 1))) ++i;
      else ++j;
    } else if (ex) {
      ++i;
    } else if (ny) {
      ++j;
    } else {
      throw Error(ErrorKind::CoverInvalid, "staircase is stuck");
    }
    out.push_back(make_piece(a, b, w, h, i, j));
  }
  return out;
}

CoverCheck verify_cover(const std::vector<CoverPiece>& pieces, int w, int h) {
  CoverCheck r;
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const CoverPiece& p = pieces[k];
    std::string tag = "piece " + std::to_string(k) + ": ";
    if (p.activation != p.general_at.x + p.general_at.y) r.problems.push_back(tag + "activation is not i+j");
    if (p.arm_w != w - p.general_at.x || p.arm_h != h - p.general_at.y) r.problems.push_back(tag + "arms do not reach the border");
    if (p.l < 0 || p.c < 0 || p.c >= p.a || p.d < 0 || p.d >= p.b || p.arm_w != p.a * p.l + p.c ||
        p.arm_h != p.b * p.l + p.d)
      r.problems.push_back(tag + "arms break the LSP-C law");
    if (p.firing_time != p.activation + p.arm_w + p.arm_h) r.problems.push_back(tag + "firing time is not activation + arms");
    if (p.firing_time != w + h) r.problems.push_back(tag + "fires at " + std::to_string(p.firing_time));
    for (Cell c : p.cells()) {
      if (c.x < 0 || c.x > w || c.y < 0 || c.y > h) r.problems.push_back(tag + "leaves the rectangle");
      seen.insert({c.x, c.y});
    }
  }
  for (int y = 0; y <= h; ++y)
    for (int x = 0; x <= w; ++x)
      if (!seen.count({x, y})) r.uncovered.push_back({x, y});
  r.ok = r.problems.empty() && r.uncovered.empty();
  return r;
}

ComposedRun cover_composed(const std::vector<CoverPiece>& pieces, int w, int h, Model model) {
  ComposedRun run;
  run.first_fire.assign(h + 1, std::vector<int>(w + 1, -1));
  bool all = true;
  for (const CoverPiece& p : pieces) {
    Configuration target = p.unmirrored();
    PartialSolution ps = generate_cab(p.spec(), target, model);
    Trace tr = simulate(target.set(), *ps.automaton, default_horizon(target.set()) + 2);
    FiringOutcome out = firing_time(target.set(), *ps.automaton, tr.horizon());
    if (!out.fired()) {
      run.piece_fire.push_back(-1);
      all = false;
      continue;
    }
    run.piece_fire.push_back(p.activation + out.time);
    for (Cell rc : p.cells()) {
      int idx = target.set().index_of(p.to_unmirrored(rc));
      int first = -1;
      for (int t = 0; t <= tr.horizon() && first < 0; ++t)
        if (ps.automaton->is_firing(tr.at(idx, t))) first = t;
      int abs_t = first < 0 ? -1 : p.activation + first;
      int& slot = run.first_fire[rc.y][rc.x];
      if (abs_t >= 0 && (slot < 0 || abs_t < slot)) slot = abs_t;
    }
  }
  for (const auto& row : run.first_fire)
    for (int t : row) {
      if (t < 0) all = false;
      run.latest = std::max(run.latest, t);
    }
  run.ok = all && run.latest == w + h;
  for (int t : run.piece_fire) run.ok = run.ok && t == w + h;
  return run;
}

std::string cover_table(const std::vector<CoverPiece>& pieces) {
  std::ostringstream os;
  os << "piece  v_gen     arms     (c,d)  activation  firing\n";
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const CoverPiece& p = pieces[k];
    std::ostringstream g, arms, cd;
    g << "(" << p.general_at.x << "," << p.general_at.y << ")";
    arms << "(" << p.arm_w << "," << p.arm_h << ")";
    cd << "(" << p.c << "," << p.d << ")";
    os.width(5);
    os << k + 1 << "  ";
    os.width(8);
    os << std::left << g.str() << "  ";
    os.width(7);
    os << arms.str() << "  ";
    os.width(5);
    os << cd.str() << "  " << std::right;
    os.width(10);
    os << p.activation << "  ";
    os.width(6);
    os << p.firing_time << '\n';
  }
  return os.str();
}

std::string cover_diagram(const std::vector<CoverPiece>& pieces, int w, int h) {
  std::vector<std::string> rows(h + 1, std::string(w + 1, '.'));
  auto letter = [](std::size_t k) { return static_cast<char>(k < 26 ? 'a' + k : 'A' + (k - 26) % 26); };
  for (std::size_t k = pieces.size(); k-- > 0;)
    for (Cell c : pieces[k].cells())
      if (c.x >= 0 && c.x <= w && c.y >= 0 && c.y <= h) rows[c.y][c.x] = letter(k);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    Cell g = pieces[k].general_at;
    rows[g.y][g.x] = static_cast<char>(letter(k) - 'a' + 'A');
  }
  std::string out;
  for (int y = h; y >= 0; --y) out += rows[y] + '\n';
  return out;
}

}  // namespace fssp

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "fssp/mft.hpp"
#include "fssp/solutions.hpp"

namespace fssp {

namespace {

struct Builder {
  SignalPlan plan;
  Cell general;

  int leg(const std::string& name, std::vector<Cell> route) {
    plan.legs.push_back({name, std::move(route)});
    return static_cast<int>(plan.legs.size()) - 1;
  }
  int msg(const std::string& label, int leg, int step) {
    plan.messages.push_back({label, leg, step});
    return static_cast<int>(plan.messages.size()) - 1;
  }
  int root(const std::string& label) {
    int l = -1;
    for (std::size_t k = 0; k < plan.legs.size(); ++k)
      if (!plan.legs[k].route.empty()) l = static_cast<int>(k);
    if (l < 0) l = leg("R0", {general});
    return msg(label, l, 0);
  }
  void term(std::vector<int> m, std::vector<int> legs = {}) { plan.terms.push_back({std::move(m), std::move(legs)}); }
  void any_of(const std::vector<int>& ms) {
    for (int m : ms) term({m});
  }
  void two_of(const std::vector<int>& ms) {
    for (std::size_t x = 0; x < ms.size(); ++x)
      for (std::size_t y = x + 1; y < ms.size(); ++y) term({ms[x], ms[y]});
  }
  // every term also needs the general's own boundary condition
  void gate() {
    int g = root("bc");
    for (auto& t : plan.terms)
      if (t.colocated_legs.empty()) t.messages.push_back(g);
  }
};

using NodeFn = std::function<Cell(int)>;

std::vector<Cell> span(const NodeFn& P, int from, int to) {
  std::vector<Cell> r;
  int d = to >= from ? 1 : -1;
  for (int k = from;; k += d) {
    r.push_back(P(k));
    if (k == to) break;
  }
  return r;
}

std::vector<Cell> ring(const std::vector<Cell>& nodes, int from, int dir, int steps) {
  int n = static_cast<int>(nodes.size());
  std::vector<Cell> r;
  for (int k = 0; k <= steps; ++k) r.push_back(nodes[(((from + dir * k) % n) + n) % n]);
  return r;
}

std::vector<Cell> straight(Cell from, std::initializer_list<std::pair<int, int>> runs) {
  std::vector<Cell> r{from};
  for (auto [d, len] : runs)
    for (int k = 0; k < len; ++k) r.push_back(r.back() + kDirs[d]);
  return r;
}

// Inverse of a box symmetry, found by search.
BoxSymmetry inverse(const BoxSymmetry& s) {
  for (int k = 0; k < 8; ++k) {
    BoxSymmetry t{k, s.out_w(), s.out_h()};
    bool ok = true;
    for (Cell c : {Cell{0, 0}, Cell{1, 0}, Cell{0, 1}, Cell{s.w, s.h}})
      if (t.apply(s.apply(c)) != c) ok = false;
    if (ok) return t;
  }
  throw Error(ErrorKind::PreconditionViolated, "no inverse symmetry");
}

void map_routes(SignalPlan& p, const BoxSymmetry& back) {
  for (auto& l : p.legs)
    for (Cell& c : l.route) c = back.apply(c);
}

// ----------------------------------------------------------------- L-paths

// g-LSP[a,b] with a <= b on an abstract path p_0..p_{w+h}.
void glsp_ab_bs(Builder& B, int w, int h, int i, const NodeFn& P) {
  int N = w + h;
  if (i < w) {
    B.plan.case_label = "glsp_ab:general-on-horizontal-arm";
    int r0 = B.leg("R0", span(P, i, 0));
    int r1 = B.leg("R1", span(P, i, N));
    int x = B.msg("x=" + std::to_string(i), r0, i);
    int y = B.msg("y=" + std::to_string(w - i), r1, w - i);
    int hm = B.msg("h=" + std::to_string(h), r1, N - i);
    B.two_of({x, y, hm});
  } else {
    B.plan.case_label = "glsp_ab:general-on-vertical-arm";
    int r0 = B.leg("R0", span(P, i, 0));
    int r1 = B.leg("R1", span(P, i, N));
    int x = B.msg("x=" + std::to_string(i - w), r0, i - w);
    int wm = B.msg("w=" + std::to_string(w), r0, i);
    int y = B.msg("y=" + std::to_string(N - i), r1, N - i);
    B.two_of({x, y, wm});
  }
  B.gate();
}

// Traditional plan for a general at the end p_0: yes-0 is the bc check born at time 1.
void glsp_ab_yes(Builder& B, int w, int h, const NodeFn& P) {
  B.plan.case_label = "glsp_ab:tr-yes012";
  int r = B.leg("R1", span(P, 0, w + h));
  int y0 = B.msg("yes-0", r, 0);
  int y1 = B.msg("yes-1", r, w);
  int y2 = B.msg("yes-2", r, w + h);
  B.term({y0, y1});
  B.term({y2});
}

// ----------------------------------------------------------------- walls

void rect_wall_plan(Builder& B, int w, int h, const std::vector<Cell>& nodes) {
  B.plan.case_label = "rect_wall";
  int r0 = B.leg("R0", ring(nodes, 0, -1, w + h));
  int r1 = B.leg("R1", ring(nodes, 0, +1, w + h));
  int hA = B.msg("h=" + std::to_string(h), r0, h);
  int wA = B.msg("w=" + std::to_string(w), r0, w + h);
  int wB = B.msg("w=" + std::to_string(w), r1, w);
  int hB = B.msg("h=" + std::to_string(h), r1, w + h);
  for (int a : {wA, wB})
    for (int b : {hA, hB}) B.term({a, b});
}

void rect_wall_ab_plan(Builder& B, int w, int h, const std::vector<Cell>& nodes) {
  B.plan.case_label = "rect_wall_ab";
  int r0 = B.leg("R0", ring(nodes, 0, -1, h));
  int r1 = B.leg("R1", ring(nodes, 0, +1, w));
  int hm = B.msg("h=" + std::to_string(h), r0, h);
  int wm = B.msg("w=" + std::to_string(w), r1, w);
  B.any_of({hm, wm});
}

struct WallMsgs {
  int x, y, s1, s2;  // s1, s2: births of the side message (h or w)
};

// Normalised g-RECT-WALL legs: general p_i with w <= h and 0 <= i <= w + h.
WallMsgs gwall_legs(Builder& B, const WallNormal& n) {
  int w = n.w, h = n.h, i = n.i;
  auto nodes = wall_nodes(w, h);
  WallMsgs m{};
  if (i <= w) {
    B.plan.case_label = "gwall:general-on-south-side";
    int r0 = B.leg("R0", ring(nodes, i, -1, i + h));
    int r1 = B.leg("R1", ring(nodes, i, +1, w - i + h));
    m.x = B.msg("x=" + std::to_string(i), r0, i);
    m.s1 = B.msg("h=" + std::to_string(h), r0, i + h);
    m.y = B.msg("y=" + std::to_string(w - i), r1, w - i);
    m.s2 = B.msg("h=" + std::to_string(h), r1, w - i + h);
  } else {
    B.plan.case_label = "gwall:general-on-east-side";
    int k = i - w;
    int r0 = B.leg("R0", ring(nodes, i, -1, k + w));
    int r1 = B.leg("R1", ring(nodes, i, +1, h - k + w));
    m.x = B.msg("x=" + std::to_string(k), r0, k);
    m.s1 = B.msg("w=" + std::to_string(w), r0, k + w);
    m.y = B.msg("y=" + std::to_string(h - k), r1, h - k);
    m.s2 = B.msg("w=" + std::to_string(w), r1, h - k + w);
  }
  return m;
}

void gwall_ab_terms(Builder& B, const WallMsgs& m, bool drop_root) {
  auto keep = [&](std::vector<int> ms) {
    std::vector<int> out;
    for (int x : ms)
      if (!(drop_root && B.plan.messages[x].step == 0)) out.push_back(x);
    B.term(out);
  };
  for (int s : {m.s1, m.s2}) {
    keep({m.x, s});
    keep({m.y, s});
  }
  keep({m.x, m.y});
}

// ----------------------------------------------------------------- EX2

std::vector<Cell> bfs_path(const CellSet& c, Cell from, Cell to) {
  int n = static_cast<int>(c.size());
  std::vector<int> par(n, -2);
  std::deque<int> q{c.index_of(from)};
  par[q.front()] = -1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int d = 0; d < 4; ++d) {
      int u = c.neighbor(v, d);
      if (u >= 0 && par[u] == -2) {
        par[u] = v;
        q.push_back(u);
      }
    }
  }
  std::vector<Cell> r;
  for (int v = c.index_of(to); v >= 0; v = par[v]) r.push_back(c.cell(v));
  std::reverse(r.begin(), r.end());
  return r;
}

}  // namespace

bool uses_bc_transfer(const VariationSpec& spec, const Configuration& t) {
  if (spec.family == Family::gRECT_WALL) return true;
  if (spec.family == Family::gLSP_ab) {
    int w = t.params.w, h = t.params.h, i = t.params.i;
    if (spec.a > spec.b) {
      std::swap(w, h);
      i = w + h - i;
    }
    bool exception = i == 0 || (spec.a == spec.b && i == w + h);
    return !exception && t.set().size() > 1;
  }
  return false;
}

SignalPlan make_plan(const VariationSpec& spec, const Configuration& t, Model model) {
  if (!member(spec, t)) throw Error(ErrorKind::MemberCheckFailure, t.name() + " is not in " + spec_string(spec));
  Builder B;
  B.general = t.general();
  B.plan.model = model;
  const bool bs = model == Model::BoundarySensitive;
  const int w = t.params.w, h = t.params.h, i = t.params.i;
  NodeFn P = [&](int k) { return t.nodes.at(k); };

  switch (spec.family) {
    case Family::LSP: {
      B.plan.case_label = "lsp";
      int r = B.leg("R0", span(P, 0, w + h));
      B.term({B.msg("w+h=" + std::to_string(w + h), r, w + h)});
      break;
    }
    case Family::gLSP: {
      B.plan.case_label = "glsp";
      int r0 = B.leg("R0", span(P, i, 0));
      int r1 = B.leg("R1", span(P, i, w + h));
      int x = B.msg("x=" + std::to_string(i), r0, i);
      int y = B.msg("y=" + std::to_string(w + h - i), r1, w + h - i);
      B.term({x, y});
      if (bs) B.gate();
      break;
    }
    case Family::LSP_ab:
    case Family::EX1: {
      B.plan.case_label = spec.family == Family::EX1 ? "ex1" : (spec.a > spec.b ? "lsp_ab:a>b" : "lsp_ab:a<=b");
      int r = B.leg("R0", span(P, 0, w));
      B.term({B.msg("w=" + std::to_string(w), r, w)});
      break;
    }
    case Family::gLSP_ab: {
      int W = w, H = h, I = i;
      NodeFn Q = P;
      bool mirrored = spec.a > spec.b;
      auto mirror = [&] {
        std::swap(W, H);
        I = W + H - I;
        Q = [&, N = w + h, prev = Q](int k) { return prev(N - k); };
      };
      if (mirrored) mirror();
      if (bs) {
        glsp_ab_bs(B, W, H, I, Q);
      } else {
        if (I == W + H && spec.a == spec.b) mirror();
        if (I != 0) throw Error(ErrorKind::Unsupported, "traditional g-LSP[a,b] plan only for end generals");
        glsp_ab_yes(B, W, H, Q);
      }
      if (mirrored) B.plan.case_label += ":mirrored";
      break;
    }
    case Family::RECT_WALL:
      rect_wall_plan(B, w, h, t.nodes);
      break;
    case Family::RECT_WALL_ab:
    case Family::SQ_WALL:
      rect_wall_ab_plan(B, w, h, t.nodes);
      break;
    case Family::gRECT_WALL:
    case Family::gRECT_WALL_ab:
    case Family::gSQ_WALL: {
      WallNormal n = normalize_wall(w, h, i);
      WallMsgs m = gwall_legs(B, n);
      if (spec.family == Family::gRECT_WALL) {
        if (!bs) throw Error(ErrorKind::Unsupported, "traditional g-RECT-WALL goes through to_traditional");
        B.term({m.x, m.y, m.s1});
        B.term({m.x, m.y, m.s2});
        B.gate();
      } else if (bs) {
        gwall_ab_terms(B, m, false);
        B.gate();
      } else {
        // general state assumes the target's bc; a separate bc message gates the first rule
        gwall_ab_terms(B, m, true);
        B.gate();
        auto nodes = wall_nodes(n.w, n.h);
        int r2 = B.leg("R2", ring(nodes, n.i, -1, n.w + n.h));
        int r3 = B.leg("R3", ring(nodes, n.i, +1, n.w + n.h));
        B.term({}, {r2, r3});
        B.plan.case_label += ":tr-antipode";
      }
      map_routes(B.plan, inverse(n.sym));
      break;
    }
    case Family::RECT_ab:
    case Family::SQ: {
      B.plan.case_label = "rect_ab";
      int r0 = B.leg("R0", straight(t.general(), {{East, w}}));
      int r1 = B.leg("R1", straight(t.general(), {{North, h}}));
      B.any_of({B.msg("w=" + std::to_string(w), r0, w), B.msg("h=" + std::to_string(h), r1, h)});
      break;
    }
    case Family::gRECT_ab: {
      BoxSymmetry sym{};
      bool found = false;
      for (int k = 0; k < 8 && !found; ++k) {
        BoxSymmetry s{k, w, h};
        if (s.apply(t.general()) == Cell{0, 0} && s.out_w() == w) {
          sym = s;
          found = true;
        }
      }
      if (!found) throw Error(ErrorKind::Unsupported, "g-RECT[a,b] plans exist only for corner generals");
      B.plan.case_label = "grect_ab:corner";
      int r2 = B.leg("R2", straight({0, 0}, {{East, w}, {North, h}}));
      int r3 = B.leg("R3", straight({0, 0}, {{North, h}, {East, w}}));
      B.general = {0, 0};
      B.any_of({B.msg("w=" + std::to_string(w), r2, w), B.msg("h=" + std::to_string(h), r3, h)});
      B.gate();
      if (!bs) {
        B.term({}, {r2, r3});
        B.plan.case_label += ":tr-antipode";
      }
      map_routes(B.plan, inverse(sym));
      break;
    }
    case Family::LSP_C_abcd: {
      B.plan.case_label = "lsp_c";
      int r0 = B.leg("R0", span(P, w, 0));
      int r1 = B.leg("R1", span(P, w, w + h));
      B.any_of({B.msg("w=" + std::to_string(w), r0, w), B.msg("h=" + std::to_string(h), r1, h)});
      break;
    }
    case Family::EX2A:
    case Family::EX2B:
    case Family::EX2C:
    case Family::EX2D: {
      B.plan.case_label = "ex2";
      std::vector<Cell> sites = {{0, w}, {w, 0}};
      if (spec.family == Family::EX2B) {
        sites.clear();  // corridor corners
        for (int k = 0; 2 * k <= w; ++k) sites.push_back({w - 2 * k, 2 * k});
      }
      std::vector<int> ms;
      for (std::size_t k = 0; k < sites.size(); ++k) {
        auto route = bfs_path(t.set(), t.general(), sites[k]);
        int l = B.leg("R" + std::to_string(k), route);
        ms.push_back(B.msg("site" + std::to_string(k), l, static_cast<int>(route.size()) - 1));
      }
      B.any_of(ms);
      break;
    }
    default:
      throw Error(ErrorKind::Unsupported, std::string("no check-and-broadcast plan for ") + family_name(spec.family));
  }
  B.plan.deadline = mft(spec, t, model).value;
  return B.plan;
}

std::vector<int> colocation_cells(const SignalPlan& plan, const CellSet& target) {
  SignalPlan msg_only = plan;
  msg_only.terms.clear();
  for (const auto& t : plan.terms)
    if (t.colocated_legs.empty()) msg_only.terms.push_back(t);
  std::vector<int> out;
  const int n = static_cast<int>(target.size());
  for (int v = 0; v < n; ++v) {
    bool ok = false;
    for (const auto& t : msg_only.terms) {
      int worst = 0;
      for (int m : t.messages) {
        const auto& b = plan.messages[m];
        int site = target.index_of(plan.legs[b.leg].route[b.step]);
        worst = std::max(worst, plan.birth_time(m) + target.distances_from(site)[v]);
      }
      if (worst <= plan.deadline) ok = true;
    }
    if (!ok) out.push_back(v);
  }
  return out;
}

PartialSolution generate_cab(const VariationSpec& spec, const Configuration& t, Model model) {
  int ft = mft(spec, t, model).value;
  if (model == Model::Traditional && uses_bc_transfer(spec, t))
    return to_traditional(generate_cab(spec, t, Model::BoundarySensitive));
  SignalPlan plan = make_plan(spec, t, model);
  int t0 = plan_satisfaction_time(plan, t.set());
  if (t0 != ft)
    throw Error(ErrorKind::PreconditionViolated, "plan for " + t.name() + " completes at " + std::to_string(t0) +
                                                     " but the formula gives " + std::to_string(ft));
  PartialSolution ps;
  ps.spec = spec;
  ps.plan = std::make_shared<SignalPlan>(plan);
  ps.automaton = std::make_shared<CabAutomaton>(plan, t.cells);
  ps.domain = {t};
  ps.declared_ft = {ft};
  return ps;
}

std::optional<int> PartialSolution::ft_for(const Configuration& c) const {
  for (std::size_t k = 0; k < domain.size(); ++k)
    if (*domain[k].cells == *c.cells) return declared_ft[k];
  return std::nullopt;
}

}  // namespace fssp

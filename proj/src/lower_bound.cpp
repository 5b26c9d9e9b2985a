#include "fssp/lower_bound.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "fssp/mft.hpp"
#include "fssp/solutions.hpp"

namespace fssp {

namespace {
bool offset_less(const std::pair<Cell, BoundaryCondition>& a, const std::pair<Cell, BoundaryCondition>& b) {
  return a.first.x != b.first.x ? a.first.x < b.first.x : a.first.y < b.first.y;
}
}  // namespace

AvailableInformation available_info(const CellSet& c, Cell v, int t) {
  AvailableInformation ai;
  int vi = c.index_of(v), gi = c.general_index();
  const auto& dg = c.distances_from(gi);
  if (dg[vi] > t) return ai;
  const auto& dv = c.distances_from(vi);
  ai.known = true;
  ai.time = t;
  Cell g = c.general();
  ai.origin_offset = v - g;
  for (int k = 0; k < static_cast<int>(c.size()); ++k)
    if (dg[k] + dv[k] <= t) ai.local_map.push_back({c.cell(k) - g, c.bc(k)});
  std::sort(ai.local_map.begin(), ai.local_map.end(), offset_less);
  return ai;
}

bool ai_equal(const AvailableInformation& a, const AvailableInformation& b) {
  if (a.known != b.known) return false;
  if (!a.known) return true;
  return a == b;
}

bool witness_holds(const LowerBoundWitness& w) {
  if (radius(w.c2.set()) <= w.t) return false;
  if (!w.c.set().contains(w.v) || !w.c2.set().contains(w.v2)) return false;
  return ai_equal(available_info(w.c.set(), w.v, w.t), available_info(w.c2.set(), w.v2, w.t));
}

int default_search_scale(const Configuration& c) { return std::max(1, 4 * c.scale()); }

std::optional<LowerBoundWitness> find_witness(const VariationSpec& spec, const Configuration& c, int t,
                                              int search_scale, const std::vector<Cell>& v_order) {
  const CellSet& C = c.set();
  std::vector<Cell> order = v_order;
  for (Cell x : C.cells())
    if (std::find(order.begin(), order.end(), x) == order.end()) order.push_back(x);
  // ai of every candidate v, computed once
  std::vector<AvailableInformation> infos;
  std::vector<Cell> vs;
  for (Cell v : order) {
    auto ai = available_info(C, v, t);
    if (!ai.known) continue;  // a Q cell says nothing about firing
    infos.push_back(std::move(ai));
    vs.push_back(v);
  }
  const BoundaryCondition gbc = C.bc(C.general_index());
  std::optional<LowerBoundWitness> found;
  enumerate(spec, search_scale, [&](const Configuration& c2) {
    const CellSet& D = c2.set();
    if (D.bc(D.general_index()) != gbc) return true;
    if (radius(D) <= t) return true;
    const auto& dg2 = D.distances_from(D.general_index());
    Cell g2 = D.general();
    for (std::size_t k = 0; k < vs.size(); ++k) {
      const auto& ai = infos[k];
      Cell v2 = g2 + ai.origin_offset;
      int vi2 = D.find(v2);
      if (vi2 < 0 || dg2[vi2] > t) continue;
      bool ok = true;
      for (const auto& [off, bc] : ai.local_map) {
        int ci = D.find(g2 + off);
        if (ci < 0 || D.bc(ci) != bc || dg2[ci] > t) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const auto& dv2 = D.distances_from(vi2);
      for (const auto& [off, bc] : ai.local_map) {
        int ci = D.find(g2 + off);
        if (dg2[ci] + dv2[ci] > t) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (!ai_equal(ai, available_info(D, v2, t))) continue;
      found = LowerBoundWitness{c, t, c2, vs[k], v2};
      return false;
    }
    return true;
  });
  if (found && !witness_holds(*found)) throw Error(ErrorKind::PreconditionViolated, "witness failed re-check");
  return found;
}

std::vector<Cell> deadline_cells(const VariationSpec& spec, const Configuration& c, Model model) {
  std::vector<Cell> out;
  SignalPlan plan;
  try {
    plan = make_plan(spec, c, model == Model::Traditional && uses_bc_transfer(spec, c) ? Model::BoundarySensitive
                                                                                        : model);
  } catch (const Error&) {
    return out;
  }
  const CellSet& C = c.set();
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  for (int v = 0; v < static_cast<int>(C.size()); ++v) {
    int best = kInf;
    for (const auto& term : plan.terms) {
      if (!term.colocated_legs.empty()) continue;
      int worst = 0;
      for (int m : term.messages) {
        const auto& b = plan.messages[m];
        int site = C.index_of(plan.legs[b.leg].route[b.step]);
        worst = std::max(worst, plan.birth_time(m) + C.distances_from(site)[v]);
      }
      best = std::min(best, worst);
    }
    if (best >= plan.deadline) out.push_back(C.cell(v));
  }
  return out;
}

LowerBoundResult verify_mft_lower(const VariationSpec& spec, const Configuration& c, Model model, int search_scale) {
  LowerBoundResult r;
  int m = mft(spec, c, model).value;
  r.t = m - 1;
  const CellSet& C = c.set();
  if (C.size() == 1) {
    // bs: 0 needs no bound; tr: the general cannot see its boundary condition at time 0
    r.ok = true;
    r.reason = "singleton";
    return r;
  }
  int rad = radius(C);
  if (m <= rad) {
    r.ok = m == rad;
    r.reason = "radius";
    if (r.ok) r.witness = LowerBoundWitness{c, r.t, c, C.general(), C.general()};
    return r;
  }
  if (search_scale < 0) search_scale = default_search_scale(c);
  r.witness = find_witness(spec, c, r.t, search_scale, deadline_cells(spec, c, model));
  r.ok = r.witness.has_value();
  r.reason = r.ok ? "witness" : "not-found";
  return r;
}

std::vector<AiPair> sample_ai_equal_pairs(const std::vector<Configuration>& pool, int n, unsigned seed,
                                          int max_tries) {
  std::vector<AiPair> out;
  if (pool.size() < 2) return out;
  std::mt19937 rng(seed);
  for (int tries = 0; static_cast<int>(out.size()) < n && tries < max_tries; ++tries) {
    const Configuration& c1 = pool[rng() % pool.size()];
    const CellSet& A = c1.set();
    int vi = static_cast<int>(rng() % A.size());
    int d = A.distances_from(A.general_index())[vi];
    int t = d + static_cast<int>(rng() % (radius(A) + 2));
    auto ai = available_info(A, A.cell(vi), t);
    std::size_t start = rng() % pool.size();
    for (std::size_t k = 0; k < pool.size(); ++k) {
      const Configuration& c2 = pool[(start + k) % pool.size()];
      const CellSet& B = c2.set();
      if (B == A) continue;
      int wi = B.find(B.general() + ai.origin_offset);
      if (wi < 0 || B.bc(B.general_index()) != A.bc(A.general_index())) continue;
      if (!ai_equal(ai, available_info(B, B.cell(wi), t))) continue;
      out.push_back({c1, c2, A.cell(vi), B.cell(wi), t});
      break;
    }
  }
  return out;
}

std::string render_local_map(const AvailableInformation& ai) {
  if (!ai.known) return "Q\n";
  int x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  for (const auto& [o, _] : ai.local_map) {
    x0 = std::min(x0, o.x);
    x1 = std::max(x1, o.x);
    y0 = std::min(y0, o.y);
    y1 = std::max(y1, o.y);
  }
  std::map<std::pair<int, int>, char> pic;
  for (const auto& [o, _] : ai.local_map) pic[{o.x, o.y}] = 'o';
  pic[{0, 0}] = '%';
  pic[{ai.origin_offset.x, ai.origin_offset.y}] = '@';
  std::ostringstream os;
  os << "t=" << ai.time << " v-v_gen=(" << ai.origin_offset.x << ',' << ai.origin_offset.y << ") entries "
     << ai.local_map.size() << '\n';
  for (int y = y1; y >= y0; --y) {
    for (int x = x0; x <= x1; ++x) {
      auto it = pic.find({x, y});
      os << (it == pic.end() ? ' ' : it->second);
    }
    os << '\n';
  }
  for (const auto& [o, b] : ai.local_map) os << "  (" << o.x << ',' << o.y << ") " << bc_string(b) << '\n';
  return os.str();
}

std::string witness_report(const LowerBoundWitness& w) {
  std::ostringstream os;
  os << "witness C=" << w.c.name() << " t=" << w.t << " C2=" << w.c2.name() << " v=(" << w.v.x << ',' << w.v.y
     << ") v2=(" << w.v2.x << ',' << w.v2.y << ") rad(C2)=" << radius(w.c2.set()) << '\n';
  int vi = w.c.node_index(w.v), vi2 = w.c2.node_index(w.v2);
  if (vi >= 0 && vi2 >= 0) os << "nodes p" << vi << " / p" << vi2 << '\n';
  os << render_local_map(available_info(w.c.set(), w.v, w.t));
  return os.str();
}

}  // namespace fssp

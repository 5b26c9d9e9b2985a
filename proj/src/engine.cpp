#include "fssp/engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace fssp {

std::string FiringOutcome::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::FiredAt: os << "FiredAt(" << time << ")"; break;
    case Kind::PrematureOrPartial:
      os << "PrematureOrPartial((" << cell.x << "," << cell.y << ")," << time << ")";
      break;
    case Kind::NoFireWithinHorizon: os << "NoFireWithinHorizon(" << time << ")"; break;
  }
  return os.str();
}

Row initial_row(const CellSet& c, const Automaton& a) {
  Row r(c.size(), kQ);
  r[c.general_index()] = a.general_state(c.bc(c.general_index()));
  return r;
}

namespace {

inline State new_state(const CellSet& c, const Automaton& a, const Row& row, int i) {
  Inputs in;
  for (int d = 0; d < 4; ++d) {
    int n = c.neighbor(i, d);
    in[d] = n < 0 ? kBoundary : row[n];
  }
  return a.delta(row[i], in);
}

}  // namespace

Row step(const CellSet& c, const Automaton& a, const Row& row) {
  Row next(row.size());
  for (int i = 0; i < static_cast<int>(row.size()); ++i) next[i] = new_state(c, a, row, i);
  return next;
}

Trace simulate(const CellSet& c, const Automaton& a, int horizon) {
  Trace tr;
  tr.rows.push_back(initial_row(c, a));
  for (int t = 0; t < horizon; ++t) tr.rows.push_back(step(c, a, tr.rows.back()));
  return tr;
}

int default_horizon(const CellSet& c) { return 4 * (radius(c) + 1); }

FiringOutcome firing_time(const CellSet& c, const Automaton& a, int horizon) {
  if (horizon < 0) horizon = default_horizon(c);
  const int n = static_cast<int>(c.size());
  // Cells beyond the front stay Q when the quiescent rule holds, so only the front is updated.
  bool front_ok = true;
  for (int mask = 0; mask < 16 && front_ok; ++mask) {
    Inputs in;
    for (int d = 0; d < 4; ++d) in[d] = (mask >> d) & 1 ? kBoundary : kQ;
    if (a.delta(kQ, in) != kQ) front_ok = false;
  }
  const auto& dist = c.distances_from(c.general_index());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return dist[x] < dist[y]; });

  Row row = initial_row(c, a), next(n, kQ);
  for (int t = 0;; ++t) {
    int firing = 0, first = -1;
    bool any_active = false;
    for (int i = 0; i < n; ++i) {
      if (a.is_firing(row[i])) {
        ++firing;
        if (first < 0) first = i;
      }
      if (row[i] != kQ) any_active = true;
    }
    if (firing == n) return {FiringOutcome::Kind::FiredAt, t, {}};
    if (firing > 0) return {FiringOutcome::Kind::PrematureOrPartial, t, c.cell(first)};
    if (t == horizon || (!any_active && t > 0 && front_ok))
      return {FiringOutcome::Kind::NoFireWithinHorizon, horizon, {}};
    if (front_ok) {
      for (int k = 0; k < n; ++k) {
        int i = order[k];
        if (dist[i] > t + 1) break;
        next[i] = new_state(c, a, row, i);
      }
    } else {
      for (int i = 0; i < n; ++i) next[i] = new_state(c, a, row, i);
    }
    std::swap(row, next);
  }
}

FiringOutcome firing_time(const Configuration& c, const Automaton& a, int horizon) {
  return firing_time(c.set(), a, horizon);
}

std::pair<int, int> quiescent_front_violation(const CellSet& c, const Trace& tr) {
  const auto& dist = c.distances_from(c.general_index());
  for (int t = 0; t <= tr.horizon(); ++t)
    for (int i = 0; i < static_cast<int>(c.size()); ++i)
      if (dist[i] > t && tr.at(i, t) != kQ) return {i, t};
  return {-1, -1};
}

std::string dump_trace(const CellSet& c, const Automaton& a, const Trace& tr) {
  std::ostringstream os;
  os << "trace v1\ncells " << c.size() << '\n';
  for (Cell x : c.cells()) os << x.x << ',' << x.y << ' ';
  os << "\nhorizon " << tr.horizon() << '\n';
  for (int t = 0; t <= tr.horizon(); ++t) {
    os << t << ':';
    for (State s : tr.rows[t]) os << ' ' << a.state_name(s);
    os << '\n';
  }
  return os.str();
}

std::string ascii_diagram(const Automaton& a, const Trace& tr, const std::vector<int>& order) {
  static const std::string kSymbols =
      "ABCDEGHIJKLMNOPRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+-=<>/\\|~^&%$@!?";
  std::map<State, char> sym;
  std::vector<State> seen;
  auto symbol = [&](State s) -> char {
    if (s == kQ) return '.';
    if (a.is_firing(s)) return '*';
    auto it = sym.find(s);
    if (it != sym.end()) return it->second;
    char ch = seen.size() < kSymbols.size() ? kSymbols[seen.size()] : '#';
    sym[s] = ch;
    seen.push_back(s);
    return ch;
  };
  std::vector<std::string> lines;
  for (int t = 0; t <= tr.horizon(); ++t) {
    std::string line;
    for (int i : order) line += symbol(tr.at(i, t));
    lines.push_back(line);
  }
  std::ostringstream os;
  os << "legend: . = Q, * = firing";
  for (State s : seen) os << ", " << sym[s] << " = " << a.state_name(s);
  os << '\n';
  for (int t = 0; t <= tr.horizon(); ++t) {
    std::string ts = std::to_string(t);
    os << std::string(4 - std::min<std::size_t>(4, ts.size()), ' ') << ts << " | " << lines[t] << '\n';
  }
  return os.str();
}

std::vector<int> diagram_order(const Configuration& c) {
  std::vector<int> order;
  if (c.shape == Shape::LPath || c.shape == Shape::Wall) {
    for (Cell x : c.nodes) order.push_back(c.set().index_of(x));
  } else {
    order.resize(c.set().size());
    std::iota(order.begin(), order.end(), 0);
  }
  return order;
}

}  // namespace fssp

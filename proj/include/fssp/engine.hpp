#pragma once

#include <string>
#include <vector>

#include "fssp/automaton.hpp"
#include "fssp/families.hpp"

namespace fssp {

using Row = std::vector<State>;  // indexed by canonical cell index

struct Trace {
  std::vector<Row> rows;  // rows[t][cell]
  int horizon() const { return static_cast<int>(rows.size()) - 1; }
  State at(int cell, int t) const { return rows.at(t).at(cell); }
};

Row initial_row(const CellSet& c, const Automaton& a);
Row step(const CellSet& c, const Automaton& a, const Row& row);
Trace simulate(const CellSet& c, const Automaton& a, int horizon);

struct FiringOutcome {
  enum class Kind { FiredAt, PrematureOrPartial, NoFireWithinHorizon };
  Kind kind = Kind::NoFireWithinHorizon;
  int time = 0;   // firing time, offending time, or horizon
  Cell cell{};    // offending cell for PrematureOrPartial
  bool fired() const { return kind == Kind::FiredAt; }
  bool fired_at(int t) const { return fired() && time == t; }
  std::string str() const;
  friend bool operator==(const FiringOutcome&, const FiringOutcome&) = default;
};

int default_horizon(const CellSet& c);  // 4 * (radius + 1)
FiringOutcome firing_time(const CellSet& c, const Automaton& a, int horizon = -1);
FiringOutcome firing_time(const Configuration& c, const Automaton& a, int horizon = -1);

// First (cell, time) breaking the speed-of-light front, or time -1 if none.
std::pair<int, int> quiescent_front_violation(const CellSet& c, const Trace& tr);

// Trace dump: header then one line per time step, state names in canonical cell order.
std::string dump_trace(const CellSet& c, const Automaton& a, const Trace& tr);
// Space-time diagram, one character per state; columns follow `order` (cell indices).
std::string ascii_diagram(const Automaton& a, const Trace& tr, const std::vector<int>& order);
std::vector<int> diagram_order(const Configuration& c);

}  // namespace fssp

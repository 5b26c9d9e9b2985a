#pragma once

#include <memory>
#include <vector>

#include "fssp/automaton.hpp"

namespace fssp {

// Minimal-time synchronizer for a line whose general is the west end.
// Built from a recursive halving construction with structured states, then frozen
// into an explicit table over (self, west, east); north and south inputs are ignored.
class LineSolution : public Automaton {
 public:
  // Freezes the table from runs on lines of 1..learn_n cells.
  explicit LineSolution(int learn_n = 160);

  Model model() const override { return Model::Traditional; }
  State general_state(BoundaryCondition) const override { return general_; }
  bool is_firing(State s) const override { return s == fire_; }
  State delta(State self, const Inputs& in) const override { return line_delta(self, in[2], in[0]); }
  std::size_t num_states() const override { return names_.size(); }
  std::size_t num_firing_states() const override { return 1; }
  std::string state_name(State s) const override;

  State line_delta(State self, State left, State right) const;
  State general() const { return general_; }
  State fire() const { return fire_; }
  std::size_t table_size() const { return table_.size(); }
  // The frozen table as an ordinary automaton (for serialization).
  std::shared_ptr<TableAutomaton> to_table() const;

 private:
  static std::uint32_t key(State s, State l, State r) {
    return (static_cast<std::uint32_t>(s + 1) << 20) | (static_cast<std::uint32_t>(l + 1) << 10) |
           static_cast<std::uint32_t>(r + 1);
  }
  std::vector<std::string> names_;
  std::vector<std::uint32_t> keys_;
  std::vector<State> table_;  // sorted by key, parallel to keys_
  State general_ = kQ, fire_ = kQ;
};

std::shared_ptr<const LineSolution> minimal_line();

}  // namespace fssp

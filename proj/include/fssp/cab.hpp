#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>
#include <string>
#include <vector>

#include "fssp/automaton.hpp"
#include "fssp/families.hpp"

namespace fssp {

// A signal leg: the route from the general through the target, one cell per step.
// Every cell on the route is checked against the target's boundary condition.
struct SignalLeg {
  std::string name;          // R0, R1, ...
  std::vector<Cell> route;   // route[0] is the general
};

// A message is born where a signal completes a prefix of its route (step k), at time k.
// Step 0 is the general's own boundary-condition check; under the traditional model the
// general only sees its inputs at time 1, so such a message is born at time 1.
struct MessageBirth {
  std::string label;   // e.g. "w=6", "x=2", "yes-0", "bc"
  int leg = 0;
  int step = 0;
};

// One conjunct of the firing rule: all listed messages received, and (optionally) the
// end tokens of the listed legs co-located at the cell at the deadline.
struct FiringTerm {
  std::vector<int> messages;
  std::vector<int> colocated_legs;
};

struct SignalPlan {
  std::string case_label;
  Model model = Model::BoundarySensitive;
  std::vector<SignalLeg> legs;
  std::vector<MessageBirth> messages;
  std::vector<FiringTerm> terms;
  int deadline = 0;   // t0

  int birth_time(int m) const;
  std::string render() const;  // audit dump: legs, births, firing rule
};

// Earliest t at which every target cell satisfies some term (messages flood at speed 1).
// Cells listed in `second_rule` (if non-null) receive the indices of cells whose earliest
// satisfying term uses co-located tokens.
int plan_satisfaction_time(const SignalPlan& plan, const CellSet& target);

// The automaton realising a plan on a target.  States carry the absolute time up to the
// deadline, the set of signal tokens present, and the set of received messages.
class CabAutomaton : public Automaton {
 public:
  CabAutomaton(SignalPlan plan, std::shared_ptr<const CellSet> target);

  Model model() const override { return plan_.model; }
  State general_state(BoundaryCondition b) const override;
  bool is_firing(State s) const override { return s == kFire; }
  State delta(State self, const Inputs& in) const override;
  std::size_t num_states() const override { return declared_; }
  std::size_t num_firing_states() const override { return 1; }
  std::string state_name(State s) const override;

  const SignalPlan& plan() const { return plan_; }
  std::size_t materialized_states() const;
  // Which terms are satisfied by the given state's content at the deadline (for audits).
  std::vector<int> satisfied_terms(State pre_deadline_self, const Inputs& in) const;

  static constexpr State kFire = 1;

 private:
  struct Node {
    int parent = -1;
    int dir = -1;        // step direction from the parent cell
    int depth = 0;
    Cell offset{};
    BoundaryCondition bc = 0;
    std::vector<int> children;
    std::vector<int> births;  // message ids
    bool live = false;        // has a birth or flag at/below it
    int flag_leg = -1;        // end node of a leg used by a co-location term
  };
  struct Content {
    int t = 0;
    std::vector<int> tokens;  // sorted node ids
    std::uint32_t msgs = 0;
  };

  State intern(const Content& c) const;
  Content content(State s) const;
  bool term_holds(const FiringTerm& term, const Content& c) const;

  SignalPlan plan_;
  std::shared_ptr<const CellSet> target_;
  std::vector<Node> nodes_;
  std::vector<int> leg_end_;
  std::uint32_t root_msgs_ = 0;
  std::size_t declared_ = 0;

  mutable std::mutex mu_;
  mutable std::vector<Content> contents_;
  mutable std::unordered_map<std::string, State> ids_;
  mutable std::unordered_map<DeltaKey, State, DeltaKeyHash> memo_;
};

}  // namespace fssp

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "fssp/grid.hpp"

namespace fssp {

enum class Model { Traditional, BoundarySensitive };
const char* model_name(Model m);  // "tr" / "bs"
Model parse_model(const std::string& s);

using State = std::int32_t;
inline constexpr State kQ = 0;          // quiescent state of every automaton
inline constexpr State kBoundary = -1;  // the # input

// Inputs in direction order east, north, west, south.
using Inputs = std::array<State, 4>;

class Automaton {
 public:
  virtual ~Automaton() = default;
  virtual Model model() const = 0;
  // State of the general at time 0; traditional automata ignore b.
  virtual State general_state(BoundaryCondition b) const = 0;
  virtual bool is_firing(State s) const = 0;
  virtual State delta(State self, const Inputs& in) const = 0;
  // Declared size of the state set (lazily built automata report their declared bound).
  virtual std::size_t num_states() const = 0;
  virtual std::size_t num_firing_states() const = 0;
  virtual std::string state_name(State s) const = 0;
};

using AutomatonPtr = std::shared_ptr<const Automaton>;

// 5-tuple key for memoized transition functions.
struct DeltaKey {
  std::array<State, 5> v;
  friend bool operator==(const DeltaKey&, const DeltaKey&) = default;
};
struct DeltaKeyHash {
  std::size_t operator()(const DeltaKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (State s : k.v) {
      h ^= static_cast<std::uint32_t>(s);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Explicit table with default-to-Q fallback.
class TableAutomaton : public Automaton {
 public:
  TableAutomaton(Model m, std::vector<std::string> names);

  Model model() const override { return model_; }
  State general_state(BoundaryCondition b) const override;
  bool is_firing(State s) const override;
  State delta(State self, const Inputs& in) const override;
  std::size_t num_states() const override { return names_.size(); }
  std::size_t num_firing_states() const override;
  std::string state_name(State s) const override;

  void set_general(BoundaryCondition b, State s) { general_[b] = s; }
  void set_general_all(State s) { general_.fill(s); }
  void set_firing(State s, bool f = true);
  void set(State self, const Inputs& in, State out);
  State find_state(const std::string& name) const;  // -1 if absent

  const std::vector<std::string>& names() const { return names_; }
  const std::array<State, 16>& general_map() const { return general_; }
  const std::vector<char>& firing() const { return firing_; }
  // Explicit (non-default) entries, sorted canonically.
  std::vector<std::pair<DeltaKey, State>> entries() const;

 private:
  Model model_;
  std::vector<std::string> names_;
  std::array<State, 16> general_{};
  std::vector<char> firing_;
  std::unordered_map<DeltaKey, State, DeltaKeyHash> table_;
};

struct Violation {
  std::string kind;  // quiescent-rule, firing-set, general-count, firing-count
  std::string detail;
};
std::vector<Violation> validate(const Automaton& a);

enum class FireRule { Either, Both };

// Runs two automata in lockstep; state count is the product of the factors' counts.
AutomatonPtr product(AutomatonPtr a1, AutomatonPtr a2, FireRule rule);

// Wraps an automaton so one chosen state turns into a firing state (fault injection).
AutomatonPtr inject_early_fire(AutomatonPtr base, int at_time_of_general);

}  // namespace fssp

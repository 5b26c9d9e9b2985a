#include "fssp/automaton.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace fssp {

const char* model_name(Model m) { return m == Model::Traditional ? "tr" : "bs"; }

Model parse_model(const std::string& s) {
  if (s == "tr" || s == "traditional") return Model::Traditional;
  if (s == "bs" || s == "boundary_sensitive") return Model::BoundarySensitive;
  throw Error(ErrorKind::Parse, "unknown model '" + s + "'");
}

TableAutomaton::TableAutomaton(Model m, std::vector<std::string> names)
    : model_(m), names_(std::move(names)), firing_(names_.size(), 0) {
  general_.fill(kQ);
}

State TableAutomaton::general_state(BoundaryCondition b) const {
  return model_ == Model::Traditional ? general_[0] : general_[b & 15];
}

bool TableAutomaton::is_firing(State s) const {
  return s >= 0 && s < static_cast<State>(firing_.size()) && firing_[s];
}

State TableAutomaton::delta(State self, const Inputs& in) const {
  auto it = table_.find(DeltaKey{{self, in[0], in[1], in[2], in[3]}});
  return it == table_.end() ? kQ : it->second;
}

std::size_t TableAutomaton::num_firing_states() const {
  return static_cast<std::size_t>(std::count(firing_.begin(), firing_.end(), 1));
}

std::string TableAutomaton::state_name(State s) const {
  if (s == kBoundary) return "#";
  if (s < 0 || s >= static_cast<State>(names_.size())) return "?" + std::to_string(s);
  return names_[s];
}

void TableAutomaton::set_firing(State s, bool f) { firing_.at(s) = f ? 1 : 0; }

void TableAutomaton::set(State self, const Inputs& in, State out) {
  DeltaKey k{{self, in[0], in[1], in[2], in[3]}};
  if (out == kQ)
    table_.erase(k);
  else
    table_[k] = out;
}

State TableAutomaton::find_state(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<State>(i);
  return -1;
}

std::vector<std::pair<DeltaKey, State>> TableAutomaton::entries() const {
  std::vector<std::pair<DeltaKey, State>> out(table_.begin(), table_.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first.v < y.first.v; });
  return out;
}

std::vector<Violation> validate(const Automaton& a) {
  std::vector<Violation> out;
  for (int mask = 0; mask < 16; ++mask) {
    Inputs in;
    for (int d = 0; d < 4; ++d) in[d] = (mask >> d) & 1 ? kBoundary : kQ;
    State r = a.delta(kQ, in);
    if (r != kQ) {
      std::ostringstream os;
      os << "delta(Q";
      for (State s : in) os << ',' << a.state_name(s);
      os << ") = " << a.state_name(r);
      out.push_back({"quiescent-rule", os.str()});
    }
  }
  if (a.is_firing(kQ)) out.push_back({"firing-set", "Q is a firing state"});
  if (a.num_firing_states() == 0) out.push_back({"firing-set", "no firing state"});
  if (a.model() == Model::Traditional) {
    State g = a.general_state(0);
    for (int b = 1; b < 16; ++b)
      if (a.general_state(static_cast<BoundaryCondition>(b)) != g) {
        out.push_back({"general-count", "traditional automaton has more than one general state"});
        break;
      }
    if (a.num_firing_states() != 1)
      out.push_back({"firing-count", "traditional automaton needs exactly one firing state"});
  }
  return out;
}

namespace {

// Interns pairs of factor states.  Id 0 is (Q,Q); in the traditional model id 1 is the
// single firing state.
class ProductAutomaton : public Automaton {
 public:
  ProductAutomaton(AutomatonPtr a1, AutomatonPtr a2, FireRule rule)
      : a1_(std::move(a1)), a2_(std::move(a2)), rule_(rule) {
    if (a1_->model() != a2_->model())
      throw Error(ErrorKind::ModelMismatch, "product factors use different models");
    pairs_.push_back({kQ, kQ});
    ids_[key(kQ, kQ)] = 0;
    if (a1_->model() == Model::Traditional) pairs_.push_back({-2, -2});
  }

  Model model() const override { return a1_->model(); }

  State general_state(BoundaryCondition b) const override {
    return intern(a1_->general_state(b), a2_->general_state(b));
  }

  bool is_firing(State s) const override {
    if (s < 0) return false;
    if (tr() && s == 1) return true;
    std::lock_guard<std::mutex> lk(mu_);
    if (s >= static_cast<State>(pairs_.size())) return false;
    auto [x, y] = pairs_[s];
    return fires(x, y);
  }

  State delta(State self, const Inputs& in) const override {
    if (tr() && self == 1) return 1;
    auto [x, y] = get(self);
    Inputs i1, i2;
    for (int d = 0; d < 4; ++d) {
      if (in[d] == kBoundary) {
        i1[d] = i2[d] = kBoundary;
      } else if (tr() && in[d] == 1) {
        i1[d] = i2[d] = kQ;  // fired neighbours are never consulted before the run stops
      } else {
        auto [p, q] = get(in[d]);
        i1[d] = p;
        i2[d] = q;
      }
    }
    return intern(a1_->delta(x, i1), a2_->delta(y, i2));
  }

  std::size_t num_states() const override { return a1_->num_states() * a2_->num_states(); }
  std::size_t num_firing_states() const override {
    if (tr()) return 1;
    auto n1 = a1_->num_states(), n2 = a2_->num_states();
    auto f1 = a1_->num_firing_states(), f2 = a2_->num_firing_states();
    return rule_ == FireRule::Both ? f1 * f2 : f1 * n2 + n1 * f2 - f1 * f2;
  }

  std::string state_name(State s) const override {
    if (s == kBoundary) return "#";
    if (tr() && s == 1) return "F";
    auto [x, y] = get(s);
    return "<" + a1_->state_name(x) + "|" + a2_->state_name(y) + ">";
  }

 private:
  bool tr() const { return a1_->model() == Model::Traditional; }
  bool fires(State x, State y) const {
    bool f1 = a1_->is_firing(x), f2 = a2_->is_firing(y);
    return rule_ == FireRule::Either ? (f1 || f2) : (f1 && f2);
  }
  static std::uint64_t key(State x, State y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) | static_cast<std::uint32_t>(y);
  }
  std::pair<State, State> get(State s) const {
    std::lock_guard<std::mutex> lk(mu_);
    return pairs_.at(s);
  }
  State intern(State x, State y) const {
    if (tr() && fires(x, y)) return 1;
    std::lock_guard<std::mutex> lk(mu_);
    auto k = key(x, y);
    auto it = ids_.find(k);
    if (it != ids_.end()) return it->second;
    State id = static_cast<State>(pairs_.size());
    pairs_.push_back({x, y});
    ids_[k] = id;
    return id;
  }

  AutomatonPtr a1_, a2_;
  FireRule rule_;
  mutable std::mutex mu_;
  mutable std::vector<std::pair<State, State>> pairs_;
  mutable std::unordered_map<std::uint64_t, State> ids_;
};

// The general counts its own age and fires alone at a chosen time.
class EarlyFire : public Automaton {
 public:
  EarlyFire(AutomatonPtr base, int k) : base_(std::move(base)), k_(k) {
    pairs_.push_back({kQ, -1});
    pairs_.push_back({-2, -2});  // id 1: injected firing state
  }
  Model model() const override { return base_->model(); }
  State general_state(BoundaryCondition b) const override {
    return k_ == 0 ? 1 : intern(base_->general_state(b), 0);
  }
  bool is_firing(State s) const override {
    if (s == 1) return true;
    if (s <= 1) return false;
    return base_->is_firing(get(s).first);
  }
  State delta(State self, const Inputs& in) const override {
    if (self == 1) return 1;
    auto [x, age] = get(self);
    Inputs bi;
    for (int d = 0; d < 4; ++d)
      bi[d] = in[d] == kBoundary ? kBoundary : (in[d] == 1 ? kQ : get(in[d]).first);
    State nx = base_->delta(x, bi);
    int na = age < 0 ? -1 : age + 1;
    if (na == k_) return 1;
    return intern(nx, na);
  }
  std::size_t num_states() const override { return base_->num_states() * static_cast<std::size_t>(k_ + 1) + 1; }
  std::size_t num_firing_states() const override { return model() == Model::Traditional ? 1 : base_->num_firing_states() + 1; }
  std::string state_name(State s) const override {
    if (s == kBoundary) return "#";
    if (s == 1) return "F!";
    auto [x, age] = get(s);
    return base_->state_name(x) + (age >= 0 ? "@" + std::to_string(age) : "");
  }

 private:
  std::pair<State, int> get(State s) const {
    std::lock_guard<std::mutex> lk(mu_);
    return pairs_.at(s);
  }
  State intern(State x, int age) const {
    if (x == kQ && age < 0) return kQ;
    std::lock_guard<std::mutex> lk(mu_);
    auto key = std::make_pair(x, age);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    State id = static_cast<State>(pairs_.size());
    pairs_.push_back(key);
    ids_[key] = id;
    return id;
  }
  AutomatonPtr base_;
  int k_;
  mutable std::mutex mu_;
  mutable std::vector<std::pair<State, int>> pairs_;
  mutable std::map<std::pair<State, int>, State> ids_;
};

}  // namespace

AutomatonPtr product(AutomatonPtr a1, AutomatonPtr a2, FireRule rule) {
  return std::make_shared<ProductAutomaton>(std::move(a1), std::move(a2), rule);
}

AutomatonPtr inject_early_fire(AutomatonPtr base, int k) {
  return std::make_shared<EarlyFire>(std::move(base), k);
}

}  // namespace fssp

#include "fssp/cab.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace fssp {

int SignalPlan::birth_time(int m) const {
  const MessageBirth& b = messages.at(m);
  if (b.step == 0) return model == Model::Traditional ? 1 : 0;
  return b.step;
}

std::string SignalPlan::render() const {
  std::ostringstream os;
  os << "plan " << case_label << " model " << model_name(model) << " deadline " << deadline << '\n';
  for (std::size_t l = 0; l < legs.size(); ++l) {
    const auto& leg = legs[l];
    os << "leg " << leg.name << " steps " << leg.route.size() - 1 << " route";
    // compress the route into direction runs
    static const char kD[] = "ENWS";
    int run = 0, cur = -1;
    for (std::size_t k = 1; k < leg.route.size(); ++k) {
      int d = direction_between(leg.route[k - 1], leg.route[k]);
      if (d == cur) {
        ++run;
      } else {
        if (cur >= 0) os << ' ' << kD[cur] << run;
        cur = d;
        run = 1;
      }
    }
    if (cur >= 0) os << ' ' << kD[cur] << run;
    os << '\n';
  }
  for (std::size_t m = 0; m < messages.size(); ++m) {
    const auto& b = messages[m];
    Cell site = legs[b.leg].route[b.step];
    os << "message " << m << " \"" << b.label << "\" leg " << legs[b.leg].name << " step " << b.step
       << " site (" << site.x << ',' << site.y << ") born " << birth_time(static_cast<int>(m)) << '\n';
  }
  os << "fire-if";
  for (std::size_t t = 0; t < terms.size(); ++t) {
    os << (t ? " OR" : "") << " {";
    bool first = true;
    for (int m : terms[t].messages) {
      os << (first ? "" : " & ") << messages[m].label;
      first = false;
    }
    for (int l : terms[t].colocated_legs) {
      os << (first ? "" : " & ") << "token(" << legs[l].name << ")";
      first = false;
    }
    os << '}';
  }
  os << '\n';
  return os.str();
}

int plan_satisfaction_time(const SignalPlan& plan, const CellSet& target) {
  const int n = static_cast<int>(target.size());
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> arrival(plan.messages.size());
  for (std::size_t m = 0; m < plan.messages.size(); ++m) {
    const auto& b = plan.messages[m];
    int site = target.index_of(plan.legs[b.leg].route[b.step]);
    const auto& d = target.distances_from(site);
    arrival[m].resize(n);
    for (int v = 0; v < n; ++v) arrival[m][v] = plan.birth_time(static_cast<int>(m)) + d[v];
  }
  int worst = 0;
  for (int v = 0; v < n; ++v) {
    int best = kInf;
    for (const auto& term : plan.terms) {
      int t = 0;
      for (int m : term.messages) t = std::max(t, arrival[m][v]);
      if (!term.colocated_legs.empty()) {
        int tau = -1;
        bool ok = true;
        for (int l : term.colocated_legs) {
          const auto& r = plan.legs[l].route;
          int len = static_cast<int>(r.size()) - 1;
          if (target.index_of(r.back()) != v || (tau >= 0 && tau != len)) ok = false;
          tau = len;
        }
        if (!ok || t > tau) continue;
        t = tau;
      }
      best = std::min(best, t);
    }
    if (best >= kInf) return -1;
    worst = std::max(worst, best);
  }
  return worst;
}

// ------------------------------------------------------------------ automaton

CabAutomaton::CabAutomaton(SignalPlan plan, std::shared_ptr<const CellSet> target)
    : plan_(std::move(plan)), target_(std::move(target)) {
  Cell g = target_->general();
  Node root;
  root.bc = target_->bc(target_->general_index());
  nodes_.push_back(root);
  leg_end_.resize(plan_.legs.size());
  std::vector<std::vector<int>> leg_nodes(plan_.legs.size());
  for (std::size_t l = 0; l < plan_.legs.size(); ++l) {
    const auto& route = plan_.legs[l].route;
    if (route.empty() || route[0] != g) throw Error(ErrorKind::PreconditionViolated, "leg must start at the general");
    int cur = 0;
    leg_nodes[l].push_back(0);
    for (std::size_t k = 1; k < route.size(); ++k) {
      int dir = direction_between(route[k - 1], route[k]);
      if (dir < 0) throw Error(ErrorKind::PreconditionViolated, "leg route is not a grid path");
      BoundaryCondition bc = boundary_condition(*target_, route[k]);
      int next = -1;
      for (int c : nodes_[cur].children)
        if (nodes_[c].dir == dir && nodes_[c].bc == bc) next = c;
      if (next < 0) {
        Node nd;
        nd.parent = cur;
        nd.dir = dir;
        nd.depth = nodes_[cur].depth + 1;
        nd.offset = route[k] - g;
        nd.bc = bc;
        next = static_cast<int>(nodes_.size());
        nodes_.push_back(nd);
        nodes_[cur].children.push_back(next);
      }
      cur = next;
      leg_nodes[l].push_back(cur);
    }
    leg_end_[l] = cur;
  }
  if (plan_.messages.size() > 31) throw Error(ErrorKind::Unsupported, "too many messages in plan");
  for (std::size_t m = 0; m < plan_.messages.size(); ++m) {
    const auto& b = plan_.messages[m];
    int nd = leg_nodes.at(b.leg).at(b.step);
    if (nd == 0)
      root_msgs_ |= 1u << m;
    else
      nodes_[nd].births.push_back(static_cast<int>(m));
  }
  for (const auto& term : plan_.terms)
    for (int l : term.colocated_legs) nodes_[leg_end_[l]].flag_leg = l;
  for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
    Node& nd = nodes_[i];
    nd.live = !nd.births.empty() || nd.flag_leg >= 0;
    for (int c : nd.children) nd.live = nd.live || nodes_[c].live;
  }
  for (auto& nd : nodes_) {
    std::vector<int> kept;
    for (int c : nd.children)
      if (nodes_[c].live) kept.push_back(c);
    nd.children = kept;
  }

  // Declared state set: per time below the deadline, token subsets of one offset class
  // times message subsets born by then; plus Q and the firing state.
  std::size_t total = 2;
  int T0 = plan_.deadline;
  for (int t = 0; t < T0; ++t) {
    std::map<std::pair<int, int>, int> groups;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& nd = nodes_[i];
      bool kept = i == 0 || !nd.children.empty() || nd.flag_leg >= 0;
      if (nd.depth == t && nd.live && kept) ++groups[{nd.offset.x, nd.offset.y}];
    }
    std::size_t token_sets = 1;
    for (auto& [_, k] : groups) token_sets += (std::size_t{1} << k) - 1;
    int born = 0;
    for (std::size_t m = 0; m < plan_.messages.size(); ++m)
      if (plan_.birth_time(static_cast<int>(m)) <= t) ++born;
    total += token_sets * (std::size_t{1} << born) - 1;
  }
  declared_ = total;

  contents_.push_back(Content{});  // Q
  contents_.push_back(Content{});  // F (placeholder)
}

namespace {
std::string content_key(int t, const std::vector<int>& tokens, std::uint32_t msgs) {
  std::string k = std::to_string(t) + ":" + std::to_string(msgs) + ":";
  for (int x : tokens) k += std::to_string(x) + ",";
  return k;
}
}  // namespace

State CabAutomaton::intern(const Content& c) const {
  if (c.tokens.empty() && c.msgs == 0) return kQ;
  std::string k = content_key(c.t, c.tokens, c.msgs);
  std::lock_guard<std::mutex> lk(mu_);
  auto it = ids_.find(k);
  if (it != ids_.end()) return it->second;
  State id = static_cast<State>(contents_.size());
  contents_.push_back(c);
  ids_[k] = id;
  return id;
}

CabAutomaton::Content CabAutomaton::content(State s) const {
  std::lock_guard<std::mutex> lk(mu_);
  return contents_.at(s);
}

std::size_t CabAutomaton::materialized_states() const {
  std::lock_guard<std::mutex> lk(mu_);
  return contents_.size();
}

bool CabAutomaton::term_holds(const FiringTerm& term, const Content& c) const {
  for (int m : term.messages)
    if (!(c.msgs >> m & 1)) return false;
  for (int l : term.colocated_legs)
    if (!std::binary_search(c.tokens.begin(), c.tokens.end(), leg_end_[l])) return false;
  return true;
}

State CabAutomaton::general_state(BoundaryCondition b) const {
  Content c;
  c.t = 0;
  c.tokens = {0};
  if (plan_.model == Model::BoundarySensitive && b == nodes_[0].bc) c.msgs = root_msgs_;
  if (plan_.deadline == 0) {
    for (const auto& term : plan_.terms)
      if (term_holds(term, c)) return kFire;
    return kQ;
  }
  return intern(c);
}

State CabAutomaton::delta(State self, const Inputs& in) const {
  if (self == kFire) return kFire;
  DeltaKey key{{self, in[0], in[1], in[2], in[3]}};
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  State result = kQ;
  int t = -1;
  bool consistent = true;
  std::vector<Content> cs;
  auto take = [&](State s) {
    if (s == kBoundary || s == kQ || s == kFire) return;
    Content c = content(s);
    if (t >= 0 && c.t != t) consistent = false;
    t = c.t;
  };
  take(self);
  for (State s : in) take(s);
  if (t >= 0 && consistent && t + 1 <= plan_.deadline) {
    Content next;
    next.t = t + 1;
    BoundaryCondition own = 0;
    for (int d = 0; d < 4; ++d)
      if (in[d] != kBoundary) own |= static_cast<BoundaryCondition>(1u << d);
    if (self != kQ) {
      Content sc = content(self);
      next.msgs |= sc.msgs;
      if (sc.t == 0 && !sc.tokens.empty() && sc.tokens[0] == 0 && plan_.model == Model::Traditional &&
          own == nodes_[0].bc)
        next.msgs |= root_msgs_;  // the general reads its boundary condition at time 1
    }
    for (int d = 0; d < 4; ++d) {
      State s = in[d];
      if (s == kBoundary || s == kQ || s == kFire) continue;
      Content nc = content(s);
      next.msgs |= nc.msgs;
      for (int tok : nc.tokens)
        for (int c : nodes_[tok].children) {
          const Node& nd = nodes_[c];
          if (nd.dir != opposite(d) || nd.bc != own) continue;
          for (int m : nd.births) next.msgs |= 1u << m;
          if (!nd.children.empty() || nd.flag_leg >= 0) next.tokens.push_back(c);
        }
    }
    std::sort(next.tokens.begin(), next.tokens.end());
    next.tokens.erase(std::unique(next.tokens.begin(), next.tokens.end()), next.tokens.end());
    if (next.t == plan_.deadline) {
      result = kQ;
      for (const auto& term : plan_.terms)
        if (term_holds(term, next)) result = kFire;
    } else {
      result = intern(next);
    }
  }
  std::lock_guard<std::mutex> lk(mu_);
  memo_[key] = result;
  return result;
}

std::vector<int> CabAutomaton::satisfied_terms(State self, const Inputs& in) const {
  // Recompute the deadline content without collapsing it to F/Q.
  std::vector<int> out;
  if (self == kFire) return out;
  Content next;
  int t = -1;
  auto take = [&](State s) {
    if (s == kBoundary || s == kQ || s == kFire) return;
    t = content(s).t;
  };
  take(self);
  for (State s : in) take(s);
  if (t < 0) return out;
  next.t = t + 1;
  BoundaryCondition own = 0;
  for (int d = 0; d < 4; ++d)
    if (in[d] != kBoundary) own |= static_cast<BoundaryCondition>(1u << d);
  if (self != kQ) {
    Content sc = content(self);
    next.msgs |= sc.msgs;
    if (sc.t == 0 && !sc.tokens.empty() && sc.tokens[0] == 0 && plan_.model == Model::Traditional &&
        own == nodes_[0].bc)
      next.msgs |= root_msgs_;
  }
  for (int d = 0; d < 4; ++d) {
    State s = in[d];
    if (s == kBoundary || s == kQ || s == kFire) continue;
    Content nc = content(s);
    next.msgs |= nc.msgs;
    for (int tok : nc.tokens)
      for (int c : nodes_[tok].children) {
        const Node& nd = nodes_[c];
        if (nd.dir != opposite(d) || nd.bc != own) continue;
        for (int m : nd.births) next.msgs |= 1u << m;
        if (!nd.children.empty() || nd.flag_leg >= 0) next.tokens.push_back(c);
      }
  }
  std::sort(next.tokens.begin(), next.tokens.end());
  for (std::size_t i = 0; i < plan_.terms.size(); ++i)
    if (term_holds(plan_.terms[i], next)) out.push_back(static_cast<int>(i));
  return out;
}

std::string CabAutomaton::state_name(State s) const {
  if (s == kBoundary) return "#";
  if (s == kQ) return "Q";
  if (s == kFire) return "F";
  Content c = content(s);
  std::ostringstream os;
  os << "t" << c.t;
  if (!c.tokens.empty()) {
    os << "[";
    for (std::size_t i = 0; i < c.tokens.size(); ++i) os << (i ? "," : "") << "n" << c.tokens[i];
    os << "]";
  }
  if (c.msgs) {
    os << "{";
    bool first = true;
    for (std::size_t m = 0; m < plan_.messages.size(); ++m)
      if (c.msgs >> m & 1) {
        os << (first ? "" : ",") << plan_.messages[m].label;
        first = false;
      }
    os << "}";
  }
  return os.str();
}

}  // namespace fssp

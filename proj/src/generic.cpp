#include <map>
#include <mutex>
#include <unordered_map>

#include "fssp/solutions.hpp"

namespace fssp {

namespace {

// prev = toward p_0 (west or south), next = away from it (east or north)
inline State prev_of(const Inputs& in) { return in[West] != kBoundary ? in[West] : in[South]; }
inline State next_of(const Inputs& in) { return in[East] != kBoundary ? in[East] : in[North]; }

class BentLine : public Automaton {
 public:
  explicit BentLine(std::shared_ptr<const LineSolution> l) : line_(std::move(l)) {}
  Model model() const override { return Model::Traditional; }
  State general_state(BoundaryCondition) const override { return line_->general(); }
  bool is_firing(State s) const override { return line_->is_firing(s); }
  State delta(State self, const Inputs& in) const override {
    return line_->line_delta(self, prev_of(in), next_of(in));
  }
  std::size_t num_states() const override { return line_->num_states(); }
  std::size_t num_firing_states() const override { return 1; }
  std::string state_name(State s) const override { return line_->state_name(s); }

 private:
  std::shared_ptr<const LineSolution> line_;
};

// General anywhere on an L-path: a seek signal walks to p_0, which then starts the line.
class SeekLine : public Automaton {
 public:
  explicit SeekLine(std::shared_ptr<const LineSolution> l)
      : line_(std::move(l)), gstar_(static_cast<State>(line_->num_states())), seek_(gstar_ + 1) {}
  Model model() const override { return Model::Traditional; }
  State general_state(BoundaryCondition) const override { return gstar_; }
  bool is_firing(State s) const override { return s < gstar_ && line_->is_firing(s); }
  State delta(State self, const Inputs& in) const override {
    if (self == gstar_ || self == seek_) return prev_of(in) == kBoundary ? line_->general() : kQ;
    State nx = next_of(in);
    if (self == kQ && (nx == gstar_ || nx == seek_)) return seek_;
    auto strip = [&](State s) { return s == gstar_ || s == seek_ ? kQ : s; };
    return line_->line_delta(self, strip(prev_of(in)), strip(nx));
  }
  std::size_t num_states() const override { return line_->num_states() + 2; }
  std::size_t num_firing_states() const override { return 1; }
  std::string state_name(State s) const override {
    if (s == gstar_) return "G*";
    if (s == seek_) return "Seek";
    return line_->state_name(s);
  }

 private:
  std::shared_ptr<const LineSolution> line_;
  State gstar_, seek_;
};

// A wall cut open at the general and run as a line in the direction first found in E,N,W,S order.
class RingLine : public Automaton {
 public:
  static constexpr State kGen = 1, kFire = 2;
  static constexpr int kNone = 4;

  explicit RingLine(std::shared_ptr<const LineSolution> l) : line_(std::move(l)) {
    cells_.push_back({kQ, kNone, kNone, false});
    cells_.push_back({kQ, kNone, kNone, false});
    cells_.push_back({kQ, kNone, kNone, false});
  }
  Model model() const override { return Model::Traditional; }
  State general_state(BoundaryCondition) const override { return kGen; }
  bool is_firing(State s) const override { return s == kFire; }
  std::size_t num_states() const override { return 3 + line_->num_states() * 5 * 5 * 2; }
  std::size_t num_firing_states() const override { return 1; }
  std::string state_name(State s) const override {
    if (s == kBoundary) return "#";
    if (s == kQ) return "Q";
    if (s == kGen) return "G*";
    if (s == kFire) return "F";
    C c = get(s);
    static const char* kD = "ENWS-";
    return line_->state_name(c.ls) + "/" + kD[c.prev] + kD[c.next] + (c.root ? "r" : "");
  }

  State delta(State self, const Inputs& in) const override {
    if (self == kFire) return kFire;
    if (self == kGen) {
      int nx = kNone;
      for (int d = 0; d < 4 && nx == kNone; ++d)
        if (in[d] != kBoundary) nx = d;
      if (nx == kNone) return kFire;  // a lone cell
      return intern({line_->general(), kNone, nx, true});
    }
    DeltaKey key{{self, in[0], in[1], in[2], in[3]}};
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    State r = compute(self, in);
    std::lock_guard<std::mutex> lk(mu_);
    memo_[key] = r;
    return r;
  }

 private:
  struct C {
    State ls;
    int prev, next;
    bool root;
  };

  State ls_of(State s) const { return s == kQ || s == kGen || s == kFire ? kQ : get(s).ls; }

  // Right-hand input: the root closes the ring unless it points back.
  State right_input(const Inputs& in, int next) const {
    if (next == kNone) return kBoundary;
    State s = in[next];
    if (s == kBoundary) return kBoundary;
    if (s != kQ && s != kGen && s != kFire) {
      C c = get(s);
      if (c.root && c.next != opposite(next)) return kBoundary;
    }
    return ls_of(s);
  }

  State finish(State ls, int prev, int next, bool root) const {
    if (line_->is_firing(ls)) return kFire;
    return intern({ls, prev, next, root});
  }

  State compute(State self, const Inputs& in) const {
    if (self != kQ) {
      C c = get(self);
      State left = c.prev == kNone ? kBoundary : ls_of(in[c.prev]);
      return finish(line_->line_delta(c.ls, left, right_input(in, c.next)), c.prev, c.next, c.root);
    }
    for (int d = 0; d < 4; ++d) {
      State s = in[d];
      if (s == kBoundary || s == kQ || s == kGen || s == kFire) continue;
      C c = get(s);
      if (c.next != opposite(d)) continue;
      int nx = kNone;
      for (int e = 0; e < 4; ++e)
        if (e != d && in[e] != kBoundary) nx = e;
      State ls = line_->line_delta(kQ, c.ls, right_input(in, nx));
      if (ls == kQ) return kQ;
      return finish(ls, d, nx, false);
    }
    return kQ;
  }

  C get(State s) const {
    std::lock_guard<std::mutex> lk(mu_);
    return cells_.at(s);
  }
  State intern(const C& c) const {
    long long k = ((static_cast<long long>(c.ls) * 5 + c.prev) * 5 + c.next) * 2 + c.root;
    std::lock_guard<std::mutex> lk(mu_);
    auto it = ids_.find(k);
    if (it != ids_.end()) return it->second;
    State id = static_cast<State>(cells_.size());
    cells_.push_back(c);
    ids_[k] = id;
    return id;
  }

  std::shared_ptr<const LineSolution> line_;
  mutable std::mutex mu_;
  mutable std::vector<C> cells_;
  mutable std::unordered_map<long long, State> ids_;
  mutable std::unordered_map<DeltaKey, State, DeltaKeyHash> memo_;
};

// Minimal-time automaton for EX2D: a diagonal token reaches (2i,2i) at 4i and starts a row
// line and a column line that both fire at 2w - 1; one more step spreads the firing.
class Ex2d : public Automaton {
 public:
  enum Tok { kNoTok, kD, kE1, kE2, kE2e, kN1, kFin };
  enum Orient { kNoLine, kRow, kCol };
  static constexpr State kFire = 1;

  explicit Ex2d(std::shared_ptr<const LineSolution> l) : line_(std::move(l)) {
    cells_.push_back({kNoTok, kNoLine, kQ});
    cells_.push_back({kNoTok, kNoLine, kQ});
  }
  Model model() const override { return Model::Traditional; }
  State general_state(BoundaryCondition) const override { return intern({kD, kNoLine, kQ}); }
  bool is_firing(State s) const override { return s == kFire; }
  std::size_t num_states() const override { return 2 + 7 * 3 * line_->num_states(); }
  std::size_t num_firing_states() const override { return 1; }
  std::string state_name(State s) const override {
    if (s == kBoundary) return "#";
    if (s == kQ) return "Q";
    if (s == kFire) return "F";
    static const char* kT[] = {"", "D", "E1", "E2", "E2e", "N1", "FIN"};
    static const char* kO[] = {"", "row:", "col:"};
    C c = get(s);
    std::string r = kT[c.tok];
    if (c.orient != kNoLine) r += (r.empty() ? "" : "+") + std::string(kO[c.orient]) + line_->state_name(c.ls);
    return r;
  }

  State delta(State self, const Inputs& in) const override {
    if (self == kFire) return kFire;
    DeltaKey key{{self, in[0], in[1], in[2], in[3]}};
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    State r = compute(self, in);
    std::lock_guard<std::mutex> lk(mu_);
    memo_[key] = r;
    return r;
  }

 private:
  struct C {
    int tok;
    int orient;
    State ls;
  };

  C at(State s) const { return s == kBoundary || s == kQ || s == kFire ? C{kNoTok, kNoLine, kQ} : get(s); }
  bool line_fired(State s) const {
    if (s == kBoundary || s == kQ || s == kFire) return false;
    C c = get(s);
    return c.orient != kNoLine && line_->is_firing(c.ls);
  }
  State side(State s, int orient, bool right) const {
    if (s == kBoundary) return kBoundary;
    if (s == kQ) return right ? kQ : kBoundary;
    C c = at(s);
    return c.orient == orient ? c.ls : kBoundary;
  }

  State compute(State self, const Inputs& in) const {
    C me = at(self);
    if (line_fired(self)) return kFire;
    for (int d = 0; d < 4; ++d)
      if (line_fired(in[d])) return kFire;
    if (at(in[South]).tok == kFin) return kFire;

    C nx{kNoTok, me.orient, me.ls};
    C w = at(in[West]), s = at(in[South]);
    if (w.tok == kD) nx.tok = kE1;
    else if (w.tok == kE1) nx.tok = in[East] == kBoundary ? kE2e : kE2;
    else if (s.tok == kE2) nx.tok = kN1;
    else if (s.tok == kE2e) nx.tok = kFin;
    else if (s.tok == kN1) nx.tok = kD;

    if (me.orient != kNoLine) {
      bool row = me.orient == kRow;
      State left = side(in[row ? West : South], me.orient, false);
      State right = side(in[row ? East : North], me.orient, true);
      nx.ls = line_->line_delta(me.ls, left, right);
    } else if (w.tok == kD) {
      nx.orient = kRow;
      nx.ls = line_->general();
    } else if (s.tok == kD) {
      nx.orient = kCol;
      nx.ls = line_->general();
    } else if (w.orient == kRow || s.orient == kCol) {
      int o = w.orient == kRow ? kRow : kCol;
      bool row = o == kRow;
      State ls = line_->line_delta(kQ, side(in[row ? West : South], o, false), side(in[row ? East : North], o, true));
      if (ls != kQ) {
        nx.orient = o;
        nx.ls = ls;
      }
    }
    if (nx.tok == kNoTok && nx.orient == kNoLine) return kQ;
    return intern(nx);
  }

  C get(State s) const {
    std::lock_guard<std::mutex> lk(mu_);
    return cells_.at(s);
  }
  State intern(const C& c) const {
    long long k = (static_cast<long long>(c.ls) * 3 + c.orient) * 7 + c.tok;
    std::lock_guard<std::mutex> lk(mu_);
    auto it = ids_.find(k);
    if (it != ids_.end()) return it->second;
    State id = static_cast<State>(cells_.size());
    cells_.push_back(c);
    ids_[k] = id;
    return id;
  }

  std::shared_ptr<const LineSolution> line_;
  mutable std::mutex mu_;
  mutable std::vector<C> cells_;
  mutable std::unordered_map<long long, State> ids_;
  mutable std::unordered_map<DeltaKey, State, DeltaKeyHash> memo_;
};

}  // namespace

AutomatonPtr bend_line(std::shared_ptr<const LineSolution> line) { return std::make_shared<BentLine>(std::move(line)); }

AutomatonPtr ex2d_minimal() {
  static std::once_flag once;
  static AutomatonPtr inst;
  std::call_once(once, [] { inst = std::make_shared<Ex2d>(minimal_line()); });
  return inst;
}

AutomatonPtr generic_solution(const VariationSpec& spec) {
  static std::mutex mu;
  static std::map<int, AutomatonPtr> cache;
  int kind;
  switch (spec.family) {
    case Family::LSP:
    case Family::LSP_ab:
    case Family::EX1: kind = 0; break;
    case Family::gLSP:
    case Family::gLSP_ab:
    case Family::LSP_C_abcd: kind = 1; break;
    case Family::RECT_WALL:
    case Family::gRECT_WALL:
    case Family::RECT_WALL_ab:
    case Family::gRECT_WALL_ab:
    case Family::SQ_WALL:
    case Family::gSQ_WALL: kind = 2; break;
    case Family::EX2D: return ex2d_minimal();
    default:
      throw Error(ErrorKind::Unsupported, std::string("no generic solution for ") + family_name(spec.family));
  }
  std::lock_guard<std::mutex> lk(mu);
  auto& slot = cache[kind];
  if (!slot) {
    auto line = minimal_line();
    if (kind == 0) slot = std::make_shared<BentLine>(line);
    else if (kind == 1) slot = std::make_shared<SeekLine>(line);
    else slot = std::make_shared<RingLine>(line);
  }
  return slot;
}

}  // namespace fssp

#include "fssp/line.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace fssp {

namespace {

// Structured cell state.  Index 0 of each pair refers to the eastward family (d = +1),
// index 1 to the westward one.  Signals:
//   wave  - speed-1 signal launched by a general, parity of distance travelled
//   ping  - reflection of a wave at odd distance, travelling back toward its origin
//   slow  - speed-1/3 signal; a ping pushes it forward by one cell
//   gen   - this cell is a general facing that direction (with its eps bit)
// A wave meeting a slow signal marks the midpoint(s) of the current segment and
// spawns new generals; generals adjacent to generals start a short countdown.
struct LS {
  bool F = false, G0 = false, isgen = false;
  std::int8_t gen[2] = {-1, -1};
  std::int8_t newgen[2] = {-1, -1};
  std::int8_t wave[2] = {-1, -1};  // eps * 2 + parity
  std::int8_t slow[2] = {-1, -1};
  bool ping[2] = {false, false};
  std::int8_t cd = -1;
  std::int8_t fresh[2] = {-1, -1};

  std::uint64_t pack() const {
    std::uint64_t k = 0;
    auto put = [&](int v, int bits) { k = (k << bits) | static_cast<std::uint64_t>(v + 1); };
    put(F, 2); put(G0, 2); put(isgen, 2);
    for (int i = 0; i < 2; ++i) { put(gen[i], 3); put(newgen[i], 3); put(wave[i], 3); put(slow[i], 3); put(ping[i], 2); put(fresh[i], 3); }
    put(cd, 4);
    return k;
  }
  bool quiet() const { return pack() == LS{}.pack(); }
};

struct Clash {};

inline int eps(std::int8_t v) { return v >> 1; }
inline int par(std::int8_t v) { return v & 1; }
inline std::int8_t sig(int e, int p) { return static_cast<std::int8_t>(e * 2 + p); }

LS fired() {
  LS f;
  f.F = true;
  return f;
}

// nb[0] = east neighbour, nb[1] = west neighbour (nullptr at a wall).
LS rule(const LS& s, const LS* nb[2]) {
  if (s.F) return s;
  if (s.G0) {
    if (!nb[0] && !nb[1]) return fired();
    LS n;
    n.isgen = true;
    for (int k = 0; k < 2; ++k)
      if (nb[k]) n.gen[k] = 0;
    return n;
  }
  LS n;
  n.isgen = s.isgen;
  n.gen[0] = s.gen[0];
  n.gen[1] = s.gen[1];

  int cd = -1;
  auto offer = [&](int c) {
    if (cd >= 0 && cd != c) throw Clash{};
    cd = c;
  };
  if (s.cd >= 0) offer(s.cd - 1);
  for (int k = 0; k < 2; ++k)
    if (nb[k] && nb[k]->fresh[1 - k] >= 0) offer(nb[k]->fresh[1 - k] - 1);
  if (cd >= 0) {
    if (cd <= 0) return fired();
    n.cd = static_cast<std::int8_t>(cd);
  }

  struct NewGen { int face, e, x; };
  std::vector<NewGen> newgens;

  for (int k = 0; k < 2; ++k) {
    const LS* back = nb[1 - k];
    const LS* fwd = nb[k];
    std::int8_t w = -1;
    if (back) {
      if (back->wave[k] >= 0) w = sig(eps(back->wave[k]), 1 - par(back->wave[k]));
      if (back->G0) w = sig(0, 1);
      if (back->newgen[k] >= 0) w = sig(back->newgen[k], 1);
    }
    bool pg = false;
    if (fwd) {
      if (fwd->wave[k] >= 0 && par(fwd->wave[k]) == 1) pg = true;
      if (fwd->ping[k]) {
        bool absorbed = (fwd->slow[k] >= 0 && par(fwd->slow[k]) == 0) || fwd->gen[k] >= 0;
        if (!absorbed) pg = true;
      }
    }
    std::int8_t sl = -1;
    if (s.slow[k] >= 0 && !s.ping[k]) sl = s.slow[k];
    if (back && back->ping[k]) {
      if (back->slow[k] >= 0) {
        if (sl >= 0) throw Clash{};
        sl = sig(eps(back->slow[k]), 1 - par(back->slow[k]));
      } else if (back->gen[k] >= 0) {
        if (sl >= 0) throw Clash{};
        sl = sig(back->gen[k], 1);
      }
    }
    n.wave[k] = w;
    n.slow[k] = sl;
    n.ping[k] = pg;
  }

  for (int k = 0; k < 2; ++k) {
    std::int8_t sl = n.slow[k], w = n.wave[1 - k];
    if (sl >= 0 && w >= 0) {
      int es = eps(sl), ps = par(sl), ew = eps(w), pw = par(w);
      bool odd = (ps + pw) % 2;
      n.slow[k] = -1;
      n.wave[1 - k] = -1;
      n.ping[k] = false;
      newgens.push_back({1 - k, es ^ ps, es});
      if (!odd || es == 1) newgens.push_back({k, ew ^ pw, ew});
    }
    const LS* back = nb[1 - k];
    w = n.wave[1 - k];
    if (w >= 0 && back && back->slow[k] >= 0 && !back->ping[k]) {
      int es = eps(back->slow[k]), ps = par(back->slow[k]), ew = eps(w), pw = par(w);
      bool odd = (ps + pw + 1) % 2;
      if (odd && es == 0) newgens.push_back({k, ew ^ pw, ew});
    }
  }
  for (int k = 0; k < 2; ++k) {
    std::int8_t w = n.wave[k];
    if (w >= 0 && !nb[k]) {
      n.wave[k] = -1;
      newgens.push_back({1 - k, eps(w) ^ par(w), eps(w)});
    }
  }
  for (const auto& g : newgens) {
    n.isgen = true;
    const LS* x = nb[g.face];
    if (x && x->isgen) {
      int r = 1 + g.x;
      n.fresh[g.face] = static_cast<std::int8_t>(r);
      if (n.cd >= 0 && n.cd != r) throw Clash{};
      n.cd = static_cast<std::int8_t>(r);
    } else {
      n.gen[g.face] = static_cast<std::int8_t>(g.e);
      n.newgen[g.face] = static_cast<std::int8_t>(g.e);
    }
  }
  return n;
}

std::string describe(const LS& s) {
  if (s.F) return "F";
  if (s.G0) return "G";
  if (s.quiet()) return "Q";
  std::ostringstream os;
  const char* dn[2] = {">", "<"};
  if (s.isgen) os << "g";
  for (int k = 0; k < 2; ++k) {
    if (s.gen[k] >= 0) os << "G" << dn[k] << int(s.gen[k]);
    if (s.newgen[k] >= 0) os << "N" << dn[k] << int(s.newgen[k]);
    if (s.wave[k] >= 0) os << "W" << dn[k] << eps(s.wave[k]) << par(s.wave[k]);
    if (s.slow[k] >= 0) os << "S" << dn[k] << eps(s.slow[k]) << par(s.slow[k]);
    if (s.ping[k]) os << "P" << dn[k];
    if (s.fresh[k] >= 0) os << "R" << dn[k] << int(s.fresh[k]);
  }
  if (s.cd >= 0) os << "C" << int(s.cd);
  return os.str();
}

}  // namespace

LineSolution::LineSolution(int learn_n) {
  std::map<std::uint64_t, State> ids;
  std::vector<LS> states;
  auto intern = [&](const LS& s) -> State {
    auto k = s.pack();
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    State id = static_cast<State>(states.size());
    ids[k] = id;
    states.push_back(s);
    names_.push_back(describe(s));
    return id;
  };
  intern(LS{});  // Q = 0
  LS g;
  g.G0 = true;
  g.isgen = true;
  general_ = intern(g);
  fire_ = intern(fired());

  std::map<std::uint32_t, State> table;
  for (int n = 1; n <= learn_n; ++n) {
    std::vector<State> row(n, kQ);
    row[0] = general_;
    int horizon = n == 1 ? 1 : 2 * n - 2;
    for (int t = 0; t < horizon; ++t) {
      std::vector<State> next(n);
      for (int i = 0; i < n; ++i) {
        State l = i > 0 ? row[i - 1] : kBoundary, r = i + 1 < n ? row[i + 1] : kBoundary;
        const LS* nb[2] = {r == kBoundary ? nullptr : &states[r], l == kBoundary ? nullptr : &states[l]};
        LS out;
        try {
          out = rule(states[row[i]], nb);
        } catch (const Clash&) {
          throw Error(ErrorKind::PreconditionViolated, "line construction clash at n=" + std::to_string(n));
        }
        State o = out.quiet() ? kQ : intern(out);
        next[i] = o;
        if (o != kQ) table[key(row[i], l, r)] = o;
      }
      row.swap(next);
    }
  }
  keys_.reserve(table.size());
  for (auto& [k, v] : table) {
    keys_.push_back(k);
    table_.push_back(v);
  }
}

std::string LineSolution::state_name(State s) const {
  if (s == kBoundary) return "#";
  if (s < 0 || s >= static_cast<State>(names_.size())) return "?";
  return names_[s];
}

State LineSolution::line_delta(State self, State left, State right) const {
  if (self == fire_) return fire_;
  auto k = key(self, left, right);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || *it != k) return kQ;
  return table_[it - keys_.begin()];
}

std::shared_ptr<TableAutomaton> LineSolution::to_table() const {
  auto t = std::make_shared<TableAutomaton>(Model::Traditional, names_);
  t->set_general_all(general_);
  t->set_firing(fire_);
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    std::uint32_t k = keys_[i];
    State s = static_cast<State>(k >> 20) - 1, l = static_cast<State>((k >> 10) & 1023) - 1,
          r = static_cast<State>(k & 1023) - 1;
    t->set(s, {r, kBoundary, l, kBoundary}, table_[i]);
  }
  return t;
}

std::shared_ptr<const LineSolution> minimal_line() {
  static std::once_flag once;
  static std::shared_ptr<const LineSolution> inst;
  std::call_once(once, [] { inst = std::make_shared<LineSolution>(); });
  return inst;
}

}  // namespace fssp

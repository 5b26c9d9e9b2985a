// Acceptance driver: one PASS/FAIL line per numbered criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fssp/covering.hpp"
#include "fssp/engine.hpp"
#include "fssp/lower_bound.hpp"
#include "fssp/mft.hpp"
#include "fssp/refuter.hpp"
#include "support.hpp"

using namespace fssp;
using namespace fssp::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

bool is_skip(const Error& e) { return e.kind() == ErrorKind::Unsupported || e.kind() == ErrorKind::UnknownMft; }

// 1: the 14-state table
void c1(Outcome& o) {
  PartialSolution ps = explicit_lsp32();
  if (ps.automaton->num_states() != 14) o.fail("state count " + std::to_string(ps.automaton->num_states()));
  FiringOutcome f = firing_time(make_lpath(6, 4, 0).set(), *ps.automaton);
  if (!f.fired_at(12)) o.fail("C_L(6,4): " + f.str());
  for (auto [w, h] : {std::pair{3, 2}, std::pair{9, 6}}) {
    Trace tr = simulate(make_lpath(w, h, 0).set(), *ps.automaton, 60);
    for (const Row& row : tr.rows)
      for (State s : row)
        if (ps.automaton->is_firing(s)) {
          o.fail("C_L(" + std::to_string(w) + "," + std::to_string(h) + ") entered the firing state");
          goto next;
        }
  next:;
  }
  o.detail << "C_L(6,4) " << f.str() << ", C_L(3,2) and C_L(9,6) silent for 60 steps";
}

// 2: generated partial solutions fire at the mft; off-target members never fire
void c2(Outcome& o) {
  long targets = 0, off = 0, skipped = 0;
  for (const SweepSpec& s : cab_sweep(4, 6))
    for (Model m : {Model::BoundarySensitive, Model::Traditional}) {
      auto members = enumerate_all(s.spec, s.scale);
      for (const Configuration& tg : members) {
        PartialSolution ps;
        int want = 0;
        try {
          want = mft(s.spec, tg, m).value;
          ps = generate_cab(s.spec, tg, m);
        } catch (const Error& e) {
          if (!is_skip(e)) o.fail(spec_string(s.spec) + " " + tg.name() + ": " + e.what());
          ++skipped;
          continue;
        }
        ++targets;
        FiringOutcome f = firing_time(tg.set(), *ps.automaton, std::max(default_horizon(tg.set()), want + 2));
        if (!f.fired_at(want))
          o.fail(spec_string(s.spec) + " " + tg.name() + " " + model_name(m) + ": " + f.str() + " vs mft " +
                 std::to_string(want));
        for (const Configuration& c : members) {
          if (c.set() == tg.set()) continue;
          ++off;
          FiringOutcome g = firing_time(c.set(), *ps.automaton);
          if (g.kind != FiringOutcome::Kind::NoFireWithinHorizon)
            o.fail("target " + tg.name() + " " + model_name(m) + " fired on " + c.name() + ": " + g.str());
        }
      }
    }
  o.detail << targets << " targets at mft, " << off << " off-target runs silent, " << skipped
           << " placements without a construction";
}

// 3: lower bounds at mft - 1
void c3(Outcome& o) {
  long checked = 0, searched = 0;
  for (const SweepSpec& s : cab_sweep(4, 6))
    for (Model m : {Model::BoundarySensitive, Model::Traditional})
      enumerate(s.spec, s.scale, [&](const Configuration& c) {
        LowerBoundResult r;
        try {
          r = verify_mft_lower(s.spec, c, m);
        } catch (const Error& e) {
          if (!is_skip(e)) o.fail(c.name() + ": " + e.what());
          return true;
        }
        ++checked;
        if (r.reason == "witness") ++searched;
        if (!r.ok) o.fail(spec_string(s.spec) + " " + c.name() + " " + model_name(m) + ": " + r.reason);
        else if (r.witness && !witness_holds(*r.witness)) o.fail(c.name() + ": witness does not re-verify");
        return true;
      });
  auto named = [&](const VariationSpec& spec, const Params& p, int t, const std::string& c2, int n1, int n2) {
    Configuration c = build(spec, p);
    auto w = find_witness(spec, c, t, default_search_scale(c), deadline_cells(spec, c, Model::BoundarySensitive));
    if (!w) return o.fail("no witness for " + c.name());
    if (w->c2.name() != c2 || w->c.node_index(w->v) != n1 || w->c2.node_index(w->v2) != n2 || !witness_holds(*w))
      o.fail("named witness for " + c.name() + " came out as " + w->c2.name());
    o.detail << "(" << c.name() << "," << t << ") -> " << w->c2.name() << " p" << n1 << "/p" << n2 << "; ";
  };
  Params a;
  a.w = 3, a.h = 1;
  named({Family::LSP}, a, 7, "C_L(3,5,0)", 0, 0);
  Params b;
  b.l = 2, b.i = 2;
  named({Family::gLSP_ab, 2, 3}, b, 9, "C_L(6,9,4)", 8, 10);
  o.detail << checked << " lower bounds (" << searched << " by witness search)";
}

// 4: model bridge
void c4(Outcome& o) {
  long pairs = 0, equal_cases = 0;
  auto ft = [](const VariationSpec& s, const Configuration& c, Model m) {
    PartialSolution ps = generate_cab(s, c, m);
    return firing_time(c.set(), *ps.automaton, default_horizon(c.set()) + 2);
  };
  for (const SweepSpec& s : cab_sweep(2, 4))
    enumerate(s.spec, s.scale, [&](const Configuration& c) {
      FiringOutcome bs, tr;
      try {
        bs = ft(s.spec, c, Model::BoundarySensitive);
        tr = ft(s.spec, c, Model::Traditional);
      } catch (const Error& e) {
        if (!is_skip(e)) o.fail(c.name() + ": " + e.what());
        return true;
      }
      ++pairs;
      if (!bs.fired() || !tr.fired() || tr.time < bs.time || tr.time > bs.time + 1)
        o.fail(spec_string(s.spec) + " " + c.name() + ": bs " + bs.str() + " tr " + tr.str());
      bool must_equal = (s.spec.family == Family::gRECT_WALL_ab) ||
                        (s.spec.family == Family::gLSP_ab &&
                         (c.params.i == 0 || c.params.i == c.params.w + c.params.h));  // yes-plan ends
      if (must_equal) {
        ++equal_cases;
        if (tr.time != bs.time) o.fail(c.name() + ": traditional construction is one step late");
      }
      return true;
    });
  VariationSpec lc{Family::LSP_C_abcd, 1, 1, 0, 0};
  Configuration single = build(lc, Params{});
  FiringOutcome b0 = ft(lc, single, Model::BoundarySensitive), t0 = ft(lc, single, Model::Traditional);
  if (!b0.fired_at(0) || !t0.fired_at(1)) o.fail("singleton: bs " + b0.str() + " tr " + t0.str());
  o.detail << pairs << " configurations with bs <= tr <= bs+1, " << equal_cases
           << " traditional constructions equal to bs, singleton (" << b0.time << "," << t0.time << ")";
}

// 5: equal available information gives equal states
void c5(Outcome& o) {
  long pairs = 0, mismatches = 0;
  unsigned seed = 1234;
  for (const Bundled& b : bundled_automata()) {
    VariationSpec home = b.home;
    int scale = family_shape(home.family) == Shape::Ex2 ? 4 : 5;
    auto pool = enumerate_all(home, scale);
    auto ps = sample_ai_equal_pairs(pool, 100, seed++);
    if (ps.size() < 100) o.fail(b.name + ": only " + std::to_string(ps.size()) + " pairs");
    for (const AiPair& p : ps) {
      ++pairs;
      Trace t1 = simulate(p.c1.set(), *b.automaton, p.t), t2 = simulate(p.c2.set(), *b.automaton, p.t);
      if (t1.at(p.c1.set().index_of(p.v1), p.t) != t2.at(p.c2.set().index_of(p.v2), p.t)) {
        ++mismatches;
        o.fail(b.name + ": " + p.c1.name() + " vs " + p.c2.name() + " at t=" + std::to_string(p.t));
      }
    }
  }
  o.detail << pairs << " ai-equal pairs over " << bundled_automata().size() << " automata, " << mismatches
           << " mismatches";
}

// Random q-state automaton; the table is drawn lazily from a hash of the key.
class RandomAutomaton : public Automaton {
 public:
  RandomAutomaton(int q, unsigned seed) : q_(q), seed_(seed) {}
  Model model() const override { return Model::Traditional; }
  State general_state(BoundaryCondition) const override { return 1 % q_; }
  bool is_firing(State) const override { return false; }
  State delta(State self, const Inputs& in) const override {
    std::uint64_t h = seed_ * 0x9E3779B97F4A7C15ull + 7;
    for (State s : {self, in[0], in[1], in[2], in[3]}) h = (h ^ static_cast<std::uint64_t>(s + 2)) * 0x100000001B3ull;
    h ^= h >> 31;
    return static_cast<State>(h % static_cast<std::uint64_t>(q_));
  }
  std::size_t num_states() const override { return static_cast<std::size_t>(q_); }
  std::size_t num_firing_states() const override { return 0; }
  std::string state_name(State s) const override { return "r" + std::to_string(s); }

 private:
  int q_;
  std::uint64_t seed_;
};

std::vector<Configuration> pump_fixtures() {
  std::vector<Configuration> out;
  auto add = [&](VariationSpec s, Params p) { out.push_back(build(s, p)); };
  Params p;
  p.l = 3;
  add({Family::LSP_ab, 1, 4}, p);
  add({Family::RECT_WALL_ab, 1, 3}, p);
  p.i = 12;
  add({Family::gLSP_ab, 3, 1}, p);
  Params q;
  q.l = 6;
  add({Family::LSP_ab, 1, 1}, q);
  Params e;
  e.w = 8;
  add({Family::EX2A}, e);
  add({Family::EX2C}, e);
  return out;
}

// 6: refuter
void c6(Outcome& o) {
  // (a) pigeonhole
  int certs = 0;
  for (int q = 2; q <= 4; ++q)
    for (int L = 1; L <= 2; ++L)
      for (int stride = 1; stride <= 2; ++stride)
        for (unsigned seed = 0; seed < 10; ++seed) {
          int span = static_cast<int>(std::pow(q, L)) * stride;
          int lo = L - 1, hi = lo + span;
          Configuration line = make_lpath(hi + 2, 0, 0);
          RandomAutomaton ra(q, seed * 31 + q);
          Trace tr = simulate(line.set(), ra, hi);
          std::vector<int> diag;
          for (int k = 0; k <= hi + 2; ++k) diag.push_back(line.set().index_of(line.nodes[k]));
          if (find_repetition(tr, diag, L, lo, hi, stride)) ++certs;
          else o.fail("(a) no certificate for q=" + std::to_string(q) + " window " + std::to_string(L));
        }
  o.detail << "(a) " << certs << "/120 certificates; ";
  // (b) chain soundness
  long chains = 0, links = 0, violations = 0;
  for (const Bundled& b : bundled_automata())
    for (const Configuration& c : pump_fixtures()) {
      auto s = pump_setup(c.spec, c);
      if (!s) {
        o.fail("(b) fixture " + c.name() + " has no diagonal");
        continue;
      }
      Trace tr = simulate(c.set(), *b.automaton, 2 * radius(c.set()) + 12);
      auto cert = find_repetition(tr, s->diag, s->window_len, s->t_lo, s->t_hi, s->stride);
      if (!cert) continue;
      try {
        ChainReport ch = pump_chain_check(c.set(), *b.automaton, tr, s->diag, *cert);
        ++chains;
        links += static_cast<long>(ch.links.size());
        if (ch.violation) {
          ++violations;
          o.fail("(b) " + b.name + " on " + c.name() + ": derived equality does not hold");
        }
      } catch (const Error& e) {
        o.fail("(b) " + b.name + " on " + c.name() + ": " + e.what());
      }
    }
  if (chains == 0) o.fail("(b) no chain was exercised");
  o.detail << "(b) " << chains << " chains, " << links << " derived equalities, " << violations << " violations; ";
  // (c) generic solutions are not minimal
  for (VariationSpec s : {VariationSpec{Family::LSP_ab, 1, 1}, VariationSpec{Family::LSP_ab, 1, 2},
                          VariationSpec{Family::RECT_WALL_ab, 1, 1}}) {
    RefutationReport r = refute_minimality(generic_solution(s), s, 10);
    if (r.verdict != Verdict::NotMinimal) o.fail("(c) " + spec_string(s) + ": " + verdict_name(r.verdict));
    o.detail << "(c) " << spec_string(s) << " " << verdict_name(r.verdict) << " at "
             << (r.config ? r.config->name() : "-") << "; ";
  }
  VariationSpec l11{Family::LSP_ab, 1, 1};
  Params two;
  two.l = 2;
  AutomatonPtr mixed = product(generic_solution(l11), generate_cab(l11, build(l11, two), Model::Traditional).automaton,
                               FireRule::Either);
  RefutationReport rm = refute_minimality(mixed, l11, 8);
  if (rm.verdict != Verdict::NotMinimal || !rm.config || rm.config->name() == "C_L(2,2,0)")
    o.fail("(c) generic x cab(C_L(2,2)) gave " + std::string(verdict_name(rm.verdict)));
  // (d) injected fault
  RefutationReport rf = refute_minimality(inject_early_fire(generic_solution(l11), 2), l11, 8);
  if (rf.verdict != Verdict::NotASolution) o.fail(std::string("(d) ") + verdict_name(rf.verdict));
  o.detail << "(d) " << verdict_name(rf.verdict);
}

// 7: minimal line and the bent line
void c7(Outcome& o) {
  auto line = minimal_line();
  AutomatonPtr bent = bend_line(line);
  for (int n = 1; n <= 64; ++n) {
    FiringOutcome f = firing_time(make_lpath(n - 1, 0, 0).set(), *line);
    if (!f.fired_at(n == 1 ? 1 : 2 * n - 2)) o.fail("line n=" + std::to_string(n) + ": " + f.str());
  }
  int bends = 0;
  for (int w = 1; w <= 31; ++w)
    for (int h = 1; w + h <= 32; ++h) {
      ++bends;
      FiringOutcome f = firing_time(make_lpath(w, h, 0).set(), *bent);
      if (!f.fired_at(2 * (w + h)))
        o.fail("C_L(" + std::to_string(w) + "," + std::to_string(h) + "): " + f.str());
    }
  o.detail << "lines n=1..64 and " << bends << " L-paths";
}

// 8: covering
void c8(Outcome& o) {
  auto pieces = cover_rect(5, 3, 10, 6);
  if (pieces.size() != 11) o.fail(std::to_string(pieces.size()) + " pieces");
  for (const CoverPiece& p : pieces) {
    if (p.activation != p.general_at.x + p.general_at.y) o.fail("activation is not i+j");
    if (p.firing_time != 16) o.fail("piece fires at " + std::to_string(p.firing_time));
  }
  if (!verify_cover(pieces, 10, 6)) o.fail("verify_cover false");
  ComposedRun run = cover_composed(pieces, 10, 6);
  if (!run.ok || run.latest != 16) o.fail("composed run latest " + std::to_string(run.latest));
  o.detail << pieces.size() << " pieces, composed latest firing " << run.latest;
}

// 9: EX2D minimal solution and EX1 partial solutions
void c9(Outcome& o) {
  AutomatonPtr ex = ex2d_minimal();
  for (int w = 2; w <= 10; w += 2) {
    Params p;
    p.w = w;
    FiringOutcome f = firing_time(build({Family::EX2D}, p).set(), *ex);
    if (!f.fired_at(2 * w)) o.fail("EX2D w=" + std::to_string(w) + ": " + f.str());
  }
  for (int r = 1; r <= 2; ++r)
    for (Model m : {Model::BoundarySensitive, Model::Traditional}) {
      Params p;
      p.l = r;
      Configuration c = build({Family::EX1}, p);
      PartialSolution ps = generate_cab({Family::EX1}, c, m);
      FiringOutcome f = firing_time(c.set(), *ps.automaton);
      int want = r == 1 ? 4 : 32;
      if (!f.fired_at(want)) o.fail(c.name() + " " + model_name(m) + ": " + f.str());
      o.detail << c.name() << " " << model_name(m) << " " << f.str() << "; ";
    }
  o.detail << "EX2D w=2..10 at 2w";
}

// 10: state-count bounds
void c10(Outcome& o) {
  VariationSpec l11{Family::LSP_ab, 1, 1};
  const int bound = 12;
  auto h_max = [&](const Automaton& a) {
    int h = 0;
    for (int l = 1; l <= bound; ++l) {
      Params p;
      p.l = l;
      if (!firing_time(build(l11, p).set(), a, 4 * l + 8).fired_at(2 * l)) break;
      h = l;
    }
    return h;
  };
  auto check = [&](const std::string& name, const Automaton& a) {
    int h = h_max(a);
    long double q = static_cast<long double>(a.num_states());
    if (q * q < h - 1) o.fail(name + ": q^2 < h_max - 1");
    return h;
  };
  int most = 0;
  for (const Bundled& b : bundled_automata()) most = std::max(most, check(b.name, *b.automaton));
  AutomatonPtr lookup = generic_solution(l11);
  for (int l = 1; l <= 6; ++l) {
    Params p;
    p.l = l;
    lookup = product(lookup, generate_cab(l11, build(l11, p), Model::Traditional).automaton, FireRule::Either);
  }
  int hl = check("lookup up to C_L(6,6)", *lookup);
  if (hl != 6) o.fail("lookup automaton verified h_max " + std::to_string(hl));
  AutomatonPtr line = bend_line(minimal_line());
  const std::size_t qline = line->num_states();
  for (int l = 1; l <= 8; ++l) {
    PartialSolution cc = explicit_corner_check(1, 1, l);
    AutomatonPtr pr = product(line, cc.automaton, FireRule::Either);
    Params p;
    p.l = l;
    Configuration c = build(l11, p);
    SssBounds sb = sss_bounds(l11, c);
    std::size_t expect = qline * static_cast<std::size_t>(2 * l + 2);
    if (cc.automaton->num_states() != static_cast<std::size_t>(2 * l + 2)) o.fail("corner check size");
    if (pr->num_states() != expect || static_cast<long>(pr->num_states()) > sb.proportional)
      o.fail("product size " + std::to_string(pr->num_states()));
    if (!firing_time(c.set(), *pr).fired_at(2 * l)) o.fail("product misses C_L(l,l) at 2l");
    if (qline > 6 && sb.note.find(std::to_string(qline)) == std::string::npos) o.fail("report omits the line size");
    Params other;
    other.l = l + 1;
    if (!firing_time(build(l11, other).set(), *pr).fired()) o.fail("product is not a solution");
  }
  Params p5;
  p5.l = 5;
  SssBounds ex = sss_bounds({Family::LSP_ab, 1, 2}, build({Family::LSP_ab, 1, 2}, p5));
  if (ex.lower != 3 || ex.upper != 102) o.fail("sss C_L(5,10)");
  o.detail << "largest verified h over bundled automata " << most << ", lookup h_max " << hl << ", line has " << qline
           << " states so the product bound reads " << qline << "(w+h+2)";
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<void(Outcome&)>>> all = {{1, c1}, {2, c2}, {3, c3}, {4, c4}, {5, c5},
                                                                     {6, c6}, {7, c7}, {8, c8}, {9, c9}, {10, c10}};
  int failed = 0;
  for (auto& [n, fn] : all) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  (%.1fs) %s\n", n, o.pass ? "PASS" : "FAIL", secs, o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}

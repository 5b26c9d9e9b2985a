#include "fssp/refuter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "fssp/line.hpp"
#include "fssp/mft.hpp"

namespace fssp {

std::optional<RepetitionCertificate> find_repetition(const Trace& tr, const std::vector<int>& diag, int window_len,
                                                     int t_lo, int t_hi, int stride) {
  if (window_len < 1 || stride < 1) throw Error(ErrorKind::PreconditionViolated, "window and stride must be positive");
  std::map<std::vector<State>, int> seen;
  for (int t = t_lo; t <= t_hi; t += stride) {
    if (t - window_len + 1 < 0 || t >= static_cast<int>(diag.size()) || t > tr.horizon())
      throw Error(ErrorKind::PreconditionViolated, "trace does not cover the scan range");
    std::vector<State> w;
    for (int k = t - window_len + 1; k <= t; ++k) w.push_back(tr.at(diag[k], t));
    auto [it, fresh] = seen.emplace(w, t);
    if (!fresh) return RepetitionCertificate{it->second, t, window_len, stride, w, w};
  }
  return std::nullopt;
}

ChainReport pump_chain_check(const CellSet& c, const Automaton& a, const Trace& tr, const std::vector<int>& diag,
                             const RepetitionCertificate& cert) {
  if (auto [cell, t] = quiescent_front_violation(c, tr); t >= 0)
    throw Error(ErrorKind::SideConditionFailure,
                "non-quiescent cell ahead of the front at t=" + std::to_string(t) + " cell " + std::to_string(cell));
  const int shift = cert.t1 - cert.t0;
  const int n = static_cast<int>(diag.size());
  const auto& dg = c.distances_from(c.general_index());
  std::vector<int> pos(c.size(), -1);  // cell -> diagonal index
  for (int k = 0; k < n; ++k) pos[diag[k]] = k;
  ChainReport rep;

  std::set<int> est;  // diagonal indices k with (diag[k], tau) == (diag[k+shift], tau+shift)
  for (int k = cert.t0 - cert.window_len + 1; k <= cert.t0; ++k) est.insert(k);
  int tau = cert.t0;
  auto front_q = [&](int cell, int t) { return dg[cell] > t; };
  auto pair_equal = [&](int x, int y, int t) {
    if (x < 0 && y < 0) return true;
    if (x < 0 || y < 0) return false;
    if (front_q(x, t) && front_q(y, t + shift)) return true;
    return pos[x] >= 0 && pos[y] == pos[x] + shift && est.count(pos[x]);
  };
  auto record = [&](int k, int t) {
    ChainLink l{diag[k], t, diag[k + shift], t + shift};
    rep.links.push_back(l);
    rep.terminal = l;
    if (!rep.violation && tr.at(l.cell0, l.time0) != tr.at(l.cell1, l.time1)) rep.violation = l;
    if (!rep.early_fire && a.is_firing(tr.at(l.cell1, l.time1))) rep.early_fire = l;
  };
  for (int k : est) record(k, tau);
  while (!est.empty() && tau + 1 + shift <= tr.horizon() && !rep.violation) {
    std::set<int> next;
    int lo = *est.begin() - 1, hi = *est.rbegin() + 2;
    for (int k = std::max(0, lo); k <= hi && k + shift < n; ++k) {
      int x = diag[k], y = diag[k + shift];
      if (front_q(x, tau + 1) && front_q(y, tau + 1 + shift)) continue;  // trivially Q
      if (c.bc(x) != c.bc(y)) continue;
      if (!pair_equal(x, y, tau)) continue;
      bool ok = true;
      for (int d = 0; d < 4 && ok; ++d) ok = pair_equal(c.neighbor(x, d), c.neighbor(y, d), tau);
      if (ok) next.insert(k);
    }
    est.swap(next);
    ++tau;
    for (int k : est) record(k, tau);
  }
  return rep;
}

std::string ChainReport::render(const CellSet& c, const Automaton& a, const Trace& tr) const {
  std::ostringstream os;
  auto cell = [&](int i) {
    Cell x = c.cell(i);
    return "(" + std::to_string(x.x) + "," + std::to_string(x.y) + ")";
  };
  os << "derived equalities: " << links.size() << '\n';
  if (terminal)
    os << "terminal: " << cell(terminal->cell0) << "@" << terminal->time0 << " = " << cell(terminal->cell1) << "@"
       << terminal->time1 << " state " << a.state_name(tr.at(terminal->cell1, terminal->time1)) << '\n';
  if (violation)
    os << "VIOLATION: " << cell(violation->cell0) << "@" << violation->time0 << " != " << cell(violation->cell1)
       << "@" << violation->time1 << '\n';
  if (early_fire)
    os << "forced early fire: " << cell(early_fire->cell0) << "@" << early_fire->time0 << " copies the firing state at "
       << cell(early_fire->cell1) << "@" << early_fire->time1 << '\n';
  return os.str();
}

std::optional<PumpSetup> pump_setup(const VariationSpec& spec, const Configuration& c) {
  const Family f = spec.family;
  const int w = c.params.w, h = c.params.h;
  const CellSet& C = c.set();
  PumpSetup s;
  auto along = [&](bool reversed, int len) {
    for (int k = 0; k <= len; ++k) s.diag.push_back(C.index_of(c.nodes[reversed ? len - k : k]));
  };
  switch (f) {
    case Family::LSP_ab:
      if (spec.a > spec.b) return std::nullopt;
      along(false, w + h);
      s.t_lo = w + 1, s.t_hi = w + h - 1;
      return s;
    case Family::gLSP_ab:
      if (spec.a <= spec.b && c.params.i == 0) {
        along(false, w + h);
        s.t_lo = w + 1, s.t_hi = w + h - 1;
        return s;
      }
      if (spec.a > spec.b && c.params.i == w + h) {
        along(true, w + h);
        s.t_lo = h + 1, s.t_hi = w + h - 1;
        return s;
      }
      return std::nullopt;
    case Family::RECT_WALL_ab: case Family::SQ_WALL: case Family::gRECT_WALL_ab: case Family::gSQ_WALL:
      if (c.params.i != 0) return std::nullopt;
      for (int k = 0; k <= w + h; ++k) s.diag.push_back(C.index_of(c.nodes[k]));
      s.t_lo = w + 1, s.t_hi = w + h - 1;
      return s;
    case Family::EX1: {
      int r = c.params.l;
      along(false, w + h);
      s.window_len = 2 * r + 2;
      s.t_lo = w + 2 + 2 * r, s.t_hi = w + h - 1;
      return s;
    }
    case Family::EX2A: case Family::EX2B: case Family::EX2C: {
      int n = static_cast<int>(c.nodes.size());
      for (int k = 0; k <= 2 * w; ++k) s.diag.push_back(C.index_of(c.nodes[(n - k) % n]));
      s.stride = 2;
      s.t_lo = w + 2 + (w % 2), s.t_hi = 2 * w - 2;
      return s;
    }
    default:
      return std::nullopt;
  }
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NotASolution: return "NotASolution";
    case Verdict::NotMinimal: return "NotMinimal";
    case Verdict::PumpingContradiction: return "PumpingContradiction";
    case Verdict::ScaleBoundTooSmall: return "ScaleBoundTooSmall";
  }
  return "?";
}

std::string RefutationReport::render(const Automaton& a) const {
  std::ostringstream os;
  os << "verdict: " << verdict_name(verdict) << '\n';
  os << "configurations checked: " << checked << "  automaton states: " << q << '\n';
  if (config) {
    os << "configuration: " << config->name() << "  (" << format_descriptor(*config) << ")\n";
    os << "outcome: " << outcome.str() << "  mft: " << mft << "  horizon: " << horizon << '\n';
    os << "replay: fssp simulate --config '" << format_descriptor(*config) << "' --horizon " << horizon
       << " --automaton <file>\n";
  }
  if (certificate) {
    os << "repetition: t0=" << certificate->t0 << " t1=" << certificate->t1 << " window=" << certificate->window_len
       << " stride=" << certificate->stride << " [";
    for (std::size_t k = 0; k < certificate->window0.size(); ++k)
      os << (k ? " " : "") << a.state_name(certificate->window0[k]);
    os << "]\n";
  }
  if (chain && chain->early_fire) os << "observed at forced cell: " << a.state_name(observed) << '\n';
  if (required_slots > 0) os << "pigeonhole needs more than " << static_cast<double>(required_slots) << " windows\n";
  if (!note.empty()) os << note << '\n';
  return os.str();
}

namespace {

long double power(long double b, int e) {
  long double r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

// Members with the general at the pumping end come first (restricted sub-sweep).
std::vector<Configuration> sweep_order(const VariationSpec& spec, int scale_bound) {
  auto all = enumerate_all(spec, scale_bound);
  std::stable_partition(all.begin(), all.end(),
                        [&](const Configuration& c) { return pump_setup(spec, c).has_value(); });
  return all;
}

}  // namespace

RefutationReport refute_minimality(const AutomatonPtr& a, const VariationSpec& spec, int scale_bound) {
  validate(*a);
  RefutationReport rep;
  rep.q = a->num_states();
  std::optional<Configuration> best;  // largest pumpable member seen
  std::optional<PumpSetup> best_setup;
  for (const Configuration& c : sweep_order(spec, scale_bound)) {
    const CellSet& C = c.set();
    int m = mft(spec, c, a->model()).value;
    int horizon = std::max(default_horizon(C), 2 * m + 8);
    FiringOutcome out = firing_time(C, *a, horizon);
    ++rep.checked;
    if (!out.fired() || out.time != m) {
      rep.verdict = out.fired() ? Verdict::NotMinimal : Verdict::NotASolution;
      rep.config = c;
      rep.outcome = out;
      rep.mft = m;
      rep.horizon = horizon;
      return rep;
    }
    if (auto s = pump_setup(spec, c); s && (!best_setup || s->slots() > best_setup->slots())) {
      best = c;
      best_setup = s;
    }
  }
  if (!best) {
    rep.note = "no member with a pumping diagonal within the bound";
    return rep;
  }
  const PumpSetup& s = *best_setup;
  rep.required_slots = power(static_cast<long double>(rep.q), s.window_len);
  rep.config = best;
  rep.mft = mft(spec, *best, a->model()).value;
  rep.horizon = std::max(default_horizon(best->set()), 2 * rep.mft + 8);
  Trace tr = simulate(best->set(), *a, rep.horizon);
  rep.outcome = firing_time(best->set(), *a, rep.horizon);
  auto cert = find_repetition(tr, s.diag, s.window_len, s.t_lo, s.t_hi, s.stride);
  if (cert) {
    rep.certificate = cert;
    rep.chain = pump_chain_check(best->set(), *a, tr, s.diag, *cert);
    if (rep.chain->early_fire) {
      rep.verdict = Verdict::PumpingContradiction;
      rep.observed = tr.at(rep.chain->early_fire->cell0, rep.chain->early_fire->time0);
      return rep;
    }
  }
  rep.verdict = Verdict::ScaleBoundTooSmall;
  rep.note = "every member up to the bound fires at its mft; " + std::to_string(s.slots()) +
             " diagonal windows on the largest member do not exceed q^window";
  return rep;
}

SssBounds sss_bounds(const VariationSpec& spec, const Configuration& c) {
  if (spec.family != Family::LSP_ab || spec.a > spec.b)
    throw Error(ErrorKind::PreconditionViolated, "sss bounds need LSP[a,b] with a <= b");
  if (!member(spec, c)) throw Error(ErrorKind::MemberCheckFailure, c.name() + " is not a member");
  const int w = c.params.w, h = c.params.h;
  SssBounds b;
  b.lower = h <= 1 ? 0 : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(h - 1)) - 1e-12));
  while (b.lower * b.lower < h - 1) ++b.lower;
  while (b.lower > 0 && (b.lower - 1) * (b.lower - 1) >= h - 1) --b.lower;
  b.upper = 6 * (w + h + 2);
  b.line_states = static_cast<int>(minimal_line()->num_states());
  b.proportional = static_cast<long>(b.line_states) * (w + h + 2);
  if (b.line_states > 6)
    b.note = "bundled line solution has " + std::to_string(b.line_states) + " states, so the product bound is " +
             std::to_string(b.line_states) + "(w+h+2) = " + std::to_string(b.proportional);
  return b;
}

}  // namespace fssp

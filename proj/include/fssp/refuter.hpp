#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fssp/automaton.hpp"
#include "fssp/engine.hpp"
#include "fssp/families.hpp"

namespace fssp {

// Windows sampled on the trace diagonal: at time t the cells diag[t-window+1..t].
struct RepetitionCertificate {
  int t0 = 0, t1 = 0;
  int window_len = 0;
  int stride = 1;
  std::vector<State> window0, window1;
};

// First repeated window in scan order over t_lo, t_lo+stride, ..., <= t_hi.
std::optional<RepetitionCertificate> find_repetition(const Trace& tr, const std::vector<int>& diag, int window_len,
                                                     int t_lo, int t_hi, int stride = 1);

struct ChainLink {
  int cell0 = 0, time0 = 0;  // pumped side
  int cell1 = 0, time1 = 0;  // reference side, time1 = time0 + (t1 - t0)
};

struct ChainReport {
  std::vector<ChainLink> links;            // every derived equality, in derivation order
  std::optional<ChainLink> violation;      // derived but not observed (engine bug)
  std::optional<ChainLink> terminal;       // the latest derived equality
  std::optional<ChainLink> early_fire;     // reference side firing => pumped side fires early
  std::string render(const CellSet& c, const Automaton& a, const Trace& tr) const;
};

// Derives shift-equalities from the certificate by determinism: a pair of cells is
// equal at the next step when their own states, every neighbour pair, and their
// boundary conditions agree; cells beyond the front count as Q on both sides.
// Throws SideConditionFailure if the trace breaks the quiescent front.
ChainReport pump_chain_check(const CellSet& c, const Automaton& a, const Trace& tr, const std::vector<int>& diag,
                             const RepetitionCertificate& cert);

struct PumpSetup {
  std::vector<int> diag;
  int window_len = 2;
  int t_lo = 0, t_hi = -1;
  int stride = 1;
  int slots() const { return t_hi < t_lo ? 0 : (t_hi - t_lo) / stride + 1; }
};

// Diagonal and window parameters for a pumpable family member (general on the
// pumping end); nullopt otherwise.
std::optional<PumpSetup> pump_setup(const VariationSpec& spec, const Configuration& c);

enum class Verdict { NotASolution, NotMinimal, PumpingContradiction, ScaleBoundTooSmall };
const char* verdict_name(Verdict v);

struct RefutationReport {
  Verdict verdict = Verdict::ScaleBoundTooSmall;
  std::optional<Configuration> config;
  FiringOutcome outcome;
  int mft = 0;
  int horizon = 0;
  std::size_t q = 0;
  std::optional<RepetitionCertificate> certificate;
  std::optional<ChainReport> chain;
  State observed = kQ;      // trace value at the predicted early-fire cell
  long double required_slots = 0;  // q^window needed for the pigeonhole
  int checked = 0;          // configurations swept
  std::string note;
  std::string render(const Automaton& a) const;
};

RefutationReport refute_minimality(const AutomatonPtr& a, const VariationSpec& spec, int scale_bound);

struct SssBounds {
  int lower = 0, upper = 0;
  int line_states = 0;       // states of the bundled line solution
  long proportional = 0;     // line_states * (w + h + 2)
  std::string note;
};
SssBounds sss_bounds(const VariationSpec& spec, const Configuration& c);

}  // namespace fssp

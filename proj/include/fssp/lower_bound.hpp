#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fssp/automaton.hpp"
#include "fssp/families.hpp"

namespace fssp {

struct AvailableInformation {
  bool known = false;      // false: the letter Q
  int time = 0;
  Cell origin_offset{};    // v - v_gen
  std::vector<std::pair<Cell, BoundaryCondition>> local_map;  // (v' - v_gen, bc), sorted by (x, y)
  friend bool operator==(const AvailableInformation&, const AvailableInformation&) = default;
};

AvailableInformation available_info(const CellSet& c, Cell v, int t);
bool ai_equal(const AvailableInformation& a, const AvailableInformation& b);

struct LowerBoundWitness {
  Configuration c;
  int t = 0;
  Configuration c2;
  Cell v{}, v2{};
};

// Re-checks ai equality and rad(C2) > t from scratch.
bool witness_holds(const LowerBoundWitness& w);

// Candidates C2 in enumeration order up to search_scale; for each, cells v of C in
// `v_order` (default: canonical order).  First hit wins.
std::optional<LowerBoundWitness> find_witness(const VariationSpec& spec, const Configuration& c, int t,
                                              int search_scale, const std::vector<Cell>& v_order = {});

struct LowerBoundResult {
  bool ok = false;
  int t = 0;              // mft - 1
  std::string reason;     // radius, singleton, witness, not-found
  std::optional<LowerBoundWitness> witness;
};

int default_search_scale(const Configuration& c);
LowerBoundResult verify_mft_lower(const VariationSpec& spec, const Configuration& c, Model model,
                                  int search_scale = -1);

// Cells that complete the check-and-broadcast plan exactly at the deadline, canonical order.
std::vector<Cell> deadline_cells(const VariationSpec& spec, const Configuration& c, Model model);

struct AiPair {
  Configuration c1, c2;
  Cell v1{}, v2{};
  int t = 0;
};
// Random pairs (C1, v1) / (C2, v2) with equal available information at t and C1 != C2,
// drawn from `pool`; deterministic for a seed.
std::vector<AiPair> sample_ai_equal_pairs(const std::vector<Configuration>& pool, int n, unsigned seed,
                                          int max_tries = 100000);

// ASCII picture of a local map: '%' origin square, '@' the cell v, 'o' other entries.
std::string render_local_map(const AvailableInformation& ai);
std::string witness_report(const LowerBoundWitness& w);

}  // namespace fssp

#pragma once

#include <string>

#include "fssp/automaton.hpp"
#include "fssp/families.hpp"

namespace fssp {

enum class MftModel { Traditional, BoundarySensitive, Both };
const char* mft_model_name(MftModel m);

struct MftResult {
  int value = 0;
  std::string case_label;
  MftModel model = MftModel::Both;
};

// Closed-form minimum firing time; throws member-check-failure or unknown-mft.
MftResult mft(const VariationSpec& spec, const Configuration& c, Model model);

// bs <= tr <= bs + 1.
bool mft_bounds_consistency(int bs, int tr);
bool mft_bounds_consistency(const VariationSpec& spec, const Configuration& c);

// g-SQ placement folded into 0 <= r <= s <= w/2.
std::pair<int, int> fold_square(int w, int r, int s);

}  // namespace fssp

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "fssp/automaton.hpp"
#include "fssp/cab.hpp"
#include "fssp/families.hpp"
#include "fssp/line.hpp"

namespace fssp {

// An automaton together with the members it claims to fire and when.
struct PartialSolution {
  AutomatonPtr automaton;
  VariationSpec spec;
  std::vector<Configuration> domain;
  std::vector<int> declared_ft;
  std::shared_ptr<const SignalPlan> plan;  // set for check-and-broadcast automata

  // Declared firing time if c is in the domain.
  std::optional<int> ft_for(const Configuration& c) const;
};

PartialSolution explicit_lsp32();
// Same table scheme for C_L(a*l, b*l) of LSP[a,b]: R_0..R_{w-1} walk to the corner, S_w..S_T
// broadcast; T is the mft.  1 + w + (T - w + 1) states (w + h + 2 when a <= b).
PartialSolution explicit_corner_check(int a, int b, int l);

// The check-and-broadcast plan for one target and model (bs or a traditional variant).
SignalPlan make_plan(const VariationSpec& spec, const Configuration& target, Model model);

// Whether the traditional automaton for this target comes from to_traditional.
bool uses_bc_transfer(const VariationSpec& spec, const Configuration& target);

PartialSolution generate_cab(const VariationSpec& spec, const Configuration& target, Model model);

// 16 bc-specialised copies plus a broadcast of the general's bc; needs ft >= rad + 1.
PartialSolution to_traditional(const PartialSolution& p);

// Wraps a line solution so that it runs along an L-path from p_0 (west/south = toward p_0).
AutomatonPtr bend_line(std::shared_ptr<const LineSolution> line);

// A full (not necessarily minimal) solution of a path-like or wall family.
AutomatonPtr generic_solution(const VariationSpec& spec);

AutomatonPtr ex2d_minimal();

// Cells (indices) whose earliest satisfying term at the deadline needs co-located tokens.
std::vector<int> colocation_cells(const SignalPlan& plan, const CellSet& target);

}  // namespace fssp

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ncdt/partition.hpp"
#include "ncdt/roots.hpp"
#include "ncdt/series.hpp"

namespace ncdt {

// Boundary data for a family of interlacing sequences: slot signs sigma, a
// chamber map theta, end diagrams nu_minus/nu_plus and an L-tuple lambda
// driving the per-slot direction signs. The reversed flag composes theta
// with negation; both far patterns then point inward, every configuration
// is finite, and the end diagrams must be empty.
struct TypeData {
  SigmaMap sigma;
  ThetaMap theta;
  bool reversed = false;
  YoungDiagram nu_minus, nu_plus;
  std::vector<YoungDiagram> lambda;  // component c sits at residue c + 1/2

  TypeData() = default;
  TypeData(SigmaMap s, ThetaMap t, YoungDiagram nm, YoungDiagram np,
           std::vector<YoungDiagram> lam = {}, bool rev = false);

  int L() const { return sigma.L(); }
  int theta_eff(int hh) const;  // doubled slot -> doubled name
  int u_slot(int hh) const;     // direction sign at the slot
  int f_slot(int hh) const;     // strip kind at the slot: + row, - col
  int far_u(int side) const;    // limiting direction sign, side = -1 / +1
  // Bound (doubled) such that u_slot == far_u beyond it.
  int deviation_bound() const;
};

// Sequence of diagrams over a window of levels, with constant tails
// nu_minus (left) and nu_plus (right) outside.
struct Transition {
  int lo = 0;
  std::vector<YoungDiagram> values;

  int hi() const { return lo + static_cast<int>(values.size()) - 1; }
  const YoungDiagram& at(const TypeData& type, int n) const;
  bool operator==(const Transition&) const = default;
};

// Every slot, including the two tail edges, satisfies its interlacing
// condition: direction u_slot, strip kind f_slot.
bool is_transition(const TypeData& type, const Transition& v);

// The pointwise-minimal transition, built from two greedy one-sided sweeps
// joined by rowwise max and post-validated.
Transition minimal_transition(const TypeData& type);

// Per-color counts of boxes of v outside the minimal transition.
std::vector<int> crystal_weight(const TypeData& type, const Transition& v);

// Visit every transition with at most budget boxes beyond the minimal one
// (left-to-right DFS, diagrams in lexicographic order) together with its
// per-color weight. widen pads the enumeration window for validation runs.
void for_each_crystal(
    const TypeData& type, int budget,
    const std::function<void(const Transition&, const std::vector<int>&)>& visit, int widen = 0);

std::vector<std::pair<Transition, std::vector<int>>> enumerate_crystals(const TypeData& type,
                                                                        int budget);

// Weight generating series: one variable per color, exponents doubled,
// complete on the budget ball.
LaurentSeries z_crystal(const TypeData& type, int budget);

// Exponent vector of prod_h (q_h)^{|V_min(h-1/2)| - |V_min(h+1/2)|}; twisted
// reads the variable position through theta_eff instead of the slot itself.
ExpVec q_prefactor(const TypeData& type, bool twisted = false);

// Images of the weight variables in the q-grading: component i is the root
// vector spanning the slots of color i through theta_eff.
std::vector<ExpVec> weight_dictionary(const TypeData& type);

// Box at level n, row x, column y (1-based).
struct Node {
  int n = 0, x = 0, y = 0;
  bool operator==(const Node&) const = default;
  auto operator<=>(const Node&) const = default;
};

// All boxes of color n mod L whose single addition keeps v a transition,
// and the transition obtained by adding all of them at once.
std::pair<std::vector<Node>, Transition> addable_saturate(const TypeData& type,
                                                          const Transition& v, int color);

// True when no lattice arrow maps a kept particle (complement of v) onto a
// removed one (box of v).
bool melting_closure_check(const TypeData& type, const Transition& v);

}  // namespace ncdt

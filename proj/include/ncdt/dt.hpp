#pragma once

#include <vector>

#include "ncdt/partition.hpp"
#include "ncdt/roots.hpp"
#include "ncdt/series.hpp"

namespace ncdt {

// One torus-fixed configuration on the vertex chain: a partition for each
// internal edge and a legged solid for each vertex.  Edge j sits between
// vertices j-1 and j; the boundary partitions nu_minus and nu_plus play the
// role of edges 0 and L.
struct FixedPointData {
  std::vector<YoungDiagram> edge;   // L-1 entries
  std::vector<LeggedSolid> vertex;  // L entries
};

// Legs forced at vertex j by the boundary partitions and the internal edges:
// the first leg is lambda[j], the other two are the edge partitions on either
// side, the trailing one transposed, in an order set by the orientation at j.
Legs required_legs(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                   const YoungDiagram& nu_minus, const YoungDiagram& nu_plus,
                   const std::vector<YoungDiagram>& edge, int j);

// True when fp has the right shape and every vertex solid carries exactly the
// legs required by fp's edges and the boundary data.
bool legs_match(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                const YoungDiagram& nu_minus, const YoungDiagram& nu_plus,
                const FixedPointData& fp);

// Weight exponent of a configuration, doubled, in (q_1..q_{L-1}, t) with t
// last.  A box in row x, column y (0-based) of edge j weighs q_j t^{2x+1}
// when both adjacent orientations are +, q_j t^{2y+1} when both are -, and
// q_j t^{x+y+1} when they differ; every box of a vertex solid beyond its
// minimal member weighs t.
ExpVec tv_weight(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                 const YoungDiagram& nu_minus, const YoungDiagram& nu_plus,
                 const FixedPointData& fp);

// Sum of tv_weight over every leg-matching configuration whose t-degree is at
// most budget.  The result carries no truncation spec; it contains exactly
// the terms of t-degree <= budget and is complete there.
LaurentSeries z_tv_bruteforce(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                              const YoungDiagram& nu_minus, const YoungDiagram& nu_plus,
                              int budget);

// The same sum computed as a matrix element of the residue-blocked operator
// word: a transfer sum over partition chains, regraded to (q_1..q_{L-1}, t)
// and normalized so the least term is 1.  Same completeness contract as the
// brute force.
LaurentSeries z_tv_word(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                        const YoungDiagram& nu_minus, const YoungDiagram& nu_plus, int budget);

// Coordinates of a vertex-grading exponent against the class basis: n2 counts
// q_0 and beta2[i-1] is the excess of q_i over q_0.  Components stay doubled.
struct DTClass {
  std::vector<int> beta2;  // L-1 entries
  int n2 = 0;
  bool operator==(const DTClass&) const = default;
};

DTClass psi(const ExpVec& v);
ExpVec psi_inverse(const DTClass& c);

// Regrades a series in the vertex grading (q_0..q_{L-1}) to (q_1..q_{L-1}, t):
// q_0 maps to t / (q_1 ... q_{L-1}) and every other q_i to itself, so a
// monomial lands on exponent (psi(v).beta2, psi(v).n2).
LaurentSeries dt_regrade(const LaurentSeries& s);

}  // namespace ncdt

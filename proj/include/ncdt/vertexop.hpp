#pragma once

#include <map>
#include <vector>

#include "ncdt/crystal.hpp"
#include "ncdt/partition.hpp"
#include "ncdt/roots.hpp"
#include "ncdt/series.hpp"

namespace ncdt {

// Weighted finite combination of partition states.
struct FockVector {
  int nvars = 0;
  TruncationSpec trunc;
  std::map<YoungDiagram, LaurentSeries> amplitudes;  // no zero entries
};

FockVector fock_unit(const YoungDiagram& mu, int nvars, TruncationSpec trunc);
FockVector fock_scaled(const FockVector& v, const LaurentSeries& s);

// One transfer operator: eps = +1 row strips / -1 column strips,
// iota = +1 grows the partition / -1 shrinks it, p the monomial argument.
struct GammaSpec {
  int eps = +1;
  int iota = +1;
  ExpVec p;
};

// Applies g with amplitude p^{|mu| - |mu'|}; growing directions rely on the
// truncation of v to bound the strip sizes.
FockVector apply_gamma(const GammaSpec& g, const FockVector& v);

// Scalar with Gamma_-(p1) Gamma_+(p2) = c * Gamma_+(p2) Gamma_-(p1) under the
// amplitude convention above: c = (1 - eps1 eps2 p1 p2^{-1})^{-eps1 eps2}.
LaurentSeries gamma_commutator(int eps1, const ExpVec& p1, int eps2, const ExpVec& p2, int nvars,
                               const TruncationSpec& trunc);

struct OperatorWord {
  int nvars = 0;
  YoungDiagram bra, ket;
  std::vector<GammaSpec> factors;  // applied right-to-left onto the ket
};

// Finite window of the slot-ordered product for a type: slot hh carries the
// operator named theta_eff(hh) with argument q_{name}.
OperatorWord word_for(const TypeData& type, int window2);

// Vertex word grouped per residue class; within each class all shrinking
// factors precede all growing ones.  The class blocks are ordered so the
// surviving cross-class commutators are the roots whose shrink end has the
// smaller residue, which is the order the enumeration oracle confirms.
OperatorWord word_for_tv(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                         const YoungDiagram& nu_minus, const YoungDiagram& nu_plus, int window2,
                         bool blocks_ascending = true);

// <bra| factors |ket> by transfer recursion over partition states.
LaurentSeries bra_ket(const OperatorWord& w, const TruncationSpec& trunc);

// Weight series of a type recomputed from per-slot monomial bookkeeping along
// every enumerated configuration; asserts the per-path exponent matches the
// dictionary image of the weight, so it equals z_crystal exactly or throws.
LaurentSeries z_vertex(const TypeData& type, int budget);

// Skew Schur polynomial s_{outer/inner}(vars) as an interlacing chain sum;
// transpose switches to column chains, invert replaces each variable by its
// inverse.
LaurentSeries skew_schur(const YoungDiagram& outer, const YoungDiagram& inner,
                         const std::vector<ExpVec>& vars, bool invert, bool transpose, int nvars,
                         const TruncationSpec& trunc);

// Four-fold skew-Schur sum over the sign-split slot variable sets of
// (sigma, lambda), with end partitions nu_-/nu_+, windowed to |hh| <= window2.
LaurentSeries theta_free_sum(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                             const YoungDiagram& nu_minus, const YoungDiagram& nu_plus, int window2,
                             const TruncationSpec& trunc);

// The positive-stability generating function: variable-prefactor of the
// slot-ordered minimum times the stabilized four-fold sum.  Total-degree
// truncation required; throws if window growth does not stabilize.
LaurentSeries z_zeta_pos(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                         const YoungDiagram& nu_minus, const YoungDiagram& nu_plus,
                         const TruncationSpec& trunc);

// Product over the in-order shrink/grow pairs of one residue class of
// (1 - t^{gap})^{-1}, in a single variable, complete to degree D.
LaurentSeries principal_pairs(const YoungDiagram& lam, int D);

// Closed product form of the weight series in the q-grading: the commutator
// scalars of the slot-ordered word times the stabilized four-fold sum, with
// the variable prefactor of the minimum divided out.  Total-degree truncation
// with lower edge <= 0 required; equals the regrade of z_crystal on the
// shared window.
LaurentSeries closed_form_ncdt(const TypeData& type, const TruncationSpec& trunc);

// Closed product form of the vertex-ordered series in the q-grading,
// normalized so the minimal term is 1.
LaurentSeries closed_form_tv(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                             const YoungDiagram& nu_minus, const YoungDiagram& nu_plus,
                             const TruncationSpec& trunc);

}  // namespace ncdt

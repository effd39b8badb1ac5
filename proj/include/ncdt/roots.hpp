#pragma once

#include <optional>
#include <vector>

#include "ncdt/series.hpp"

namespace ncdt {

// Signs attached to the half-integer residues 1/2, ..., L-1/2, extended
// L-periodically to all of Z + 1/2.
class SigmaMap {
 public:
  SigmaMap() = default;
  explicit SigmaMap(std::vector<int> signs);
  static SigmaMap parse(const std::string& s);  // e.g. "+-"

  int L() const { return static_cast<int>(signs_.size()); }
  int sign(int hh) const;
  const std::vector<int>& signs() const { return signs_; }
  std::string str() const;

  bool operator==(const SigmaMap&) const = default;

 private:
  std::vector<int> signs_;
};

// Bijection of half-integers with theta(h + L) = theta(h) + L, stored by its
// window values theta(1/2), ..., theta(L-1/2) (doubled).
class ThetaMap {
 public:
  ThetaMap() = default;
  explicit ThetaMap(std::vector<int> window);
  static ThetaMap identity(int L);

  int L() const { return static_cast<int>(window_.size()); }
  int apply(int hh) const;
  ThetaMap inverse() const;
  const std::vector<int>& window() const { return window_; }
  // Largest |theta(h) - h| over the window.
  int max_offset() const;

  bool operator==(const ThetaMap&) const = default;

 private:
  std::vector<int> window_;
};

// The wall reflection theta_i: swaps across the color-i vertices.
ThetaMap theta_wall(const ThetaMap& theta, int i);
// Fold of theta_wall over the sequence; walls apply rightmost first.
ThetaMap theta_from_walls(int L, const std::vector<int>& walls);

// alpha_{[h, h']}: sum of alpha_{pi(k)} over integers k strictly between h
// and h', negated when h > h'. Doubled entries, length L.
ExpVec root_interval(int L, int hh1, int hh2);

struct RootStats {
  int sigma;    // -sigma(h) sigma(h')
  int alpha0;   // multiples of L strictly inside the interval
  bool real;
  bool positive;
};
RootStats root_stats(const SigmaMap& sigma, int hh1, int hh2);

// alpha(theta, i) = alpha_{[theta(n-1/2), theta(n+1/2)]} for pi(n) = i.
ExpVec alpha_simple(const ThetaMap& theta, int i);
std::vector<ExpVec> alpha_dictionary(const ThetaMap& theta);

// Unique integer w with sum_i w_i dict_i = e; nullopt when the dictionary is
// singular or the solution is not integral.
std::optional<std::vector<int>> dictionary_preimage(const std::vector<ExpVec>& dict,
                                                    const ExpVec& e);

// A stability vector cutting out the chamber of theta:
// zeta_i = -(theta(n+1/2) - theta(n-1/2)); integral, zeta·delta = -L.
std::vector<int> chamber_point(const ThetaMap& theta);

struct OrderedRoot {
  ExpVec alpha;
  int hh1, hh2;  // representative with hh1 in the window, hh1 < hh2
  int sigma;
  int alpha0;
};
// Positive real roots alpha_{[h,h']} (one representative each) of total
// degree at most D with theta(h) < theta(h').
std::vector<OrderedRoot> ordered_positive_roots(const ThetaMap& theta, const SigmaMap& sigma,
                                                int D);

// q_h = q^{alpha_{[1/2, h]}}.
ExpVec q_of_h(int L, int hh);

}  // namespace ncdt

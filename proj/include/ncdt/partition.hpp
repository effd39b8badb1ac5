#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace ncdt {

// Half-integers are stored doubled throughout (an int hh represents h = hh/2,
// with hh odd). Integer positions are stored doubled as even ints where they
// share a lattice with half-integers, plain otherwise.

class YoungDiagram {
 public:
  YoungDiagram() = default;
  explicit YoungDiagram(std::vector<int> rows);

  const std::vector<int>& rows() const { return rows_; }
  int row(int k) const;  // 0-based, 0 beyond the last row
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int size() const;
  bool empty() const { return rows_.empty(); }

  // Box membership, 0-based: x is the column, y the row.
  bool contains_box(int x, int y) const;
  bool contains(const YoungDiagram& inner) const;

  YoungDiagram transpose() const;

  bool operator==(const YoungDiagram&) const = default;
  auto operator<=>(const YoungDiagram&) const = default;

 private:
  std::vector<int> rows_;
};

enum class Dir { row, col };

// mu >= nu in the strip order: Dir::row means mu/nu is a horizontal strip,
// Dir::col a vertical strip. False whenever nu is not contained in mu.
bool interlaces(const YoungDiagram& mu, const YoungDiagram& nu, Dir d);

// All nu with interlaces(nu, mu, d), nu contained in *outer when outer is
// given, and |nu| - |mu| <= max_extra when max_extra >= 0. At least one of
// the two caps must be present (row strips can grow the first row without
// bound, column strips the first column).
std::vector<YoungDiagram> strips_above(const YoungDiagram& mu, Dir d,
                                       const YoungDiagram* outer, int max_extra);

// All nu with interlaces(mu, nu, d); always finite.
std::vector<YoungDiagram> strips_below(const YoungDiagram& mu, Dir d);

// Two-tailed sign sequence on half-integers, stored as the finite set of
// positions whose sign differs from the vacuum (+ for h > 0, - for h < 0).
class MayaDiagram {
 public:
  MayaDiagram() = default;
  explicit MayaDiagram(std::map<int, int> exceptions);

  static int vacuum_sign(int hh) { return hh > 0 ? +1 : -1; }
  int sign(int hh) const;
  const std::map<int, int>& exceptions() const { return exceptions_; }

  bool operator==(const MayaDiagram&) const = default;

 private:
  std::map<int, int> exceptions_;  // hh (odd) -> ±1
};

MayaDiagram maya(const YoungDiagram& mu);
// Inverse of maya(); nullopt when the diagram has nonzero charge.
std::optional<YoungDiagram> maya_inverse(const MayaDiagram& m);

// Sign at hh of the L-tuple Maya sequence: component pi(h) evaluated at
// (h - pi(h))/L + 1/2.
int tuple_maya(const std::vector<YoungDiagram>& lambda, int hh);

struct Legs {
  YoungDiagram x, y, z;
  bool operator==(const Legs&) const = default;
};

// 1-based box coordinates. The minimal solid is the union of the three leg
// cylinders; (a,b) in mu means b <= mu_a.
bool minimal_solid_member(const Legs& legs, int x, int y, int z);

class LeggedSolid {
 public:
  LeggedSolid() = default;
  LeggedSolid(Legs legs, std::vector<std::array<int, 3>> extra);

  const Legs& legs() const { return legs_; }
  const std::vector<std::array<int, 3>>& extra() const { return extra_; }
  int excess() const { return static_cast<int>(extra_.size()); }
  bool member(int x, int y, int z) const;

  bool operator==(const LeggedSolid&) const = default;

 private:
  Legs legs_;
  std::vector<std::array<int, 3>> extra_;  // sorted lex
};

// All solids with the given legs and at most N boxes beyond the minimal one,
// in a deterministic order (increasing excess along each DFS branch).
std::vector<LeggedSolid> enumerate_legged(const Legs& legs, int N);

}  // namespace ncdt

#include "ncdt/partition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ncdt/error.hpp"

namespace ncdt {

YoungDiagram::YoungDiagram(std::vector<int> rows) : rows_(std::move(rows)) {
  while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
  for (size_t k = 0; k < rows_.size(); ++k) {
    require(rows_[k] > 0, "partition rows must be positive");
    require(k == 0 || rows_[k - 1] >= rows_[k], "partition rows must be weakly decreasing");
  }
}

int YoungDiagram::row(int k) const {
  if (k < 0 || k >= num_rows()) return 0;
  return rows_[k];
}

int YoungDiagram::size() const {
  return std::accumulate(rows_.begin(), rows_.end(), 0);
}

bool YoungDiagram::contains_box(int x, int y) const {
  return y >= 0 && x >= 0 && y < num_rows() && x < rows_[y];
}

bool YoungDiagram::contains(const YoungDiagram& inner) const {
  if (inner.num_rows() > num_rows()) return false;
  for (int k = 0; k < inner.num_rows(); ++k)
    if (inner.rows_[k] > rows_[k]) return false;
  return true;
}

YoungDiagram YoungDiagram::transpose() const {
  if (rows_.empty()) return {};
  std::vector<int> cols(rows_[0], 0);
  for (int len : rows_)
    for (int c = 0; c < len; ++c) ++cols[c];
  return YoungDiagram(std::move(cols));
}

bool interlaces(const YoungDiagram& mu, const YoungDiagram& nu, Dir d) {
  if (d == Dir::row) {
    // mu_1 >= nu_1 >= mu_2 >= nu_2 >= ...
    int n = std::max(mu.num_rows(), nu.num_rows());
    for (int k = 0; k < n; ++k) {
      if (mu.row(k) < nu.row(k)) return false;
      if (nu.row(k) < mu.row(k + 1)) return false;
    }
    return true;
  }
  int n = std::max(mu.num_rows(), nu.num_rows());
  for (int k = 0; k < n; ++k) {
    int diff = mu.row(k) - nu.row(k);
    if (diff < 0 || diff > 1) return false;
  }
  return true;
}

namespace {

void gen_above(const YoungDiagram& mu, Dir d, const YoungDiagram* outer, int max_extra,
               std::vector<int>& acc, int used, std::vector<YoungDiagram>& out) {
  int k = static_cast<int>(acc.size());
  int lo = mu.row(k);
  int hi;
  if (d == Dir::row) {
    hi = (k == 0) ? std::numeric_limits<int>::max() : mu.row(k - 1);
  } else {
    hi = lo + 1;
  }
  if (k > 0) hi = std::min(hi, acc[k - 1]);
  if (outer) hi = std::min(hi, outer->row(k));
  if (max_extra >= 0) hi = std::min(hi, lo + (max_extra - used));
  check(hi < std::numeric_limits<int>::max(), "unbounded strip enumeration");
  if (lo > hi) return;
  if (lo == 0) {
    out.push_back(YoungDiagram(acc));
    // Rows of length zero end the diagram; longer choices continue it.
    for (int v = 1; v <= hi; ++v) {
      acc.push_back(v);
      gen_above(mu, d, outer, max_extra, acc, used + v - lo, out);
      acc.pop_back();
    }
    return;
  }
  for (int v = lo; v <= hi; ++v) {
    acc.push_back(v);
    gen_above(mu, d, outer, max_extra, acc, used + v - lo, out);
    acc.pop_back();
  }
}

void gen_below(const YoungDiagram& mu, Dir d, std::vector<int>& acc,
               std::vector<YoungDiagram>& out) {
  int k = static_cast<int>(acc.size());
  if (k >= mu.num_rows()) {
    out.push_back(YoungDiagram(acc));
    return;
  }
  int lo, hi;
  if (d == Dir::row) {
    lo = mu.row(k + 1);
    hi = mu.row(k);
  } else {
    lo = std::max(mu.row(k) - 1, 0);
    hi = mu.row(k);
  }
  if (k > 0) hi = std::min(hi, acc[k - 1]);
  for (int v = lo; v <= hi; ++v) {
    acc.push_back(v);
    gen_below(mu, d, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<YoungDiagram> strips_above(const YoungDiagram& mu, Dir d,
                                       const YoungDiagram* outer, int max_extra) {
  check(outer != nullptr || max_extra >= 0, "strips_above needs a bound");
  std::vector<YoungDiagram> out;
  std::vector<int> acc;
  gen_above(mu, d, outer, max_extra, acc, 0, out);
  return out;
}

std::vector<YoungDiagram> strips_below(const YoungDiagram& mu, Dir d) {
  std::vector<YoungDiagram> out;
  std::vector<int> acc;
  gen_below(mu, d, acc, out);
  return out;
}

MayaDiagram::MayaDiagram(std::map<int, int> exceptions) {
  for (auto& [hh, s] : exceptions) {
    require(hh % 2 != 0, "Maya positions must be half-integers");
    require(s == +1 || s == -1, "Maya signs must be ±1");
    if (s != vacuum_sign(hh)) exceptions_.emplace(hh, s);
  }
}

int MayaDiagram::sign(int hh) const {
  auto it = exceptions_.find(hh);
  return it != exceptions_.end() ? it->second : vacuum_sign(hh);
}

MayaDiagram maya(const YoungDiagram& mu) {
  // Minus signs sit at mu_k - k + 1/2.
  std::map<int, int> exc;
  int len = mu.num_rows();
  std::vector<int> minus;  // doubled positions, descending
  minus.reserve(len);
  for (int k = 1; k <= len; ++k) minus.push_back(2 * mu.row(k - 1) - 2 * k + 1);
  for (int s : minus)
    if (s > 0) exc[s] = -1;
  for (int j = 1; j <= len; ++j) {
    int hh = -2 * j + 1;
    if (!std::binary_search(minus.rbegin(), minus.rend(), hh)) exc[hh] = +1;
  }
  return MayaDiagram(std::move(exc));
}

std::optional<YoungDiagram> maya_inverse(const MayaDiagram& m) {
  int charge = 0;
  for (auto& [hh, s] : m.exceptions()) charge += (s == +1) ? +1 : -1;
  if (charge != 0) return std::nullopt;

  // Walk minus positions downward; mu_k = s_k + k - 1/2.
  std::vector<int> rows;
  int floor_hh = -1;
  for (auto& [hh, s] : m.exceptions()) floor_hh = std::min(floor_hh, hh - 2);
  std::vector<int> minus;
  for (auto& [hh, s] : m.exceptions())
    if (s == -1) minus.push_back(hh);
  for (int hh = -1; hh >= floor_hh; hh -= 2)
    if (m.sign(hh) == -1) minus.push_back(hh);
  std::sort(minus.rbegin(), minus.rend());
  for (size_t k = 1; k <= minus.size(); ++k) {
    int mu_k = (minus[k - 1] - 1) / 2 + static_cast<int>(k);
    if (mu_k <= 0) break;
    rows.push_back(mu_k);
  }
  for (size_t k = 1; k < rows.size(); ++k)
    if (rows[k - 1] < rows[k]) return std::nullopt;
  YoungDiagram result(rows);
  if (!(maya(result) == m)) return std::nullopt;
  return result;
}

int tuple_maya(const std::vector<YoungDiagram>& lambda, int hh) {
  int L = static_cast<int>(lambda.size());
  check(L > 0, "tuple_maya needs at least one component");
  check(hh % 2 != 0, "tuple_maya argument must be a half-integer");
  int r = ((hh % (2 * L)) + 2 * L) % (2 * L);  // odd residue in 1..2L-1
  int c = (r - 1) / 2;
  int arg = (hh - r) / L + 1;
  return maya(lambda[c]).sign(arg);
}

bool minimal_solid_member(const Legs& legs, int x, int y, int z) {
  if (x < 1 || y < 1 || z < 1) return false;
  if (z <= legs.x.row(y - 1)) return true;
  if (x <= legs.y.row(z - 1)) return true;
  if (y <= legs.z.row(x - 1)) return true;
  return false;
}

LeggedSolid::LeggedSolid(Legs legs, std::vector<std::array<int, 3>> extra)
    : legs_(std::move(legs)), extra_(std::move(extra)) {
  std::sort(extra_.begin(), extra_.end());
  for (auto& b : extra_)
    require(!minimal_solid_member(legs_, b[0], b[1], b[2]),
            "extra boxes must lie outside the minimal solid");
}

bool LeggedSolid::member(int x, int y, int z) const {
  if (minimal_solid_member(legs_, x, y, z)) return true;
  return std::binary_search(extra_.begin(), extra_.end(), std::array<int, 3>{x, y, z});
}

namespace {

struct LeggedEnum {
  const Legs& legs;
  int N;
  int xmax, ymax, zmax;
  std::vector<std::array<int, 3>> extra;
  std::vector<LeggedSolid>* out;

  bool member(const std::array<int, 3>& b) const {
    if (minimal_solid_member(legs, b[0], b[1], b[2])) return true;
    return std::binary_search(extra.begin(), extra.end(), b);
  }

  bool addable(const std::array<int, 3>& b) const {
    if (member(b)) return false;
    auto [x, y, z] = b;
    if (x > 1 && !member({x - 1, y, z})) return false;
    if (y > 1 && !member({x, y - 1, z})) return false;
    if (z > 1 && !member({x, y, z - 1})) return false;
    return true;
  }

  void grow(std::array<int, 3> last) {
    out->emplace_back(legs, extra);
    if (static_cast<int>(extra.size()) == N) return;
    for (int x = 1; x <= xmax; ++x)
      for (int y = 1; y <= ymax; ++y)
        for (int z = 1; z <= zmax; ++z) {
          std::array<int, 3> b{x, y, z};
          if (b <= last || !addable(b)) continue;
          extra.push_back(b);
          grow(b);
          extra.pop_back();
        }
  }
};

}  // namespace

std::vector<LeggedSolid> enumerate_legged(const Legs& legs, int N) {
  require(N >= 0, "enumerate_legged budget must be nonnegative");
  // A new box needs a predecessor chain through extras back to the legs, so its
  // coordinates exceed the relevant leg extents by at most N + 1.
  int xmax = std::max(legs.y.row(0), legs.z.num_rows()) + N + 1;
  int ymax = std::max(legs.z.row(0), legs.x.num_rows()) + N + 1;
  int zmax = std::max(legs.x.row(0), legs.y.num_rows()) + N + 1;
  std::vector<LeggedSolid> result;
  LeggedEnum e{legs, N, xmax, ymax, zmax, {}, &result};
  e.grow({0, 0, 0});
  return result;
}

}  // namespace ncdt

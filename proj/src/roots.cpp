#include "ncdt/roots.hpp"

#include <algorithm>

#include "ncdt/error.hpp"

namespace ncdt {

namespace {

int mod_pos(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

SigmaMap::SigmaMap(std::vector<int> signs) : signs_(std::move(signs)) {
  require(!signs_.empty(), "sigma needs at least one sign");
  for (int s : signs_) require(s == +1 || s == -1, "sigma entries must be ±1");
}

SigmaMap SigmaMap::parse(const std::string& s) {
  std::vector<int> signs;
  for (char c : s) {
    require(c == '+' || c == '-', "sigma string must consist of + and -");
    signs.push_back(c == '+' ? +1 : -1);
  }
  return SigmaMap(signs);
}

int SigmaMap::sign(int hh) const {
  check(hh % 2 != 0, "sigma argument must be a half-integer");
  int r = mod_pos(hh, 2 * L());  // odd, in 1..2L-1
  return signs_[(r - 1) / 2];
}

std::string SigmaMap::str() const {
  std::string s;
  for (int v : signs_) s += (v > 0 ? '+' : '-');
  return s;
}

ThetaMap::ThetaMap(std::vector<int> window) : window_(std::move(window)) {
  int L = static_cast<int>(window_.size());
  require(L >= 1, "theta window must be nonempty");
  std::vector<int> residues;
  for (int v : window_) {
    require(v % 2 != 0, "theta values must be half-integers");
    residues.push_back(mod_pos(v, 2 * L));
  }
  std::sort(residues.begin(), residues.end());
  for (int j = 0; j < L; ++j)
    require(residues[j] == 2 * j + 1, "theta window must hit each residue once");
}

ThetaMap ThetaMap::identity(int L) {
  std::vector<int> w;
  for (int j = 0; j < L; ++j) w.push_back(2 * j + 1);
  return ThetaMap(std::move(w));
}

int ThetaMap::apply(int hh) const {
  check(hh % 2 != 0, "theta argument must be a half-integer");
  int period = 2 * L();
  int r = mod_pos(hh, period);  // odd residue, window index (r-1)/2
  return window_[(r - 1) / 2] + (hh - r);
}

int ThetaMap::max_offset() const {
  int m = 0;
  for (int j = 0; j < L(); ++j) m = std::max(m, std::abs(window_[j] - (2 * j + 1)));
  return m;
}

ThetaMap ThetaMap::inverse() const {
  int period = 2 * L();
  std::vector<int> inv(L(), 0);
  int off = max_offset() + period;
  for (int j = 0; j < L(); ++j) {
    int target = 2 * j + 1;
    bool found = false;
    for (int hh = target - off; hh <= target + off; hh += 2) {
      if (apply(hh) == target) {
        inv[j] = hh;
        found = true;
        break;
      }
    }
    check(found, "theta inverse not found in search window");
  }
  return ThetaMap(std::move(inv));
}

namespace {

// theta_i(h): h+1 if pi(h+1/2) = i, h-1 if pi(h-1/2) = i, else h.
int wall_map(int L, int i, int hh) {
  if (mod_pos((hh + 1) / 2, L) == i) return hh + 2;
  if (mod_pos((hh - 1) / 2, L) == i) return hh - 2;
  return hh;
}

}  // namespace

ThetaMap theta_wall(const ThetaMap& theta, int i) {
  int L = theta.L();
  require(L >= 2, "wall reflections need at least two colors");
  require(i >= 0 && i < L, "wall index out of range");
  std::vector<int> w;
  for (int j = 0; j < L; ++j) w.push_back(theta.apply(wall_map(L, i, 2 * j + 1)));
  return ThetaMap(std::move(w));
}

ThetaMap theta_from_walls(int L, const std::vector<int>& walls) {
  ThetaMap t = ThetaMap::identity(L);
  for (int i : walls) t = theta_wall(t, i);
  return t;
}

ExpVec root_interval(int L, int hh1, int hh2) {
  check(hh1 % 2 != 0 && hh2 % 2 != 0, "interval endpoints must be half-integers");
  ExpVec v = expvec_zero(L);
  int lo = std::min(hh1, hh2), hi = std::max(hh1, hh2);
  for (int nn = lo + 1; nn < hi; nn += 2) v[mod_pos(nn / 2, L)] += 2;
  if (hh1 > hh2)
    for (auto& c : v) c = -c;
  return v;
}

RootStats root_stats(const SigmaMap& sigma, int hh1, int hh2) {
  RootStats r;
  r.sigma = -sigma.sign(hh1) * sigma.sign(hh2);
  int lo = std::min(hh1, hh2), hi = std::max(hh1, hh2);
  int count = 0;
  int period = 2 * sigma.L();
  for (int nn = lo + 1; nn < hi; nn += 2)
    if (mod_pos(nn, period) == 0) ++count;
  r.alpha0 = count;
  r.real = mod_pos(hh1 - hh2, period) != 0;
  r.positive = hh1 < hh2;
  return r;
}

ExpVec alpha_simple(const ThetaMap& theta, int i) {
  int L = theta.L();
  require(i >= 0 && i < L, "color out of range");
  return root_interval(L, theta.apply(2 * i - 1), theta.apply(2 * i + 1));
}

std::vector<ExpVec> alpha_dictionary(const ThetaMap& theta) {
  std::vector<ExpVec> d;
  for (int i = 0; i < theta.L(); ++i) d.push_back(alpha_simple(theta, i));
  return d;
}

std::vector<int> chamber_point(const ThetaMap& theta) {
  std::vector<int> zeta;
  for (int i = 0; i < theta.L(); ++i) {
    int diff = theta.apply(2 * i + 1) - theta.apply(2 * i - 1);
    check(diff % 2 == 0, "chamber coordinates must be integral");
    zeta.push_back(-diff / 2);
  }
  return zeta;
}

std::vector<OrderedRoot> ordered_positive_roots(const ThetaMap& theta, const SigmaMap& sigma,
                                                int D) {
  require(D >= 0, "degree bound must be nonnegative");
  check(theta.L() == sigma.L(), "theta and sigma arity mismatch");
  int L = theta.L();
  std::vector<OrderedRoot> out;
  for (int d = 1; d <= D; ++d) {
    if (d % L == 0) continue;  // imaginary direction
    for (int j = 0; j < L; ++j) {
      int hh1 = 2 * j + 1;
      int hh2 = hh1 + 2 * d;
      if (theta.apply(hh1) >= theta.apply(hh2)) continue;
      OrderedRoot r;
      r.alpha = root_interval(L, hh1, hh2);
      r.hh1 = hh1;
      r.hh2 = hh2;
      auto st = root_stats(sigma, hh1, hh2);
      r.sigma = st.sigma;
      r.alpha0 = st.alpha0;
      out.push_back(std::move(r));
    }
  }
  return out;
}

ExpVec q_of_h(int L, int hh) {
  return root_interval(L, 1, hh);
}

namespace {

long long det_ll(std::vector<std::vector<long long>> m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long acc = 0;
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    std::vector<std::vector<long long>> sub(n - 1, std::vector<long long>(n - 1));
    for (int r = 1; r < n; ++r)
      for (int c2 = 0, k = 0; c2 < n; ++c2) {
        if (c2 == c) continue;
        sub[r - 1][k++] = m[r][c2];
      }
    acc += sign * m[0][c] * det_ll(std::move(sub));
    sign = -sign;
  }
  return acc;
}

}  // namespace

std::optional<std::vector<int>> dictionary_preimage(const std::vector<ExpVec>& dict,
                                                    const ExpVec& e) {
  int n = static_cast<int>(dict.size());
  check(static_cast<int>(e.size()) == n, "dictionary arity mismatch");
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
  for (int c = 0; c < n; ++c) {
    check(static_cast<int>(dict[c].size()) == n, "dictionary arity mismatch");
    for (int r = 0; r < n; ++r) m[r][c] = dict[c][r];
  }
  long long det = det_ll(m);
  if (det == 0) return std::nullopt;
  std::vector<int> w(n);
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<long long>> mi = m;
    for (int r = 0; r < n; ++r) mi[r][i] = e[r];
    long long ni = det_ll(std::move(mi));
    if (ni % det != 0) return std::nullopt;
    w[i] = static_cast<int>(ni / det);
  }
  ExpVec back = expvec_zero(n);
  for (int i = 0; i < n; ++i) back = expvec_add(back, expvec_scale(dict[i], w[i]));
  check(back == e, "preimage reconstruction failed");
  return w;
}

}  // namespace ncdt

#include "ncdt/dt.hpp"

#include <algorithm>
#include <map>

#include "ncdt/crystal.hpp"
#include "ncdt/error.hpp"
#include "ncdt/vertexop.hpp"

namespace ncdt {

namespace {

std::vector<YoungDiagram> partitions_up_to(int n) {
  std::vector<YoungDiagram> out;
  std::vector<int> rows;
  auto rec = [&](auto&& self, int maxrow, int left) -> void {
    out.emplace_back(rows);
    for (int r = std::min(maxrow, left); r >= 1; --r) {
      rows.push_back(r);
      self(self, r, left - r);
      rows.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

// Doubled t-exponent of one box of edge k under the surrounding orientations.
long long edge_box_t2(const SigmaMap& sigma, int k, int x, int y) {
  int sl = sigma.sign(2 * k - 1), sr = sigma.sign(2 * k + 1);
  if (sl > 0 && sr > 0) return 2LL * (2 * x + 1);
  if (sl < 0 && sr < 0) return 2LL * (2 * y + 1);
  return 2LL * (x + y + 1);
}

// Adds the weight of edge k holding nu into acc (layout q_1..q_{L-1}, t).
void add_edge_weight(ExpVec& acc, const SigmaMap& sigma, int k, const YoungDiagram& nu) {
  int L = sigma.L();
  for (int x = 0; x < nu.num_rows(); ++x)
    for (int y = 0; y < nu.row(x); ++y) {
      acc[k - 1] += 2;
      acc[L - 1] += static_cast<int>(edge_box_t2(sigma, k, x, y));
    }
}

}  // namespace

Legs required_legs(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                   const YoungDiagram& nu_minus, const YoungDiagram& nu_plus,
                   const std::vector<YoungDiagram>& edge, int j) {
  int L = sigma.L();
  require(j >= 0 && j < L, "vertex index out of range");
  require(static_cast<int>(edge.size()) == L - 1, "edge tuple has the wrong length");
  auto side = [&](int k) -> const YoungDiagram& {
    if (k == 0) return nu_minus;
    if (k == L) return nu_plus;
    return edge[k - 1];
  };
  std::vector<YoungDiagram> lam = lambda;
  lam.resize(L);
  const YoungDiagram& left = side(j);
  const YoungDiagram& right = side(j + 1);
  if (sigma.sign(2 * j + 1) > 0) return Legs{lam[j], right, left.transpose()};
  return Legs{lam[j], left.transpose(), right};
}

bool legs_match(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                const YoungDiagram& nu_minus, const YoungDiagram& nu_plus,
                const FixedPointData& fp) {
  int L = sigma.L();
  if (static_cast<int>(fp.edge.size()) != L - 1) return false;
  if (static_cast<int>(fp.vertex.size()) != L) return false;
  for (int j = 0; j < L; ++j)
    if (fp.vertex[j].legs() != required_legs(sigma, lambda, nu_minus, nu_plus, fp.edge, j))
      return false;
  return true;
}

ExpVec tv_weight(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                 const YoungDiagram& nu_minus, const YoungDiagram& nu_plus,
                 const FixedPointData& fp) {
  int L = sigma.L();
  require(legs_match(sigma, lambda, nu_minus, nu_plus, fp), "configuration legs are inconsistent");
  ExpVec acc = expvec_zero(L);
  for (int k = 1; k < L; ++k) add_edge_weight(acc, sigma, k, fp.edge[k - 1]);
  for (auto& solid : fp.vertex) acc[L - 1] += 2 * solid.excess();
  return acc;
}

LaurentSeries z_tv_bruteforce(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                              const YoungDiagram& nu_minus, const YoungDiagram& nu_plus,
                              int budget) {
  require(budget >= 0, "budget must be nonnegative");
  int L = sigma.L();
  std::vector<YoungDiagram> lam = lambda;
  lam.resize(L);
  long long tcap2 = 2LL * budget;
  LaurentSeries z(L, TruncationSpec::none());
  std::vector<YoungDiagram> pool = partitions_up_to(budget);
  std::vector<YoungDiagram> edge(std::max(0, L - 1));

  auto vertex_rec = [&](auto&& self, int j, const ExpVec& acc) -> void {
    if (j == L) {
      z.add_term(acc, 1);
      return;
    }
    Legs legs = required_legs(sigma, lam, nu_minus, nu_plus, edge, j);
    int room = static_cast<int>((tcap2 - acc[L - 1]) / 2);
    for (auto& solid : enumerate_legged(legs, room)) {
      ExpVec nxt = acc;
      nxt[L - 1] += 2 * solid.excess();
      self(self, j + 1, nxt);
    }
  };
  auto edge_rec = [&](auto&& self, int k, const ExpVec& acc) -> void {
    if (k == L) {
      vertex_rec(vertex_rec, 0, acc);
      return;
    }
    for (auto& nu : pool) {
      ExpVec nxt = acc;
      add_edge_weight(nxt, sigma, k, nu);
      if (nxt[L - 1] > tcap2) continue;
      edge[k - 1] = nu;
      self(self, k + 1, nxt);
    }
    edge[k - 1] = YoungDiagram();
  };
  edge_rec(edge_rec, 1, expvec_zero(L));
  return z;
}

LaurentSeries z_tv_word(const SigmaMap& sigma, const std::vector<YoungDiagram>& lambda,
                        const YoungDiagram& nu_minus, const YoungDiagram& nu_plus, int budget) {
  require(budget >= 0, "budget must be nonnegative");
  int L = sigma.L();
  std::vector<YoungDiagram> lam = lambda;
  lam.resize(L);
  TypeData type(sigma, ThetaMap::identity(L), nu_minus, nu_plus, lam);
  int dev2 = type.deviation_bound();
  // Headroom beyond the requested budget absorbs the normalizing shift; it is
  // zero until a computed shift shows more is needed.
  for (long long headroom = 0;;) {
    long long tcap2 = 2LL * budget + headroom;
    int W2 = static_cast<int>(2 * L * (tcap2 / 2 + 2)) + 4 * dev2 + 9;
    OperatorWord w = word_for_tv(sigma, lam, nu_minus, nu_plus, W2);
    // The transfer sum converges with the arguments descending away from the
    // center slots, the reciprocal of the closed product's bookkeeping.
    for (auto& g : w.factors) g.p = expvec_neg(g.p);

  int scap = static_cast<int>(tcap2 / 2) + nu_minus.size() + nu_plus.size() + dev2 + 6;
  int n = static_cast<int>(w.factors.size());
  // Per-box t-change of factor i; negative rates are capped at kg boxes per
  // factor so that gain[i], the largest possible drop of the t-component over
  // the factors still to be applied after factor i, stays small.
  int kg = dev2 + 6;
  auto rate_of = [](const GammaSpec& f) { return (f.iota > 0 ? -1LL : 1LL) * f.p[0]; };
  std::vector<long long> gain(n + 1, 0);
  for (int i = 0; i < n; ++i)
    gain[i + 1] = gain[i] + std::max<long long>(0, -rate_of(w.factors[i])) * kg;
  // Boxes still on the chain at the end must be shrunk away; the cheapest
  // shrink rate bounds that remaining cost from below.
  long long rmin = 0;
  bool have_shrink = false;
  for (auto& f : w.factors)
    if (f.iota < 0) {
      long long r = std::max<long long>(0, f.p[0]);
      rmin = have_shrink ? std::min(rmin, r) : r;
      have_shrink = true;
    }
  int bra_size = w.bra.size();

  // Transfer front: surviving chain states with their accumulated exponents.
  std::map<YoungDiagram, std::map<ExpVec, Coeff>> front;
  front[w.ket][expvec_zero(L)] = 1;
  for (int i = n - 1; i >= 0; --i) {
    const GammaSpec& f = w.factors[i];
    Dir d = f.eps > 0 ? Dir::row : Dir::col;
    bool gainful = rate_of(f) < 0;
    std::map<YoungDiagram, std::map<ExpVec, Coeff>> next;
    auto push = [&](const YoungDiagram& nxt, int k, const std::map<ExpVec, Coeff>& amps) {
      ExpVec step = expvec_scale(f.p, f.iota > 0 ? -k : k);
      long long owed = rmin * std::max(0, nxt.size() - bra_size);
      auto& slot = next[nxt];
      for (auto& [e, c] : amps) {
        ExpVec u = expvec_add(e, step);
        if (u[0] + owed - gain[i] > tcap2) continue;
        slot[u] += c;
      }
      if (slot.empty()) next.erase(nxt);
    };
    for (auto& [state, amps] : front) {
      if (f.iota > 0) {
        int room = std::min(scap - state.size(), gainful ? kg : scap);
        if (room < 0) continue;
        for (auto& nxt : strips_above(state, d, nullptr, room))
          push(nxt, nxt.size() - state.size(), amps);
      } else {
        for (auto& nxt : strips_below(state, d)) {
          int k = state.size() - nxt.size();
          if (gainful && k > kg) continue;
          push(nxt, k, amps);
        }
      }
    }
    front = std::move(next);
  }
  auto at_bra = front.find(w.bra);
  check(at_bra != front.end() && !at_bra->second.empty(), "transfer sum is empty");
  std::map<ExpVec, Coeff> raw = at_bra->second;

  // Regrade each chain exponent to (q_1..q_{L-1}, t) and normalize at the
  // unique least term, which must carry coefficient one.
  std::map<ExpVec, Coeff> tv;
  for (auto& [v, c] : raw) {
    ExpVec u = expvec_zero(L);
    for (int i = 1; i < L; ++i) u[i - 1] = v[i] - v[0];
    u[L - 1] = v[0];
    tv[u] += c;
  }
  const ExpVec* emin = nullptr;
  long long dmin = 0;
  int at_min = 0;
  for (auto& [e, c] : tv) {
    long long d = expvec_deg2(e);
    if (emin == nullptr || d < dmin) {
      dmin = d;
      emin = &e;
      at_min = 1;
    } else if (d == dmin) {
      ++at_min;
    }
  }
  check(at_min == 1, "least term of the transfer sum is not unique");
  check(tv.at(*emin) == 1, "least term of the transfer sum must have coefficient one");
  ExpVec shift = expvec_neg(*emin);
  if (tcap2 + shift[L - 1] < 2LL * budget) {
    headroom = -static_cast<long long>(shift[L - 1]) + 2;
    continue;
  }
  LaurentSeries z(L, TruncationSpec::none());
  for (auto& [e, c] : tv) {
    ExpVec u = expvec_add(e, shift);
    if (u[L - 1] <= 2LL * budget) z.add_term(u, c);
  }
  return z;
  }
}

DTClass psi(const ExpVec& v) {
  check(!v.empty(), "empty exponent vector");
  DTClass c;
  c.n2 = v[0];
  for (size_t i = 1; i < v.size(); ++i) c.beta2.push_back(v[i] - v[0]);
  return c;
}

ExpVec psi_inverse(const DTClass& c) {
  ExpVec v(c.beta2.size() + 1, c.n2);
  for (size_t i = 0; i < c.beta2.size(); ++i) v[i + 1] += c.beta2[i];
  return v;
}

LaurentSeries dt_regrade(const LaurentSeries& s) {
  int L = s.nvars();
  check(L >= 1, "regrade needs at least one variable");
  std::vector<ExpVec> alphas(L, expvec_zero(L));
  for (int i = 0; i < L - 1; ++i) alphas[0][i] = -2;
  alphas[0][L - 1] = 2;
  for (int i = 1; i < L; ++i) alphas[i][i - 1] = 2;
  return regrade(s, alphas);
}

}  // namespace ncdt

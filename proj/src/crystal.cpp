#include "ncdt/crystal.hpp"

#include <algorithm>

#include "ncdt/error.hpp"

namespace ncdt {

namespace {

int mod_pos(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

Dir dir_of(int f) { return f > 0 ? Dir::row : Dir::col; }

// Largest diagram one strip step below mu: drop the first row or column.
YoungDiagram max_shrink(const YoungDiagram& mu, int f) {
  if (mu.empty()) return mu;
  std::vector<int> rows;
  if (f > 0) {
    rows.assign(mu.rows().begin() + 1, mu.rows().end());
  } else {
    for (int r : mu.rows())
      if (r > 1) rows.push_back(r - 1);
  }
  return YoungDiagram(std::move(rows));
}

YoungDiagram join_rows(const YoungDiagram& a, const YoungDiagram& b) {
  std::vector<int> rows;
  int n = std::max(a.num_rows(), b.num_rows());
  rows.reserve(n);
  for (int k = 0; k < n; ++k) rows.push_back(std::max(a.row(k), b.row(k)));
  return YoungDiagram(std::move(rows));
}

bool slot_ok(const TypeData& type, int hh, const YoungDiagram& left, const YoungDiagram& right) {
  Dir d = dir_of(type.f_slot(hh));
  if (type.u_slot(hh) > 0) return interlaces(left, right, d);
  return interlaces(right, left, d);
}

}  // namespace

TypeData::TypeData(SigmaMap s, ThetaMap t, YoungDiagram nm, YoungDiagram np,
                   std::vector<YoungDiagram> lam, bool rev)
    : sigma(std::move(s)),
      theta(std::move(t)),
      reversed(rev),
      nu_minus(std::move(nm)),
      nu_plus(std::move(np)),
      lambda(std::move(lam)) {
  require(sigma.L() > 0, "type needs at least one color");
  require(theta.L() == sigma.L(), "sigma and theta disagree on L");
  if (lambda.empty()) lambda.resize(sigma.L());
  require(static_cast<int>(lambda.size()) == sigma.L(), "lambda needs one entry per color");
  require(!reversed || (nu_minus.empty() && nu_plus.empty()),
          "reversed orientation requires empty end diagrams");
}

int TypeData::theta_eff(int hh) const {
  int t = theta.apply(hh);
  return reversed ? -t : t;
}

int TypeData::u_slot(int hh) const { return tuple_maya(lambda, theta_eff(hh)); }

int TypeData::f_slot(int hh) const { return sigma.sign(theta_eff(hh)); }

int TypeData::far_u(int side) const { return reversed ? -side : side; }

int TypeData::deviation_bound() const {
  int ext2 = 0;
  for (const auto& mu : lambda) ext2 = std::max(ext2, 2 * std::max(mu.num_rows(), mu.row(0)));
  return L() * (ext2 + 3) + theta.max_offset() + 2;
}

const YoungDiagram& Transition::at(const TypeData& type, int n) const {
  if (n < lo) return type.nu_minus;
  if (n > hi()) return type.nu_plus;
  return values[n - lo];
}

bool is_transition(const TypeData& type, const Transition& v) {
  for (int hh = 2 * v.lo - 1; hh <= 2 * v.hi() + 1; hh += 2) {
    if (!slot_ok(type, hh, v.at(type, (hh - 1) / 2), v.at(type, (hh + 1) / 2))) return false;
  }
  return true;
}

Transition minimal_transition(const TypeData& type) {
  int base = type.deviation_bound() / 2 + 1;
  int extent = type.nu_minus.num_rows() + type.nu_minus.row(0) + type.nu_plus.num_rows() +
               type.nu_plus.row(0);
  for (int attempt = 0; attempt < 6; ++attempt) {
    int pad = extent + (attempt + 1) * (2 * type.L() + 4);
    int lo = -(base + pad);
    int m = 2 * (base + pad) + 1;
    std::vector<YoungDiagram> left(m), right(m);
    left[0] = type.nu_minus;
    for (int k = 1; k < m; ++k) {
      int hh = 2 * (lo + k) - 1;
      left[k] = type.u_slot(hh) > 0 ? max_shrink(left[k - 1], type.f_slot(hh)) : left[k - 1];
    }
    right[m - 1] = type.nu_plus;
    for (int k = m - 2; k >= 0; --k) {
      int hh = 2 * (lo + k) + 1;
      right[k] = type.u_slot(hh) < 0 ? max_shrink(right[k + 1], type.f_slot(hh)) : right[k + 1];
    }
    std::vector<YoungDiagram> join(m);
    for (int k = 0; k < m; ++k) join[k] = join_rows(left[k], right[k]);
    if (join[0] != type.nu_minus || join[1] != type.nu_minus || join[m - 1] != type.nu_plus ||
        join[m - 2] != type.nu_plus) {
      continue;  // widen and retry
    }
    int a = 0;
    while (a < m && join[a] == type.nu_minus) ++a;
    int b = m - 1;
    while (b >= 0 && join[b] == type.nu_plus) --b;
    Transition out;
    if (a >= m) {
      check(type.nu_minus == type.nu_plus, "constant join with distinct tails");
      out = Transition{0, {type.nu_minus}};
    } else {
      int y = std::max(a, b);  // pure-step joins have every level equal to a tail
      out = Transition{lo + a,
                       std::vector<YoungDiagram>(join.begin() + a, join.begin() + y + 1)};
    }
    check(is_transition(type, out), "sweep join is not a transition");
    return out;
  }
  throw InternalError("minimal transition did not stabilize");
}

std::vector<int> crystal_weight(const TypeData& type, const Transition& v) {
  Transition vmin = minimal_transition(type);
  std::vector<int> w(type.L(), 0);
  int lo = std::min(v.lo, vmin.lo), hi = std::max(v.hi(), vmin.hi());
  for (int n = lo; n <= hi; ++n) {
    const YoungDiagram& a = v.at(type, n);
    const YoungDiagram& b = vmin.at(type, n);
    int extra = 0;
    for (int r = 0; r < a.num_rows(); ++r) extra += std::max(0, a.row(r) - b.row(r));
    w[mod_pos(n, type.L())] += extra;
  }
  return w;
}

namespace {

struct CrystalDfs {
  const TypeData& type;
  int budget;
  int lo, hi;
  std::vector<YoungDiagram> vmin;  // aligned to [lo, hi]
  const std::function<void(const Transition&, const std::vector<int>&)>& visit;
  std::vector<YoungDiagram> path;
  std::vector<int> weight;

  void run() {
    path.reserve(hi - lo + 1);
    weight.assign(type.L(), 0);
    step(lo, type.nu_minus, 0);
  }

  void step(int n, const YoungDiagram& prev, int spent) {
    if (n > hi) {
      if (slot_ok(type, 2 * hi + 1, path.back(), type.nu_plus))
        visit(Transition{lo, path}, weight);
      return;
    }
    int hh = 2 * n - 1;
    const YoungDiagram& base = vmin[n - lo];
    int remaining = budget - spent;
    std::vector<YoungDiagram> cands;
    if (type.u_slot(hh) > 0) {
      cands = strips_below(prev, dir_of(type.f_slot(hh)));
    } else {
      int cap = base.size() + remaining - prev.size();
      if (cap < 0) return;
      cands = strips_above(prev, dir_of(type.f_slot(hh)), nullptr, cap);
    }
    int color = mod_pos(n, type.L());
    for (auto& w : cands) {
      if (!w.contains(base)) continue;
      int cost = w.size() - base.size();
      if (cost > remaining) continue;
      path.push_back(w);
      weight[color] += cost;
      step(n + 1, path.back(), spent + cost);
      weight[color] -= cost;
      path.pop_back();
    }
  }
};

}  // namespace

void for_each_crystal(
    const TypeData& type, int budget,
    const std::function<void(const Transition&, const std::vector<int>&)>& visit, int widen) {
  require(budget >= 0, "budget must be nonnegative");
  require(widen >= 0, "window padding must be nonnegative");
  Transition vmin = minimal_transition(type);
  int first = vmin.lo, last = vmin.hi();
  int b2 = type.deviation_bound() | 1;
  for (int hh = -b2; hh <= b2; hh += 2) {
    if (type.u_slot(hh) == type.far_u(hh > 0 ? +1 : -1)) continue;
    first = std::min(first, (hh - 1) / 2);
    last = std::max(last, (hh + 1) / 2);
  }
  int lo = first - budget - widen, hi = last + budget + widen;
  std::vector<YoungDiagram> aligned;
  aligned.reserve(hi - lo + 1);
  for (int n = lo; n <= hi; ++n) aligned.push_back(vmin.at(type, n));
  CrystalDfs dfs{type, budget, lo, hi, std::move(aligned), visit, {}, {}};
  dfs.run();
}

std::vector<std::pair<Transition, std::vector<int>>> enumerate_crystals(const TypeData& type,
                                                                        int budget) {
  std::vector<std::pair<Transition, std::vector<int>>> out;
  for_each_crystal(type, budget, [&](const Transition& v, const std::vector<int>& w) {
    out.emplace_back(v, w);
  });
  return out;
}

LaurentSeries z_crystal(const TypeData& type, int budget) {
  LaurentSeries z(type.L(), TruncationSpec::budget(2 * budget));
  for_each_crystal(type, budget, [&](const Transition&, const std::vector<int>& w) {
    ExpVec e(w.size());
    for (size_t i = 0; i < w.size(); ++i) e[i] = 2 * w[i];
    z.add_term(e, 1);
  });
  return z;
}

ExpVec q_prefactor(const TypeData& type, bool twisted) {
  Transition vmin = minimal_transition(type);
  ExpVec acc = expvec_zero(type.L());
  for (int hh = 2 * vmin.lo - 1; hh <= 2 * vmin.hi() + 1; hh += 2) {
    int d = vmin.at(type, (hh - 1) / 2).size() - vmin.at(type, (hh + 1) / 2).size();
    if (d == 0) continue;
    int pos = twisted ? type.theta_eff(hh) : hh;
    acc = expvec_add(acc, expvec_scale(q_of_h(type.L(), pos), d));
  }
  return acc;
}

std::vector<ExpVec> weight_dictionary(const TypeData& type) {
  std::vector<ExpVec> dict;
  dict.reserve(type.L());
  for (int i = 0; i < type.L(); ++i)
    dict.push_back(root_interval(type.L(), type.theta_eff(2 * i - 1), type.theta_eff(2 * i + 1)));
  return dict;
}

std::pair<std::vector<Node>, Transition> addable_saturate(const TypeData& type,
                                                          const Transition& v, int color) {
  require(color >= 0 && color < type.L(), "color out of range");
  require(is_transition(type, v), "input is not a transition");
  int reach = type.deviation_bound() / 2 + 1;
  int lo = std::min(v.lo, -reach) - 1;
  int hi = std::max(v.hi(), reach) + 1;
  std::vector<Node> nodes;
  std::vector<YoungDiagram> grown;
  grown.reserve(hi - lo + 1);
  for (int n = lo; n <= hi; ++n) grown.push_back(v.at(type, n));
  for (int n = lo; n <= hi; ++n) {
    if (mod_pos(n, type.L()) != color) continue;
    const YoungDiagram& cur = v.at(type, n);
    for (int r = 0; r <= cur.num_rows(); ++r) {
      int c = cur.row(r);
      if (r > 0 && cur.row(r - 1) <= c) continue;  // not a corner
      std::vector<int> rows(cur.rows());
      if (r == cur.num_rows()) rows.push_back(1);
      else rows[r] += 1;
      YoungDiagram cand(std::move(rows));
      if (!slot_ok(type, 2 * n - 1, v.at(type, n - 1), cand)) continue;
      if (!slot_ok(type, 2 * n + 1, cand, v.at(type, n + 1))) continue;
      nodes.push_back(Node{n, r + 1, c + 1});
      std::vector<int> g(grown[n - lo].rows());
      if (r >= static_cast<int>(g.size())) g.resize(r + 1, 0);
      g[r] += 1;
      grown[n - lo] = YoungDiagram(std::move(g));
    }
  }
  Transition out{lo, std::move(grown)};
  while (static_cast<int>(out.values.size()) > 1 && out.values.front() == type.nu_minus) {
    out.values.erase(out.values.begin());
    ++out.lo;
  }
  while (static_cast<int>(out.values.size()) > 1 && out.values.back() == type.nu_plus)
    out.values.pop_back();
  check(is_transition(type, out), "joint addition left the transition family");
  return {std::move(nodes), std::move(out)};
}

bool melting_closure_check(const TypeData& type, const Transition& v) {
  int reach = type.deviation_bound() / 2 + 1;
  int margin = 2 * type.L() + 2;
  int lo = std::min(v.lo, -reach) - margin;
  int hi = std::max(v.hi(), reach) + margin;
  auto kept = [&](int level, int r, int c) {
    const YoungDiagram& mu = v.at(type, level);
    return c >= mu.row(r);
  };
  for (int n = lo; n <= hi; ++n) {
    const YoungDiagram& cur = v.at(type, n);
    for (int r = 0; r < cur.num_rows(); ++r) {
      for (int c = 0; c < cur.row(r); ++c) {
        // Sources whose arrow image is the removed box (n, r, c); a kept
        // source would map outside the kept set.  Shrinking toward the tail
        // is a plain inclusion (no shift); growing away from it steps by one
        // row for row strips, one column for column strips.
        int u = type.u_slot(2 * n - 1), f = type.f_slot(2 * n - 1);
        int sr = r, sc = c;
        if (u < 0) (f > 0 ? sr : sc) -= 1;
        if (sr >= 0 && sc >= 0 && kept(n - 1, sr, sc)) return false;
        u = type.u_slot(2 * n + 1);
        f = type.f_slot(2 * n + 1);
        sr = r;
        sc = c;
        if (u > 0) (f > 0 ? sr : sc) -= 1;
        if (sr >= 0 && sc >= 0 && kept(n + 1, sr, sc)) return false;
        int fl = type.f_slot(2 * n - 1), fr = type.f_slot(2 * n + 1);
        if (fl == fr) {
          sr = r;
          sc = c;
          (fl > 0 ? sr : sc) -= 1;
          if (sr >= 0 && sc >= 0 && kept(n, sr, sc)) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace ncdt

#include "ncdt/series.hpp"

#include <algorithm>
#include <limits>

#include "ncdt/error.hpp"

namespace ncdt {

ExpVec expvec_zero(int nvars) { return ExpVec(nvars, 0); }

ExpVec expvec_add(const ExpVec& a, const ExpVec& b) {
  check(a.size() == b.size(), "exponent arity mismatch");
  ExpVec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

ExpVec expvec_sub(const ExpVec& a, const ExpVec& b) {
  check(a.size() == b.size(), "exponent arity mismatch");
  ExpVec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

ExpVec expvec_neg(const ExpVec& a) {
  ExpVec r(a);
  for (auto& v : r) v = -v;
  return r;
}

ExpVec expvec_scale(const ExpVec& a, int c) {
  ExpVec r(a);
  for (auto& v : r) v *= c;
  return r;
}

int expvec_deg2(const ExpVec& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

TruncationSpec TruncationSpec::none() { return {}; }

TruncationSpec TruncationSpec::total(long long lo2, long long hi2) {
  TruncationSpec t;
  t.mode = Mode::total_degree;
  t.lo2 = lo2;
  t.hi2 = hi2;
  return t;
}

TruncationSpec TruncationSpec::budget(long long budget2) {
  TruncationSpec t;
  t.mode = Mode::v_budget;
  t.budget2 = budget2;
  return t;
}

TruncationSpec TruncationSpec::box(long long box2) {
  TruncationSpec t;
  t.mode = Mode::component_box;
  t.box2 = box2;
  return t;
}

bool TruncationSpec::keeps(const ExpVec& e) const {
  switch (mode) {
    case Mode::none:
      return true;
    case Mode::total_degree: {
      int d = expvec_deg2(e);
      return d >= lo2 && d <= hi2;
    }
    case Mode::v_budget: {
      for (int v : e)
        if (v < 0) return false;
      return expvec_deg2(e) <= budget2;
    }
    case Mode::component_box: {
      for (int v : e)
        if (v > box2 || v < -box2) return false;
      return true;
    }
  }
  return true;
}

LaurentSeries::LaurentSeries(int nvars, TruncationSpec trunc)
    : nvars_(nvars), trunc_(trunc) {}

LaurentSeries LaurentSeries::one(int nvars, TruncationSpec trunc) {
  LaurentSeries s(nvars, trunc);
  s.add_term(expvec_zero(nvars), 1);
  return s;
}

LaurentSeries LaurentSeries::monomial(const ExpVec& e, const Coeff& c, TruncationSpec trunc) {
  LaurentSeries s(static_cast<int>(e.size()), trunc);
  s.add_term(e, c);
  return s;
}

Coeff LaurentSeries::coeff(const ExpVec& e) const {
  auto it = terms_.find(e);
  return it != terms_.end() ? it->second : Coeff(0);
}

void LaurentSeries::add_term(const ExpVec& e, const Coeff& c) {
  check(static_cast<int>(e.size()) == nvars_, "term arity mismatch");
  if (c == 0 || !trunc_.keeps(e)) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

namespace {

TruncationSpec combine_add(const TruncationSpec& a, const TruncationSpec& b) {
  using M = TruncationSpec::Mode;
  check(a.mode == b.mode, "cannot add series with different truncation modes");
  switch (a.mode) {
    case M::none:
      return a;
    case M::total_degree:
      return TruncationSpec::total(std::min(a.lo2, b.lo2), std::min(a.hi2, b.hi2));
    case M::v_budget:
      return TruncationSpec::budget(std::min(a.budget2, b.budget2));
    case M::component_box:
      return TruncationSpec::box(std::min(a.box2, b.box2));
  }
  return a;
}

TruncationSpec combine_mul(const TruncationSpec& a, const TruncationSpec& b) {
  using M = TruncationSpec::Mode;
  check(a.mode == b.mode, "cannot multiply series with different truncation modes");
  switch (a.mode) {
    case M::none:
      return a;
    case M::total_degree:
      // Terms above a.hi2 in one factor pair with terms at or above b.lo2 in
      // the other, so the product is exact up to the smaller combined reach.
      return TruncationSpec::total(a.lo2 + b.lo2,
                                   std::min(a.hi2 + b.lo2, b.hi2 + a.lo2));
    case M::v_budget:
      return TruncationSpec::budget(std::min(a.budget2, b.budget2));
    case M::component_box:
      return TruncationSpec::box(std::min(a.box2, b.box2));
  }
  return a;
}

}  // namespace

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  check(nvars_ == o.nvars_, "series arity mismatch");
  trunc_ = combine_add(trunc_, o.trunc_);
  std::map<ExpVec, Coeff> kept;
  for (auto& [e, c] : terms_)
    if (trunc_.keeps(e)) kept.emplace(e, c);
  terms_ = std::move(kept);
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) {
  return *this += -o;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentSeries LaurentSeries::scaled(const Coeff& c) const {
  LaurentSeries r(nvars_, trunc_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& [e, v] : r.terms_) v *= c;
  return r;
}

LaurentSeries LaurentSeries::shifted(const ExpVec& e) const {
  TruncationSpec t = trunc_;
  if (t.mode == TruncationSpec::Mode::total_degree) {
    t.lo2 += expvec_deg2(e);
    t.hi2 += expvec_deg2(e);
  } else {
    check(t.mode == TruncationSpec::Mode::none, "shift requires window or exact series");
  }
  LaurentSeries r(nvars_, t);
  for (auto& [m, c] : terms_) r.add_term(expvec_add(m, e), c);
  return r;
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
  check(nvars_ == o.nvars_, "series arity mismatch");
  // Under the total-degree semantic nothing true sits below the stored
  // minimum, so the product window may be inferred from it; this keeps
  // chained products of series whose windows dip below their supports from
  // collapsing.
  TruncationSpec ta = trunc_, tb = o.trunc_;
  if (ta.mode == TruncationSpec::Mode::total_degree && !terms_.empty()) {
    long long lo = ta.hi2;
    for (auto& [e, c] : terms_) lo = std::min<long long>(lo, expvec_deg2(e));
    ta.lo2 = lo;
  }
  if (tb.mode == TruncationSpec::Mode::total_degree && !o.terms_.empty()) {
    long long lo = tb.hi2;
    for (auto& [e, c] : o.terms_) lo = std::min<long long>(lo, expvec_deg2(e));
    tb.lo2 = lo;
  }
  LaurentSeries r(nvars_, combine_mul(ta, tb));
  for (auto& [ea, ca] : terms_)
    for (auto& [eb, cb] : o.terms_) r.add_term(expvec_add(ea, eb), ca * cb);
  return r;
}

LaurentSeries LaurentSeries::recip() const {
  using M = TruncationSpec::Mode;
  check(!terms_.empty(), "reciprocal of zero");
  if (trunc_.mode == M::total_degree) {
    long long lo = std::numeric_limits<long long>::max();
    for (auto& [e, c] : terms_) lo = std::min<long long>(lo, expvec_deg2(e));
    const ExpVec* lead = nullptr;
    for (auto& [e, c] : terms_)
      if (expvec_deg2(e) == lo) {
        check(lead == nullptr, "reciprocal needs a unique minimal term");
        lead = &e;
      }
    Coeff c0 = terms_.at(*lead);
    check(c0 == 1 || c0 == -1, "reciprocal needs a unit leading coefficient");
    long long span = trunc_.hi2 - lo;
    // a = c0 q^m (1 + w): invert the monomial and sum the geometric series.
    TruncationSpec wt = TruncationSpec::total(0, span);
    LaurentSeries w(nvars_, wt);
    ExpVec m = *lead;
    for (auto& [e, c] : terms_) {
      if (e == m) continue;
      w.add_term(expvec_sub(e, m), c * c0);
    }
    LaurentSeries geo = LaurentSeries::one(nvars_, wt);
    LaurentSeries pw = LaurentSeries::one(nvars_, wt);
    for (long long k = 1; k <= span && !pw.is_zero(); ++k) {
      pw = pw * w;
      geo += (k % 2 == 0) ? pw : -pw;
    }
    geo = geo.scaled(c0);
    TruncationSpec rt = TruncationSpec::total(-lo, trunc_.hi2 - 2 * lo);
    LaurentSeries r(nvars_, rt);
    for (auto& [e, c] : geo.terms()) r.add_term(expvec_sub(e, m), c);
    return r;
  }
  check(trunc_.mode == M::v_budget, "reciprocal needs a degree window or budget");
  ExpVec z = expvec_zero(nvars_);
  Coeff c0 = coeff(z);
  check(c0 == 1 || c0 == -1, "reciprocal needs a unit constant term");
  LaurentSeries w(nvars_, trunc_);
  for (auto& [e, c] : terms_) {
    if (e == z) continue;
    w.add_term(e, c * c0);
  }
  LaurentSeries geo = LaurentSeries::one(nvars_, trunc_);
  LaurentSeries pw = LaurentSeries::one(nvars_, trunc_);
  for (long long k = 1; k <= trunc_.budget2 && !pw.is_zero(); ++k) {
    pw = pw * w;
    geo += (k % 2 == 0) ? pw : -pw;
  }
  return geo.scaled(c0);
}

std::pair<ExpVec, Coeff> LaurentSeries::divide_expect_monomial(const LaurentSeries& o) const {
  check(!o.terms_.empty() && !terms_.empty(), "monomial division with empty series");
  auto& [e0, c0] = *terms_.begin();
  auto& [f0, d0] = *o.terms_.begin();
  check(c0 % d0 == 0, "monomial quotient coefficient must be integral");
  ExpVec shift = expvec_sub(e0, f0);
  Coeff ratio = c0 / d0;
  check(terms_.size() == o.terms_.size(), "series are not monomial multiples");
  auto it = terms_.begin();
  for (auto jt = o.terms_.begin(); jt != o.terms_.end(); ++jt, ++it) {
    check(it->first == expvec_add(jt->first, shift) && it->second == jt->second * ratio,
          "series are not monomial multiples");
  }
  return {shift, ratio};
}

LaurentSeries LaurentSeries::restricted(TruncationSpec t) const {
  LaurentSeries r(nvars_, t);
  for (auto& [e, c] : terms_) r.add_term(e, c);
  return r;
}

std::vector<TermDiff> diff_on_set(const LaurentSeries& a, const LaurentSeries& b,
                                  const std::set<ExpVec>& monomials) {
  std::vector<TermDiff> out;
  for (auto& e : monomials) {
    Coeff ca = a.coeff(e), cb = b.coeff(e);
    if (ca != cb) out.push_back({e, ca, cb});
  }
  return out;
}

std::vector<TermDiff> diff_on_windows(const LaurentSeries& a, const LaurentSeries& b) {
  using M = TruncationSpec::Mode;
  check(a.trunc().mode == M::total_degree && b.trunc().mode == M::total_degree,
        "window comparison needs total-degree truncations");
  long long lo = std::max(a.trunc().lo2, b.trunc().lo2);
  long long hi = std::min(a.trunc().hi2, b.trunc().hi2);
  std::set<ExpVec> mons;
  for (auto& [e, c] : a.terms()) {
    int d = expvec_deg2(e);
    if (d >= lo && d <= hi) mons.insert(e);
  }
  for (auto& [e, c] : b.terms()) {
    int d = expvec_deg2(e);
    if (d >= lo && d <= hi) mons.insert(e);
  }
  return diff_on_set(a, b, mons);
}

Coeff binomial(long long e, long long k) {
  check(k >= 0, "binomial lower index must be nonnegative");
  Coeff num = 1, den = 1;
  for (long long j = 0; j < k; ++j) {
    num *= Coeff(e - j);
    den *= Coeff(j + 1);
  }
  check(num % den == 0, "binomial must be integral");
  return num / den;
}

LaurentSeries binom_pow(const ExpVec& m, int sign, long long e, const TruncationSpec& trunc) {
  check(sign == 1 || sign == -1, "binom_pow sign must be ±1");
  int d = expvec_deg2(m);
  check(d != 0, "binom_pow needs a direction of nonzero degree");
  check(trunc.mode == TruncationSpec::Mode::total_degree, "binom_pow expands on a degree window");
  if (d < 0) {
    // (1+s q^m)^e = s^e q^{em} (1+s q^{-m})^e; widen the body window so the
    // shifted result still covers the requested one.
    ExpVec shift = expvec_scale(m, static_cast<int>(e));
    long long ed = static_cast<long long>(d) * e;
    TruncationSpec bt =
        TruncationSpec::total(std::min<long long>(0, trunc.lo2 - ed), trunc.hi2 - ed);
    LaurentSeries body = binom_pow(expvec_neg(m), sign, e, bt);
    LaurentSeries r = body.shifted(shift);
    if (e % 2 != 0 && sign == -1) r = -r;
    return r;
  }
  check(trunc.lo2 <= 0, "binom_pow window must include degree zero");
  LaurentSeries r(static_cast<int>(m.size()), trunc);
  for (long long k = 0; k * d <= trunc.hi2; ++k) {
    Coeff c = binomial(e, k);
    if (sign == -1 && k % 2 != 0) c = -c;
    r.add_term(expvec_scale(m, static_cast<int>(k)), c);
  }
  return r;
}

LaurentSeries macmahon(int D) {
  require(D >= 0, "macmahon needs a nonnegative degree");
  TruncationSpec t = TruncationSpec::total(0, 2 * D);
  LaurentSeries r = LaurentSeries::one(1, t);
  for (int m = 1; m <= D; ++m) r = r * binom_pow({2 * m}, -1, -m, t);
  return r;
}

LaurentSeries principal_spec(const YoungDiagram& lambda, int D) {
  require(D >= 0, "principal_spec needs a nonnegative degree");
  TruncationSpec t = TruncationSpec::total(0, 2 * D);
  // Chains of row strips; variable i carries t^{i-1/2}.
  std::map<YoungDiagram, LaurentSeries> cur;
  cur.emplace(YoungDiagram(), LaurentSeries::one(1, t));
  int K = D + 1;
  for (int i = 1; i <= K; ++i) {
    std::map<YoungDiagram, LaurentSeries> next;
    for (auto& [mu, amp] : cur) {
      for (auto& nu : strips_above(mu, Dir::row, &lambda, -1)) {
        int boxes = nu.size() - mu.size();
        LaurentSeries contrib = amp * LaurentSeries::monomial({(2 * i - 1) * boxes}, 1, t);
        auto [it, inserted] = next.emplace(nu, contrib);
        if (!inserted) it->second += contrib;
      }
    }
    cur = std::move(next);
  }
  auto it = cur.find(lambda);
  if (it == cur.end()) return LaurentSeries(1, t);
  return it->second;
}

LaurentSeries regrade(const LaurentSeries& s, const std::vector<ExpVec>& alphas) {
  check(static_cast<int>(alphas.size()) == s.nvars(), "dictionary arity mismatch");
  int out_vars = alphas.empty() ? 0 : static_cast<int>(alphas[0].size());
  LaurentSeries r(out_vars, TruncationSpec::none());
  for (auto& [v, c] : s.terms()) {
    ExpVec u = expvec_zero(out_vars);
    for (int i = 0; i < s.nvars(); ++i) {
      check(v[i] % 2 == 0, "v-exponents must be integral");
      u = expvec_add(u, expvec_scale(alphas[i], v[i] / 2));
    }
    r.add_term(u, c);
  }
  return r;
}

}  // namespace ncdt

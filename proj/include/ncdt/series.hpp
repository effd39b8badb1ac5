#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <set>
#include <vector>

#include "ncdt/partition.hpp"

namespace ncdt {

using Coeff = boost::multiprecision::cpp_int;

// Exponent vector of a monomial; entries are doubled, so half-integer powers
// stay integral. Ordered lexicographically (this fixes the JSON term order).
using ExpVec = std::vector<int>;

ExpVec expvec_zero(int nvars);
ExpVec expvec_add(const ExpVec& a, const ExpVec& b);
ExpVec expvec_sub(const ExpVec& a, const ExpVec& b);
ExpVec expvec_neg(const ExpVec& a);
ExpVec expvec_scale(const ExpVec& a, int c);
int expvec_deg2(const ExpVec& a);  // doubled total degree

struct TruncationSpec {
  enum class Mode { none, total_degree, v_budget, component_box };
  Mode mode = Mode::none;
  // total_degree: the stored terms are the true ones with deg2 in [lo2, hi2],
  // and the true series has no terms below lo2.
  long long lo2 = 0, hi2 = 0;
  // v_budget: exponents lie in the nonnegative cone with deg2 <= budget2.
  long long budget2 = 0;
  // component_box: every stored term has |component| <= box2; completeness is
  // managed by the caller (used for operator-entry comparisons).
  long long box2 = 0;

  static TruncationSpec none();
  static TruncationSpec total(long long lo2, long long hi2);
  static TruncationSpec budget(long long budget2);
  static TruncationSpec box(long long box2);

  bool keeps(const ExpVec& e) const;
  bool operator==(const TruncationSpec&) const = default;
};

class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(int nvars, TruncationSpec trunc);
  static LaurentSeries one(int nvars, TruncationSpec trunc);
  static LaurentSeries monomial(const ExpVec& e, const Coeff& c, TruncationSpec trunc);

  int nvars() const { return nvars_; }
  const TruncationSpec& trunc() const { return trunc_; }
  const std::map<ExpVec, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff coeff(const ExpVec& e) const;

  void add_term(const ExpVec& e, const Coeff& c);
  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries operator-() const;
  LaurentSeries scaled(const Coeff& c) const;
  LaurentSeries shifted(const ExpVec& e) const;  // multiply by q^e

  // Reciprocal. The minimal-degree part must be a single monomial with
  // coefficient ±1 (total_degree mode: the window shifts to
  // [-lo2, hi2 - 2 lo2]; v_budget: the minimal term must sit at 0).
  LaurentSeries recip() const;

  // Divide by o and insist the quotient is a single monomial.
  std::pair<ExpVec, Coeff> divide_expect_monomial(const LaurentSeries& o) const;

  // Drop terms outside the given spec (which must be no looser than the
  // current one along the compared direction); used to line up windows.
  LaurentSeries restricted(TruncationSpec t) const;

 private:
  int nvars_ = 0;
  TruncationSpec trunc_;
  std::map<ExpVec, Coeff> terms_;
};

// Coefficientwise difference report on an explicit monomial set.
struct TermDiff {
  ExpVec exp;
  Coeff lhs, rhs;
};
std::vector<TermDiff> diff_on_set(const LaurentSeries& a, const LaurentSeries& b,
                                  const std::set<ExpVec>& monomials);

// Difference on the intersection of the two guaranteed total-degree windows.
std::vector<TermDiff> diff_on_windows(const LaurentSeries& a, const LaurentSeries& b);

// Binomial coefficient with integral upper argument of either sign.
Coeff binomial(long long e, long long k);

// (1 + sign q^m)^e expanded on the window of trunc; deg2(m) must be nonzero,
// and negative-direction m is first normalized through
// (1+s q^m)^e = s^e q^{em} (1+s q^{-m})^e.
LaurentSeries binom_pow(const ExpVec& m, int sign, long long e, const TruncationSpec& trunc);

// One-variable MacMahon series to degree D: prod_m (1-t^m)^{-m}.
LaurentSeries macmahon(int D);

// One-variable principal specialization s_lambda(t^{1/2}, t^{3/2}, ...) to
// degree D (doubled exponents carry the half-integer powers).
LaurentSeries principal_spec(const YoungDiagram& lambda, int D);

// Regrade a v-graded series through the dictionary alphas (column i is the
// image of v_i). The result carries no truncation metadata; completeness is
// whatever the input ball guarantees, managed by the caller.
LaurentSeries regrade(const LaurentSeries& s, const std::vector<ExpVec>& alphas);

}  // namespace ncdt

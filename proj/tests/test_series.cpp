#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncdt/error.hpp"
#include "ncdt/series.hpp"

using namespace ncdt;

namespace {

LaurentSeries geometric(int hi2) {
  // 1/(1-t) on [0, hi2].
  return binom_pow({2}, -1, -1, TruncationSpec::total(0, hi2));
}

}  // namespace

TEST_CASE("expvec helpers") {
  CHECK(expvec_add({1, 2}, {3, -1}) == ExpVec{4, 1});
  CHECK(expvec_sub({1, 2}, {3, -1}) == ExpVec{-2, 3});
  CHECK(expvec_deg2({3, -1}) == 2);
  CHECK(expvec_scale({1, -2}, 3) == ExpVec{3, -6});
}

TEST_CASE("truncation keeps") {
  CHECK(TruncationSpec::total(0, 4).keeps({2, 2}));
  CHECK_FALSE(TruncationSpec::total(0, 4).keeps({4, 2}));
  CHECK_FALSE(TruncationSpec::total(0, 4).keeps({-2, 0}));
  CHECK(TruncationSpec::budget(4).keeps({2, 2}));
  CHECK_FALSE(TruncationSpec::budget(4).keeps({-2, 4}));
  CHECK(TruncationSpec::box(4).keeps({-4, 4}));
  CHECK_FALSE(TruncationSpec::box(4).keeps({6, 0}));
}

TEST_CASE("multiplication narrows windows soundly") {
  auto ta = TruncationSpec::total(0, 8);
  auto tb = TruncationSpec::total(0, 4);
  LaurentSeries a = LaurentSeries::one(1, ta);
  a.add_term({2}, 1);
  LaurentSeries b = LaurentSeries::one(1, tb);
  b.add_term({2}, 1);
  auto p = a * b;
  CHECK(p.trunc().hi2 == 4);
  CHECK(p.coeff({0}) == 1);
  CHECK(p.coeff({2}) == 2);
  CHECK(p.coeff({4}) == 1);
}

TEST_CASE("reciprocal of 1-t") {
  LaurentSeries a = LaurentSeries::one(1, TruncationSpec::total(0, 10));
  a.add_term({2}, -1);
  auto r = a.recip();
  for (int k = 0; k <= 5; ++k) CHECK(r.coeff({2 * k}) == 1);
  auto prod = a * r;
  CHECK(prod.coeff({0}) == 1);
  for (int k = 1; k <= 5; ++k) CHECK(prod.coeff({2 * k}) == 0);
}

TEST_CASE("reciprocal shifts monomial windows") {
  // a = q^2 (1 + t): recip = q^{-2} (1 - t + t^2 - ...)
  LaurentSeries a(2, TruncationSpec::total(4, 12));
  a.add_term({4, 0}, 1);
  a.add_term({4, 2}, 1);
  auto r = a.recip();
  CHECK(r.trunc().lo2 == -4);
  CHECK(r.coeff({-4, 0}) == 1);
  CHECK(r.coeff({-4, 2}) == -1);
  CHECK(r.coeff({-4, 4}) == 1);
}

TEST_CASE("reciprocal rejects non-unit leads") {
  LaurentSeries a = LaurentSeries::one(1, TruncationSpec::total(0, 4)).scaled(2);
  CHECK_THROWS_AS(a.recip(), InternalError);
  // Two distinct minimal-degree terms.
  LaurentSeries c(2, TruncationSpec::total(0, 4));
  c.add_term({2, 0}, 1);
  c.add_term({0, 2}, 1);
  CHECK_THROWS_AS(c.recip(), InternalError);
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(-1, 3) == -1);
  CHECK(binomial(-3, 2) == 6);
  CHECK(binomial(2, 5) == 0);
}

TEST_CASE("binom_pow positive direction") {
  auto t = TruncationSpec::total(0, 8);
  auto s = binom_pow({2}, -1, -2, t);  // (1-t)^{-2} = sum (k+1) t^k
  for (int k = 0; k <= 4; ++k) CHECK(s.coeff({2 * k}) == k + 1);
  auto u = binom_pow({2}, 1, 3, t);  // (1+t)^3
  CHECK(u.coeff({0}) == 1);
  CHECK(u.coeff({2}) == 3);
  CHECK(u.coeff({4}) == 3);
  CHECK(u.coeff({6}) == 1);
  CHECK(u.coeff({8}) == 0);
}

TEST_CASE("binom_pow negative direction") {
  // (1 + q1^{-1}) = q1^{-1} + 1
  auto r = binom_pow({0, -2}, 1, 1, TruncationSpec::total(-2, 6));
  CHECK(r.coeff({0, -2}) == 1);
  CHECK(r.coeff({0, 0}) == 1);
  // (1 - q^{-1})^1 = -q^{-1}(1 - q)
  auto s = binom_pow({-2}, -1, 1, TruncationSpec::total(-2, 6));
  CHECK(s.coeff({-2}) == -1);
  CHECK(s.coeff({0}) == 1);
  // (1 + q^{-1})^{-1} = q - q^2 + q^3 - ...
  auto u = binom_pow({-2}, 1, -1, TruncationSpec::total(0, 8));
  CHECK(u.coeff({0}) == 0);
  CHECK(u.coeff({2}) == 1);
  CHECK(u.coeff({4}) == -1);
  CHECK(u.coeff({6}) == 1);
}

TEST_CASE("macmahon") {
  auto m = macmahon(5);
  std::vector<int> expect{1, 1, 3, 6, 13, 24};
  for (int k = 0; k <= 5; ++k) CHECK(m.coeff({2 * k}) == expect[k]);
  CHECK(macmahon(0).coeff({0}) == 1);
}

TEST_CASE("principal specialization") {
  auto s = principal_spec(YoungDiagram({1}), 3);
  CHECK(s.coeff({1}) == 1);
  CHECK(s.coeff({3}) == 1);
  CHECK(s.coeff({5}) == 1);
  CHECK(s.coeff({7}) == 0);

  auto e = principal_spec(YoungDiagram(), 3);
  CHECK(e.coeff({0}) == 1);
  CHECK(e.terms().size() == 1);

  auto h2 = principal_spec(YoungDiagram({2}), 2);
  CHECK(h2.coeff({2}) == 1);
  CHECK(h2.coeff({4}) == 1);
  auto v2 = principal_spec(YoungDiagram({1, 1}), 2);
  CHECK(v2.coeff({2}) == 0);
  CHECK(v2.coeff({4}) == 1);
}

TEST_CASE("geometric sanity") {
  auto g = geometric(10);
  for (int k = 0; k <= 5; ++k) CHECK(g.coeff({2 * k}) == 1);
}

TEST_CASE("regrade") {
  LaurentSeries v(2, TruncationSpec::budget(12));
  v.add_term({2, 4}, 7);  // v = (1, 2)
  std::vector<ExpVec> alphas{{-6, -4}, {4, 2}};
  auto q = regrade(v, alphas);
  CHECK(q.coeff({2, 0}) == 7);
  std::vector<ExpVec> id{{2, 0}, {0, 2}};
  auto same = regrade(v, id);
  CHECK(same.coeff({2, 4}) == 7);
}

TEST_CASE("divide expect monomial") {
  LaurentSeries a(1, TruncationSpec::total(0, 6));
  a.add_term({0}, 2);
  a.add_term({2}, 4);
  LaurentSeries b(1, TruncationSpec::total(2, 8));
  b.add_term({2}, 1);
  b.add_term({4}, 2);
  auto [shift, ratio] = a.divide_expect_monomial(b);
  CHECK(shift == ExpVec{-2});
  CHECK(ratio == 2);

  LaurentSeries c = b;
  c.add_term({6}, 1);
  CHECK_THROWS_AS(a.divide_expect_monomial(c), InternalError);
}

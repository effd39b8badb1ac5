#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "ncdt/crystal.hpp"
#include "ncdt/error.hpp"

using namespace ncdt;

namespace {

YoungDiagram yd(std::vector<int> rows) { return YoungDiagram(std::move(rows)); }

TypeData c3_type() { return TypeData(SigmaMap::parse("+"), ThetaMap::identity(1), {}, {}); }

TypeData conifold_type() { return TypeData(SigmaMap::parse("+-"), ThetaMap::identity(2), {}, {}); }

TypeData conifold_pp_type() {
  return TypeData(SigmaMap::parse("++"), ThetaMap::identity(2), {}, {});
}

TypeData conifold_lambda_type() {
  return TypeData(SigmaMap::parse("+-"), ThetaMap::identity(2), {}, {}, {yd({}), yd({1})});
}

TypeData conifold_nup_type() {
  return TypeData(SigmaMap::parse("+-"), ThetaMap::identity(2), {}, yd({1}));
}

TypeData reversed_type(int L, const std::string& sigma, const std::vector<int>& walls) {
  return TypeData(SigmaMap::parse(sigma), theta_from_walls(L, walls), {}, {}, {}, true);
}

bool same_transition(const TypeData& type, const Transition& a, const Transition& b) {
  int lo = std::min(a.lo, b.lo) - 2;
  int hi = std::max(a.hi(), b.hi()) + 2;
  for (int n = lo; n <= hi; ++n)
    if (!(a.at(type, n) == b.at(type, n))) return false;
  return true;
}

bool contains_transition(const TypeData& type, const Transition& big, const Transition& small) {
  int lo = std::min(big.lo, small.lo) - 2;
  int hi = std::max(big.hi(), small.hi()) + 2;
  for (int n = lo; n <= hi; ++n)
    if (!big.at(type, n).contains(small.at(type, n))) return false;
  return true;
}

void expect_terms(const LaurentSeries& s, std::map<ExpVec, long long> want) {
  std::map<ExpVec, Coeff> built;
  for (auto& [e, c] : want) built[e] = Coeff(c);
  bool equal = s.terms() == built;
  if (!equal) {
    for (auto& [e, c] : s.terms()) {
      std::string exp;
      for (int x : e) exp += std::to_string(x) + ",";
      MESSAGE("got  [" << exp << "] = " << c.str());
    }
    for (auto& [e, c] : built) {
      std::string exp;
      for (int x : e) exp += std::to_string(x) + ",";
      MESSAGE("want [" << exp << "] = " << c.str());
    }
  }
  CHECK(equal);
}

// All diagrams containing base with at most extra additional boxes.
std::vector<YoungDiagram> supersets(const YoungDiagram& base, int extra) {
  std::set<YoungDiagram> seen{base};
  std::vector<YoungDiagram> frontier{base};
  for (int step = 0; step < extra; ++step) {
    std::vector<YoungDiagram> next;
    for (auto& mu : frontier) {
      for (int r = 0; r <= mu.num_rows(); ++r) {
        int c = mu.row(r);
        if (r > 0 && mu.row(r - 1) <= c) continue;
        auto rows = mu.rows();
        if (r == mu.num_rows())
          rows.push_back(1);
        else
          rows[r]++;
        YoungDiagram grown(rows);
        if (seen.insert(grown).second) next.push_back(grown);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// Brute-force sweep: over every per-level superset family of the minimal
// transition within a generous window, the slotwise interlacing test and the
// lattice-arrow closure test must agree; the number of positives with the
// given box budget must match the enumerator.
void closure_oracle(const TypeData& type, int budget) {
  Transition vmin = minimal_transition(type);
  int reach = type.deviation_bound() / 2 + 1;
  int lo = std::min(vmin.lo, -reach) - budget - 1;
  int hi = std::max(vmin.hi(), reach) + budget + 1;
  std::vector<std::vector<std::pair<YoungDiagram, int>>> cands;
  for (int n = lo; n <= hi; ++n) {
    std::vector<std::pair<YoungDiagram, int>> c;
    const YoungDiagram& base = vmin.at(type, n);
    for (auto& d : supersets(base, budget))
      c.push_back({d, static_cast<int>(d.size() - base.size())});
    cands.push_back(std::move(c));
  }
  std::vector<YoungDiagram> cur(cands.size());
  long long positives = 0;
  bool all_agree = true;
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int left) {
    if (idx == cands.size()) {
      Transition v{lo, cur};
      bool slotwise = is_transition(type, v);
      bool closure = melting_closure_check(type, v);
      if (slotwise != closure && all_agree) {
        all_agree = false;
        for (int n = lo; n <= hi; ++n) {
          if (v.at(type, n).empty()) continue;
          std::string rows;
          for (int r : v.at(type, n).rows()) rows += std::to_string(r) + ",";
          MESSAGE("level " << n << ": [" << rows << "]");
        }
        MESSAGE("slotwise=" << slotwise << " closure=" << closure);
      }
      if (slotwise) positives++;
      return;
    }
    for (auto& [d, cost] : cands[idx]) {
      if (cost > left) continue;
      cur[idx] = d;
      rec(idx + 1, left - cost);
    }
  };
  rec(0, budget);
  CHECK(all_agree);
  CHECK(positives == static_cast<long long>(enumerate_crystals(type, budget).size()));
}

}  // namespace

TEST_CASE("type accessors") {
  TypeData coni = conifold_type();
  CHECK(coni.L() == 2);
  CHECK(coni.theta_eff(1) == 1);
  CHECK(coni.f_slot(1) == +1);
  CHECK(coni.f_slot(3) == -1);
  CHECK(coni.f_slot(-1) == -1);
  CHECK(coni.u_slot(1) == +1);
  CHECK(coni.u_slot(-1) == -1);
  CHECK(coni.far_u(-1) == -1);
  CHECK(coni.far_u(+1) == +1);

  TypeData lam = conifold_lambda_type();
  CHECK(lam.u_slot(3) == -1);   // mutated by the diagram at residue 3/2
  CHECK(lam.u_slot(-1) == +1);  // mutated on the negative side
  CHECK(lam.u_slot(1) == +1);
  CHECK(lam.u_slot(7) == +1);
  CHECK(lam.u_slot(-5) == -1);

  TypeData rev = reversed_type(2, "+-", {0, 1});
  CHECK(rev.theta_eff(1) == -5);
  CHECK(rev.theta_eff(3) == 1);
  CHECK(rev.far_u(-1) == +1);
  CHECK(rev.far_u(+1) == -1);

  CHECK_THROWS_AS(TypeData(SigmaMap::parse("+-"), ThetaMap::identity(2), yd({1}), {}, {}, true),
                  InputError);
  CHECK_THROWS_AS(TypeData(SigmaMap::parse("+"), ThetaMap::identity(2), {}, {}), InputError);
}

TEST_CASE("transition predicate fixtures") {
  TypeData coni = conifold_type();
  CHECK(is_transition(coni, Transition{0, {yd({})}}));
  CHECK(is_transition(coni, Transition{0, {yd({1})}}));
  CHECK_FALSE(is_transition(coni, Transition{0, {yd({2})}}));
  CHECK_FALSE(is_transition(coni, Transition{0, {yd({1, 1})}}));

  TypeData pp = conifold_pp_type();
  CHECK(is_transition(pp, Transition{0, {yd({2})}}));
  CHECK_FALSE(is_transition(pp, Transition{0, {yd({1, 1})}}));

  TypeData c3 = c3_type();
  CHECK(is_transition(c3, Transition{0, {yd({1})}}));
  CHECK(is_transition(c3, Transition{-1, {yd({1}), yd({2}), yd({1})}}));
}

TEST_CASE("minimal transition") {
  for (auto& type : {c3_type(), conifold_type(), conifold_pp_type(), conifold_lambda_type(),
                     reversed_type(1, "+", {}), reversed_type(2, "+-", {}),
                     reversed_type(2, "+-", {0}), reversed_type(2, "+-", {0, 1})}) {
    Transition vmin = minimal_transition(type);
    CHECK(same_transition(type, vmin, Transition{0, {yd({})}}));
  }

  TypeData coni = conifold_type();
  TypeData same(coni.sigma, coni.theta, yd({2, 1}), yd({2, 1}));
  Transition vsame = minimal_transition(same);
  CHECK(same_transition(same, vsame, Transition{0, {yd({2, 1})}}));

  TypeData nup = conifold_nup_type();
  Transition vmin = minimal_transition(nup);
  CHECK(vmin.at(nup, -1) == yd({}));
  CHECK(vmin.at(nup, 0) == yd({1}));
  CHECK(vmin.at(nup, 7) == yd({1}));
  CHECK(is_transition(nup, vmin));

  // Pointwise minimality against everything the enumerator produces.
  for (auto& type : {nup, conifold_lambda_type()}) {
    Transition base = minimal_transition(type);
    for (auto& [v, w] : enumerate_crystals(type, 3)) CHECK(contains_transition(type, v, base));
  }
}

TEST_CASE("enumeration counts for one color") {
  TypeData c3 = c3_type();
  LaurentSeries z = z_crystal(c3, 4);
  std::vector<long long> want = {1, 1, 3, 6, 13};
  for (int k = 0; k <= 4; ++k) CHECK(z.coeff({2 * k}) == Coeff(want[k]));

  // Cross-check against the box-stack enumerator.
  std::map<int, long long> hist;
  for (auto& solid : enumerate_legged(Legs{}, 4)) hist[solid.excess()]++;
  for (int k = 0; k <= 4; ++k) CHECK(hist[k] == want[k]);
}

TEST_CASE("enumeration fixtures for two colors") {
  TypeData coni = conifold_type();
  expect_terms(z_crystal(coni, 3),
               {{{0, 0}, 1}, {{2, 0}, 1}, {{2, 2}, 2}, {{2, 4}, 1}, {{4, 2}, 4}});

  TypeData pp = conifold_pp_type();
  LaurentSeries zpp = z_crystal(pp, 3);
  std::vector<long long> plane = {1, 1, 3, 6};
  for (int k = 0; k <= 3; ++k) {
    Coeff total = 0;
    for (auto& [e, c] : zpp.terms())
      if ((e[0] + e[1]) / 2 == k) total += c;
    CHECK(total == Coeff(plane[k]));
  }

  expect_terms(z_crystal(conifold_nup_type(), 1), {{{0, 0}, 1}, {{2, 0}, 1}, {{0, 2}, 1}});
}

TEST_CASE("budget zero yields only the minimum") {
  for (auto& type : {c3_type(), conifold_type(), conifold_lambda_type(), conifold_nup_type(),
                     reversed_type(2, "+-", {0, 1})}) {
    auto got = enumerate_crystals(type, 0);
    REQUIRE(got.size() == 1);
    CHECK(got[0].second == std::vector<int>(type.L(), 0));
    CHECK(same_transition(type, got[0].first, minimal_transition(type)));
  }
}

TEST_CASE("window widening is stable") {
  for (auto& type : {conifold_type(), conifold_lambda_type(), conifold_nup_type()}) {
    std::multiset<std::vector<int>> base, wide;
    for_each_crystal(
        type, 3, [&](const Transition&, const std::vector<int>& w) { base.insert(w); }, 0);
    for_each_crystal(
        type, 3, [&](const Transition&, const std::vector<int>& w) { wide.insert(w); }, 3);
    CHECK(base == wide);
  }
}

TEST_CASE("every crystal shrinks to a smaller one") {
  TypeData coni = conifold_type();
  std::map<int, std::vector<Transition>> by_size;
  for (auto& [v, w] : enumerate_crystals(coni, 3)) {
    int d = 0;
    for (int c : w) d += c;
    by_size[d].push_back(v);
  }
  for (auto& [d, list] : by_size) {
    if (d == 0) continue;
    for (auto& v : list) {
      bool found = false;
      for (auto& smaller : by_size[d - 1])
        if (contains_transition(coni, v, smaller)) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("slotwise test agrees with arrow closure") {
  closure_oracle(c3_type(), 3);
  closure_oracle(conifold_type(), 3);
  closure_oracle(conifold_pp_type(), 2);
  closure_oracle(conifold_lambda_type(), 2);
  closure_oracle(conifold_nup_type(), 2);
}

TEST_CASE("arrow closure witnesses") {
  TypeData coni = conifold_type();
  CHECK(melting_closure_check(coni, Transition{0, {yd({1})}}));
  CHECK_FALSE(melting_closure_check(coni, Transition{0, {yd({2})}}));
  CHECK(melting_closure_check(coni, minimal_transition(coni)));
  TypeData nup = conifold_nup_type();
  CHECK(melting_closure_check(nup, minimal_transition(nup)));
}

TEST_CASE("addable nodes and saturation") {
  TypeData c3 = c3_type();
  Transition empty{0, {yd({})}};
  auto [nodes0, grown0] = addable_saturate(c3, empty, 0);
  CHECK(nodes0 == std::vector<Node>{Node{0, 1, 1}});
  CHECK(same_transition(c3, grown0, Transition{0, {yd({1})}}));

  // One color means every level is live: the single-box crystal grows at
  // three spots in one pass.
  auto [nodes1, grown1] = addable_saturate(c3, grown0, 0);
  CHECK(nodes1 == std::vector<Node>{Node{-1, 1, 1}, Node{0, 1, 2}, Node{1, 1, 1}});
  CHECK(same_transition(c3, grown1, Transition{-1, {yd({1}), yd({2}), yd({1})}}));

  TypeData coni = conifold_type();
  auto [cn0, cg0] = addable_saturate(coni, empty, 0);
  CHECK(cn0 == std::vector<Node>{Node{0, 1, 1}});
  auto [cn0b, cg0b] = addable_saturate(coni, cg0, 0);
  CHECK(cn0b.empty());
  CHECK(same_transition(coni, cg0b, cg0));
  auto [cn1, cg1] = addable_saturate(coni, cg0, 1);
  CHECK(cn1 == std::vector<Node>{Node{-1, 1, 1}, Node{1, 1, 1}});
  CHECK(same_transition(coni, cg1, Transition{-1, {yd({1}), yd({1}), yd({1})}}));
  CHECK(crystal_weight(coni, cg1) == std::vector<int>{1, 2});

  // With a leg the first live level shifts away from the origin.
  TypeData lam = conifold_lambda_type();
  auto [ln, lg] = addable_saturate(lam, minimal_transition(lam), 0);
  CHECK(ln == std::vector<Node>{Node{2, 1, 1}});
  CHECK(same_transition(lam, lg, Transition{2, {yd({1})}}));

  CHECK_THROWS_AS(addable_saturate(coni, Transition{0, {yd({2})}}, 0), InputError);
  CHECK_THROWS_AS(addable_saturate(coni, empty, 2), InputError);
}

TEST_CASE("variable prefactor of the minimum") {
  CHECK(q_prefactor(c3_type()) == ExpVec{0});
  CHECK(q_prefactor(conifold_type()) == ExpVec{0, 0});
  CHECK(q_prefactor(conifold_lambda_type()) == ExpVec{0, 0});
  TypeData coni = conifold_type();
  TypeData same(coni.sigma, coni.theta, yd({2, 1}), yd({2, 1}));
  CHECK(q_prefactor(same) == ExpVec{0, 0});
  TypeData nup = conifold_nup_type();
  CHECK(q_prefactor(nup) == ExpVec{2, 0});
  CHECK(q_prefactor(nup, true) == ExpVec{2, 0});
  CHECK(q_prefactor(reversed_type(2, "+-", {0, 1})) == ExpVec{0, 0});
}

TEST_CASE("weight dictionary") {
  TypeData coni = conifold_type();
  CHECK(weight_dictionary(coni) == alpha_dictionary(coni.theta));
  TypeData chamber(coni.sigma, theta_from_walls(2, {1}), {}, {});
  CHECK(weight_dictionary(chamber) == alpha_dictionary(chamber.theta));
  CHECK(weight_dictionary(chamber) == std::vector<ExpVec>{{2, 4}, {0, -2}});

  CHECK(weight_dictionary(reversed_type(2, "+-", {})) == std::vector<ExpVec>{{-2, 0}, {0, -2}});
  CHECK(weight_dictionary(reversed_type(2, "+-", {0, 1})) ==
        std::vector<ExpVec>{{-6, -4}, {4, 2}});
}

TEST_CASE("reversed orientation polynomials") {
  for (auto& type : {reversed_type(1, "+", {}), reversed_type(2, "+-", {})}) {
    auto got = enumerate_crystals(type, 4);
    CHECK(got.size() == 1);
    CHECK(z_crystal(type, 4).coeff(expvec_zero(type.L())) == Coeff(1));
  }

  expect_terms(z_crystal(reversed_type(2, "+-", {0}), 3), {{{0, 0}, 1}, {{2, 0}, 1}});

  TypeData two = reversed_type(2, "+-", {0, 1});
  LaurentSeries z5 = z_crystal(two, 5);
  std::map<ExpVec, long long> want = {{{0, 0}, 1}, {{0, 2}, 2}, {{0, 4}, 1},
                                      {{2, 4}, 1}, {{2, 6}, 2}, {{2, 8}, 1}};
  expect_terms(z5, want);
  // The count saturates: larger budgets add nothing.
  CHECK(enumerate_crystals(two, 7).size() == 8);
  expect_terms(z_crystal(two, 7), want);

  LaurentSeries regraded = regrade(z5, weight_dictionary(two));
  expect_terms(regraded, {{{0, 0}, 1}, {{2, 0}, 1}, {{4, 2}, 2},
                          {{6, 2}, 2}, {{8, 4}, 1}, {{10, 4}, 1}});
}

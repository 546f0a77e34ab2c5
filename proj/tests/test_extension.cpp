#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "frobex/cyclo.hpp"
#include "frobex/dualmod.hpp"
#include "frobex/errors.hpp"
#include "frobex/extension.hpp"
#include "frobex/finring.hpp"
#include "frobex/sgring.hpp"
#include "oracles.hpp"

using namespace frobex;

namespace {

Cyclo q(long num, long den) { return Cyclo(Rational(num, den)); }

WeightFn lee_weight(const FrobeniusBimodule& A) {
  WeightFn w(A);
  w[1] = Cyclo(1);
  w[2] = Cyclo(2);
  w[3] = Cyclo(1);
  return w;
}

// rational weight on the triangular dual, constant on its two-sided orbits
WeightFn triangular_test_weight(const FrobeniusBimodule& A) {
  WeightFn w(A);
  w[A.index_of_label("(0,0,1)")] = Cyclo(1);
  w[A.index_of_label("(1,0,0)")] = Cyclo(2);
  w[A.index_of_label("(1,0,1)")] = Cyclo(4);
  for (const char* lab : {"(0,1,0)", "(0,1,1)", "(1,1,0)", "(1,1,1)"})
    w[A.index_of_label(lab)] = Cyclo(1);
  return w;
}

std::vector<FiniteRing> corpus() {
  std::vector<FiniteRing> out;
  out.push_back(FiniteRing::zn(4));
  out.push_back(FiniteRing::zn(8));
  out.push_back(FiniteRing::zn(9));
  out.push_back(FiniteRing::matrix_ring(1, 4));
  out.push_back(FiniteRing::matrix_ring(2, 2));
  out.push_back(FiniteRing::upper_triangular(2, 2));
  return out;
}

}  // namespace

TEST_CASE("epsilon point values and augmentation", "[extension]") {
  {
    FiniteRing R = FiniteRing::zn(4);
    SgFn e = epsilon(R);
    REQUIRE(e[0] == Cyclo(1));
    REQUIRE(e[1] == q(-1, 2));
    REQUIRE(e[2] == Cyclo(0));
    REQUIRE(e[3] == q(-1, 2));
    REQUIRE(in_R0(e));
    REQUIRE(is_bi_invariant(e));
  }
  {
    FiniteRing R = FiniteRing::upper_triangular(2, 2);
    SgFn e = epsilon(R);
    REQUIRE(e[R.zero()] == Cyclo(1));
    for (int u : R.units()) REQUIRE(e[u] == q(-1, 2));
    REQUIRE(e[R.index_of_label("[0,0,1]")] == Cyclo(0));
    REQUIRE(e[R.index_of_label("[0,1,0]")] == Cyclo(0));
    REQUIRE(in_R0(e));
  }
  {
    FiniteRing R1 = FiniteRing::zn(1);
    SgFn e = epsilon(R1);
    REQUIRE(e[0] == Cyclo(0));
    REQUIRE(in_R0(e));
  }
}

TEST_CASE("homogeneous weight of the integers mod 4 is the lee weight", "[extension]") {
  FiniteRing R = FiniteRing::zn(4);
  FrobeniusBimodule A(R);
  WeightFn wh = homogeneous_weight(A);
  REQUIRE(wh == lee_weight(A));
}

TEST_CASE("homogeneous weight averages one over nonzero right submodules", "[extension]") {
  for (const FiniteRing& R : corpus()) {
    FrobeniusBimodule A(R);
    WeightFn wh = homogeneous_weight(A);
    REQUIRE(in_A0(wh));
    REQUIRE(is_bi_invariant(wh));
    auto submods = oracles::right_submodules(A);
    REQUIRE(oracles::submodule_averages_are_one(A, wh, submods));
    // the generating character sums to zero over every nonzero right submodule
    for (const auto& S : submods) {
      if (S.size() > 1) REQUIRE(chi_sum_over(A, S) == Cyclo(0));
    }
  }
}

TEST_CASE("fourier transform of epsilon is the homogeneous weight", "[extension]") {
  for (const FiniteRing& R :
       {FiniteRing::zn(4), FiniteRing::upper_triangular(2, 2), FiniteRing::matrix_ring(2, 2)}) {
    FrobeniusBimodule A(R);
    SgFn e = epsilon(R);
    // raw evaluation of the transform, independent of the library routine
    WeightFn direct(A);
    for (int a = 0; a < A.size(); ++a) {
      Cyclo acc;
      for (int r = 0; r < R.size(); ++r) acc += e[r] * A.value(a, r);
      direct[a] = acc;
    }
    REQUIRE(direct == homogeneous_weight(A));
    REQUIRE(fourier(A, e) == direct);
  }
}

TEST_CASE("right submodule enumeration with generators", "[extension]") {
  {
    FiniteRing R = FiniteRing::zn(4);
    FrobeniusBimodule A(R);
    auto subs = all_right_submodules(A);
    REQUIRE(subs.size() == 3);
    REQUIRE(subs[0].elements == std::vector<int>{0});
    REQUIRE(subs[1].elements == std::vector<int>{0, 2});
    REQUIRE(subs[2].elements == std::vector<int>{0, 1, 2, 3});
    for (const auto& S : subs)
      REQUIRE(A.submodule_span(Submodule::Side::kRight, S.generators).elements == S.elements);
  }
  {
    FiniteRing R = FiniteRing::upper_triangular(2, 2);
    FrobeniusBimodule A(R);
    auto subs = all_right_submodules(A);
    REQUIRE(subs.size() == 7);
    std::vector<size_t> sizes;
    for (const auto& S : subs) sizes.push_back(S.elements.size());
    REQUIRE(sizes == std::vector<size_t>{1, 2, 2, 4, 4, 4, 8});
    REQUIRE(subs[1].elements == std::vector<int>{0, 1});
    REQUIRE(subs[2].elements == std::vector<int>{0, 4});
    REQUIRE(subs[3].elements == std::vector<int>{0, 1, 2, 3});
    REQUIRE(subs[4].elements == std::vector<int>{0, 1, 4, 5});
    REQUIRE(subs[5].elements == std::vector<int>{0, 1, 6, 7});
    // the full module is not cyclic: it needs the least generating pair
    REQUIRE(subs[6].generators == std::vector<int>{2, 4});
    for (const auto& S : subs)
      REQUIRE(A.submodule_span(Submodule::Side::kRight, S.generators).elements == S.elements);
    // agreement with the independent subgroup-closure enumeration
    std::set<std::vector<int>> lib;
    for (const auto& S : subs) lib.insert(S.elements);
    auto oracle = oracles::right_submodules(A);
    REQUIRE(lib == std::set<std::vector<int>>(oracle.begin(), oracle.end()));
    REQUIRE_THROWS_AS(all_right_submodules(A, 2), ResourceError);
  }
}

TEST_CASE("condition report for the lee weight", "[extension]") {
  FiniteRing R = FiniteRing::zn(4);
  FrobeniusBimodule A(R);
  ConditionReport rep = check_condition(A, lee_weight(A));
  REQUIRE(rep.verdict);
  REQUIRE(rep.rows.size() == 2);
  REQUIRE(rep.rows[0].S.elements == std::vector<int>{0, 2});
  REQUIRE(rep.rows[0].direct_value == Cyclo(-2));
  REQUIRE(rep.rows[0].mobius_value == Cyclo(-2));
  REQUIRE(rep.rows[0].nonzero);
  REQUIRE(rep.rows[1].S.elements == std::vector<int>{0, 1, 2, 3});
  REQUIRE(rep.rows[1].direct_value == Cyclo(-2));
  REQUIRE(rep.rows[1].nonzero);
}

TEST_CASE("condition report for degenerate weights", "[extension]") {
  FiniteRing R = FiniteRing::zn(4);
  FrobeniusBimodule A(R);
  {
    ConditionReport rep = check_condition(A, WeightFn(A));
    REQUIRE_FALSE(rep.verdict);
    for (const auto& row : rep.rows) {
      REQUIRE(row.direct_value == Cyclo(0));
      REQUIRE_FALSE(row.nonzero);
    }
  }
  {
    WeightFn w(A);
    w[1] = Cyclo(1);
    w[3] = Cyclo(1);
    ConditionReport rep = check_condition(A, w);
    REQUIRE_FALSE(rep.verdict);
    REQUIRE(rep.rows[0].S.elements == std::vector<int>{0, 2});
    REQUIRE(rep.rows[0].direct_value == Cyclo(0));
    REQUIRE(rep.rows[1].direct_value == Cyclo(0));
  }
}

TEST_CASE("condition report for a generic triangular weight", "[extension]") {
  FiniteRing R = FiniteRing::upper_triangular(2, 2);
  FrobeniusBimodule A(R);
  ConditionReport rep = check_condition(A, triangular_test_weight(A));
  REQUIRE(rep.verdict);
  REQUIRE(rep.rows.size() == 6);
  const std::vector<long> expect = {-1, -2, -1, 1, -1, 1};
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    REQUIRE(rep.rows[i].direct_value == Cyclo(expect[i]));
    REQUIRE(rep.rows[i].mobius_value == Cyclo(expect[i]));
    REQUIRE(rep.rows[i].nonzero);
  }
}

TEST_CASE("both condition forms agree on random bi-invariant weights", "[extension]") {
  std::mt19937_64 rng(424242);
  for (const FiniteRing& R : corpus()) {
    FrobeniusBimodule A(R);
    for (int trial = 0; trial < 5; ++trial) {
      WeightFn w = oracles::random_biinvariant_weight(A, rng);
      ConditionReport rep = check_condition(A, w);
      for (const auto& row : rep.rows) {
        REQUIRE(row.direct_value == row.mobius_value);
        REQUIRE(row.nonzero == !(row.direct_value == Cyclo(0)));
      }
    }
  }
}

TEST_CASE("annihilator submodules of ring elements", "[extension]") {
  FiniteRing R = FiniteRing::upper_triangular(2, 2);
  FrobeniusBimodule A(R);
  REQUIRE(s_r(A, R.zero()).elements == std::vector<int>{0});
  REQUIRE(s_r(A, R.one()).elements.size() == 8);
  // ann_lt([0,0,1]) kills exactly the characters with vanishing first exponent
  REQUIRE(s_r(A, R.index_of_label("[0,0,1]")).elements == std::vector<int>{0, 1, 2, 3});
  for (int r = 0; r < R.size(); ++r)
    REQUIRE(A.is_submodule(Submodule::Side::kRight, s_r(A, r).elements));
}

TEST_CASE("gamma for the lee weight", "[extension]") {
  FiniteRing R = FiniteRing::zn(4);
  FrobeniusBimodule A(R);
  WeightFn w = lee_weight(A);
  SgFn wt = inverse_fourier(w);
  REQUIRE(wt[0] == Cyclo(1));
  REQUIRE(wt[1] == q(-1, 2));
  REQUIRE(wt[2] == Cyclo(0));
  REQUIRE(wt[3] == q(-1, 2));
  SgFn g = construct_gamma(w, A);
  REQUIRE(g[0] == Cyclo(-1));
  REQUIRE(g[1] == q(1, 2));
  REQUIRE(g[2] == Cyclo(0));
  REQUIRE(g[3] == q(1, 2));
  REQUIRE(convolve(wt, g) == epsilon(R));
  REQUIRE(correlate(w, g) == homogeneous_weight(A));
  auto sys = oracles::gamma_system(A, w);
  REQUIRE(sys.solution.consistent);
  REQUIRE(oracles::satisfies(sys, g));
}

TEST_CASE("gamma for a generic triangular weight", "[extension]") {
  FiniteRing R = FiniteRing::upper_triangular(2, 2);
  FrobeniusBimodule A(R);
  WeightFn w = triangular_test_weight(A);
  SgFn wt = inverse_fourier(w);
  const std::vector<Rational> wt_expect = {Rational(11, 8), Rational(-3, 8), Rational(3, 8),
                                           Rational(-3, 8), Rational(-5, 8), Rational(1, 8),
                                           Rational(-5, 8), Rational(1, 8)};
  for (int r = 0; r < R.size(); ++r) REQUIRE(wt[r] == Cyclo(wt_expect[r]));
  SgFn g = construct_gamma(w, A);
  const std::vector<Rational> g_expect = {Rational(-4), Rational(3),     Rational(-3),
                                          Rational(3),  Rational(5, 2),  Rational(-2),
                                          Rational(5, 2), Rational(-2)};
  for (int r = 0; r < R.size(); ++r) REQUIRE(g[r] == Cyclo(g_expect[r]));
  REQUIRE(convolve(wt, g) == epsilon(R));
  REQUIRE(correlate(w, g) == homogeneous_weight(A));
  // the walk order over orbits must not affect the result
  REQUIRE(construct_gamma(w, A, GammaOrder::kMaxIndexFirst) == g);
  auto sys = oracles::gamma_system(A, w);
  REQUIRE(sys.solution.consistent);
  REQUIRE(oracles::satisfies(sys, g));
}

TEST_CASE("gamma solves the linear system on random condition passing weights", "[extension]") {
  std::mt19937_64 rng(777);
  for (const FiniteRing& R : corpus()) {
    FrobeniusBimodule A(R);
    auto submods = oracles::right_submodules(A);
    for (int trial = 0; trial < 3; ++trial) {
      WeightFn w = oracles::random_condition_passing_weight(A, rng, submods);
      SgFn g = construct_gamma(w, A);
      auto sys = oracles::gamma_system(A, w);
      REQUIRE(sys.solution.consistent);
      REQUIRE(oracles::satisfies(sys, g));
      if (sys.solution.nullity == 0) {
        for (int r = 0; r < R.size(); ++r) REQUIRE(g[r] == sys.solution.particular[r]);
      }
      REQUIRE(construct_gamma(w, A, GammaOrder::kMaxIndexFirst) == g);
    }
  }
}

TEST_CASE("equal part factorizations match the unit annihilator parametrization", "[extension]") {
  for (const FiniteRing& R : corpus()) {
    FrobeniusBimodule A(R);
    WeightFn w = homogeneous_weight(A);
    SgFn wt = inverse_fourier(w);
    std::vector<long> lsize(R.size());
    for (int r = 0; r < R.size(); ++r)
      lsize[r] = static_cast<long>(R.principal_left_ideal(r).elements.size());
    for (const auto& orb : two_sided_orbits(R)) {
      const int r = orb.front();
      if (r == R.zero() || R.is_unit(r)) continue;
      // equal-part factorizations s t = r with R t = R r
      std::set<std::pair<int, int>> eq;
      for (const auto& [s, t] : R.factorizations(r)) {
        REQUIRE(lsize[t] >= lsize[r]);  // R r is contained in R t whenever s t = r
        if (lsize[t] == lsize[r]) eq.insert({s, t});
      }
      // the parametrization by (q, u) covers eq once per left stabilizer element
      const auto ann = R.left_annihilator(r).elements;
      long stab = 0;
      for (int u : R.units())
        if (R.mul(u, r) == r) ++stab;
      std::map<std::pair<int, int>, long> hits;
      for (int qq : ann) {
        const int opq = R.add(R.one(), qq);
        for (int u : R.units()) {
          const int s = R.mul(opq, R.unit_inverse(u));
          const int t = R.mul(u, r);
          ++hits[{s, t}];
        }
      }
      std::set<std::pair<int, int>> param;
      for (const auto& [pr, count] : hits) {
        param.insert(pr);
        REQUIRE(count == stab);
      }
      REQUIRE(param == eq);
      REQUIRE(static_cast<long>(ann.size()) * static_cast<long>(R.units().size()) ==
              stab * static_cast<long>(eq.size()));
      // the two denominator forms differ exactly by the stabilizer factor
      Cyclo den_direct;
      for (const auto& [s, t] : eq) den_direct += wt[s];
      Cyclo den_param;
      for (int qq : ann) den_param += wt[R.add(R.one(), qq)];
      REQUIRE(Cyclo(stab) * den_direct ==
              Cyclo(static_cast<long>(R.units().size())) * den_param);
    }
  }
}

TEST_CASE("annihilator sums of the inverse transform against weighted character sums",
          "[extension]") {
  std::mt19937_64 rng(5150);
  for (const FiniteRing& R : corpus()) {
    FrobeniusBimodule A(R);
    std::vector<WeightFn> weights;
    weights.push_back(homogeneous_weight(A));
    weights.push_back(oracles::random_biinvariant_weight(A, rng));
    for (const WeightFn& w : weights) {
      SgFn wt = inverse_fourier(w);
      for (int r = 0; r < R.size(); ++r) {
        if (r == R.zero() || R.is_unit(r)) continue;
        const auto ann = R.left_annihilator(r).elements;
        Cyclo lhs;
        for (int qq : ann) lhs += wt[R.add(R.one(), qq)];
        lhs = Cyclo(static_cast<long>(A.size())) * lhs;
        Cyclo rhs;
        for (int a : s_r(A, r).elements) rhs += w[a] * A.chi(a);
        rhs = Cyclo(static_cast<long>(ann.size())) * rhs;
        REQUIRE(lhs == rhs);
      }
    }
  }
}

TEST_CASE("certificates for named weights", "[extension]") {
  {
    FiniteRing R = FiniteRing::zn(4);
    FrobeniusBimodule A(R);
    ExtensionCertificate cert = certify(A, lee_weight(A));
    REQUIRE(cert.valid);
    REQUIRE(cert.condition_ok);
    REQUIRE(cert.conv_identity_ok);
    REQUIRE(cert.whom_identity_ok);
    REQUIRE(cert.gamma_bi_invariant);
    REQUIRE(cert.gamma_in_r0);
    REQUIRE(cert.gamma.has_value());
    REQUIRE((*cert.gamma)[0] == Cyclo(-1));
    REQUIRE(cert.biinv_system_unknowns == 3);
    REQUIRE(cert.biinv_system_rank == 3);
    REQUIRE(cert.gamma_unique_in_r0_biinvariant);
    REQUIRE(cert.chi_provenance == "evaluation-at-one");
  }
  {
    FiniteRing R = FiniteRing::upper_triangular(2, 2);
    FrobeniusBimodule A(R);
    ExtensionCertificate cert = certify(A, triangular_test_weight(A));
    REQUIRE(cert.valid);
    REQUIRE(cert.biinv_system_unknowns == 5);
    REQUIRE(cert.biinv_system_rank == 5);
    REQUIRE(cert.gamma_unique_in_r0_biinvariant);
  }
  {
    FiniteRing R = FiniteRing::zn(4);
    FrobeniusBimodule A(R);
    WeightFn w(A);
    w[1] = Cyclo(1);
    w[3] = Cyclo(1);
    ExtensionCertificate cert = certify(A, w);
    REQUIRE_FALSE(cert.condition_ok);
    REQUIRE_FALSE(cert.valid);
    REQUIRE_FALSE(cert.gamma.has_value());
    REQUIRE_FALSE(cert.condition.rows[0].nonzero);
  }
}

TEST_CASE("homogeneous certificates across the corpus", "[extension]") {
  const std::vector<int> expect_unknowns = {3, 4, 3, 2, 3, 5};
  auto rings = corpus();
  for (size_t i = 0; i < rings.size(); ++i) {
    FrobeniusBimodule A(rings[i]);
    ExtensionCertificate cert = certify(A, homogeneous_weight(A));
    REQUIRE(cert.valid);
    REQUIRE(cert.biinv_system_unknowns == expect_unknowns[i]);
    REQUIRE(cert.biinv_system_rank == expect_unknowns[i]);
    REQUIRE(cert.gamma_unique_in_r0_biinvariant);
  }
}

TEST_CASE("input validation for condition and gamma", "[extension]") {
  FiniteRing R = FiniteRing::zn(4);
  FrobeniusBimodule A(R);
  {
    WeightFn w(A);
    w[1] = Cyclo(1);  // w(3) differs, so not constant on the unit orbit
    REQUIRE_THROWS_AS(check_condition(A, w), InputError);
    REQUIRE_THROWS_WITH(check_condition(A, w),
                        Catch::Matchers::ContainsSubstring("not bi-invariant"));
  }
  {
    WeightFn w = lee_weight(A);
    w[0] = Cyclo(1);
    REQUIRE_THROWS_AS(check_condition(A, w), InputError);
    REQUIRE_THROWS_WITH(check_condition(A, w),
                        Catch::Matchers::ContainsSubstring("vanish at 0"));
  }
  {
    FiniteRing R2 = FiniteRing::zn(4);
    FrobeniusBimodule A2(R2);
    REQUIRE_THROWS_AS(check_condition(A, WeightFn(A2)), InputError);
  }
  {
    WeightFn w(A);
    w[1] = Cyclo(1);
    w[3] = Cyclo(1);
    REQUIRE_THROWS_AS(construct_gamma(w, A), ConditionError);
    REQUIRE_THROWS_WITH(construct_gamma(w, A),
                        Catch::Matchers::ContainsSubstring("condition fails"));
  }
}

TEST_CASE("one element ring is fully certified", "[extension]") {
  FiniteRing R = FiniteRing::zn(1);
  FrobeniusBimodule A(R);
  WeightFn w(A);
  ConditionReport rep = check_condition(A, w);
  REQUIRE(rep.verdict);
  REQUIRE(rep.rows.empty());
  SgFn g = construct_gamma(w, A);
  REQUIRE(g == SgFn(R));
  ExtensionCertificate cert = certify(A, w);
  REQUIRE(cert.valid);
  REQUIRE(cert.biinv_system_unknowns == 1);
  REQUIRE(cert.gamma_unique_in_r0_biinvariant);
}

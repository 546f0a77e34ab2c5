#include <algorithm>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "frobex/dualmod.hpp"
#include "frobex/finring.hpp"
#include "frobex/mobius.hpp"
#include "oracles.hpp"

using namespace frobex;

namespace {

std::vector<size_t> node_sizes(const CyclicPoset& P) {
  std::vector<size_t> out;
  for (const auto& n : P.nodes) out.push_back(n.elements.size());
  return out;
}

std::vector<std::string> node_reps(const CyclicPoset& P) {
  std::vector<std::string> out;
  for (const auto& n : P.nodes) out.push_back(P.A->label(n.rep));
  return out;
}

void check_poset_invariants(const FrobeniusBimodule& A) {
  CyclicPoset P = build_cyclic_poset(A);
  const size_t k = P.nodes.size();
  // partial order axioms
  for (size_t i = 0; i < k; ++i) {
    REQUIRE(P.leq[i][i] == 1);
    REQUIRE(P.leq[0][i] == 1);
    for (size_t j = 0; j < k; ++j) {
      if (i != j && P.leq[i][j]) REQUIRE(P.leq[j][i] == 0);
      for (size_t l = 0; l < k; ++l)
        if (P.leq[i][j] && P.leq[j][l]) REQUIRE(P.leq[i][l] == 1);
    }
  }
  // generator orbits partition A and node_of_generator is consistent
  std::set<int> covered;
  size_t total = 0;
  for (size_t i = 0; i < k; ++i) {
    const auto& node = P.nodes[i];
    REQUIRE(node.orbit == A.right_unit_orbit(node.rep));
    REQUIRE(node.rep == node.orbit.front());
    total += node.orbit.size();
    covered.insert(node.orbit.begin(), node.orbit.end());
    for (int a : node.orbit) {
      REQUIRE(P.node_of_generator[a] == static_cast<int>(i));
      REQUIRE(A.principal_right_submodule(a).elements == node.elements);
    }
  }
  REQUIRE(total == covered.size());
  REQUIRE(covered.size() == static_cast<size_t>(A.size()));
  // defining recursion: the interval sums below any nonzero node vanish
  MobiusTable t = mobius_by_recursion(P);
  REQUIRE(t.mu[0] == 1);
  for (size_t j = 1; j < k; ++j) {
    long acc = 0;
    for (size_t i = 0; i < k; ++i)
      if (P.leq[i][j]) acc += t.mu[i];
    REQUIRE(acc == 0);
  }
  // the character route must agree
  REQUIRE(mobius_by_character(P).mu == t.mu);
}

}  // namespace

TEST_CASE("moebius table of the dual of the integers mod 4", "[mobius]") {
  FiniteRing R = FiniteRing::zn(4);
  FrobeniusBimodule A(R);
  CyclicPoset P = build_cyclic_poset(A);
  REQUIRE(node_sizes(P) == std::vector<size_t>{1, 2, 4});
  REQUIRE(node_reps(P) == std::vector<std::string>{"(0)", "(2)", "(1)"});
  REQUIRE(P.nodes[2].orbit ==
          std::vector<int>{A.index_of_label("(1)"), A.index_of_label("(3)")});
  REQUIRE(mobius_by_recursion(P).mu == std::vector<long>{1, -1, 0});
  REQUIRE(mobius_by_character(P).mu == std::vector<long>{1, -1, 0});
  check_poset_invariants(A);
}

TEST_CASE("moebius table of the dual of the triangular ring", "[mobius]") {
  FiniteRing R = FiniteRing::upper_triangular(2, 2);
  FrobeniusBimodule A(R);
  CyclicPoset P = build_cyclic_poset(A);
  REQUIRE(node_sizes(P) == std::vector<size_t>{1, 2, 2, 4, 4, 4});
  REQUIRE(node_reps(P) == std::vector<std::string>{"(0,0,0)", "(0,0,1)", "(1,0,0)",
                                                   "(0,1,0)", "(1,0,1)", "(1,1,0)"});
  REQUIRE(mobius_by_recursion(P).mu == std::vector<long>{1, -1, -1, 0, 1, 0});
  REQUIRE(mobius_by_character(P).mu == std::vector<long>{1, -1, -1, 0, 1, 0});

  // containments among the nontrivial nodes
  auto node_by_rep = [&](const char* lab) {
    return P.node_of_generator[A.index_of_label(lab)];
  };
  const int n001 = node_by_rep("(0,0,1)");
  const int n100 = node_by_rep("(1,0,0)");
  const int n010 = node_by_rep("(0,1,0)");
  const int n101 = node_by_rep("(1,0,1)");
  const int n110 = node_by_rep("(1,1,0)");
  REQUIRE(P.leq[n100][n101] == 1);
  REQUIRE(P.leq[n100][n010] == 0);
  REQUIRE(P.leq[n100][n110] == 0);
  REQUIRE(P.leq[n001][n010] == 1);
  REQUIRE(P.leq[n001][n101] == 1);
  REQUIRE(P.leq[n001][n110] == 1);
  // no top: the three largest nodes are pairwise incomparable maximal nodes
  int maximal = 0;
  for (size_t j = 0; j < P.nodes.size(); ++j) {
    bool is_max = true;
    for (size_t l = 0; l < P.nodes.size(); ++l)
      if (l != j && P.leq[j][l]) is_max = false;
    if (is_max) ++maximal;
  }
  REQUIRE(maximal == 3);
  check_poset_invariants(A);
}

TEST_CASE("moebius tables of chain and matrix duals", "[mobius]") {
  {
    FiniteRing R = FiniteRing::zn(8);
    FrobeniusBimodule A(R);
    CyclicPoset P = build_cyclic_poset(A);
    REQUIRE(node_sizes(P) == std::vector<size_t>{1, 2, 4, 8});
    REQUIRE(mobius_by_recursion(P).mu == std::vector<long>{1, -1, 0, 0});
  }
  {
    FiniteRing R = FiniteRing::zn(9);
    FrobeniusBimodule A(R);
    CyclicPoset P = build_cyclic_poset(A);
    REQUIRE(node_sizes(P) == std::vector<size_t>{1, 3, 9});
    REQUIRE(mobius_by_recursion(P).mu == std::vector<long>{1, -1, 0});
  }
  {
    FiniteRing R = FiniteRing::matrix_ring(2, 2);
    FrobeniusBimodule A(R);
    CyclicPoset P = build_cyclic_poset(A);
    REQUIRE(node_sizes(P) == std::vector<size_t>{1, 4, 4, 4, 16});
    REQUIRE(mobius_by_recursion(P).mu == std::vector<long>{1, -1, -1, -1, 2});
    check_poset_invariants(A);
  }
}

TEST_CASE("character sums over generator orbits", "[mobius]") {
  FiniteRing R = FiniteRing::upper_triangular(2, 2);
  FrobeniusBimodule A(R);
  CyclicPoset P = build_cyclic_poset(A);
  const std::vector<long> expect = {1, -1, -1, 0, 1, 0};
  for (size_t j = 0; j < P.nodes.size(); ++j) {
    REQUIRE(chi_sum_over(A, P.nodes[j].orbit) == Cyclo(expect[j]));
  }
  // zeta4 + zeta4^3 = 0 gives the vanishing top value mod 4
  FiniteRing R4 = FiniteRing::zn(4);
  FrobeniusBimodule A4(R4);
  REQUIRE(chi_sum_over(A4, {A4.index_of_label("(1)"), A4.index_of_label("(3)")}) == Cyclo(0));
  REQUIRE(chi_sum_over(A4, {A4.index_of_label("(2)")}) == Cyclo(-1));
}

TEST_CASE("right unit orbit partition of the dual module", "[mobius]") {
  for (const FiniteRing& R : {FiniteRing::zn(6), FiniteRing::upper_triangular(2, 2),
                              FiniteRing::matrix_ring(1, 4)}) {
    FrobeniusBimodule A(R);
    auto orbits = right_unit_orbits(A);
    std::set<int> covered;
    size_t total = 0;
    for (const auto& o : orbits) {
      REQUIRE(!o.empty());
      REQUIRE(std::is_sorted(o.begin(), o.end()));
      total += o.size();
      covered.insert(o.begin(), o.end());
      for (int a : o) REQUIRE(A.right_unit_orbit(a) == o);
    }
    REQUIRE(total == covered.size());
    REQUIRE(covered.size() == static_cast<size_t>(A.size()));
  }
}

TEST_CASE("poset invariants on the remaining corpus duals", "[mobius]") {
  check_poset_invariants(FrobeniusBimodule(FiniteRing::zn(8)));
  check_poset_invariants(FrobeniusBimodule(FiniteRing::zn(9)));
  check_poset_invariants(FrobeniusBimodule(FiniteRing::matrix_ring(1, 4)));
  check_poset_invariants(FrobeniusBimodule(FiniteRing::zn(1)));
}

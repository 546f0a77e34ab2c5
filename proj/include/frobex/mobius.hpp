#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "frobex/cyclo.hpp"
#include "frobex/dualmod.hpp"
#include "frobex/errors.hpp"

namespace frobex {

/**
 * The poset P of cyclic right submodules {aR : a in A}, ordered by
 * inclusion, and its Moebius function mu(0, -) computed two independent
 * ways: by the defining recursion, and as a character sum over generator
 * orbits.  The two must agree; a mismatch is a hard internal error.
 *
 * Construction verifies the orbit description of generators: aR = bR exactly
 * when aU = bU (U the unit group), so each node's generator set is a single
 * right unit orbit.
 */
struct CyclicPoset {
  struct Node {
    int rep = 0;                // least generator
    std::vector<int> orbit;     // all generators of this node, = rep . U, sorted
    std::vector<int> elements;  // the submodule aR, sorted
  };

  const FrobeniusBimodule* A = nullptr;
  std::vector<Node> nodes;             // sorted by (|aR|, rep); node 0 is {0}
  std::vector<std::vector<char>> leq;  // leq[i][j]: nodes[i] contained in nodes[j]
  std::vector<int> node_of_generator;  // a -> index of the node generated by a
};

inline CyclicPoset build_cyclic_poset(const FrobeniusBimodule& A) {
  CyclicPoset P;
  P.A = &A;
  std::map<std::vector<int>, std::vector<int>> by_set;  // aR -> generators
  for (int a = 0; a < A.size(); ++a)
    by_set[A.principal_right_submodule(a).elements].push_back(a);
  for (auto& [elems, gens] : by_set) {
    CyclicPoset::Node node;
    node.rep = gens.front();  // gens ascending by construction
    node.orbit = gens;
    node.elements = elems;
    P.nodes.push_back(std::move(node));
  }
  std::sort(P.nodes.begin(), P.nodes.end(), [](const auto& x, const auto& y) {
    if (x.elements.size() != y.elements.size()) return x.elements.size() < y.elements.size();
    return x.rep < y.rep;
  });
  for (const auto& node : P.nodes) {
    if (A.right_unit_orbit(node.rep) != node.orbit)
      throw InternalError("generator set of a cyclic submodule is not a right unit orbit");
  }
  const size_t k = P.nodes.size();
  P.leq.assign(k, std::vector<char>(k, 0));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      P.leq[i][j] = std::includes(P.nodes[j].elements.begin(), P.nodes[j].elements.end(),
                                  P.nodes[i].elements.begin(), P.nodes[i].elements.end());
    }
  }
  P.node_of_generator.assign(A.size(), -1);
  for (size_t i = 0; i < k; ++i)
    for (int a : P.nodes[i].orbit) P.node_of_generator[a] = static_cast<int>(i);
  if (P.nodes.empty() || P.nodes[0].elements != std::vector<int>{A.zero()})
    throw InternalError("cyclic poset is missing the zero node");
  return P;
}

struct MobiusTable {
  std::vector<long> mu;  // mu(0, node), parallel to poset nodes
};

/// mu(0, 0) = 1 and sum of mu(0, bR) over bR contained in cR is 0 for c != 0.
inline MobiusTable mobius_by_recursion(const CyclicPoset& P) {
  const size_t k = P.nodes.size();
  MobiusTable t;
  t.mu.assign(k, 0);
  // nodes are sorted by size, so every proper predecessor comes earlier
  for (size_t j = 0; j < k; ++j) {
    if (j == 0) {
      t.mu[0] = 1;
      continue;
    }
    long acc = 0;
    for (size_t i = 0; i < j; ++i) {
      if (P.leq[i][j]) acc += t.mu[i];
    }
    t.mu[j] = -acc;
  }
  return t;
}

/// mu(0, aR) = sum of chi over the generator orbit a U.  Cross-checked
/// against the recursion; disagreement is an internal error.
inline MobiusTable mobius_by_character(const CyclicPoset& P) {
  const FrobeniusBimodule& A = *P.A;
  MobiusTable t;
  t.mu.reserve(P.nodes.size());
  for (const auto& node : P.nodes) {
    const Cyclo s = chi_sum_over(A, node.orbit);
    if (!s.is_rational())
      throw InternalError("character-sum Moebius value is not rational");
    const Rational q = s.as_rational();
    if (!is_integer(q))
      throw InternalError("character-sum Moebius value is not an integer");
    t.mu.push_back(q.get_num().get_si());
  }
  const MobiusTable byrec = mobius_by_recursion(P);
  if (t.mu != byrec.mu)
    throw InternalError("Moebius function: character sums disagree with the recursion");
  return t;
}

/// Partition of A into right unit orbits a U, listed by least representative.
inline std::vector<std::vector<int>> right_unit_orbits(const FrobeniusBimodule& A) {
  std::vector<std::vector<int>> orbits;
  std::vector<char> seen(A.size(), 0);
  for (int a = 0; a < A.size(); ++a) {
    if (seen[a]) continue;
    auto orb = A.right_unit_orbit(a);
    for (int x : orb) seen[x] = 1;
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

}  // namespace frobex

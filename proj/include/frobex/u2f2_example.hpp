#pragma once

#include <array>
#include <string>
#include <vector>

#include "frobex/extension.hpp"
#include "frobex/io.hpp"
#include "frobex/mobius.hpp"
#include "frobex/sgring.hpp"

namespace frobex {

/**
 * Worked example for R = U_2(F_2), the 2x2 upper triangular matrices
 * over F_2, with A its character bimodule.  The tables below are frozen
 * reference data; example_u2f2() regenerates each one from scratch and
 * compares.  A is not cyclic and R is not Frobenius, which makes this
 * the smallest interesting exercise of the whole pipeline.
 */

namespace u2f2 {

struct MobiusRow {
  const char* representative;
  long size;
  long mu;
};

// Mobius function of the poset of cyclic right submodules, in poset order.
inline constexpr std::array<MobiusRow, 6> kMobius = {{
    {"(0,0,0)", 1, 1},
    {"(0,0,1)", 2, -1},
    {"(1,0,0)", 2, -1},
    {"(0,1,0)", 4, 0},
    {"(1,0,1)", 4, 1},
    {"(1,1,0)", 4, 0},
}};

// Two-sided unit orbits of A: a weight is bi-invariant exactly when it is
// constant on each (so w(0,1,0) = w(0,1,1) = w(1,1,0) = w(1,1,1)).
inline const std::vector<std::vector<std::string>> kBiInvarianceClasses = {
    {"(0,0,0)"},
    {"(0,0,1)"},
    {"(0,1,0)", "(0,1,1)", "(1,1,0)", "(1,1,1)"},
    {"(1,0,0)"},
    {"(1,0,1)"},
};

struct ExpressionRow {
  const char* submodule_generator;  // "" for the whole module A
  // coefficients of the condition sum over the orbit values
  // (w(0,0,1), w(1,0,0), w(1,0,1), w(0,1,0)); the last is always 0,
  // the value of w(0,1,0) being irrelevant.
  std::array<long, 4> coeffs;
};

// Condition sums for every nonzero right submodule, as linear expressions
// in the orbit values of a bi-invariant weight.  Row order matches
// all_right_submodules (by size, then elements).
inline constexpr std::array<ExpressionRow, 6> kExpressions = {{
    {"(0,0,1)", {-1, 0, 0, 0}},
    {"(1,0,0)", {0, -1, 0, 0}},
    {"(0,1,0)", {-1, 0, 0, 0}},
    {"(1,0,1)", {-1, -1, 1, 0}},
    {"(1,1,0)", {-1, 0, 0, 0}},
    {"", {-1, -1, 1, 0}},
}};

// orbit representatives the expression coefficients refer to
inline const std::vector<std::string> kExpressionVariables = {"(0,0,1)", "(1,0,0)", "(1,0,1)",
                                                             "(0,1,0)"};

}  // namespace u2f2

struct U2F2ExampleResult {
  bool mobius_ok = false;
  bool classes_ok = false;
  bool expressions_ok = false;
  bool lattice_ok = false;
  std::vector<std::string> mismatches;
  bool ok() const { return mobius_ok && classes_ok && expressions_ok && lattice_ok; }
};

/// Recompute the example's tables and compare with the frozen data.
inline U2F2ExampleResult example_u2f2() {
  U2F2ExampleResult res;
  const FiniteRing R = FiniteRing::upper_triangular(2, 2);
  const FrobeniusBimodule A(R);

  // Mobius table, with the character-sum route cross-checking internally
  const CyclicPoset P = build_cyclic_poset(A);
  const MobiusTable M = mobius_by_character(P);
  res.mobius_ok = P.nodes.size() == u2f2::kMobius.size();
  if (res.mobius_ok) {
    for (size_t i = 0; i < P.nodes.size(); ++i) {
      const auto& want = u2f2::kMobius[i];
      if (A.label(P.nodes[i].rep) != want.representative ||
          static_cast<long>(P.nodes[i].elements.size()) != want.size ||
          M.mu[i] != want.mu) {
        res.mobius_ok = false;
        res.mismatches.push_back("mobius row " + std::to_string(i) + ": got " +
                                 A.label(P.nodes[i].rep) + " size " +
                                 std::to_string(P.nodes[i].elements.size()) + " mu " +
                                 std::to_string(M.mu[i]));
      }
    }
  } else {
    res.mismatches.push_back("mobius node count " + std::to_string(P.nodes.size()));
  }

  // bi-invariance classes = two-sided unit orbits of A
  {
    std::vector<std::vector<std::string>> got;
    for (const auto& orbit : two_sided_orbits(A)) {
      std::vector<std::string> labs;
      for (int a : orbit) labs.push_back(A.label(a));
      got.push_back(std::move(labs));
    }
    res.classes_ok = got == u2f2::kBiInvarianceClasses;
    if (!res.classes_ok) res.mismatches.push_back("bi-invariance classes differ");
  }

  // submodule lattice shape: 7 right submodules, stated containments
  {
    const auto subs = all_right_submodules(A);
    auto find = [&](const std::string& gen) -> const Submodule* {
      const auto cyc = A.principal_right_submodule(A.index_of_label(gen));
      for (const auto& s : subs) {
        if (s.elements == cyc.elements) return &s;
      }
      return nullptr;
    };
    auto contains = [](const Submodule& big, const Submodule& small) {
      return std::includes(big.elements.begin(), big.elements.end(), small.elements.begin(),
                           small.elements.end());
    };
    res.lattice_ok = subs.size() == 7;
    const Submodule* s001 = find("(0,0,1)");
    const Submodule* s100 = find("(1,0,0)");
    const Submodule* s101 = find("(1,0,1)");
    const Submodule* s010 = find("(0,1,0)");
    const Submodule* s110 = find("(1,1,0)");
    if (s001 && s100 && s101 && s010 && s110) {
      res.lattice_ok = res.lattice_ok && contains(*s101, *s100) && contains(*s010, *s001) &&
                       contains(*s101, *s001) && contains(*s110, *s001);
      // A is not cyclic: no aR is the whole module
      for (int a = 0; a < A.size(); ++a)
        res.lattice_ok = res.lattice_ok &&
                         A.principal_right_submodule(a).elements.size() < static_cast<size_t>(8);
    } else {
      res.lattice_ok = false;
    }
    if (!res.lattice_ok) res.mismatches.push_back("submodule lattice differs");
  }

  // condition expressions, recovered coefficient by coefficient with
  // indicator weights on the orbit values
  {
    res.expressions_ok = true;
    std::vector<std::vector<int>> orbits = two_sided_orbits(A);
    for (size_t v = 0; v < u2f2::kExpressionVariables.size(); ++v) {
      const int rep = A.index_of_label(u2f2::kExpressionVariables[v]);
      WeightFn w(A);
      for (const auto& orbit : orbits) {
        const bool hit = std::find(orbit.begin(), orbit.end(), rep) != orbit.end();
        if (!hit) continue;
        for (int a : orbit) w[a] = Cyclo(1);
      }
      const ConditionReport rep_v = check_condition(A, w);
      if (rep_v.rows.size() != u2f2::kExpressions.size()) {
        res.expressions_ok = false;
        res.mismatches.push_back("condition row count differs");
        break;
      }
      for (size_t i = 0; i < rep_v.rows.size(); ++i) {
        const Cyclo want(static_cast<long>(u2f2::kExpressions[i].coeffs[v]));
        if (!(rep_v.rows[i].direct_value == want)) {
          res.expressions_ok = false;
          res.mismatches.push_back("expression row " + std::to_string(i) + " variable " +
                                   u2f2::kExpressionVariables[v] + ": got " +
                                   rep_v.rows[i].direct_value.to_string() + ", want " +
                                   want.to_string());
        }
      }
    }
  }
  return res;
}

inline Json report_example_u2f2(const U2F2ExampleResult& res) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "example-u2f2";
  j["mobius_ok"] = res.mobius_ok;
  j["classes_ok"] = res.classes_ok;
  j["lattice_ok"] = res.lattice_ok;
  j["expressions_ok"] = res.expressions_ok;
  j["mismatches"] = res.mismatches;
  j["ok"] = res.ok();
  return j;
}

}  // namespace frobex

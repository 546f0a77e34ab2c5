#pragma once

// Test-side oracles.  Each recomputes a quantity from first principles
// through a different algorithm than the library uses, so agreement
// between the two is a meaningful check and not a tautology.

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "frobex/cyclo.hpp"
#include "frobex/dualmod.hpp"
#include "frobex/finring.hpp"
#include "frobex/rational.hpp"
#include "frobex/sgring.hpp"

namespace oracles {

using frobex::Cyclo;
using frobex::FiniteRing;
using frobex::FrobeniusBimodule;
using frobex::Rational;
using frobex::SgFn;
using frobex::WeightFn;

// --- exact linear algebra: forward elimination + back substitution,
// deliberately not the library's Gauss-Jordan ---

struct Gauss {
  bool consistent = true;
  long rank = 0;
  long nullity = 0;
  std::vector<Cyclo> particular;  // free variables set to zero
};

inline Gauss gauss_solve(std::vector<std::vector<Cyclo>> M, std::vector<Cyclo> b) {
  Gauss g;
  const size_t rows = M.size();
  const size_t cols = rows ? M[0].size() : 0;
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && M[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[r]);
    std::swap(b[p], b[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (M[i][c].is_zero()) continue;
      const Cyclo f = M[i][c] / M[r][c];
      for (size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  g.rank = static_cast<long>(r);
  g.nullity = static_cast<long>(cols) - g.rank;
  for (size_t i = r; i < rows; ++i) {
    if (!b[i].is_zero()) {
      g.consistent = false;
      return g;
    }
  }
  g.particular.assign(cols, Cyclo());
  for (size_t i = r; i-- > 0;) {
    const size_t c = pivot_col[i];
    Cyclo acc = b[i];
    for (size_t j = c + 1; j < cols; ++j) acc -= M[i][j] * g.particular[j];
    g.particular[c] = acc / M[i][c];
  }
  return g;
}

// --- gamma as a linear-system solution ---

// The system (w~ * g)(r) = eps(r) for all r, plus the sum-zero row, with
// w~ and eps expanded from their definitions.
struct GammaSystem {
  std::vector<std::vector<Cyclo>> M;
  std::vector<Cyclo> rhs;
  Gauss solution;
};

inline GammaSystem gamma_system(const FrobeniusBimodule& A, const WeightFn& w) {
  const FiniteRing& R = A.ring();
  const int n = R.size();
  std::vector<Cyclo> wt(n);
  for (int r = 0; r < n; ++r) {
    Cyclo acc;
    for (int a = 0; a < A.size(); ++a) acc += w[a] * A.value(a, R.neg(r));
    wt[r] = acc / Cyclo(static_cast<long>(A.size()));
  }
  std::vector<Cyclo> eps(n);
  if (n > 1) {
    eps[R.zero()] = Cyclo(1);
    const Cyclo share = Cyclo(-1) / Cyclo(static_cast<long>(R.units().size()));
    for (int u : R.units()) eps[u] = share;
  }
  GammaSystem sys;
  sys.M.assign(n + 1, std::vector<Cyclo>(n));
  sys.rhs.assign(n + 1, Cyclo());
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) sys.M[R.mul(s, t)][t] += wt[s];
  }
  for (int r = 0; r < n; ++r) sys.rhs[r] = eps[r];
  for (int t = 0; t < n; ++t) sys.M[n][t] = Cyclo(1);
  sys.solution = gauss_solve(sys.M, sys.rhs);
  return sys;
}

// residual check of a candidate solution against the stored system
inline bool satisfies(const GammaSystem& sys, const SgFn& g) {
  for (size_t i = 0; i < sys.M.size(); ++i) {
    Cyclo acc;
    for (size_t j = 0; j < sys.M[i].size(); ++j) acc += sys.M[i][j] * g[static_cast<int>(j)];
    if (!(acc == sys.rhs[i])) return false;
  }
  return true;
}

// --- subgroup and submodule enumeration by incremental generation ---

inline std::vector<std::vector<int>> subgroups(int n, int zero,
                                               const std::function<int(int, int)>& add) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> list;
  auto push = [&](std::set<int> s) {
    bool grew = true;
    while (grew) {
      grew = false;
      const std::vector<int> elems(s.begin(), s.end());
      for (int x : elems)
        for (int y : elems)
          if (s.insert(add(x, y)).second) grew = true;
    }
    std::vector<int> v(s.begin(), s.end());
    if (seen.insert(v).second) list.push_back(std::move(v));
  };
  push({zero});
  for (size_t i = 0; i < list.size(); ++i) {
    for (int x = 0; x < n; ++x) {
      std::set<int> s(list[i].begin(), list[i].end());
      if (s.count(x)) continue;
      s.insert(x);
      push(std::move(s));
    }
  }
  std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return list;
}

inline std::vector<std::vector<int>> right_submodules(const FrobeniusBimodule& A) {
  auto subs = subgroups(A.size(), A.zero(), [&](int x, int y) { return A.add(x, y); });
  std::vector<std::vector<int>> out;
  for (const auto& s : subs) {
    std::set<int> set(s.begin(), s.end());
    bool closed = true;
    for (int a : s) {
      for (int r = 0; r < A.ring().size() && closed; ++r) closed = set.count(A.right_act(a, r));
      if (!closed) break;
    }
    if (closed) out.push_back(s);
  }
  return out;
}

inline std::vector<std::vector<int>> left_submodules(const FrobeniusBimodule& A) {
  auto subs = subgroups(A.size(), A.zero(), [&](int x, int y) { return A.add(x, y); });
  std::vector<std::vector<int>> out;
  for (const auto& s : subs) {
    std::set<int> set(s.begin(), s.end());
    bool closed = true;
    for (int a : s) {
      for (int r = 0; r < A.ring().size() && closed; ++r) closed = set.count(A.left_act(r, a));
      if (!closed) break;
    }
    if (closed) out.push_back(s);
  }
  return out;
}

// --- abelian structure: the multiset of element orders determines a
// finite abelian group up to isomorphism ---

inline std::multiset<long> order_multiset(int n, int zero, const std::function<int(int, int)>& add) {
  std::multiset<long> out;
  for (int x = 0; x < n; ++x) {
    int cur = x;
    long o = 1;
    while (cur != zero) {
      cur = add(cur, x);
      ++o;
    }
    out.insert(o);
  }
  return out;
}

inline std::multiset<long> order_multiset_of_factors(const std::vector<long>& ds) {
  std::multiset<long> out;
  std::vector<long> k(ds.size(), 0);
  long total = 1;
  for (long d : ds) total *= d;
  for (long t = 0; t < total; ++t) {
    long o = 1;
    for (size_t i = 0; i < ds.size(); ++i) {
      const long g = std::gcd(k[i], ds[i]);
      o = std::lcm(o, ds[i] / g);
    }
    out.insert(o);
    for (size_t i = ds.size(); i-- > 0;) {
      if (++k[i] < ds[i]) break;
      k[i] = 0;
    }
  }
  if (ds.empty()) out.insert(1);
  return out;
}

// --- random exact data ---

inline Rational random_rational(std::mt19937_64& rng, int lo = -6, int hi = 6, int dmax = 4) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, dmax);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline SgFn random_sgfn(const FiniteRing& R, std::mt19937_64& rng) {
  SgFn f(R);
  for (int r = 0; r < R.size(); ++r) f[r] = Cyclo(random_rational(rng));
  return f;
}

// random weight in A0, constant on two-sided unit orbits (so bi-invariant
// by construction)
inline WeightFn random_biinvariant_weight(const FrobeniusBimodule& A, std::mt19937_64& rng) {
  WeightFn w(A);
  for (const auto& orbit : frobex::two_sided_orbits(A)) {
    if (orbit.front() == A.zero()) continue;
    const Cyclo v(random_rational(rng));
    for (int a : orbit) w[a] = v;
  }
  return w;
}

// retries until the defining sums over all (independently enumerated)
// nonzero right submodules are nonzero
inline WeightFn random_condition_passing_weight(const FrobeniusBimodule& A, std::mt19937_64& rng,
                                                const std::vector<std::vector<int>>& submods) {
  for (int tries = 0; tries < 1000; ++tries) {
    WeightFn w = random_biinvariant_weight(A, rng);
    bool all_nonzero = true;
    for (const auto& S : submods) {
      if (S.size() == 1) continue;
      Cyclo acc;
      for (int a : S) acc += w[a] * A.chi(a);
      if (acc.is_zero()) {
        all_nonzero = false;
        break;
      }
    }
    if (all_nonzero) return w;
  }
  throw std::runtime_error("no condition-passing weight found in 1000 tries");
}

// --- naive reference computations ---

inline SgFn convolve_naive(const SgFn& a, const SgFn& b) {
  const FiniteRing& R = a.ring();
  SgFn out(R);
  for (int s = 0; s < R.size(); ++s)
    for (int t = 0; t < R.size(); ++t) out[R.mul(s, t)] += a[s] * b[t];
  return out;
}

inline WeightFn correlate_naive(const WeightFn& w, const SgFn& a) {
  const FrobeniusBimodule& A = w.bimodule();
  WeightFn out(A);
  for (int x = 0; x < A.size(); ++x) {
    Cyclo acc;
    for (int r = 0; r < A.ring().size(); ++r) acc += w[A.left_act(r, x)] * a[r];
    out[x] = acc;
  }
  return out;
}

// every nonzero submodule must average exactly 1 (sum equals its size)
inline bool submodule_averages_are_one(const FrobeniusBimodule& A, const WeightFn& w,
                                       const std::vector<std::vector<int>>& submods) {
  for (const auto& S : submods) {
    if (S.size() == 1) continue;
    Cyclo acc;
    for (int a : S) acc += w[a];
    if (!(acc == Cyclo(static_cast<long>(S.size())))) return false;
  }
  return true;
}

}  // namespace oracles

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "frobex/cyclo.hpp"
#include "frobex/dualmod.hpp"
#include "frobex/errors.hpp"
#include "frobex/finring.hpp"

namespace frobex {

// Functions R -> Q(zeta) under convolution, functions A -> Q(zeta) under
// correlation, and the Fourier transform between them.

/// Element of the semigroup ring of (R, *): a function on ring elements.
class SgFn {
 public:
  explicit SgFn(const FiniteRing& ring) : ring_(&ring), v_(ring.size()) {}

  static SgFn delta(const FiniteRing& ring, int r) {
    SgFn f(ring);
    f.v_[r] = 1;
    return f;
  }

  const FiniteRing& ring() const { return *ring_; }
  int size() const { return static_cast<int>(v_.size()); }
  Cyclo& operator[](int r) { return v_[r]; }
  const Cyclo& operator[](int r) const { return v_[r]; }

  Cyclo sum() const {
    Cyclo acc;
    for (const auto& x : v_) acc += x;
    return acc;
  }

  friend bool operator==(const SgFn& a, const SgFn& b) {
    return a.ring_ == b.ring_ && a.v_ == b.v_;
  }
  friend bool operator!=(const SgFn& a, const SgFn& b) { return !(a == b); }

  friend SgFn operator+(const SgFn& a, const SgFn& b) {
    a.require_same_ring(b);
    SgFn r = a;
    for (int i = 0; i < r.size(); ++i) r.v_[i] += b.v_[i];
    return r;
  }
  friend SgFn operator-(const SgFn& a, const SgFn& b) {
    a.require_same_ring(b);
    SgFn r = a;
    for (int i = 0; i < r.size(); ++i) r.v_[i] -= b.v_[i];
    return r;
  }
  friend SgFn operator*(const Cyclo& c, const SgFn& a) {
    SgFn r = a;
    for (auto& x : r.v_) x = c * x;
    return r;
  }

  void require_same_ring(const SgFn& o) const {
    if (ring_ != o.ring_) throw InputError("operands are defined over different rings");
  }

 private:
  const FiniteRing* ring_;
  std::vector<Cyclo> v_;
};

/// Function on the character bimodule A (a "weight" when rational-valued).
class WeightFn {
 public:
  explicit WeightFn(const FrobeniusBimodule& A) : A_(&A), v_(A.size()) {}

  static WeightFn delta(const FrobeniusBimodule& A, int a) {
    WeightFn f(A);
    f.v_[a] = 1;
    return f;
  }

  const FrobeniusBimodule& bimodule() const { return *A_; }
  int size() const { return static_cast<int>(v_.size()); }
  Cyclo& operator[](int a) { return v_[a]; }
  const Cyclo& operator[](int a) const { return v_[a]; }

  Cyclo sum() const {
    Cyclo acc;
    for (const auto& x : v_) acc += x;
    return acc;
  }

  friend bool operator==(const WeightFn& a, const WeightFn& b) {
    return a.A_ == b.A_ && a.v_ == b.v_;
  }
  friend bool operator!=(const WeightFn& a, const WeightFn& b) { return !(a == b); }

  friend WeightFn operator+(const WeightFn& a, const WeightFn& b) {
    a.require_same_bimodule(b);
    WeightFn r = a;
    for (int i = 0; i < r.size(); ++i) r.v_[i] += b.v_[i];
    return r;
  }
  friend WeightFn operator-(const WeightFn& a, const WeightFn& b) {
    a.require_same_bimodule(b);
    WeightFn r = a;
    for (int i = 0; i < r.size(); ++i) r.v_[i] -= b.v_[i];
    return r;
  }
  friend WeightFn operator*(const Cyclo& c, const WeightFn& a) {
    WeightFn r = a;
    for (auto& x : r.v_) x = c * x;
    return r;
  }

  void require_same_bimodule(const WeightFn& o) const {
    if (A_ != o.A_) throw InputError("operands are defined over different bimodules");
  }

 private:
  const FrobeniusBimodule* A_;
  std::vector<Cyclo> v_;
};

/// (a * b)(r) = sum over factorizations s t = r of a(s) b(t).
inline SgFn convolve(const SgFn& a, const SgFn& b) {
  a.require_same_ring(b);
  const FiniteRing& ring = a.ring();
  SgFn res(ring);
  for (int r = 0; r < ring.size(); ++r) {
    Cyclo acc;
    for (const auto& [s, t] : ring.factorizations(r)) acc += a[s] * b[t];
    res[r] = acc;
  }
  return res;
}

/// (w . alpha)(a) = sum over r of w(r a) alpha(r).
inline WeightFn correlate(const WeightFn& w, const SgFn& alpha) {
  const FrobeniusBimodule& A = w.bimodule();
  if (&alpha.ring() != &A.ring())
    throw InputError("correlation operands are defined over different rings");
  WeightFn res(A);
  for (int a = 0; a < A.size(); ++a) {
    Cyclo acc;
    for (int r = 0; r < A.ring().size(); ++r) acc += w[A.left_act(r, a)] * alpha[r];
    res[a] = acc;
  }
  return res;
}

/// Fourier transform: alpha-hat(a) = sum over r of pi_a(r) alpha(r).
/// Equals the correlation of chi with alpha, since chi(r . pi) = pi(r).
inline WeightFn fourier(const FrobeniusBimodule& A, const SgFn& alpha) {
  if (&alpha.ring() != &A.ring())
    throw InputError("fourier operand is defined over a different ring");
  WeightFn res(A);
  for (int a = 0; a < A.size(); ++a) {
    Cyclo acc;
    for (int r = 0; r < A.ring().size(); ++r) {
      if (alpha[r] != Cyclo(0)) acc += A.value(a, r) * alpha[r];
    }
    res[a] = acc;
  }
  return res;
}

/// Inverse transform: w-tilde(r) = (1/|A|) sum over a of w(a) pi_a(-r).
inline SgFn inverse_fourier(const WeightFn& w) {
  const FrobeniusBimodule& A = w.bimodule();
  const FiniteRing& ring = A.ring();
  SgFn res(ring);
  const Cyclo scale = Cyclo(Rational(1, A.size()));
  for (int r = 0; r < ring.size(); ++r) {
    Cyclo acc;
    const int nr = ring.neg(r);
    for (int a = 0; a < A.size(); ++a) {
      if (w[a] != Cyclo(0)) acc += w[a] * A.value(a, nr);
    }
    res[r] = scale * acc;
  }
  return res;
}

/// Partition of ring elements into two-sided unit orbits U r U, each sorted,
/// listed by least representative.
inline std::vector<std::vector<int>> two_sided_orbits(const FiniteRing& ring) {
  std::vector<std::vector<int>> orbits;
  std::vector<char> seen(ring.size(), 0);
  for (int r = 0; r < ring.size(); ++r) {
    if (seen[r]) continue;
    auto orb = ring.two_sided_unit_orbit(r);
    for (int x : orb) seen[x] = 1;
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

/// Partition of A into two-sided unit orbits U a U.
inline std::vector<std::vector<int>> two_sided_orbits(const FrobeniusBimodule& A) {
  std::vector<std::vector<int>> orbits;
  std::vector<char> seen(A.size(), 0);
  for (int a = 0; a < A.size(); ++a) {
    if (seen[a]) continue;
    auto orb = A.two_sided_unit_orbit(a);
    for (int x : orb) seen[x] = 1;
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

/// First (a, u a v) with w(u a v) != w(a), if any.
inline std::optional<std::array<int, 2>> bi_invariance_violation(const WeightFn& w) {
  const FrobeniusBimodule& A = w.bimodule();
  for (int a = 0; a < A.size(); ++a) {
    for (int u : A.ring().units()) {
      const int ua = A.left_act(u, a);
      for (int v : A.ring().units()) {
        const int uav = A.right_act(ua, v);
        if (w[uav] != w[a]) return std::array<int, 2>{a, uav};
      }
    }
  }
  return std::nullopt;
}

inline bool is_bi_invariant(const WeightFn& w) { return !bi_invariance_violation(w).has_value(); }

/// First (r, u r v) with f(u r v) != f(r), if any.
inline std::optional<std::array<int, 2>> bi_invariance_violation(const SgFn& f) {
  const FiniteRing& ring = f.ring();
  for (int r = 0; r < ring.size(); ++r) {
    for (int u : ring.units()) {
      const int ur = ring.mul(u, r);
      for (int v : ring.units()) {
        const int urv = ring.mul(ur, v);
        if (f[urv] != f[r]) return std::array<int, 2>{r, urv};
      }
    }
  }
  return std::nullopt;
}

inline bool is_bi_invariant(const SgFn& f) { return !bi_invariance_violation(f).has_value(); }

/// Membership in the augmentation-zero subspace of the semigroup ring.
inline bool in_R0(const SgFn& f) { return f.sum() == Cyclo(0); }

/// Membership in the subspace of functions vanishing at 0.
inline bool in_A0(const WeightFn& w) { return w[w.bimodule().zero()] == Cyclo(0); }

}  // namespace frobex

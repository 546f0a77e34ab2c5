#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "frobex/cyclo.hpp"
#include "frobex/errors.hpp"
#include "frobex/finring.hpp"

namespace frobex {

/**
 * The character bimodule of a finite ring.
 *
 * A = R-hat is the group of characters of (R, +).  A character is indexed by
 * its exponent vector (k_1, ..., k_m) against the invariant-factor
 * decomposition d_1 | ... | d_m of (R, +): the character sends the basis
 * element b_i to zeta_{d_i}^{k_i}.  Index = big-endian mixed-radix code of
 * the exponent vector.
 *
 * R acts on both sides: (r . pi)(x) = pi(x r) and (pi . r)(x) = pi(r x).
 * With chi(pi) = pi(1), A is a Frobenius bimodule: |A| = |R| and ker chi
 * contains no nonzero one-sided submodule.  All of this is verified
 * exhaustively at construction.
 */

struct Character {
  std::vector<int> exponents;  // k_i mod d_i, one per invariant factor
};

/// pi(x) as an exponent of zeta_e, for a character given by exponents.
inline long character_exponent_at(const FiniteRing& ring, const std::vector<int>& exponents,
                                  int x) {
  const auto& dec = ring.decomposition();
  const long e = dec.exponent;
  long acc = 0;
  for (size_t i = 0; i < dec.invariant_factors.size(); ++i) {
    acc = (acc + (e / dec.invariant_factors[i]) * static_cast<long>(exponents[i]) %
                     e * dec.coords[x][i]) % e;
  }
  return acc;
}

inline Cyclo evaluate_character(const FiniteRing& ring, const Character& chr, int x) {
  return Cyclo::root_of_unity(ring.decomposition().exponent,
                              character_exponent_at(ring, chr.exponents, x));
}

class FrobeniusBimodule {
 public:
  explicit FrobeniusBimodule(const FiniteRing& ring) : ring_(&ring) { build(); }

  // Properties

  const FiniteRing& ring() const { return *ring_; }
  int size() const { return n_; }
  long exponent() const { return e_; }
  int zero() const { return 0; }  // the trivial character

  int add(int a, int b) const { return add_[a * static_cast<size_t>(n_) + b]; }
  int neg(int a) const { return neg_[a]; }
  /// (r . pi_a), the character x -> pi_a(x r).
  int left_act(int r, int a) const { return lact_[r * static_cast<size_t>(n_) + a]; }
  /// (pi_a . r), the character x -> pi_a(r x).
  int right_act(int a, int r) const { return ract_[a * static_cast<size_t>(n_) + r]; }

  const Character& character(int a) const { return chars_[a]; }
  /// pi_a(x) = zeta_e^{eval_exp(a, x)}.
  int eval_exp(int a, int x) const { return eexp_[a * static_cast<size_t>(n_) + x]; }
  Cyclo value(int a, int x) const { return zpow_[eval_exp(a, x)]; }
  const Cyclo& zeta(long k) const { return zpow_[((k % e_) + e_) % e_]; }
  /// chi(pi_a) = pi_a(1), the generating character of A.
  const Cyclo& chi(int a) const { return chi_[a]; }

  const std::string& label(int a) const { return labels_[a]; }
  int index_of_label(const std::string& s) const {
    auto it = label_index_.find(s);
    if (it == label_index_.end()) throw InputError("unknown character label '" + s + "'");
    return it->second;
  }

  // Submodules of A

  /// Ra = {r . a : r in R}.
  Submodule principal_left_submodule(int a) const {
    std::set<int> s;
    for (int r = 0; r < n_; ++r) s.insert(left_act(r, a));
    Submodule sm;
    sm.side = Submodule::Side::kLeft;
    sm.elements.assign(s.begin(), s.end());
    sm.generators = {a};
    return sm;
  }

  /// aR = {a . r : r in R}.
  Submodule principal_right_submodule(int a) const {
    std::set<int> s;
    for (int r = 0; r < n_; ++r) s.insert(right_act(a, r));
    Submodule sm;
    sm.side = Submodule::Side::kRight;
    sm.elements.assign(s.begin(), s.end());
    sm.generators = {a};
    return sm;
  }

  /// Smallest submodule of the given sidedness containing the generators.
  Submodule submodule_span(Submodule::Side side, const std::vector<int>& gens) const {
    std::vector<int> list = {0};
    std::set<int> seen = {0};
    auto push = [&](int x) {
      if (seen.insert(x).second) list.push_back(x);
    };
    for (int g : gens) {
      if (g < 0 || g >= n_) throw InputError("submodule generator index out of range");
      push(g);
    }
    for (size_t i = 0; i < list.size(); ++i) {
      const int x = list[i];
      for (size_t j = 0; j <= i; ++j) push(add(x, list[j]));
      if (side != Submodule::Side::kRight)
        for (int r = 0; r < ring_->size(); ++r) push(left_act(r, x));
      if (side != Submodule::Side::kLeft)
        for (int r = 0; r < ring_->size(); ++r) push(right_act(x, r));
    }
    Submodule sm;
    sm.side = side;
    sm.elements.assign(seen.begin(), seen.end());
    sm.generators = gens;
    return sm;
  }

  bool is_submodule(Submodule::Side side, const std::vector<int>& elements) const {
    std::set<int> s(elements.begin(), elements.end());
    if (!s.count(0)) return false;
    for (int a : elements) {
      if (a < 0 || a >= n_) return false;
      for (int b : elements)
        if (!s.count(add(a, b))) return false;
      if (side != Submodule::Side::kRight)
        for (int r = 0; r < ring_->size(); ++r)
          if (!s.count(left_act(r, a))) return false;
      if (side != Submodule::Side::kLeft)
        for (int r = 0; r < ring_->size(); ++r)
          if (!s.count(right_act(a, r))) return false;
    }
    return true;
  }

  /// a U = {a . u : u a unit}, sorted.
  std::vector<int> right_unit_orbit(int a) const {
    std::set<int> s;
    for (int u : ring_->units()) s.insert(right_act(a, u));
    return std::vector<int>(s.begin(), s.end());
  }

  /// U a U, sorted.
  std::vector<int> two_sided_unit_orbit(int a) const {
    std::set<int> s;
    for (int u : ring_->units()) {
      const int ua = left_act(u, a);
      for (int v : ring_->units()) s.insert(right_act(ua, v));
    }
    return std::vector<int>(s.begin(), s.end());
  }

 private:
  void build() {
    n_ = ring_->size();
    const auto& dec = ring_->decomposition();
    e_ = dec.exponent;
    const size_t m = dec.invariant_factors.size();
    zpow_.reserve(e_);
    for (long k = 0; k < e_; ++k) zpow_.push_back(Cyclo::root_of_unity(e_, k));
    // characters, indexed by exponent code
    chars_.resize(n_);
    labels_.resize(n_);
    for (int a = 0; a < n_; ++a) {
      std::vector<int> exps(m);
      long c = a;
      for (size_t i = m; i-- > 0;) {
        exps[i] = static_cast<int>(c % dec.invariant_factors[i]);
        c /= dec.invariant_factors[i];
      }
      std::string lab = "(";
      for (size_t i = 0; i < m; ++i) {
        if (i) lab += ",";
        lab += std::to_string(exps[i]);
      }
      lab += ")";
      chars_[a].exponents = std::move(exps);
      labels_[a] = lab;
      label_index_.emplace(labels_[a], a);
    }
    // evaluation table pi_a(x) = zeta_e^{eexp}
    eexp_.assign(static_cast<size_t>(n_) * n_, 0);
    for (int a = 0; a < n_; ++a) {
      for (int x = 0; x < n_; ++x) {
        long acc = 0;
        for (size_t i = 0; i < m; ++i) {
          acc = (acc + (e_ / dec.invariant_factors[i]) * static_cast<long>(chars_[a].exponents[i]) %
                           e_ * dec.coords[x][i]) % e_;
        }
        eexp_[a * static_cast<size_t>(n_) + x] = static_cast<int>(acc);
      }
    }
    // A is an abelian group under pointwise product: exponents add
    add_.assign(static_cast<size_t>(n_) * n_, 0);
    neg_.assign(n_, 0);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        long code = 0;
        for (size_t i = 0; i < m; ++i) {
          code = code * dec.invariant_factors[i] +
                 (chars_[a].exponents[i] + chars_[b].exponents[i]) % dec.invariant_factors[i];
        }
        add_[a * static_cast<size_t>(n_) + b] = static_cast<int>(code);
      }
      long code = 0;
      for (size_t i = 0; i < m; ++i) {
        code = code * dec.invariant_factors[i] +
               (dec.invariant_factors[i] - chars_[a].exponents[i]) % dec.invariant_factors[i];
      }
      neg_[a] = static_cast<int>(code);
    }
    // actions, recovered exponentwise from the evaluation table
    lact_.assign(static_cast<size_t>(n_) * n_, 0);
    ract_.assign(static_cast<size_t>(n_) * n_, 0);
    for (int r = 0; r < n_; ++r) {
      for (int a = 0; a < n_; ++a) {
        lact_[r * static_cast<size_t>(n_) + a] = character_index_of(dec, [&](int bi) {
          return eval_exp(a, ring_->mul(bi, r));
        });
        ract_[a * static_cast<size_t>(n_) + r] = character_index_of(dec, [&](int bi) {
          return eval_exp(a, ring_->mul(r, bi));
        });
      }
    }
    chi_.reserve(n_);
    for (int a = 0; a < n_; ++a) chi_.push_back(zpow_[eval_exp(a, ring_->one())]);
    verify();
  }

  // Index of the character x -> zeta_e^{F(x)} given F on the additive basis.
  template <typename F>
  int character_index_of(const AbelianDecomposition& dec, F&& f) const {
    long code = 0;
    for (size_t i = 0; i < dec.invariant_factors.size(); ++i) {
      const long d = dec.invariant_factors[i];
      const long fv = f(dec.basis[i]);
      if (fv % (e_ / d) != 0)
        throw InternalError("character exponent not divisible at basis element");
      code = code * d + (fv / (e_ / d)) % d;
    }
    return static_cast<int>(code);
  }

  // Exhaustive verification of the bimodule axioms and the Frobenius
  // property of chi.
  void verify() const {
    const int n = n_;
    for (int a = 0; a < n; ++a) {
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          if ((eval_exp(a, x) + eval_exp(a, y)) % e_ != eval_exp(a, ring_->add(x, y)))
            throw InternalError("character is not additive");
        }
      }
    }
    for (int r = 0; r < n; ++r) {
      for (int a = 0; a < n; ++a) {
        const int la = left_act(r, a);
        const int ra = right_act(a, r);
        for (int x = 0; x < n; ++x) {
          if (eval_exp(la, x) != eval_exp(a, ring_->mul(x, r)))
            throw InternalError("left action table inconsistent");
          if (eval_exp(ra, x) != eval_exp(a, ring_->mul(r, x)))
            throw InternalError("right action table inconsistent");
        }
      }
    }
    const int one = ring_->one();
    for (int a = 0; a < n; ++a) {
      if (left_act(one, a) != a || right_act(a, one) != a)
        throw InternalError("actions are not unital");
    }
    for (int r = 0; r < n; ++r) {
      for (int s = 0; s < n; ++s) {
        const int rs = ring_->mul(r, s);
        for (int a = 0; a < n; ++a) {
          if (left_act(rs, a) != left_act(r, left_act(s, a)))
            throw InternalError("left action not associative");
          if (right_act(a, rs) != right_act(right_act(a, r), s))
            throw InternalError("right action not associative");
          if (right_act(left_act(r, a), s) != left_act(r, right_act(a, s)))
            throw InternalError("left and right actions do not commute");
        }
      }
    }
    // Frobenius property: ker chi contains no nonzero one-sided submodule.
    for (int a = 1; a < n; ++a) {
      bool left_escapes = false, right_escapes = false;
      for (int r = 0; r < n && !(left_escapes && right_escapes); ++r) {
        if (eval_exp(left_act(r, a), one) != 0) left_escapes = true;
        if (eval_exp(right_act(a, r), one) != 0) right_escapes = true;
      }
      if (!left_escapes || !right_escapes)
        throw InternalError("ker chi contains a nonzero one-sided submodule");
    }
  }

  const FiniteRing* ring_;
  int n_ = 0;
  long e_ = 1;
  std::vector<Character> chars_;
  std::vector<int> add_, neg_, lact_, ract_, eexp_;
  std::vector<Cyclo> zpow_, chi_;
  std::vector<std::string> labels_;
  std::map<std::string, int> label_index_;
};

inline FrobeniusBimodule dual_bimodule(const FiniteRing& ring) {
  return FrobeniusBimodule(ring);
}

/// First character of (R, +) whose kernel contains no nonzero left ideal,
/// if any exists (exists iff R is a Frobenius ring).
inline std::optional<Character> generating_character_search(const FiniteRing& ring) {
  const auto& dec = ring.decomposition();
  const int n = ring.size();
  const long e = dec.exponent;
  const size_t m = dec.invariant_factors.size();
  for (long c = 0; c < n; ++c) {
    std::vector<int> exps(m);
    long cc = c;
    for (size_t i = m; i-- > 0;) {
      exps[i] = static_cast<int>(cc % dec.invariant_factors[i]);
      cc /= dec.invariant_factors[i];
    }
    std::vector<char> in_kernel(n, 0);
    for (int x = 0; x < n; ++x)
      in_kernel[x] = character_exponent_at(ring, exps, x) % e == 0;
    bool generating = true;
    for (int r = 0; r < n && generating; ++r) {
      if (r == ring.zero()) continue;
      bool ideal_in_kernel = true;
      for (int s = 0; s < n; ++s) {
        if (!in_kernel[ring.mul(s, r)]) {
          ideal_in_kernel = false;
          break;
        }
      }
      if (ideal_in_kernel) generating = false;  // Rr is a nonzero ideal in ker
    }
    if (generating) {
      Character chr;
      chr.exponents = std::move(exps);
      return chr;
    }
  }
  return std::nullopt;
}

/// Sum of chi over a set of A-elements.
inline Cyclo chi_sum_over(const FrobeniusBimodule& A, const std::vector<int>& elements) {
  Cyclo acc;
  for (int a : elements) acc += A.chi(a);
  return acc;
}

}  // namespace frobex

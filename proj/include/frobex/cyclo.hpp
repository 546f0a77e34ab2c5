#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "frobex/errors.hpp"
#include "frobex/rational.hpp"

namespace frobex {

/// Elements of cyclotomic fields Q(zeta_e), represented exactly in the power
/// basis 1, zeta, ..., zeta^(phi(e)-1) with coefficients reduced modulo the
/// e-th cyclotomic polynomial.  Values of different orders are compared and
/// combined by lifting to the least common multiple of the orders; an
/// operation never changes the value, only possibly the ambient field.
class Cyclo;

inline long euler_phi(long e) {
  if (e < 1) throw InputError("euler_phi: order must be positive");
  long result = e;
  long n = e;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      result -= result / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace detail {

using Poly = std::vector<Rational>;  // little-endian coefficients

inline std::vector<long> divisors_of(long n) {
  std::vector<long> divs;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d != n / d) divs.push_back(n / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Exact division of integer polynomials, divisor monic.  Throws if inexact.
inline std::vector<mpz_class> zpoly_divexact(const std::vector<mpz_class>& num,
                                             const std::vector<mpz_class>& den) {
  if (den.empty() || den.back() != 1)
    throw InternalError("zpoly_divexact: divisor not monic");
  std::vector<mpz_class> rem = num;
  if (rem.size() < den.size()) throw InternalError("zpoly_divexact: inexact division");
  std::vector<mpz_class> quot(rem.size() - den.size() + 1, mpz_class(0));
  for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
    mpz_class c = rem[i + den.size() - 1];
    quot[i] = c;
    if (c != 0) {
      for (size_t j = 0; j < den.size(); ++j) rem[i + j] -= c * den[j];
    }
  }
  for (const auto& c : rem) {
    if (c != 0) throw InternalError("zpoly_divexact: nonzero remainder");
  }
  return quot;
}

struct CycloTable {
  long order = 1;
  long phi = 1;
  std::vector<mpz_class> cyclotomic;  // Phi_order, monic, degree phi
  std::vector<Poly> zeta_pow;         // zeta^k reduced, k in [0, order)
};

inline const CycloTable& cyclo_table(long e);

}  // namespace detail

/// Phi_e as a little-endian integer coefficient vector (monic, degree phi(e)).
inline const std::vector<mpz_class>& cyclotomic_polynomial(long e) {
  return detail::cyclo_table(e).cyclotomic;
}

namespace detail {

inline const CycloTable& cyclo_table(long e) {
  if (e < 1) throw InputError("cyclotomic order must be positive");
  static std::map<long, CycloTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;
  // Phi_d = (x^d - 1) / prod of Phi_d' over proper divisors d' of d.
  // Ascending divisor order keeps every needed Phi_d' already in the cache.
  for (long d : divisors_of(e)) {
    if (cache.count(d)) continue;
    std::vector<mpz_class> f(d + 1, mpz_class(0));
    f[0] = -1;
    f[d] = 1;
    for (long dd : divisors_of(d)) {
      if (dd == d) continue;
      f = zpoly_divexact(f, cache.at(dd).cyclotomic);
    }
    CycloTable t;
    t.order = d;
    t.phi = static_cast<long>(f.size()) - 1;
    if (t.phi != euler_phi(d)) throw InternalError("cyclotomic degree mismatch");
    t.cyclotomic = f;
    // zeta^k reduced mod Phi_d, built by repeated multiplication by x.
    t.zeta_pow.resize(d);
    Poly cur(t.phi, Rational(0));
    cur[0] = 1;
    t.zeta_pow[0] = cur;
    for (long k = 1; k < d; ++k) {
      Poly next(t.phi, Rational(0));
      for (long j = 0; j + 1 < t.phi; ++j) next[j + 1] = cur[j];
      const Rational lead = cur[t.phi - 1];
      if (lead != 0) {
        for (long j = 0; j < t.phi; ++j) next[j] -= lead * Rational(f[j]);
      }
      t.zeta_pow[k] = next;
      cur = std::move(next);
    }
    cache.emplace(d, std::move(t));
  }
  return cache.at(e);
}

// Quotient and remainder over Q[x]; divisor need not be monic.
inline void poly_divmod(Poly num, const Poly& den, Poly* quot, Poly* rem) {
  long dd = static_cast<long>(den.size()) - 1;
  while (dd >= 0 && den[dd] == 0) --dd;
  if (dd < 0) throw InternalError("poly_divmod: zero divisor");
  long dn = static_cast<long>(num.size()) - 1;
  while (dn >= 0 && num[dn] == 0) --dn;
  Poly q(dn >= dd ? dn - dd + 1 : 0, Rational(0));
  for (long i = dn - dd; i >= 0; --i) {
    Rational c = num[i + dd] / den[dd];
    if (c != 0) {
      q[i] = c;
      for (long j = 0; j <= dd; ++j) num[i + j] -= c * den[j];
    }
  }
  if (quot) *quot = std::move(q);
  if (rem) {
    num.resize(dd >= 0 ? dd : 0);
    *rem = std::move(num);
  }
}

inline long poly_degree(const Poly& p) {
  for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i) {
    if (p[i] != 0) return i;
  }
  return -1;
}

}  // namespace detail

class Cyclo {
 public:
  Cyclo() : order_(1), c_(1, Rational(0)) {}
  Cyclo(const Rational& r) : order_(1), c_(1, r) {}
  Cyclo(long n) : order_(1), c_(1, Rational(static_cast<signed long>(n))) {}
  Cyclo(int n) : Cyclo(static_cast<long>(n)) {}

  /// zeta_e^k (k taken mod e; negative k allowed).
  static Cyclo root_of_unity(long e, long k) {
    if (e < 1) throw InputError("root_of_unity: order must be positive");
    k %= e;
    if (k < 0) k += e;
    const auto& t = detail::cyclo_table(e);
    return Cyclo(e, t.zeta_pow[k]);
  }

  long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_) {
      if (x != 0) return false;
    }
    return true;
  }

  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i) {
      if (c_[i] != 0) return false;
    }
    return true;
  }

  Rational as_rational() const {
    if (!is_rational()) throw InputError("value is not rational: " + to_string());
    return c_[0];
  }

  /// Same value expressed in Q(zeta_target); order() must divide target.
  Cyclo lifted_to(long target) const {
    if (target % order_ != 0) throw InputError("lifted_to: order does not divide target");
    if (target == order_) return *this;
    const auto& t = detail::cyclo_table(target);
    std::vector<Rational> res(t.phi, Rational(0));
    const long m = target / order_;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      const auto& pw = t.zeta_pow[static_cast<long>(i) * m];
      for (long j = 0; j < t.phi; ++j) res[j] += c_[i] * pw[j];
    }
    return Cyclo(target, std::move(res));
  }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    if (a.order_ == b.order_) {
      std::vector<Rational> res = a.c_;
      for (size_t i = 0; i < res.size(); ++i) res[i] += b.c_[i];
      return Cyclo(a.order_, std::move(res));
    }
    const long L = std::lcm(a.order_, b.order_);
    return a.lifted_to(L) + b.lifted_to(L);
  }

  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

  Cyclo operator-() const {
    std::vector<Rational> res = c_;
    for (auto& x : res) x = -x;
    return Cyclo(order_, std::move(res));
  }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    const long L = std::lcm(a.order_, b.order_);
    const Cyclo x = a.lifted_to(L);
    const Cyclo y = b.lifted_to(L);
    const auto& t = detail::cyclo_table(L);
    const long phi = t.phi;
    std::vector<Rational> raw(2 * phi - 1, Rational(0));
    for (long i = 0; i < phi; ++i) {
      if (x.c_[i] == 0) continue;
      for (long j = 0; j < phi; ++j) {
        if (y.c_[j] != 0) raw[i + j] += x.c_[i] * y.c_[j];
      }
    }
    std::vector<Rational> res(phi, Rational(0));
    for (long k = 0; k < static_cast<long>(raw.size()); ++k) {
      if (raw[k] == 0) continue;
      const long kk = k % L;  // zeta^L = 1
      if (kk < phi) {
        res[kk] += raw[k];
      } else {
        const auto& pw = t.zeta_pow[kk];
        for (long j = 0; j < phi; ++j) res[j] += raw[k] * pw[j];
      }
    }
    return Cyclo(L, std::move(res));
  }

  /// Multiplicative inverse via the extended Euclidean algorithm mod Phi_e.
  Cyclo inv() const {
    if (is_zero()) throw InputError("division by zero in cyclotomic field");
    if (is_rational()) return Cyclo(Rational(Rational(1) / c_[0]));
    const auto& t = detail::cyclo_table(order_);
    detail::Poly phi_poly(t.cyclotomic.size());
    for (size_t i = 0; i < t.cyclotomic.size(); ++i) phi_poly[i] = Rational(t.cyclotomic[i]);
    detail::Poly r0 = phi_poly, r1 = c_;
    detail::Poly s0(1, Rational(0)), s1(1, Rational(1));
    while (detail::poly_degree(r1) > 0) {
      detail::Poly q, rem;
      detail::poly_divmod(r0, r1, &q, &rem);
      r0 = std::move(r1);
      r1 = std::move(rem);
      // s_next = s0 - q * s1
      detail::Poly sn(std::max(s0.size(), q.size() + s1.size()), Rational(0));
      for (size_t i = 0; i < s0.size(); ++i) sn[i] = s0[i];
      for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        for (size_t j = 0; j < s1.size(); ++j) sn[i + j] -= q[i] * s1[j];
      }
      s0 = std::move(s1);
      s1 = std::move(sn);
    }
    const long d = detail::poly_degree(r1);
    if (d != 0) throw InternalError("inv: gcd with cyclotomic polynomial not constant");
    const Rational g = r1[0];
    detail::Poly res;
    detail::poly_divmod(s1, phi_poly, nullptr, &res);
    res.resize(t.phi, Rational(0));
    for (auto& x : res) x /= g;
    return Cyclo(order_, std::move(res));
  }

  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inv(); }

  Cyclo pow(long n) const {
    if (n < 0) return inv().pow(-n);
    Cyclo result(1L);
    Cyclo base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      base = base * base;
      n >>= 1;
    }
    return result;
  }

  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  Cyclo& operator/=(const Cyclo& o) { return *this = *this / o; }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.order_ == b.order_) return a.c_ == b.c_;
    const long L = std::lcm(a.order_, b.order_);
    return a.lifted_to(L).c_ == b.lifted_to(L).c_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  std::string to_string() const {
    if (is_rational()) return c_[0].get_str();
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      const bool neg = c_[i] < 0;
      const Rational a = neg ? Rational(-c_[i]) : c_[i];
      std::string term;
      if (i == 0) {
        term = a.get_str();
      } else {
        std::string base = "z" + std::to_string(order_);
        if (i > 1) base += "^" + std::to_string(i);
        term = (a == 1) ? base : a.get_str() + "*" + base;
      }
      if (out.empty()) {
        out = (neg ? "-" : "") + term;
      } else {
        out += (neg ? " - " : " + ") + term;
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  Cyclo(long order, std::vector<Rational> c) : order_(order), c_(std::move(c)) {}

  long order_;               // invariant: c_.size() == euler_phi(order_)
  std::vector<Rational> c_;
};

}  // namespace frobex

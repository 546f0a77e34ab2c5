#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "frobex/errors.hpp"

namespace frobex {

/**
 * Finite unital rings as dense index tables.
 *
 * Elements are indices 0..n-1 into explicit addition and multiplication
 * tables.  Constructors build the classical families (Z_n, matrix rings and
 * upper-triangular matrix rings over GF(q), direct products) or accept raw
 * tables; every constructor verifies the ring axioms exhaustively and
 * computes the invariant-factor decomposition of the additive group, which
 * downstream modules use to index characters.
 */

struct Submodule {
  enum class Side { kLeft, kRight, kTwoSided };
  Side side = Side::kLeft;
  std::vector<int> elements;    // sorted, always contains the zero element
  std::vector<int> generators;
};

struct AbelianDecomposition {
  // Invariant factors d_1 | d_2 | ... | d_m, each >= 2 (empty for the
  // trivial group).  coords maps an element to its digit vector; digit i is
  // the coefficient of basis[i].  element_of inverts the big-endian
  // mixed-radix encoding of a digit vector.
  std::vector<long> invariant_factors;
  std::vector<std::vector<int>> coords;
  std::vector<int> element_of;
  std::vector<int> basis;
  long exponent = 1;  // lcm of the factors

  long code_of(const std::vector<int>& digits) const {
    long code = 0;
    for (size_t i = 0; i < invariant_factors.size(); ++i)
      code = code * invariant_factors[i] + digits[i];
    return code;
  }
};

namespace detail {

// GF(q) arithmetic on integer-encoded elements: the element with base-p
// digits c_0, c_1, ... (constant term first) is the polynomial sum c_i x^i.
struct Gf {
  long p = 2;
  int m = 1;
  long q = 2;
  std::vector<int> irred;  // monic modulus, degree m, little-endian

  long add(long a, long b) const {
    long res = 0, mult = 1;
    for (int i = 0; i < m; ++i) {
      res += ((a + b) % p) * mult;
      a /= p;
      b /= p;
      mult *= p;
    }
    return res;
  }

  long neg(long a) const {
    long res = 0, mult = 1;
    for (int i = 0; i < m; ++i) {
      res += ((p - a % p) % p) * mult;
      a /= p;
      mult *= p;
    }
    return res;
  }

  long mul(long a, long b) const {
    if (m == 1) return (a * b) % p;
    std::vector<long> prod(2 * m - 1, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        prod[i + j] += ((a / pow_p(i)) % p) * ((b / pow_p(j)) % p);
    for (int k = 2 * m - 2; k >= m; --k) {
      const long c = prod[k] % p;
      prod[k] = 0;
      if (c == 0) continue;
      // x^k = x^(k-m) * (x^m mod irred); irred is monic
      for (int j = 0; j < m; ++j) prod[k - m + j] += c * (p - irred[j]);
    }
    long res = 0, mult = 1;
    for (int i = 0; i < m; ++i) {
      res += (prod[i] % p) * mult;
      mult *= p;
    }
    return res;
  }

 private:
  long pow_p(int i) const {
    long r = 1;
    while (i-- > 0) r *= p;
    return r;
  }
};

inline bool fp_poly_irreducible(const std::vector<int>& f, long p) {
  const int deg = static_cast<int>(f.size()) - 1;
  // trial division by every monic divisor of degree 1..deg/2
  for (int d = 1; 2 * d <= deg; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long t = 0; t < count; ++t) {
      std::vector<int> g(d + 1);
      long tt = t;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(tt % p);
        tt /= p;
      }
      g[d] = 1;
      // remainder of f mod g
      std::vector<int> rem(f.begin(), f.end());
      for (int i = deg; i >= d; --i) {
        const int c = rem[i] % static_cast<int>(p);
        if (c == 0) continue;
        for (int j = 0; j <= d; ++j) {
          rem[i - d + j] =
              static_cast<int>(((rem[i - d + j] - static_cast<long>(c) * g[j]) % p + p) % p);
        }
      }
      bool zero = true;
      for (int i = 0; i < d; ++i) {
        if (rem[i] % p != 0) {
          zero = false;
          break;
        }
      }
      if (zero) return false;
    }
  }
  return true;
}

inline Gf make_gf(long q) {
  if (q < 2) throw InputError("GF order must be at least 2");
  long p = 0;
  for (long d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  int m = 0;
  long t = q;
  while (t > 1) {
    if (t % p != 0) throw InputError("GF order " + std::to_string(q) + " is not a prime power");
    t /= p;
    ++m;
  }
  Gf gf;
  gf.p = p;
  gf.m = m;
  gf.q = q;
  if (m == 1) {
    gf.irred = {0, 1};
    return gf;
  }
  // smallest monic irreducible modulus in coefficient-encoding order
  long count = 1;
  for (int i = 0; i < m; ++i) count *= p;
  for (long enc = 0; enc < count; ++enc) {
    std::vector<int> f(m + 1);
    long e = enc;
    for (int i = 0; i < m; ++i) {
      f[i] = static_cast<int>(e % p);
      e /= p;
    }
    f[m] = 1;
    if (fp_poly_irreducible(f, p)) {
      gf.irred = f;
      return gf;
    }
  }
  throw InternalError("no irreducible polynomial found");
}

// --- generic structure of a finite abelian group given by a dense table ---

struct SmallGroup {
  int n = 0;
  int zero = 0;
  std::vector<int> add;  // n*n
  int at(int a, int b) const { return add[a * static_cast<size_t>(n) + b]; }
};

inline int sg_scalar(const SmallGroup& g, int x, long k) {
  int cur = g.zero;
  while (k-- > 0) cur = g.at(cur, x);
  return cur;
}

inline int sg_order(const SmallGroup& g, int x) {
  int k = 1, cur = x;
  while (cur != g.zero) {
    cur = g.at(cur, x);
    ++k;
  }
  return k;
}

// Basis of an abelian p-group: a maximal-order generator, then lifted and
// corrected basis elements of the quotient.  Returned with orders descending.
inline std::vector<int> p_group_basis(const SmallGroup& g, long p) {
  if (g.n == 1) return {};
  int g1 = 0, best = 1;
  for (int x = 0; x < g.n; ++x) {
    const int o = sg_order(g, x);
    if (o > best) {
      best = o;
      g1 = x;
    }
  }
  std::vector<int> log(g.n, -1);
  std::vector<int> hlist;
  {
    int cur = g.zero, k = 0;
    do {
      log[cur] = k;
      hlist.push_back(cur);
      cur = g.at(cur, g1);
      ++k;
    } while (cur != g.zero);
  }
  const long hsize = static_cast<long>(hlist.size());
  // quotient by <g1>, canonical representative = least element of the coset
  std::vector<int> coset_rep(g.n, -1);
  for (int x = 0; x < g.n; ++x) {
    if (coset_rep[x] != -1) continue;
    int mn = x;
    for (int h : hlist) mn = std::min(mn, g.at(x, h));
    for (int h : hlist) coset_rep[g.at(x, h)] = mn;
  }
  std::vector<int> reps;
  for (int x = 0; x < g.n; ++x)
    if (coset_rep[x] == x) reps.push_back(x);
  std::vector<int> local(g.n, -1);
  for (size_t i = 0; i < reps.size(); ++i) local[reps[i]] = static_cast<int>(i);
  SmallGroup q;
  q.n = static_cast<int>(reps.size());
  q.zero = local[coset_rep[g.zero]];
  q.add.resize(static_cast<size_t>(q.n) * q.n);
  for (int i = 0; i < q.n; ++i)
    for (int j = 0; j < q.n; ++j)
      q.add[i * static_cast<size_t>(q.n) + j] = local[coset_rep[g.at(reps[i], reps[j])]];
  std::vector<int> basis = {g1};
  for (int qb : p_group_basis(q, p)) {
    const int r = reps[qb];
    const long oq = sg_order(q, qb);
    const int t = sg_scalar(g, r, oq);  // lies in <g1>
    const long mlog = log[t];
    if (mlog < 0 || mlog % oq != 0)
      throw InternalError("p-group basis lift: correction not divisible");
    const long shift = (hsize - (mlog / oq) % hsize) % hsize;
    const int corrected = g.at(r, sg_scalar(g, g1, shift));
    if (sg_order(g, corrected) != oq)
      throw InternalError("p-group basis lift: order changed by correction");
    basis.push_back(corrected);
  }
  return basis;
}

inline AbelianDecomposition decompose_abelian(int n, const std::vector<int>& add_table, int zero) {
  SmallGroup g;
  g.n = n;
  g.zero = zero;
  g.add = add_table;
  // prime factorization of |G|
  std::vector<std::pair<long, int>> primes;
  long t = n;
  for (long p = 2; p * p <= t; ++p) {
    if (t % p == 0) {
      int v = 0;
      while (t % p == 0) {
        t /= p;
        ++v;
      }
      primes.push_back({p, v});
    }
  }
  if (t > 1) primes.push_back({t, 1});
  // per-prime component and its basis, orders descending
  std::vector<std::vector<std::pair<long, int>>> prime_bases;  // (order, element)
  size_t rows = 0;
  for (auto [p, v] : primes) {
    long pv = 1;
    for (int i = 0; i < v; ++i) pv *= p;
    std::vector<int> elems;
    for (int x = 0; x < n; ++x)
      if (sg_scalar(g, x, pv) == zero) elems.push_back(x);
    std::vector<int> local(n, -1);
    for (size_t i = 0; i < elems.size(); ++i) local[elems[i]] = static_cast<int>(i);
    SmallGroup gp;
    gp.n = static_cast<int>(elems.size());
    gp.zero = local[zero];
    gp.add.resize(static_cast<size_t>(gp.n) * gp.n);
    for (int i = 0; i < gp.n; ++i)
      for (int j = 0; j < gp.n; ++j)
        gp.add[i * static_cast<size_t>(gp.n) + j] = local[g.at(elems[i], elems[j])];
    std::vector<std::pair<long, int>> rows_p;
    for (int b : p_group_basis(gp, p)) rows_p.push_back({sg_order(gp, b), elems[b]});
    std::sort(rows_p.begin(), rows_p.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    rows = std::max(rows, rows_p.size());
    prime_bases.push_back(std::move(rows_p));
  }
  // CRT merge: row j combines the j-th largest cyclic piece of each prime
  std::vector<long> d_desc(rows, 1);
  std::vector<int> gen_desc(rows, zero);
  for (const auto& rows_p : prime_bases) {
    for (size_t j = 0; j < rows_p.size(); ++j) {
      d_desc[j] *= rows_p[j].first;
      gen_desc[j] = g.at(gen_desc[j], rows_p[j].second);
    }
  }
  AbelianDecomposition dec;
  for (size_t j = rows; j-- > 0;) {
    dec.invariant_factors.push_back(d_desc[j]);
    dec.basis.push_back(gen_desc[j]);
  }
  long total = 1;
  for (long d : dec.invariant_factors) total *= d;
  if (total != n) throw InternalError("abelian decomposition: factor product mismatch");
  for (size_t i = 0; i + 1 < dec.invariant_factors.size(); ++i) {
    if (dec.invariant_factors[i + 1] % dec.invariant_factors[i] != 0)
      throw InternalError("abelian decomposition: invariant factors not a divisibility chain");
  }
  dec.exponent = dec.invariant_factors.empty() ? 1 : dec.invariant_factors.back();
  // coordinates by mixed-radix enumeration over the basis
  const size_t m = dec.invariant_factors.size();
  dec.coords.assign(n, {});
  dec.element_of.assign(n, -1);
  std::vector<int> digits(m, 0);
  for (long code = 0; code < n; ++code) {
    long c = code;
    for (size_t i = m; i-- > 0;) {
      digits[i] = static_cast<int>(c % dec.invariant_factors[i]);
      c /= dec.invariant_factors[i];
    }
    int el = zero;
    for (size_t i = 0; i < m; ++i) el = g.at(el, sg_scalar(g, dec.basis[i], digits[i]));
    if (dec.element_of[code] != -1) throw InternalError("abelian decomposition: code collision");
    dec.element_of[code] = el;
    dec.coords[el] = digits;
  }
  std::vector<char> seen(n, 0);
  for (int el : dec.element_of) {
    if (el < 0 || el >= n || seen[el]) throw InternalError("abelian decomposition: not a bijection");
    seen[el] = 1;
  }
  return dec;
}

}  // namespace detail

class FiniteRing {
 public:
  static constexpr long kDefaultSizeCap = 512;

  // Properties

  int size() const { return n_; }
  int zero() const { return zero_; }
  int one() const { return one_; }
  int add(int a, int b) const { return add_[a * static_cast<size_t>(n_) + b]; }
  int mul(int a, int b) const { return mul_[a * static_cast<size_t>(n_) + b]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }

  const std::string& label(int a) const { return labels_[a]; }
  int index_of_label(const std::string& s) const {
    auto it = label_index_.find(s);
    if (it == label_index_.end()) throw InputError("unknown ring element label '" + s + "'");
    return it->second;
  }

  const AbelianDecomposition& decomposition() const { return dec_; }

  const std::vector<int>& units() const { return units_; }
  bool is_unit(int r) const { return unit_inv_[r] >= 0; }
  int unit_inverse(int r) const {
    if (unit_inv_[r] < 0) throw InputError("element " + label(r) + " is not a unit");
    return unit_inv_[r];
  }

  // All pairs (s, t) with s*t = r.
  const std::vector<std::pair<int, int>>& factorizations(int r) const { return fact_[r]; }

  // Constructions

  /// Rr = {s r : s in R}; a left ideal by distributivity.
  Submodule principal_left_ideal(int r) const {
    std::set<int> s;
    for (int x = 0; x < n_; ++x) s.insert(mul(x, r));
    Submodule sm;
    sm.side = Submodule::Side::kLeft;
    sm.elements.assign(s.begin(), s.end());
    sm.generators = {r};
    return sm;
  }

  /// rR = {r s : s in R}.
  Submodule principal_right_ideal(int r) const {
    std::set<int> s;
    for (int x = 0; x < n_; ++x) s.insert(mul(r, x));
    Submodule sm;
    sm.side = Submodule::Side::kRight;
    sm.elements.assign(s.begin(), s.end());
    sm.generators = {r};
    return sm;
  }

  /// {q : q r = 0}; a left ideal.
  Submodule left_annihilator(int r) const {
    Submodule sm;
    sm.side = Submodule::Side::kLeft;
    for (int q = 0; q < n_; ++q)
      if (mul(q, r) == zero_) sm.elements.push_back(q);
    return sm;
  }

  /// {u r v : u, v units}, sorted.
  std::vector<int> two_sided_unit_orbit(int r) const {
    std::set<int> s;
    for (int u : units_) {
      const int ur = mul(u, r);
      for (int v : units_) s.insert(mul(ur, v));
    }
    return std::vector<int>(s.begin(), s.end());
  }

  // Constructors

  static FiniteRing zn(long n, long cap = kDefaultSizeCap) {
    if (n < 1) throw InputError("Z_n requires n >= 1");
    check_cap(n, cap);
    FiniteRing r;
    r.n_ = static_cast<int>(n);
    r.alloc_tables();
    for (long a = 0; a < n; ++a) {
      for (long b = 0; b < n; ++b) {
        r.add_[a * n + b] = static_cast<int>((a + b) % n);
        r.mul_[a * n + b] = static_cast<int>((a * b) % n);
      }
    }
    for (long a = 0; a < n; ++a) r.labels_.push_back(std::to_string(a));
    AbelianDecomposition dec;
    if (n >= 2) {
      dec.invariant_factors = {n};
      dec.basis = {1};
      dec.exponent = n;
      for (long a = 0; a < n; ++a) {
        dec.coords.push_back({static_cast<int>(a)});
        dec.element_of.push_back(static_cast<int>(a));
      }
    } else {
      dec.coords = {{}};
      dec.element_of = {0};
    }
    r.dec_ = std::move(dec);
    r.finish(true);
    return r;
  }

  /// k x k matrices over GF(q); entries row-major in the index encoding.
  static FiniteRing matrix_ring(long k, long q, long cap = kDefaultSizeCap) {
    if (k < 1) throw InputError("matrix ring requires k >= 1");
    const detail::Gf gf = detail::make_gf(q);
    const long cells = k * k;
    const long n = checked_power(q, cells, cap);
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) pos.push_back({i, j});
    return build_matrix_family(static_cast<int>(k), gf, pos, n);
  }

  /// Upper-triangular k x k matrices over GF(q).
  static FiniteRing upper_triangular(long k, long q, long cap = kDefaultSizeCap) {
    if (k < 1) throw InputError("upper-triangular ring requires k >= 1");
    const detail::Gf gf = detail::make_gf(q);
    const long cells = k * (k + 1) / 2;
    const long n = checked_power(q, cells, cap);
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) pos.push_back({i, j});
    return build_matrix_family(static_cast<int>(k), gf, pos, n);
  }

  static FiniteRing product(const FiniteRing& a, const FiniteRing& b, long cap = kDefaultSizeCap) {
    const long n = static_cast<long>(a.n_) * b.n_;
    check_cap(n, cap);
    FiniteRing r;
    r.n_ = static_cast<int>(n);
    r.alloc_tables();
    for (int ia = 0; ia < a.n_; ++ia) {
      for (int ib = 0; ib < b.n_; ++ib) {
        const long x = static_cast<long>(ia) * b.n_ + ib;
        r.labels_.push_back("(" + a.label(ia) + "," + b.label(ib) + ")");
        for (int ja = 0; ja < a.n_; ++ja) {
          for (int jb = 0; jb < b.n_; ++jb) {
            const long y = static_cast<long>(ja) * b.n_ + jb;
            r.add_[x * n + y] = a.add(ia, ja) * b.n_ + b.add(ib, jb);
            r.mul_[x * n + y] = a.mul(ia, ja) * b.n_ + b.mul(ib, jb);
          }
        }
      }
    }
    r.finish(false);
    return r;
  }

  static FiniteRing from_tables(const std::vector<std::vector<int>>& add,
                                const std::vector<std::vector<int>>& mul,
                                std::vector<std::string> labels = {},
                                long cap = kDefaultSizeCap) {
    const long n = static_cast<long>(add.size());
    if (n < 1) throw InputError("tables ring must have at least one element");
    check_cap(n, cap);
    if (static_cast<long>(mul.size()) != n)
      throw InputError("add and mul tables have different sizes");
    FiniteRing r;
    r.n_ = static_cast<int>(n);
    r.alloc_tables();
    for (long i = 0; i < n; ++i) {
      if (static_cast<long>(add[i].size()) != n || static_cast<long>(mul[i].size()) != n)
        throw InputError("ring tables must be square");
      for (long j = 0; j < n; ++j) {
        r.add_[i * n + j] = add[i][j];
        r.mul_[i * n + j] = mul[i][j];
      }
    }
    if (labels.empty()) {
      for (long i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    if (static_cast<long>(labels.size()) != n)
      throw InputError("label list size does not match ring size");
    r.labels_ = std::move(labels);
    r.finish(false);
    return r;
  }

 private:
  FiniteRing() = default;

  static void check_cap(long n, long cap) {
    if (n > cap)
      throw ResourceError("ring size " + std::to_string(n) + " exceeds cap " +
                          std::to_string(cap));
  }

  static long checked_power(long base, long exp, long cap) {
    long n = 1;
    for (long i = 0; i < exp; ++i) {
      n *= base;
      check_cap(n, cap);
    }
    return n;
  }

  void alloc_tables() {
    add_.assign(static_cast<size_t>(n_) * n_, 0);
    mul_.assign(static_cast<size_t>(n_) * n_, 0);
  }

  static FiniteRing build_matrix_family(int k, const detail::Gf& gf,
                                        const std::vector<std::pair<int, int>>& pos, long n) {
    const int cells = static_cast<int>(pos.size());
    std::vector<std::vector<int>> slot(k, std::vector<int>(k, -1));
    for (int c = 0; c < cells; ++c) slot[pos[c].first][pos[c].second] = c;
    // entry values of element x, in pos order (big-endian base q)
    auto entries_of = [&](long x) {
      std::vector<long> e(cells);
      for (int c = cells - 1; c >= 0; --c) {
        e[c] = x % gf.q;
        x /= gf.q;
      }
      return e;
    };
    auto index_of = [&](const std::vector<long>& e) {
      long x = 0;
      for (int c = 0; c < cells; ++c) x = x * gf.q + e[c];
      return x;
    };
    FiniteRing r;
    r.n_ = static_cast<int>(n);
    r.alloc_tables();
    std::vector<std::vector<long>> ent(n);
    for (long x = 0; x < n; ++x) {
      ent[x] = entries_of(x);
      std::string lab = "[";
      for (int c = 0; c < cells; ++c) {
        if (c) lab += ",";
        lab += std::to_string(ent[x][c]);
      }
      lab += "]";
      r.labels_.push_back(lab);
    }
    for (long x = 0; x < n; ++x) {
      for (long y = 0; y < n; ++y) {
        std::vector<long> s(cells), p(cells, 0);
        for (int c = 0; c < cells; ++c) s[c] = gf.add(ent[x][c], ent[y][c]);
        for (int c = 0; c < cells; ++c) {
          const auto [i, j] = pos[c];
          long acc = 0;
          for (int t = 0; t < k; ++t) {
            const int si = slot[i][t], sj = slot[t][j];
            if (si < 0 || sj < 0) continue;  // structural zero
            acc = gf.add(acc, gf.mul(ent[x][si], ent[y][sj]));
          }
          p[c] = acc;
        }
        r.add_[x * n + y] = static_cast<int>(index_of(s));
        r.mul_[x * n + y] = static_cast<int>(index_of(p));
      }
    }
    // additive decomposition: one copy of Z_p per base-p digit of each entry
    AbelianDecomposition dec;
    const size_t m = static_cast<size_t>(cells) * gf.m;
    dec.invariant_factors.assign(m, gf.p);
    dec.exponent = m == 0 ? 1 : gf.p;
    dec.coords.assign(n, std::vector<int>(m, 0));
    for (long x = 0; x < n; ++x) {
      size_t d = 0;
      for (int c = 0; c < cells; ++c) {
        long v = ent[x][c];
        for (int i = 0; i < gf.m; ++i) {
          dec.coords[x][d++] = static_cast<int>(v % gf.p);
          v /= gf.p;
        }
      }
    }
    dec.element_of.assign(n, -1);
    for (long x = 0; x < n; ++x) dec.element_of[dec.code_of(dec.coords[x])] = static_cast<int>(x);
    for (size_t i = 0; i < m; ++i) {
      std::vector<int> digits(m, 0);
      digits[i] = 1;
      dec.basis.push_back(dec.element_of[dec.code_of(digits)]);
    }
    r.dec_ = std::move(dec);
    r.finish(true);
    return r;
  }

  // Exhaustive axiom checks, decomposition, units, factorization index.
  void finish(bool have_decomposition) {
    const long n = n_;
    const int* A = add_.data();
    const int* M = mul_.data();
    for (long i = 0; i < n * n; ++i) {
      if (A[i] < 0 || A[i] >= n || M[i] < 0 || M[i] >= n)
        throw InputError("ring table entry out of range");
    }
    if (labels_.empty()) {
      for (long i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
    }
    for (long i = 0; i < n; ++i) {
      if (!label_index_.emplace(labels_[i], static_cast<int>(i)).second)
        throw InputError("duplicate ring element label '" + labels_[i] + "'");
    }
    // additive identity
    zero_ = -1;
    for (long z = 0; z < n; ++z) {
      bool ok = true;
      for (long x = 0; x < n; ++x) {
        if (A[z * n + x] != x) {
          ok = false;
          break;
        }
      }
      if (ok) {
        zero_ = static_cast<int>(z);
        break;
      }
    }
    if (zero_ < 0) throw InputError("addition table has no identity element");
    for (long a = 0; a < n; ++a) {
      for (long b = 0; b < n; ++b) {
        if (A[a * n + b] != A[b * n + a])
          throw InputError("addition not commutative at (" + labels_[a] + "," + labels_[b] + ")");
      }
    }
    neg_.assign(n, -1);
    for (long a = 0; a < n; ++a) {
      for (long b = 0; b < n; ++b) {
        if (A[a * n + b] == zero_) {
          neg_[a] = static_cast<int>(b);
          break;
        }
      }
      if (neg_[a] < 0) throw InputError("element " + labels_[a] + " has no additive inverse");
    }
    for (long a = 0; a < n; ++a) {
      for (long b = 0; b < n; ++b) {
        const long ab = A[a * n + b];
        for (long c = 0; c < n; ++c) {
          if (A[ab * n + c] != A[a * n + A[b * n + c]])
            throw InputError("addition not associative at (" + labels_[a] + "," + labels_[b] +
                             "," + labels_[c] + ")");
        }
      }
    }
    // multiplicative identity
    one_ = -1;
    for (long e = 0; e < n; ++e) {
      bool ok = true;
      for (long x = 0; x < n; ++x) {
        if (M[e * n + x] != x || M[x * n + e] != x) {
          ok = false;
          break;
        }
      }
      if (ok) {
        one_ = static_cast<int>(e);
        break;
      }
    }
    if (one_ < 0) throw InputError("multiplication table has no identity element");
    for (long a = 0; a < n; ++a) {
      for (long b = 0; b < n; ++b) {
        const long ab = M[a * n + b];
        for (long c = 0; c < n; ++c) {
          if (M[ab * n + c] != M[a * n + M[b * n + c]])
            throw InputError("multiplication not associative at (" + labels_[a] + "," +
                             labels_[b] + "," + labels_[c] + ")");
        }
      }
    }
    for (long a = 0; a < n; ++a) {
      for (long b = 0; b < n; ++b) {
        for (long c = 0; c < n; ++c) {
          if (M[a * n + A[b * n + c]] != A[M[a * n + b] * n + M[a * n + c]])
            throw InputError("left distributivity fails at (" + labels_[a] + "," + labels_[b] +
                             "," + labels_[c] + ")");
          if (M[A[a * n + b] * n + c] != A[M[a * n + c] * n + M[b * n + c]])
            throw InputError("right distributivity fails at (" + labels_[a] + "," + labels_[b] +
                             "," + labels_[c] + ")");
        }
      }
    }
    if (!have_decomposition) dec_ = detail::decompose_abelian(n_, add_, zero_);
    verify_decomposition();
    // units and inverses
    unit_inv_.assign(n, -1);
    for (long r = 0; r < n; ++r) {
      for (long s = 0; s < n; ++s) {
        if (M[r * n + s] == one_ && M[s * n + r] == one_) {
          unit_inv_[r] = static_cast<int>(s);
          units_.push_back(static_cast<int>(r));
          break;
        }
      }
    }
    fact_.assign(n, {});
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) fact_[mul(s, t)].push_back({s, t});
  }

  void verify_decomposition() const {
    const size_t m = dec_.invariant_factors.size();
    long total = 1;
    for (long d : dec_.invariant_factors) {
      if (d < 2) throw InternalError("invariant factor below 2");
      total *= d;
    }
    if (total != n_ || static_cast<long>(dec_.coords.size()) != n_ ||
        static_cast<long>(dec_.element_of.size()) != n_)
      throw InternalError("decomposition size mismatch");
    for (int x = 0; x < n_; ++x) {
      if (dec_.coords[x].size() != m) throw InternalError("coordinate arity mismatch");
      if (dec_.element_of[dec_.code_of(dec_.coords[x])] != x)
        throw InternalError("decomposition not a bijection");
    }
    for (int x = 0; x < n_; ++x) {
      for (int y = 0; y < n_; ++y) {
        const int s = add(x, y);
        for (size_t i = 0; i < m; ++i) {
          if ((dec_.coords[x][i] + dec_.coords[y][i]) % dec_.invariant_factors[i] !=
              dec_.coords[s][i])
            throw InternalError("decomposition does not preserve addition");
        }
      }
    }
  }

  int n_ = 0;
  int zero_ = 0;
  int one_ = 0;
  std::vector<int> add_, mul_, neg_, unit_inv_;
  std::vector<int> units_;
  std::vector<std::string> labels_;
  std::map<std::string, int> label_index_;
  std::vector<std::vector<std::pair<int, int>>> fact_;
  AbelianDecomposition dec_;
};

}  // namespace frobex

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "frobex/dualmod.hpp"
#include "frobex/errors.hpp"
#include "frobex/extension.hpp"
#include "frobex/sgring.hpp"

namespace frobex {

/**
 * Linear codes over the alphabet A (or a submodule alphabet), their
 * w-isometries, and the search for extending monomial transformations.
 *
 * A code is a left submodule C of X^n (X the alphabet).  Isometries are
 * injective left-linear maps C -> X^n preserving the componentwise-summed
 * weight; they are enumerated through generator images and verified
 * exhaustively.  Everything is exact and deterministic; search spaces are
 * bounded by explicit caps.
 */

using Word = std::vector<int>;  // component indices into A

struct SearchCaps {
  long max_codes = 10000;       // number of codes enumerated
  long max_isometries = 10000;  // isometries per code
  long max_space = 65536;       // tuples in X^n and generator search spaces
  unsigned long seed = 1;       // for the correlation-preservation sanity check
};

inline long word_code(const FrobeniusBimodule& A, const Word& x) {
  long code = 0;
  for (int c : x) code = code * A.size() + c;
  return code;
}

inline Word word_of_code(const FrobeniusBimodule& A, int n, long code) {
  Word x(n, 0);
  for (int i = n; i-- > 0;) {
    x[i] = static_cast<int>(code % A.size());
    code /= A.size();
  }
  return x;
}

inline Word word_add(const FrobeniusBimodule& A, const Word& x, const Word& y) {
  Word z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = A.add(x[i], y[i]);
  return z;
}

inline Word word_left_act(const FrobeniusBimodule& A, int r, const Word& x) {
  Word z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = A.left_act(r, x[i]);
  return z;
}

/// Componentwise-summed weight of a word.
inline Cyclo word_weight(const WeightFn& w, const Word& x) {
  Cyclo acc;
  for (int c : x) acc += w[c];
  return acc;
}

/// Additive order of a word.
inline long word_order(const FrobeniusBimodule& A, const Word& x) {
  Word cur = x;
  long k = 1;
  const Word zero(x.size(), A.zero());
  while (cur != zero) {
    cur = word_add(A, cur, x);
    ++k;
  }
  return k;
}

struct LinearCode {
  const FrobeniusBimodule* A = nullptr;
  int n = 0;
  std::vector<int> alphabet;     // ambient alphabet X, sorted A-indices
  std::vector<long> codewords;   // sorted word codes
  std::vector<long> generators;  // small generating set, word codes
};

/// Left span of generator words inside A^n, as a sorted code list.
inline std::vector<long> left_span(const FrobeniusBimodule& A, int n,
                                   const std::vector<long>& gens) {
  const Word zero(n, A.zero());
  std::set<long> seen = {word_code(A, zero)};
  std::vector<Word> list = {zero};
  auto push = [&](const Word& x) {
    if (seen.insert(word_code(A, x)).second) list.push_back(x);
  };
  for (long g : gens) push(word_of_code(A, n, g));
  for (size_t i = 0; i < list.size(); ++i) {
    const Word x = list[i];
    for (size_t j = 0; j <= i; ++j) push(word_add(A, x, list[j]));
    for (int r = 0; r < A.ring().size(); ++r) push(word_left_act(A, r, x));
  }
  return std::vector<long>(seen.begin(), seen.end());
}

/// Small deterministic generating set of a code (1 generator if possible,
/// else a least pair, else greedy).
inline std::vector<long> code_generators(const FrobeniusBimodule& A, int n,
                                         const std::vector<long>& codewords) {
  for (long c : codewords) {
    if (left_span(A, n, {c}) == codewords) return {c};
  }
  for (size_t i = 0; i < codewords.size(); ++i) {
    for (size_t j = i + 1; j < codewords.size(); ++j) {
      if (left_span(A, n, {codewords[i], codewords[j]}) == codewords)
        return {codewords[i], codewords[j]};
    }
  }
  std::vector<long> gens;
  std::vector<long> cur = left_span(A, n, {});
  while (cur != codewords) {
    long pick = -1;
    std::set<long> have(cur.begin(), cur.end());
    for (long c : codewords) {
      if (!have.count(c)) {
        pick = c;
        break;
      }
    }
    if (pick < 0) throw InternalError("code generator search exhausted the code");
    gens.push_back(pick);
    cur = left_span(A, n, gens);
  }
  return gens;
}

/// All left submodules of X^n for a submodule alphabet X: closure of the
/// cyclic codes R x under sum.  Sorted by (size, codeword lists).
inline std::vector<LinearCode> enumerate_codes_over(const FrobeniusBimodule& A,
                                                    const std::vector<int>& alphabet, int n,
                                                    const SearchCaps& caps = {}) {
  if (n < 0) throw InputError("code length must be nonnegative");
  long space = 1;
  for (int i = 0; i < n; ++i) {
    space *= static_cast<long>(alphabet.size());
    if (space > caps.max_space)
      throw ResourceError("alphabet^n exceeds cap " + std::to_string(caps.max_space));
  }
  // all words over the alphabet
  std::vector<Word> words;
  Word cur(n, alphabet.empty() ? 0 : alphabet.front());
  std::vector<int> digit(n, 0);
  for (long t = 0; t < space; ++t) {
    for (int i = 0; i < n; ++i) cur[i] = alphabet[digit[i]];
    words.push_back(cur);
    for (int i = n; i-- > 0;) {
      if (++digit[i] < static_cast<int>(alphabet.size())) break;
      digit[i] = 0;
    }
  }
  if (n == 0) words = {Word{}};
  std::set<std::vector<long>> seen;
  std::vector<std::vector<long>> list;
  auto push = [&](std::vector<long> codes) {
    if (seen.insert(codes).second) {
      if (static_cast<long>(seen.size()) > caps.max_codes)
        throw ResourceError("code count exceeds cap " + std::to_string(caps.max_codes));
      list.push_back(std::move(codes));
    }
  };
  for (const Word& x : words) push(left_span(A, n, {word_code(A, x)}));
  for (size_t i = 0; i < list.size(); ++i) {
    for (size_t j = 0; j <= i; ++j) {
      std::set<long> sum;
      for (long xc : list[i]) {
        const Word x = word_of_code(A, n, xc);
        for (long yc : list[j]) sum.insert(word_code(A, word_add(A, x, word_of_code(A, n, yc))));
      }
      push(std::vector<long>(sum.begin(), sum.end()));
    }
  }
  std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  std::vector<LinearCode> out;
  for (auto& codes : list) {
    LinearCode c;
    c.A = &A;
    c.n = n;
    c.alphabet = alphabet;
    c.generators = code_generators(A, n, codes);
    c.codewords = std::move(codes);
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<LinearCode> enumerate_codes(const FrobeniusBimodule& A, int n,
                                               const SearchCaps& caps = {}) {
  std::vector<int> alphabet(A.size());
  for (int a = 0; a < A.size(); ++a) alphabet[a] = a;
  return enumerate_codes_over(A, alphabet, n, caps);
}

struct Isometry {
  std::vector<long> gen_images;  // image of each generator, word codes
  std::vector<long> images;      // f(c) for each codeword, parallel to codewords
};

namespace detail {

// First-found representation of every codeword as an R-combination of the
// generators; the tuple space R^k is enumerated exhaustively.
inline std::map<long, std::vector<int>> code_representations(const FrobeniusBimodule& A,
                                                             const LinearCode& C,
                                                             const SearchCaps& caps) {
  const int k = static_cast<int>(C.generators.size());
  const int nr = A.ring().size();
  long tuples = 1;
  for (int i = 0; i < k; ++i) {
    tuples *= nr;
    if (tuples > caps.max_space)
      throw ResourceError("generator tuple space exceeds cap " + std::to_string(caps.max_space));
  }
  std::vector<Word> gens;
  for (long g : C.generators) gens.push_back(word_of_code(A, C.n, g));
  std::map<long, std::vector<int>> rep;
  std::vector<int> coef(k, 0);
  for (long t = 0; t < tuples; ++t) {
    Word acc(C.n, A.zero());
    for (int i = 0; i < k; ++i)
      acc = word_add(A, acc, word_left_act(A, coef[i], gens[i]));
    rep.emplace(word_code(A, acc), coef);
    for (int i = k; i-- > 0;) {
      if (++coef[i] < nr) break;
      coef[i] = 0;
    }
  }
  for (long c : C.codewords) {
    if (!rep.count(c))
      throw InternalError("generators do not span the code");
  }
  return rep;
}

}  // namespace detail

/// All w-isometries of C: injective left-linear maps C -> X^n preserving
/// the summed weight.  Candidates are generator-image tuples over X^n,
/// pruned by additive order and generator weight, then every surviving map
/// is verified exhaustively (homomorphism, injectivity, weight).
inline std::vector<Isometry> isometries(const LinearCode& C, const WeightFn& w,
                                        const SearchCaps& caps = {}) {
  const FrobeniusBimodule& A = *C.A;
  if (&w.bimodule() != &A) throw InputError("weight is defined over a different bimodule");
  const int k = static_cast<int>(C.generators.size());
  const auto rep = detail::code_representations(A, C, caps);
  // all words of the ambient space X^n
  std::vector<Word> space;
  {
    long total = 1;
    for (int i = 0; i < C.n; ++i) total *= static_cast<long>(C.alphabet.size());
    std::vector<int> digit(C.n, 0);
    for (long t = 0; t < total; ++t) {
      Word x(C.n);
      for (int i = 0; i < C.n; ++i) x[i] = C.alphabet[digit[i]];
      space.push_back(x);
      for (int i = C.n; i-- > 0;) {
        if (++digit[i] < static_cast<int>(C.alphabet.size())) break;
        digit[i] = 0;
      }
    }
    if (C.n == 0) space = {Word{}};
  }
  // candidate images per generator: equal order, equal weight
  std::vector<std::vector<Word>> cands(k);
  for (int i = 0; i < k; ++i) {
    const Word g = word_of_code(A, C.n, C.generators[i]);
    const long og = word_order(A, g);
    const Cyclo wg = word_weight(w, g);
    for (const Word& v : space) {
      if (word_order(A, v) == og && word_weight(w, v) == wg) cands[i].push_back(v);
    }
  }
  long combos = 1;
  for (int i = 0; i < k; ++i) {
    combos *= static_cast<long>(cands[i].size());
    if (combos > caps.max_space)
      throw ResourceError("isometry candidate space exceeds cap " +
                          std::to_string(caps.max_space));
    if (combos == 0) return {};
  }
  std::vector<Isometry> out;
  // distinct candidate tuples can collapse to one map when the generators
  // are dependent, so maps are deduplicated by their image vectors
  std::set<std::vector<long>> seen_images;
  std::vector<int> pick(k, 0);
  for (long t = 0; t < combos; ++t) {
    std::vector<Word> images(k);
    for (int i = 0; i < k; ++i) images[i] = cands[i][pick[i]];
    // f over the code via first-found representations
    std::map<long, long> fmap;
    bool ok = true;
    for (long c : C.codewords) {
      const auto& coef = rep.at(c);
      Word acc(C.n, A.zero());
      for (int i = 0; i < k; ++i) acc = word_add(A, acc, word_left_act(A, coef[i], images[i]));
      fmap[c] = word_code(A, acc);
    }
    // exhaustive verification
    std::set<long> image_set;
    for (long c : C.codewords) image_set.insert(fmap.at(c));
    ok = image_set.size() == C.codewords.size();
    if (ok) {
      for (long c : C.codewords) {
        const Word x = word_of_code(A, C.n, c);
        const Word fx = word_of_code(A, C.n, fmap.at(c));
        if (!(word_weight(w, fx) == word_weight(w, x))) {
          ok = false;
          break;
        }
        for (long d : C.codewords) {
          const long sc = word_code(A, word_add(A, x, word_of_code(A, C.n, d)));
          const long fs = word_code(A, word_add(A, fx, word_of_code(A, C.n, fmap.at(d))));
          if (fmap.at(sc) != fs) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
        for (int r = 0; r < A.ring().size(); ++r) {
          const long rc = word_code(A, word_left_act(A, r, x));
          const long fr = word_code(A, word_left_act(A, r, fx));
          if (fmap.at(rc) != fr) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
    }
    if (ok) {
      Isometry f;
      for (long g : C.generators) f.gen_images.push_back(fmap.at(g));
      for (long c : C.codewords) f.images.push_back(fmap.at(c));
      if (seen_images.insert(f.images).second) {
        out.push_back(std::move(f));
        if (static_cast<long>(out.size()) > caps.max_isometries)
          throw ResourceError("isometry count exceeds cap " + std::to_string(caps.max_isometries));
      }
    }
    for (int i = k; i-- > 0;) {
      if (++pick[i] < static_cast<int>(cands[i].size())) break;
      pick[i] = 0;
    }
  }
  return out;
}

/// T(x)_i = x_{sigma(i)} . u_i with sigma a coordinate permutation and u_i
/// units; a classical monomial transformation.
struct MonomialTransform {
  std::vector<int> sigma;
  std::vector<int> units;
};

inline Word apply_monomial(const FrobeniusBimodule& A, const MonomialTransform& T,
                           const Word& x) {
  Word y(x.size());
  for (size_t i = 0; i < x.size(); ++i) y[i] = A.right_act(x[T.sigma[i]], T.units[i]);
  return y;
}

/// First monomial transformation agreeing with f on all of C, in
/// lexicographic (sigma, units) order, if one exists.
inline std::optional<MonomialTransform> extends_to_monomial(const LinearCode& C,
                                                            const Isometry& f) {
  const FrobeniusBimodule& A = *C.A;
  const auto& units = A.ring().units();
  std::vector<int> sigma(C.n);
  for (int i = 0; i < C.n; ++i) sigma[i] = i;
  do {
    std::vector<int> upick(C.n, 0);
    long combos = 1;
    for (int i = 0; i < C.n; ++i) combos *= static_cast<long>(units.size());
    for (long t = 0; t < combos; ++t) {
      MonomialTransform T;
      T.sigma = sigma;
      for (int i = 0; i < C.n; ++i) T.units.push_back(units[upick[i]]);
      bool ok = true;
      for (size_t ci = 0; ci < C.codewords.size(); ++ci) {
        const Word x = word_of_code(A, C.n, C.codewords[ci]);
        if (word_code(A, apply_monomial(A, T, x)) != f.images[ci]) {
          ok = false;
          break;
        }
      }
      if (ok) return T;
      for (int i = C.n; i-- > 0;) {
        if (++upick[i] < static_cast<int>(units.size())) break;
        upick[i] = 0;
      }
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

struct CodeExtensionResult {
  std::vector<long> generators;
  long code_size = 0;
  long isometry_count = 0;
  long extended_count = 0;
  std::vector<std::vector<long>> failing_gen_images;  // witnesses, generator images
};

struct ExtensionSearchReport {
  int n = 0;
  bool certificate_valid = false;
  std::string certificate_note;
  bool verdict = true;  // every isometry of every code extends
  std::vector<CodeExtensionResult> codes;
};

namespace detail {

// Any w-isometry is also an isometry of w correlated with any alpha; checked
// here for random rational alpha as a guard on the search machinery.
inline void correlation_preservation_check(const LinearCode& C, const WeightFn& w,
                                           const std::vector<Isometry>& fs,
                                           std::mt19937_64& rng) {
  const FrobeniusBimodule& A = *C.A;
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  for (int trial = 0; trial < 2; ++trial) {
    SgFn alpha(A.ring());
    for (int r = 0; r < A.ring().size(); ++r) {
      Rational q(num(rng), den(rng));
      q.canonicalize();
      alpha[r] = Cyclo(q);
    }
    const WeightFn wa = correlate(w, alpha);
    for (const Isometry& f : fs) {
      for (size_t ci = 0; ci < C.codewords.size(); ++ci) {
        const Word x = word_of_code(A, C.n, C.codewords[ci]);
        const Word fx = word_of_code(A, C.n, f.images[ci]);
        if (!(word_weight(wa, fx) == word_weight(wa, x)))
          throw InternalError("a w-isometry failed to preserve a correlated weight");
      }
    }
  }
}

}  // namespace detail

/// Brute-force check of the extension property at length n: every
/// w-isometry of every code must agree with some monomial transformation.
/// The certificate verdict is recorded but not required.
inline ExtensionSearchReport check_extension_property(const FrobeniusBimodule& A,
                                                      const WeightFn& w, int n,
                                                      const SearchCaps& caps = {}) {
  if (&w.bimodule() != &A) throw InputError("weight is defined over a different bimodule");
  ExtensionSearchReport report;
  report.n = n;
  try {
    const ExtensionCertificate cert = certify(A, w);
    report.certificate_valid = cert.valid;
    report.certificate_note = cert.valid ? "valid" : "condition fails";
  } catch (const InputError& e) {
    report.certificate_valid = false;
    report.certificate_note = e.what();
  }
  std::mt19937_64 rng(caps.seed);
  for (const LinearCode& C : enumerate_codes(A, n, caps)) {
    CodeExtensionResult res;
    res.generators = C.generators;
    res.code_size = static_cast<long>(C.codewords.size());
    const auto fs = isometries(C, w, caps);
    detail::correlation_preservation_check(C, w, fs, rng);
    res.isometry_count = static_cast<long>(fs.size());
    for (const Isometry& f : fs) {
      if (extends_to_monomial(C, f)) {
        ++res.extended_count;
      } else {
        report.verdict = false;
        res.failing_gen_images.push_back(f.gen_images);
      }
    }
    report.codes.push_back(std::move(res));
  }
  return report;
}

// --- submodule alphabets ---

/// Socle of a left submodule (given by its sorted elements): the sum of the
/// minimal nonzero left submodules contained in it.
inline Submodule socle_of(const FrobeniusBimodule& A, const std::vector<int>& mod_elems) {
  std::set<std::vector<int>> minimal;
  for (int a : mod_elems) {
    if (a == A.zero()) continue;
    const auto ra = A.principal_left_submodule(a).elements;
    bool is_minimal = true;
    for (int b : ra) {
      if (b == A.zero()) continue;
      if (A.principal_left_submodule(b).elements != ra) {
        is_minimal = false;
        break;
      }
    }
    if (is_minimal) minimal.insert(ra);
  }
  std::vector<int> gens;
  for (const auto& ra : minimal) gens.insert(gens.end(), ra.begin(), ra.end());
  Submodule s = A.submodule_span(Submodule::Side::kLeft, gens);
  s.generators.clear();
  // each minimal submodule is generated by any nonzero element
  for (const auto& ra : minimal) s.generators.push_back(ra.back());
  return s;
}

inline Submodule socle(const FrobeniusBimodule& A) {
  std::vector<int> all(A.size());
  for (int a = 0; a < A.size(); ++a) all[a] = a;
  return socle_of(A, all);
}

/// Whether a left submodule is cyclic: some a with Ra equal to it.
inline bool is_cyclic_left(const FrobeniusBimodule& A, const std::vector<int>& mod_elems) {
  for (int a : mod_elems) {
    if (A.principal_left_submodule(a).elements == mod_elems) return true;
  }
  return false;
}

namespace detail {

// All left submodules of the module (closure of cyclics under sum).
inline std::vector<std::vector<int>> left_submodules_of(const FrobeniusBimodule& A,
                                                        const std::vector<int>& mod_elems,
                                                        long cap) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> list;
  auto push = [&](std::vector<int> elems) {
    if (seen.insert(elems).second) {
      if (static_cast<long>(seen.size()) > cap)
        throw ResourceError("left submodule lattice exceeds cap " + std::to_string(cap));
      list.push_back(std::move(elems));
    }
  };
  for (int a : mod_elems) push(A.principal_left_submodule(a).elements);
  for (size_t i = 0; i < list.size(); ++i) {
    for (size_t j = 0; j <= i; ++j) {
      std::set<int> sum;
      for (int x : list[i])
        for (int y : list[j]) sum.insert(A.add(x, y));
      push(std::vector<int>(sum.begin(), sum.end()));
    }
  }
  std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return list;
}

// Deterministic small generating set of a left submodule.
inline std::vector<int> left_generators_of(const FrobeniusBimodule& A,
                                           const std::vector<int>& elems) {
  for (int a : elems) {
    if (A.principal_left_submodule(a).elements == elems) return {a};
  }
  for (size_t i = 0; i < elems.size(); ++i) {
    for (size_t j = i + 1; j < elems.size(); ++j) {
      if (A.submodule_span(Submodule::Side::kLeft, {elems[i], elems[j]}).elements == elems)
        return {elems[i], elems[j]};
    }
  }
  std::vector<int> gens;
  std::vector<int> cur = {A.zero()};
  while (cur != elems) {
    int pick = -1;
    std::set<int> have(cur.begin(), cur.end());
    for (int a : elems) {
      if (!have.count(a)) {
        pick = a;
        break;
      }
    }
    if (pick < 0) throw InternalError("left generator search exhausted the submodule");
    gens.push_back(pick);
    cur = A.submodule_span(Submodule::Side::kLeft, gens).elements;
  }
  return gens;
}

// All left-linear maps from the span of gens into the module, as dense maps
// on the domain elements.  Enumerated by generator images, verified.
inline std::vector<std::map<int, int>> left_linear_maps(const FrobeniusBimodule& A,
                                                        const std::vector<int>& domain,
                                                        const std::vector<int>& gens,
                                                        const std::vector<int>& target,
                                                        long space_cap) {
  const int k = static_cast<int>(gens.size());
  const int nr = A.ring().size();
  // representations of the domain as R-combinations of the generators
  long tuples = 1;
  for (int i = 0; i < k; ++i) {
    tuples *= nr;
    if (tuples > space_cap)
      throw ResourceError("map representation space exceeds cap " + std::to_string(space_cap));
  }
  std::map<int, std::vector<int>> rep;
  std::vector<int> coef(k, 0);
  for (long t = 0; t < tuples; ++t) {
    int acc = A.zero();
    for (int i = 0; i < k; ++i) acc = A.add(acc, A.left_act(coef[i], gens[i]));
    rep.emplace(acc, coef);
    for (int i = k; i-- > 0;) {
      if (++coef[i] < nr) break;
      coef[i] = 0;
    }
  }
  for (int a : domain) {
    if (!rep.count(a)) throw InternalError("generators do not span the domain");
  }
  // element orders, for pruning
  auto order_of = [&](int a) {
    int cur = a;
    long o = 1;
    while (cur != A.zero()) {
      cur = A.add(cur, a);
      ++o;
    }
    return o;
  };
  std::vector<std::vector<int>> cands(k);
  for (int i = 0; i < k; ++i) {
    const long og = order_of(gens[i]);
    for (int v : target) {
      if (og % order_of(v) == 0) cands[i].push_back(v);
    }
  }
  long combos = 1;
  for (int i = 0; i < k; ++i) {
    combos *= static_cast<long>(cands[i].size());
    if (combos > space_cap)
      throw ResourceError("map candidate space exceeds cap " + std::to_string(space_cap));
    if (combos == 0) return {};
  }
  std::vector<std::map<int, int>> out;
  // distinct candidate tuples can collapse to one map when the generators
  // are dependent, so maps are deduplicated by their image vectors
  std::set<std::vector<int>> seen_images;
  std::vector<int> pick(k, 0);
  for (long t = 0; t < combos; ++t) {
    std::map<int, int> f;
    std::vector<int> images;
    for (int a : domain) {
      const auto& c = rep.at(a);
      int acc = A.zero();
      for (int i = 0; i < k; ++i) acc = A.add(acc, A.left_act(c[i], cands[i][pick[i]]));
      f[a] = acc;
      images.push_back(acc);
    }
    bool ok = seen_images.insert(std::move(images)).second;
    for (int a : domain) {
      if (!ok) break;
      for (int b : domain) {
        if (f.at(A.add(a, b)) != A.add(f.at(a), f.at(b))) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      for (int r = 0; r < nr; ++r) {
        if (f.at(A.left_act(r, a)) != A.left_act(r, f.at(a))) {
          ok = false;
          break;
        }
      }
    }
    if (ok) out.push_back(std::move(f));
    for (int i = k; i-- > 0;) {
      if (++pick[i] < static_cast<int>(cands[i].size())) break;
      pick[i] = 0;
    }
  }
  return out;
}

}  // namespace detail

/// Pseudo-injectivity of a left submodule M of A: every injective
/// left-linear map B -> M from a submodule B of M extends to an
/// endomorphism of M.
inline bool is_pseudo_injective(const FrobeniusBimodule& A, const std::vector<int>& mod_elems,
                                const SearchCaps& caps = {}) {
  const auto endo_gens = detail::left_generators_of(A, mod_elems);
  const auto endos =
      detail::left_linear_maps(A, mod_elems, endo_gens, mod_elems, caps.max_space);
  for (const auto& b_elems : detail::left_submodules_of(A, mod_elems, caps.max_codes)) {
    const auto gens = detail::left_generators_of(A, b_elems);
    for (const auto& f : detail::left_linear_maps(A, b_elems, gens, mod_elems, caps.max_space)) {
      std::set<int> image;
      for (int a : b_elems) image.insert(f.at(a));
      if (image.size() != b_elems.size()) continue;  // not injective
      bool extendable = false;
      for (const auto& g : endos) {
        bool agrees = true;
        for (int a : b_elems) {
          if (g.at(a) != f.at(a)) {
            agrees = false;
            break;
          }
        }
        if (agrees) {
          extendable = true;
          break;
        }
      }
      if (!extendable) return false;
    }
  }
  return true;
}

/// The group G_rt of invertible left-linear self-maps of the submodule
/// preserving w.  Maps are stored as images parallel to `elements`.
struct SymmetryGroup {
  std::vector<int> elements;            // the module, sorted A-indices
  std::vector<std::vector<int>> maps;   // each: images parallel to elements
};

inline SymmetryGroup right_symmetry_group(const FrobeniusBimodule& A,
                                          const std::vector<int>& mod_elems, const WeightFn& w,
                                          const SearchCaps& caps = {}) {
  SymmetryGroup G;
  G.elements = mod_elems;
  const auto gens = detail::left_generators_of(A, mod_elems);
  for (const auto& f : detail::left_linear_maps(A, mod_elems, gens, mod_elems, caps.max_space)) {
    std::set<int> image;
    for (int a : mod_elems) image.insert(f.at(a));
    if (image.size() != mod_elems.size()) continue;
    bool preserves = true;
    for (int a : mod_elems) {
      if (!(w[f.at(a)] == w[a])) {
        preserves = false;
        break;
      }
    }
    if (!preserves) continue;
    std::vector<int> images;
    for (int a : mod_elems) images.push_back(f.at(a));
    G.maps.push_back(std::move(images));
  }
  return G;
}

/// T(x)_i = phi_i(x_{sigma(i)}) with phi_i drawn from G_rt.
struct GrtMonomialTransform {
  std::vector<int> sigma;
  std::vector<int> phi;  // indices into SymmetryGroup::maps
};

struct OtherAlphabetReport {
  std::vector<int> alphabet;
  bool pseudo_injective = false;
  bool socle_cyclic = false;
  bool certificate_valid = false;
  long symmetry_group_size = 0;
  int n = 0;
  bool verdict = true;
  std::vector<CodeExtensionResult> codes;
};

/// Extension check over a submodule alphabet: isometries of codes in
/// alphabet^n must agree with some G_rt-monomial transformation.  The
/// hypotheses (left submodule, pseudo-injective, cyclic socle, certified
/// weight) are verified first; violations are input errors.
inline OtherAlphabetReport check_other_alphabet(const FrobeniusBimodule& A,
                                                const std::vector<int>& mod_elems,
                                                const WeightFn& w, int n,
                                                const SearchCaps& caps = {}) {
  if (&w.bimodule() != &A) throw InputError("weight is defined over a different bimodule");
  std::vector<int> alphabet = mod_elems;
  std::sort(alphabet.begin(), alphabet.end());
  if (!A.is_submodule(Submodule::Side::kLeft, alphabet))
    throw InputError("alphabet is not a left submodule of the character bimodule");
  OtherAlphabetReport report;
  report.alphabet = alphabet;
  report.n = n;
  report.pseudo_injective = is_pseudo_injective(A, alphabet, caps);
  if (!report.pseudo_injective)
    throw InputError("hypothesis violation: alphabet is not pseudo-injective");
  report.socle_cyclic = is_cyclic_left(A, socle_of(A, alphabet).elements);
  if (!report.socle_cyclic)
    throw InputError("hypothesis violation: socle of the alphabet is not cyclic");
  const ExtensionCertificate cert = certify(A, w);
  report.certificate_valid = cert.valid;
  if (!cert.valid)
    throw InputError("hypothesis violation: weight does not certify on the full bimodule");
  const SymmetryGroup G = right_symmetry_group(A, alphabet, w, caps);
  report.symmetry_group_size = static_cast<long>(G.maps.size());
  std::map<int, int> local;  // A-index -> position in alphabet
  for (size_t i = 0; i < alphabet.size(); ++i) local[alphabet[i]] = static_cast<int>(i);
  std::mt19937_64 rng(caps.seed);
  for (const LinearCode& C : enumerate_codes_over(A, alphabet, n, caps)) {
    CodeExtensionResult res;
    res.generators = C.generators;
    res.code_size = static_cast<long>(C.codewords.size());
    const auto fs = isometries(C, w, caps);
    detail::correlation_preservation_check(C, w, fs, rng);
    res.isometry_count = static_cast<long>(fs.size());
    for (const Isometry& f : fs) {
      // search sigma x G_rt tuples for agreement with f on C
      bool extended = false;
      std::vector<int> sigma(C.n);
      for (int i = 0; i < C.n; ++i) sigma[i] = i;
      do {
        long combos = 1;
        for (int i = 0; i < C.n; ++i) combos *= static_cast<long>(G.maps.size());
        std::vector<int> pick(C.n, 0);
        for (long t = 0; t < combos && !extended; ++t) {
          bool ok = true;
          for (size_t ci = 0; ci < C.codewords.size() && ok; ++ci) {
            const Word x = word_of_code(A, C.n, C.codewords[ci]);
            Word y(C.n);
            for (int i = 0; i < C.n; ++i)
              y[i] = G.maps[pick[i]][local.at(x[sigma[i]])];
            ok = word_code(A, y) == f.images[ci];
          }
          if (ok) extended = true;
          for (int i = C.n; i-- > 0;) {
            if (++pick[i] < static_cast<int>(G.maps.size())) break;
            pick[i] = 0;
          }
        }
      } while (!extended && std::next_permutation(sigma.begin(), sigma.end()));
      if (extended) {
        ++res.extended_count;
      } else {
        report.verdict = false;
        res.failing_gen_images.push_back(f.gen_images);
      }
    }
    report.codes.push_back(std::move(res));
  }
  return report;
}

}  // namespace frobex

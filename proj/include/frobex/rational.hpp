#pragma once

#include <gmpxx.h>

#include <string>

#include "frobex/errors.hpp"

namespace frobex {

// Exact rationals.  Always kept canonical (reduced, positive denominator).
using Rational = mpq_class;

// Parses "p" or "p/q" with optional sign.  Rejects anything else.
inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InputError("bad rational literal: '" + s + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rational_to_string(const Rational& q) {
  return q.get_str();
}

inline bool is_integer(const Rational& q) {
  return q.get_den() == 1;
}

}  // namespace frobex

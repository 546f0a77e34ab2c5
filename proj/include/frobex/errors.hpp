#pragma once

#include <stdexcept>
#include <string>

namespace frobex {

// Error categories; the CLI maps each to a distinct process exit status.

// Malformed or inconsistent input (bad files, mismatched structures,
// violated preconditions the caller is responsible for).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured cap would be exceeded (ring size, lattice size, search space).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// The sufficient condition fails; the message names the witnessing submodule.
class ConditionError : public std::runtime_error {
 public:
  explicit ConditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// A verified invariant of the library itself was violated.  Never expected.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace frobex

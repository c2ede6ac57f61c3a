#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace quivermod {

// Signed integer type used for dimensions and form values throughout.
using Int = std::int64_t;

// Malformed or out-of-domain user input (bad quiver file, negative dimension
// vector where none is allowed, ...).  The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A sampled object failed a genericity assumption.  Retryable with a fresh
// seed; callers that resample bound the number of attempts.
struct genericity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Work refused because it would exceed a configured budget (the search
// procedures are exponential by design).
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A semidecision procedure ran out of options without reaching a verdict.
struct undecided_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A theorem-backed runtime assertion failed.  Never expected; indicates a bug
// in this library rather than in the caller's input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline void check_internal(bool ok, const std::string& what) {
  if (!ok) throw internal_error("invariant violated: " + what);
}

}  // namespace quivermod

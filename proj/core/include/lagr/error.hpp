#pragma once

#include <stdexcept>
#include <string>

namespace lagr {

// Bad input from a caller or the command line: malformed type strings,
// unknown names, illegal sequence choices. Reported, never asserted.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural cap was hit (rank cap, oracle cap). Kept separate from plain
// usage errors only so callers can mention the cap in their message; the CLI
// maps both onto the same exit code.
struct cap_error : usage_error {
  using usage_error::usage_error;
};

// A verified identity failed to hold. This is the "stop the world" error:
// it means either a bug or a genuinely violated invariant, and tests treat
// it as a failure rather than as bad input.
struct check_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline void check(bool ok, const std::string& what) {
  if (!ok) throw check_error(what);
}

}  // namespace lagr

// Quick property checks runnable from the command line.
#pragma once

#include <iosfwd>

namespace triq {

/// Runs the built-in property suites, printing one line per check.
/// Returns true when every check passes.
bool run_selftest(std::ostream& os);

}  // namespace triq

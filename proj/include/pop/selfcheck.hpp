#pragma once

#include <iosfwd>

namespace pop {

// Runs the invariant corpus and prints one line per check group.
// Returns the number of failed checks; quick mode trims the corpus.
int run_selfcheck(std::ostream& out, bool quick = false);

}  // namespace pop

#ifndef ISOSPEC_CLI_HPP
#define ISOSPEC_CLI_HPP

#include <string>

namespace isospec::cli {

// Parses argv and dispatches to the gen / verify / figure subcommands.
// Exit codes: 0 success (including --help), 1 runtime failure (verification
// did not pass, or an output file could not be written), 2 domain violation
// or invalid usage (bad flags, bad config, lambda outside its admissible
// interval, malformed family or grid).
int run(int argc, char** argv);

// Shortest decimal form that parses back to the same double.  All numeric
// file output goes through this so reruns are byte identical.
std::string format_double(double x);

}  // namespace isospec::cli

#endif

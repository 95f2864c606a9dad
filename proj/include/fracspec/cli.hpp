#ifndef FRACSPEC_CLI_HPP
#define FRACSPEC_CLI_HPP

#include <ostream>

namespace fracspec {

/// Entry point of the `fracspec` tool. Exit status: 0 when every check
/// passes, 1 on a failed check, 2 on usage or parse errors.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fracspec

#endif  // FRACSPEC_CLI_HPP

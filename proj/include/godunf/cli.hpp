#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace godunf {

// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUnreachable = 1, // minimal-configs / oracle found no goal configuration
    kExitInput = 2,       // bad arguments, unreadable or invalid net, unsafe net
    kExitResource = 3,    // a configured cap was hit
};

// args excludes the program name.
int run_cli (const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run_cli (int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace godunf

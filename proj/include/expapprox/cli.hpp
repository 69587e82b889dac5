#pragma once

#include <string>
#include <vector>

namespace expapprox {

// Entry point of the command-line front end; args excludes the program name.
// Exit codes: 0 success, 1 failed check or numeric failure, 2 usage error.
int cli_run(const std::vector<std::string>& args);

}  // namespace expapprox

#pragma once

#include <string>
#include <vector>

namespace dpoly {

// Batch front end; args exclude the program name. Returns the process exit
// code: 0 success, 2 configuration error, 3 no convergence, 4 budget or cap
// exceeded, 5 verification failure.
int cli_main(const std::vector<std::string>& args);

}  // namespace dpoly

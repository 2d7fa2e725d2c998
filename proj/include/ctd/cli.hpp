#pragma once

#include <ostream>

namespace ctd::cli {

// Entry point of the `ctd` tool. Returns 0 on success, 1 on data or configuration
// errors, 2 on usage errors. Errors are reported as one line on `err`:
//   ctd: error: <usage|data|config>: <message>
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ctd::cli

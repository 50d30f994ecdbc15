#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spdp {

/// Run the spdp command line: args exclude the program name. Output goes to
/// out, diagnostics to err. Returns the process exit code (0 ok, 2 parse
/// error, 3 budget exceeded, 4 property violation, 5 internal error).
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace spdp

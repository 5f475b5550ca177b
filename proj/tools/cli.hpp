#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pga {

// Runs the `pga` command line on `args` (without the program name) and
// returns the process exit status: 0 success / holds / accepted, 1 fails /
// rejected, 2 unknown / budget exhausted, 3 usage or parse error.
int run_cli( const std::vector<std::string>& args, std::ostream& out, std::ostream& err );

} // namespace pga

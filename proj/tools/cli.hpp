#ifndef STARFORGE_TOOLS_CLI_HPP
#define STARFORGE_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace starforge::cli
{

/// Runs one command line (args excludes the program name). Reports go to
/// `out` as JSON, or as text with --pretty; usage errors go to `err`.
/// Returns the process exit code: 0 iff no defect or violation was found.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace starforge::cli

#endif

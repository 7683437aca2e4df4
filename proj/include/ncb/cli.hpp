#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncb {

/// Runs one command. args excludes the program name. Returns 0 on success,
/// 1 on a domain error, 2 on a usage error.
int runCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ncb

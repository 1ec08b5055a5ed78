#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace sugra::cli {

// Entry point of the cmapcheck tool. args excludes the program name.
// Exit codes: 0 success, 1 a check failed, 2 invalid configuration or point.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// key=value lines; '#' starts a comment. Throws ArgumentError on malformed lines.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Strict integer parse of k; the message names the integrality requirement.
int parse_k(const std::string& s);

}  // namespace sugra::cli

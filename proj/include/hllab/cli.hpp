#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hllab::cli {

// Exit codes: 0 success, 2 usage/parse/schema error, 3 domain error,
// 4 certified-violation verdict (a theorem contradiction, i.e. a bug).
// Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hllab::cli

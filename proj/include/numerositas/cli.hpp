#pragma once

#include <iosfwd>

namespace numerositas {

// Exit codes: 0 success, 1 syntax error, 2 unsupported/domain error,
// 3 complexity exceeded.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace numerositas

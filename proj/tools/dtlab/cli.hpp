#pragma once

#include <iosfwd>

namespace dtlab {

// Exit codes: 0 ok, 1 a check or report failed, 2 bad arguments or config.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dtlab

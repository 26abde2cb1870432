#pragma once

#include <iosfwd>

namespace orthoscalar::cli {

/// Exit codes: 0 success / affirmative verdict, 1 negative verdict,
/// 2 usage or input-format error, 3 internal numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orthoscalar::cli

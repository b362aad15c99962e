#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wavescreen {

/// Exit codes: 0 success, 2 when a verdict is inconclusive, 1 on errors.
int run_cli(int argc, char** argv);

/// Same, with explicit arguments (argv[0] excluded) and streams; for tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wavescreen

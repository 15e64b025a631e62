#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace harmoniq {

/// Default RNG seed: the bytes "HARM".
constexpr uint64_t kDefaultSeed = 0x4841524DULL;

/// Runs one CLI invocation. Returns 0 on success, 2 on validation errors
/// (including unknown flags), 3 when a verification suite reports a breach.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace harmoniq

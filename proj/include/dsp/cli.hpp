#pragma once

#include <iosfwd>

namespace dsp {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int collision = 1;
inline constexpr int inconclusive = 2;
inline constexpr int usage = 64;
inline constexpr int data = 65;
}  // namespace exit_code

/// Entry point of the `dsp` tool: construct, verify, exact, graph, bounds.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dsp

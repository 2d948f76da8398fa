#pragma once

// Command-line front end: denoise1d, denoise2d, synth, noise, metrics, check.
//
// Exit codes: 0 success, 1 invalid arguments or parameters, 2 I/O or parse
// failure. A one-line JSON summary goes to `out`, diagnostics to `err`.

#include <iosfwd>
#include <string>
#include <vector>

namespace circtv::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace circtv::cli

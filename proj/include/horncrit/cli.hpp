#pragma once

namespace horncrit {

// Full command-line front end. Exit codes: 0 verdict/success, 2 inconclusive
// verdict, 3 invalid arguments, 4 internal numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace horncrit

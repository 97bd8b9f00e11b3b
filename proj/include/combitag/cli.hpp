#ifndef COMBITAG_CLI_HPP
#define COMBITAG_CLI_HPP

namespace combitag {

// Full command-line front end; exposed as a function so tests can drive the
// binary's code paths in-process. Returns the process exit status.
int cli_main(int argc, const char* const* argv);

} // namespace combitag

#endif

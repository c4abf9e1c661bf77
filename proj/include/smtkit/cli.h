#ifndef SMTKIT_CLI_H_
#define SMTKIT_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace smtkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

// Parses and runs one command. `args` excludes the program name. Returns the
// process exit status: 0 on success, 2 for bad input or usage, 1 otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace smtkit::cli

#endif  // SMTKIT_CLI_H_

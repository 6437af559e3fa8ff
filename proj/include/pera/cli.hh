// Command-line front end. run_cli is the whole program minus process
// plumbing, so tests can drive it with string streams.

#ifndef PERA_CLI_HH
#define PERA_CLI_HH

#include <ostream>
#include <string>
#include <vector>

namespace pera {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kResourceExhausted = 2;
}  // namespace exit_code

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pera

#endif  // PERA_CLI_HH

#ifndef DPG_TOOLS_CLI_H_
#define DPG_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace dpg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDataError = 2;

// Entry point of the `dpg` tool. `args` excludes the program name.
//
// Subcommands: train, build, metrics, communities, constraints, dot, report.
// Returns 0 on success, 1 on usage errors and 2 on data errors. Every
// successful run writes "<first output>.manifest.json".
int CliMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace dpg::cli

#endif  // DPG_TOOLS_CLI_H_

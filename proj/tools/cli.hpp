#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "histoseg/error.hpp"

namespace histoseg::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kIoError = 2,
    kAlgorithmFailure = 3,
};

ExitCode exit_code_for(Errc code) noexcept;

/// Runs `histoseg <hist|segment|compare|plot> ...`. `args` excludes the
/// program name. JSON goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace histoseg::cli

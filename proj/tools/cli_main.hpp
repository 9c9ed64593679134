#pragma once

namespace vitalradar {

/// Entry point behind the vitalradar executable. Returns 0 on success, 1 on
/// configuration errors (bad flags, bad config file, constraint violations),
/// 2 on pipeline failures.
int cli_main(int argc, const char* const* argv);

}  // namespace vitalradar

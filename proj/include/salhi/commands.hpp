#pragma once

#include <iosfwd>
#include <string>

#include "salhi/run_config.hpp"

namespace salhi {

// Exit codes shared by the CLI: 0 success, 1 verification failure,
// 2 usage/config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

int cmd_visibility(const RunConfig& rc, std::ostream& out);
int cmd_snr(const RunConfig& rc, std::ostream& out);
int cmd_optimize(const RunConfig& rc, std::ostream& out);
int cmd_sweep(const RunConfig& rc, std::ostream& out);
int cmd_figure(const std::string& name, const RunConfig& rc, std::ostream& out);

}  // namespace salhi

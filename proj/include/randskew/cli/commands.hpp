#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "randskew/cli/config.hpp"
#include "randskew/cli/output.hpp"
#include "randskew/errors.hpp"

namespace randskew::cli {

struct CommandResult {
  Table table;
  /// Sidecar body; the caller adds "command" and the config echo.
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
};

/// index,score_exact[,score_arlev][,score_darlev] plus one summary line per plan.
CommandResult cmd_lev(const Config& cfg, std::uint64_t seed, bool standardize);
/// scheme,debias,m,trials,discarded,bias,stderr_proxy,eps_def5.
CommandResult cmd_bias(const Config& cfg, std::uint64_t seed, bool standardize);
/// t,rel_error_H,grad_norm,step_size,wall_ns.
CommandResult cmd_solve(const Config& cfg, std::uint64_t seed, bool standardize);
/// method,m,final_rel_error,total_wall_ns (medians over replicas).
CommandResult cmd_sweep(const Config& cfg, std::uint64_t seed, bool standardize);

/// 2 for I/O and parse errors, 3 for numerical failures, 4 for configuration.
int exit_code(ErrorClass cls);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv);

}  // namespace randskew::cli

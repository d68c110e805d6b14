#pragma once

#include <string>

#include "isoball/io.hpp"

namespace isoball {

inline constexpr const char* kSchemaTag = "isoball/1";

struct CommandRequest {
    std::string command;
    json input;  // per-command payload; numeric defaults applied by the runner
};

struct CommandResult {
    int exit_code = 0;  // 0 pass, 1 check failure, 2 validation, 3 numeric rejection
    json report;
};

// Dispatches one request to the library and wraps the outcome in a
// reproducible report envelope; never throws.
CommandResult run_request(const CommandRequest& req);

}  // namespace isoball

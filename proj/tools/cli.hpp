#pragma once

#include <json.hpp>
#include <string>

#include "tfspec/feasibility.hpp"

namespace tfspec::cli {

// Parse argv and dispatch one subcommand. Returns the process exit status:
// 0 success/feasible, 1 infeasible verdict, 2 input or usage error.
int run(int argc, const char* const* argv);

nlohmann::json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

// Round every numeric leaf to 12 significant digits, the CLI output rule.
nlohmann::json round_numbers(const nlohmann::json& j);

std::string format_number(double x);

}  // namespace tfspec::cli

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bbtspec/symbol.hpp"

namespace bbt {

enum ExitCode : int { kExitOk = 0, kExitDegenerate = 1, kExitInput = 2 };

/// Replaces every string entry equal to "$<name>" with `value` (kept as an
/// exact rational string). Throws InputError when nothing was replaced.
nlohmann::json substitute_param(nlohmann::json doc, const std::string& name, const std::string& value);

/// File-name-safe form of a sweep value ("-3/2" -> "-3_2").
std::string value_tag(const std::string& value);

/// Full command line, argv[0] included. Diagnostics go to stderr.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace bbt

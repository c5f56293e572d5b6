#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bmu/bundle.hpp"
#include "bmu/solver.hpp"

namespace bmu {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// Runs the `bmu` command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

nlohmann::json certificate_to_json(const Certificate& cert, bool with_times = true);
/// Search results with their matrices and certificates, without wall times.
nlohmann::json search_to_json(const SearchProblem& problem, const SearchOutcome& outcome);

}  // namespace bmu

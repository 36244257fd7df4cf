#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace picklab::cli {

inline constexpr int kExitFeasible = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;

inline constexpr const char* kToolName = "picklab 0.1.0";

struct Flags {
    std::optional<std::string> tol;  // "auto" or a number
    std::optional<int> max_level;
    std::optional<int> max_iter;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> emit_certificate;
    bool literal_unweighted = false;
};

struct Outcome {
    int exit_code = 0;
    nlohmann::json doc;  // printed as the single stdout document
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Outcome cmd_check(const std::string& input_path, const Flags& flags);
Outcome cmd_agler(const std::string& input_path, const Flags& flags);
Outcome cmd_choi(const std::string& input_path, const Flags& flags);
Outcome cmd_cpcheck(const std::string& input_path, const Flags& flags);
Outcome cmd_sample(const std::string& kind, int degree, std::uint64_t seed, const std::optional<std::string>& out_path,
                   int rows, int cols, int d);
Outcome cmd_necessity(const std::string& setting, int trials, std::uint64_t seed, const Flags& flags);

Outcome error_outcome(int exit_code, const std::string& code, const std::string& message, const std::string& path);

// Canonical setting name, resolving aliases; empty if unknown.
std::string canonical_setting(const std::string& s);

// Serialized form written to stdout: two-space indent and a trailing newline.
std::string render(const nlohmann::json& doc);

}  // namespace picklab::cli

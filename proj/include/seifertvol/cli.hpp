#pragma once

#include <optional>
#include <string>
#include <vector>

namespace seifertvol::cli {

struct RunConfig {
    std::string subcommand;
    std::vector<std::string> inputs;  // manifold files
    std::optional<std::string> batch_dir;
    std::optional<double> tol;
    bool human = false;

    std::vector<std::string> cyclic;   // n=.. chi=.. k=.. b=..
    std::vector<std::string> twisted;  // g=.. a=.. b=.. c=.. d=..
    std::string xi;                    // inline JSON or a file path
    std::string tau;                   // "inf", an integer, inline JSON or a path
    std::string cover_spec;
    std::string waldhausen;
    long d = 1;

    std::vector<double> matrix, m1, m2;
    std::optional<double> lift, s, t1, s1, t2, s2;
};

struct RunResult {
    int status = 0;  // 0 ok, 1 domain error, 2 input error
    std::string out;
    std::string err;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitInput = 2;

// Parses argv (without the program name) into a config; on failure or
// --help, returns the result to print instead.
std::optional<RunResult> parse_args(const std::vector<std::string>& args, RunConfig& config, const char* env_tol);
RunResult run(const RunConfig& config);
// parse_args + run.
RunResult run_args(const std::vector<std::string>& args, const char* env_tol = nullptr);

}  // namespace seifertvol::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sentimarket/params.hpp"

namespace sentimarket::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitNumeric = 4;

// Name of the environment variable pointing at an optional JSON file with
// default settings. Command-line flags win over the file, the file wins over
// built-in defaults.
inline constexpr const char* kConfigEnvVar = "SENTIMENT_MARKET_CONFIG";

// Everything the subcommands can be configured with.
struct RunConfig {
    ModelParams params;
    std::size_t steps = 10000;   // --T
    std::uint64_t seed = 0;      // --seed
    int starts = 5;              // --starts
    double tail_fraction = 0.05; // --tail-fraction
    int max_lag = 20;            // --max-lag
    std::string input;           // --input
    std::string output;          // --output, empty writes to `out`
};

// Dispatches `simulate`, `fit`, `filter` or `stats`. Normal results go to
// `out` (or the --output file), failures go to `err` as a single-line JSON
// object with code, message and context. Returns one of the kExit* codes.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sentimarket::cli

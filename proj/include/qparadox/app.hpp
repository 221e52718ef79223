#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "qparadox/contingency.hpp"

namespace qparadox::cli {

enum class OutputFormat { text, json };

struct RunConfig {
    std::string subcommand;  // reversal | belief | disjunction | stpetersburg
    std::string input_path;
    OutputFormat format = OutputFormat::text;
    int precision = 12;  // significant digits, 1..15
    bool yates = false;
    bool one_sided = false;
    std::optional<double> theta;
    std::int64_t rounds = 0;
    bool strict = false;
};

// Reads `stratum,arm,successes,trials` rows into a StratifiedTable. Exactly
// two arm labels must appear and every stratum must carry both.
contingency::StratifiedTable parse_stratified_csv(std::istream& input);
contingency::StratifiedTable parse_stratified_csv(const std::string& path);

// Dispatches one subcommand. Returns 0 on success, 1 on input errors, 2 when
// --strict is set and calibration is infeasible. Errors go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qparadox::cli

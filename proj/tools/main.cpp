#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "qparadox/app.hpp"

namespace {

void add_common_options(CLI::App* cmd, qparadox::cli::RunConfig& config) {
    cmd->add_option("--input", config.input_path, "Input file")
        ->required()
        ->check(CLI::ExistingFile);
    const std::map<std::string, qparadox::cli::OutputFormat> formats{
        {"text", qparadox::cli::OutputFormat::text},
        {"json", qparadox::cli::OutputFormat::json}};
    cmd->add_option("--format", config.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->default_str("text");
    cmd->add_option("--precision", config.precision, "Significant digits for rendered numbers")
        ->check(CLI::Range(1, 15))
        ->default_val(12);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probability-reversal and quantum-belief analysis toolkit"};
    app.require_subcommand(1);

    qparadox::cli::RunConfig config;

    auto* reversal = app.add_subcommand(
        "reversal", "Detect Simpson reversals in stratified 2x2 count data (CSV)");
    add_common_options(reversal, config);
    reversal->add_flag("--yates", config.yates, "Apply the Yates continuity correction");
    reversal->add_flag("--one-sided", config.one_sided,
                       "One-sided Fisher test (alternative: first arm has the higher rate)");

    auto* belief = app.add_subcommand(
        "belief", "Build the belief state and quantum tree from a two-stage fraction grid (JSON)");
    add_common_options(belief, config);

    auto* disjunction = app.add_subcommand(
        "disjunction", "Calibrate the quantum prospect model for a gamble (JSON)");
    add_common_options(disjunction, config);
    double theta = 0.0;
    auto* theta_option = disjunction->add_option(
        "--theta", theta, "Rotation per unrevealed round, radians toward the loss outcome");
    theta_option->check(CLI::NonNegativeNumber);
    disjunction->add_option("--rounds", config.rounds, "Unrevealed rounds to trace")
        ->check(CLI::NonNegativeNumber);
    disjunction->add_flag("--strict", config.strict,
                          "Exit with status 2 when calibration is infeasible");

    auto* stpetersburg = app.add_subcommand(
        "stpetersburg", "Truncated, bankroll-capped, and log-utility valuations (JSON)");
    add_common_options(stpetersburg, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& parse_error) {
        // Help/version exit 0; every input problem maps to exit 1.
        const int code = app.exit(parse_error);
        return code == 0 ? 0 : 1;
    }

    for (const auto* cmd : {reversal, belief, disjunction, stpetersburg}) {
        if (cmd->parsed()) config.subcommand = cmd->get_name();
    }
    if (theta_option->count() > 0) config.theta = theta;

    return qparadox::cli::run(config, std::cout, std::cerr);
}

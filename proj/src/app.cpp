#include "qparadox/app.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qparadox/belief.hpp"
#include "qparadox/json_io.hpp"
#include "qparadox/prospect.hpp"
#include "qparadox/stpetersburg.hpp"

namespace qparadox::cli {

namespace {

using io::format_number;
using io::json;

json load_json_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(file);
    } catch (const json::parse_error& bad) {
        throw ParseError(std::string("invalid JSON: ") + bad.what());
    }
}

void emit(const json& report, const RunConfig& config, std::ostream& out,
          const std::string& text_rendering) {
    if (config.format == OutputFormat::json) {
        out << report.dump(2) << '\n';
    } else {
        out << text_rendering;
    }
}

std::string direction_phrase(int direction, const std::string& label_a,
                             const std::string& label_b) {
    if (direction > 0) return label_a + " ahead";
    if (direction < 0) return label_b + " ahead";
    return "tied";
}

int run_reversal(const RunConfig& config, std::ostream& out) {
    const auto strata = parse_stratified_csv(config.input_path);
    const unsigned places = static_cast<unsigned>(config.precision);
    const auto report = contingency::detect_reversal(strata, places);
    const auto pooled = contingency::pool(strata);
    const std::string& label_a = strata.arm_label_a();
    const std::string& label_b = strata.arm_label_b();

    const auto fisher_side =
        config.one_sided ? contingency::FisherSide::greater : contingency::FisherSide::two_sided;

    json doc = io::reversal_report_json(report, label_a, label_b, config.precision);
    std::ostringstream text;
    text << "Stratified 2x2 analysis: " << label_a << " vs " << label_b << "\n";

    auto& strata_doc = doc["strata"];
    for (std::size_t i = 0; i < strata.strata.size(); ++i) {
        const auto& [stratum, table] = strata.strata[i];
        const auto chi = contingency::chi_squared(table, config.yates);
        const auto fisher = contingency::fisher_exact(table, fisher_side);
        strata_doc[i]["tests"] = json{{"chi_squared", io::test_result_json(chi, config.precision)},
                                      {"fisher", io::test_result_json(fisher, config.precision)}};

        const auto& entry = report.per_stratum_rates[i].second;
        text << "  " << stratum << ": " << label_a << " " << entry.decimal_a << " ("
             << fraction_string(entry.rate_a) << "), " << label_b << " " << entry.decimal_b << " ("
             << fraction_string(entry.rate_b) << ") -> "
             << direction_phrase(report.per_stratum_direction[i], label_a, label_b)
             << "; chi2 " << format_number(*chi.statistic, config.precision) << " (p "
             << format_number(chi.p_value, config.precision) << "), fisher p "
             << format_number(fisher.p_value, config.precision) << "\n";
    }

    const auto chi_pooled = contingency::chi_squared(pooled, config.yates);
    const auto fisher_pooled = contingency::fisher_exact(pooled, fisher_side);
    doc["pooled"]["tests"] =
        json{{"chi_squared", io::test_result_json(chi_pooled, config.precision)},
             {"fisher", io::test_result_json(fisher_pooled, config.precision)}};
    text << "  pooled: " << label_a << " " << report.pooled_rates.decimal_a << " ("
         << fraction_string(report.pooled_rates.rate_a) << "), " << label_b << " "
         << report.pooled_rates.decimal_b << " (" << fraction_string(report.pooled_rates.rate_b)
         << ") -> " << direction_phrase(report.pooled_direction, label_a, label_b) << "; chi2 "
         << format_number(*chi_pooled.statistic, config.precision) << " (p "
         << format_number(chi_pooled.p_value, config.precision) << "), fisher p "
         << format_number(fisher_pooled.p_value, config.precision) << "\n";

    json adjusted;
    text << "  back-door adjusted rates:";
    for (const std::string& arm : {label_a, label_b}) {
        const Rational value = contingency::backdoor_adjust(strata, arm);
        adjusted[arm] = io::rational_json(value, config.precision, places);
        text << " " << arm << " " << decimal_string(value, places) << " ("
             << fraction_string(value) << ")";
    }
    text << "\n";
    doc["backdoor_adjusted"] = std::move(adjusted);

    text << (report.reversal ? "  REVERSAL: pooled ordering contradicts every stratum\n"
                             : "  no reversal\n");
    if (!report.note.empty()) text << "  note: " << report.note << "\n";

    emit(doc, config, out, text.str());
    return 0;
}

int run_belief(const RunConfig& config, std::ostream& out) {
    const json input = load_json_file(config.input_path);
    const auto grid = io::load_fraction_grid(input);
    const auto joint = belief::normalize_fractions(grid);
    const auto state = belief::state_from_joint(joint);
    const auto tree = belief::build_tree(joint);

    json doc{{"joint", io::joint_table_json(joint, config.precision)},
             {"state", io::belief_state_json(state, config.precision)},
             {"tree", io::quantum_tree_json(tree, config.precision)}};

    std::ostringstream text;
    text << "Two-stage belief analysis\n  joint probabilities:\n";
    for (std::size_t r = 0; r < joint.rows.size(); ++r) {
        text << "    ";
        for (std::size_t c = 0; c < joint.cols.size(); ++c) {
            const auto& p = joint.probabilities[r][c];
            text << joint.rows[r] << joint.cols[c] << " "
                 << format_number(to_double(p), config.precision) << " (" << fraction_string(p)
                 << ")" << (c + 1 < joint.cols.size() ? "  " : "\n");
        }
    }
    text << "  belief state amplitudes:\n    ";
    for (std::size_t i = 0; i < state.labels.size(); ++i) {
        text << "|" << state.labels[i] << "> "
             << format_number(state.amplitudes[i], config.precision)
             << (i + 1 < state.labels.size() ? "  " : "\n");
    }
    text << "  stage-1 marginals:";
    for (std::size_t r = 0; r < tree.rows.size(); ++r) {
        text << " " << tree.rows[r] << " "
             << format_number(to_double(tree.marginals[r]), config.precision) << " ("
             << fraction_string(tree.marginals[r]) << ")";
    }
    text << "\n  stage-2 conditionals:\n";
    for (std::size_t r = 0; r < tree.rows.size(); ++r) {
        text << "    after " << tree.rows[r] << ":";
        for (std::size_t c = 0; c < tree.cols.size(); ++c) {
            text << " " << tree.cols[c] << " "
                 << format_number(to_double(tree.conditionals[r][c]), config.precision) << " ("
                 << fraction_string(tree.conditionals[r][c]) << ")";
        }
        text << "\n";
    }

    if (joint.square()) {
        json order_effects = json::array();
        json defects;
        text << "  order effects:\n";
        for (std::size_t i = 0; i < joint.rows.size(); ++i) {
            for (std::size_t j = i + 1; j < joint.rows.size(); ++j) {
                const auto effect = belief::order_effect(joint, joint.rows[i], joint.rows[j]);
                order_effects.push_back(json{
                    {"first", joint.rows[i]},
                    {"second", joint.rows[j]},
                    {"exact", fraction_string(effect)},
                    {"value", io::round_sig(to_double(effect), config.precision)}});
                text << "    P(" << joint.rows[i] << joint.rows[j] << ") - P(" << joint.rows[j]
                     << joint.rows[i] << ") = " << format_number(to_double(effect), config.precision)
                     << " (" << fraction_string(effect) << ")\n";
            }
        }
        text << "  independence defects:\n";
        for (const auto& label : joint.rows) {
            const auto defect = belief::independence_defect(joint, label);
            defects[label] = json{{"exact", fraction_string(defect)},
                                  {"value", io::round_sig(to_double(defect), config.precision)}};
            text << "    P(" << label << label << ") - P(" << label << ")^2 = "
                 << format_number(to_double(defect), config.precision) << " ("
                 << fraction_string(defect) << ")\n";
        }
        doc["order_effects"] = std::move(order_effects);
        doc["independence_defects"] = std::move(defects);
    }

    emit(doc, config, out, text.str());
    return 0;
}

int run_disjunction(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const json input = load_json_file(config.input_path);
    const auto [gamble, data] = io::load_gamble_input(input);
    const auto report = prospect::disjunction_report(gamble, data);

    json doc = io::disjunction_report_json(report, config.precision);

    std::ostringstream text;
    text << "Disjunction analysis: win " << format_number(gamble.win_payoff, config.precision)
         << ", loss " << format_number(gamble.loss_payoff, config.precision) << "\n"
         << "  reference state: loss amplitude "
         << format_number(report.reference.amplitude_loss, config.precision) << " (p "
         << format_number(report.reference.probability_loss(), config.precision)
         << "), win amplitude "
         << format_number(report.reference.amplitude_win, config.precision) << " (p "
         << format_number(report.reference.probability_win(), config.precision) << ")\n"
         << "  classical mixture interval: ["
         << format_number(report.classical_low, config.precision) << ", "
         << format_number(report.classical_high, config.precision) << "]\n"
         << "  interference-free acceptance at reference: "
         << format_number(report.interference_free_unknown, config.precision) << "\n"
         << "  observed unknown-outcome acceptance: "
         << format_number(data.accept_unknown, config.precision) << "\n"
         << (report.effect_present ? "  DISJUNCTION EFFECT present (below both known rates)\n"
                                   : "  no disjunction effect\n");
    if (report.effect) {
        text << "  calibrated effect operator: diag ("
             << format_number(report.effect->diag_loss, config.precision) << ", "
             << format_number(report.effect->diag_win, config.precision) << "), off-diagonal "
             << format_number(report.effect->off_diag, config.precision) << ", eigenvalues ["
             << format_number(report.eigen_min, config.precision) << ", "
             << format_number(report.eigen_max, config.precision) << "]\n";
    } else {
        text << "  calibration infeasible: " << *report.infeasibility << "\n";
    }

    // Rotation trajectory for unrevealed play. Without an explicit angle the
    // calibrated model already matches the unknown-outcome rate at the
    // reference, so the default angle is zero and no trajectory is emitted.
    if (config.theta) {
        json trajectory = json::array();
        text << "  unrevealed-play trajectory (theta " << format_number(*config.theta, 6)
             << "):\n";
        for (std::int64_t round = 0; round <= config.rounds; ++round) {
            const auto state = prospect::evolve_unrevealed(report.reference, *config.theta, round);
            const double utility = prospect::expected_utility(state, gamble);
            json step{{"round", round},
                      {"amplitude_loss", io::round_sig(state.amplitude_loss, config.precision)},
                      {"amplitude_win", io::round_sig(state.amplitude_win, config.precision)},
                      {"utility", io::round_sig(utility, config.precision)}};
            text << "    round " << round << ": utility "
                 << format_number(utility, config.precision);
            if (report.effect) {
                const double acceptance = prospect::acceptance_probability(state, *report.effect);
                step["acceptance"] = io::round_sig(acceptance, config.precision);
                text << ", acceptance " << format_number(acceptance, config.precision);
            }
            text << "\n";
            trajectory.push_back(std::move(step));
        }
        doc["trajectory"] = std::move(trajectory);
    }

    emit(doc, config, out, text.str());
    if (config.strict && !report.effect) {
        err << "error: calibration infeasible: " << *report.infeasibility << '\n';
        return 2;
    }
    return 0;
}

int run_stpetersburg(const RunConfig& config, std::ostream& out) {
    const json input = load_json_file(config.input_path);
    const auto parsed = io::load_stpetersburg_input(input);
    const auto& spec = parsed.spec;

    json doc{{"spec",
              {{"base", io::round_sig(spec.base_payout, config.precision)},
               {"max_rounds", spec.max_rounds ? json(*spec.max_rounds) : json(nullptr)},
               {"bankroll",
                spec.house_bankroll ? json(io::round_sig(*spec.house_bankroll, config.precision))
                                    : json(nullptr)}}}};

    std::ostringstream text;
    text << "St. Petersburg valuations (base "
         << format_number(spec.base_payout, config.precision) << ")\n";

    if (spec.max_rounds) {
        const double ev = stpetersburg::truncated_ev(spec);
        doc["truncated_ev"] = io::round_sig(ev, config.precision);
        text << "  truncated at " << *spec.max_rounds << " rounds: EV "
             << format_number(ev, config.precision) << "\n";
    } else {
        doc["truncated_ev"] = nullptr;
        text << "  untruncated EV diverges\n";
    }

    if (spec.house_bankroll) {
        const double ev = stpetersburg::bankroll_capped_ev(spec);
        doc["bankroll_capped_ev"] = io::round_sig(ev, config.precision);
        text << "  bankroll-capped at " << format_number(*spec.house_bankroll, config.precision)
             << ": EV " << format_number(ev, config.precision) << "\n";
    } else {
        doc["bankroll_capped_ev"] = nullptr;
    }

    if (parsed.wealth) {
        const double price = stpetersburg::log_utility_fair_price(*parsed.wealth, spec);
        const double residual = stpetersburg::expected_log_gain(price, *parsed.wealth, spec);
        doc["log_utility"] = json{{"wealth", io::round_sig(*parsed.wealth, config.precision)},
                                  {"fair_price", io::round_sig(price, config.precision)},
                                  {"residual", io::round_sig(residual, 3)}};
        text << "  log-utility fair price at wealth "
             << format_number(*parsed.wealth, config.precision) << ": "
             << format_number(price, config.precision) << "\n";
    } else {
        doc["log_utility"] = nullptr;
    }

    emit(doc, config, out, text.str());
    return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.precision < 1 || config.precision > 15) {
            throw std::invalid_argument("precision must lie in [1, 15]");
        }
        if (config.subcommand == "reversal") return run_reversal(config, out);
        if (config.subcommand == "belief") return run_belief(config, out);
        if (config.subcommand == "disjunction") return run_disjunction(config, out, err);
        if (config.subcommand == "stpetersburg") return run_stpetersburg(config, out);
        throw std::invalid_argument("unknown subcommand '" + config.subcommand + "'");
    } catch (const Error& domain_error) {
        err << "error: " << domain_error.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& bad) {
        err << "error: " << bad.what() << '\n';
        return 1;
    }
}

}  // namespace qparadox::cli

#include "qparadox/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qparadox::io {

namespace {

json quantity_json(double value, int digits) {
    return json(round_sig(value, digits));
}

belief::CellCounts cell_counts_from_json(const json& cell) {
    if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number_integer() ||
        !cell[1].is_number_integer()) {
        throw ParseError("counts cells must be [successes, trials] integer pairs");
    }
    return belief::CellCounts{cell[0].get<std::int64_t>(), cell[1].get<std::int64_t>()};
}

double number_field(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc.at(key).is_number()) {
        throw ParseError(std::string("missing numeric field '") + key + "'");
    }
    return doc.at(key).get<double>();
}

std::vector<std::string> label_field(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc.at(key).is_array()) {
        throw ParseError(std::string("missing label array '") + key + "'");
    }
    std::vector<std::string> labels;
    for (const auto& entry : doc.at(key)) {
        if (!entry.is_string()) throw ParseError(std::string(key) + " entries must be strings");
        labels.push_back(entry.get<std::string>());
    }
    return labels;
}

}  // namespace

double round_sig(double value, int digits) {
    if (!std::isfinite(value) || value == 0.0) return value;
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
    return std::strtod(buffer, nullptr);
}

std::string format_number(double value, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
    return buffer;
}

json rational_json(const Rational& r, int digits, unsigned decimal_places) {
    return json{{"exact", fraction_string(r)},
                {"decimal", decimal_string(r, decimal_places)},
                {"value", quantity_json(to_double(r), digits)}};
}

std::string method_name(contingency::TestMethod method) {
    switch (method) {
        case contingency::TestMethod::pearson_chi_squared: return "pearson_chi_squared";
        case contingency::TestMethod::fisher_exact_two_sided: return "fisher_exact_two_sided";
        case contingency::TestMethod::fisher_exact_less: return "fisher_exact_less";
        case contingency::TestMethod::fisher_exact_greater: return "fisher_exact_greater";
    }
    return "unknown";
}

json test_result_json(const contingency::TestResult& result, int digits) {
    json out{{"method", method_name(result.method)},
             {"p_value", quantity_json(result.p_value, digits)}};
    if (result.statistic) out["statistic"] = quantity_json(*result.statistic, digits);
    return out;
}

namespace {

json rate_entry_json(const contingency::RateEntry& entry, const std::string& label_a,
                     const std::string& label_b, int digits) {
    return json{{label_a,
                 {{"exact", fraction_string(entry.rate_a)},
                  {"decimal", entry.decimal_a},
                  {"value", quantity_json(to_double(entry.rate_a), digits)}}},
                {label_b,
                 {{"exact", fraction_string(entry.rate_b)},
                  {"decimal", entry.decimal_b},
                  {"value", quantity_json(to_double(entry.rate_b), digits)}}}};
}

}  // namespace

json reversal_report_json(const contingency::ReversalReport& report, const std::string& label_a,
                          const std::string& label_b, int digits) {
    json strata = json::array();
    for (std::size_t i = 0; i < report.per_stratum_rates.size(); ++i) {
        const auto& [stratum, entry] = report.per_stratum_rates[i];
        strata.push_back(json{{"stratum", stratum},
                              {"direction", report.per_stratum_direction[i]},
                              {"rates", rate_entry_json(entry, label_a, label_b, digits)}});
    }
    json out{{"arms", json::array({label_a, label_b})},
             {"reversal", report.reversal},
             {"strata", std::move(strata)},
             {"pooled",
              {{"direction", report.pooled_direction},
               {"rates", rate_entry_json(report.pooled_rates, label_a, label_b, digits)}}}};
    if (!report.note.empty()) out["note"] = report.note;
    return out;
}

json joint_table_json(const belief::JointOutcomeTable& joint, int digits) {
    json values = json::array();
    json exact = json::array();
    for (const auto& row : joint.probabilities) {
        json value_row = json::array();
        json exact_row = json::array();
        for (const auto& p : row) {
            value_row.push_back(quantity_json(to_double(p), digits));
            exact_row.push_back(fraction_string(p));
        }
        values.push_back(std::move(value_row));
        exact.push_back(std::move(exact_row));
    }
    return json{{"rows", joint.rows},
                {"cols", joint.cols},
                {"probabilities", std::move(values)},
                {"exact", std::move(exact)}};
}

json belief_state_json(const belief::BeliefState& state, int digits) {
    json amplitudes = json::array();
    for (double a : state.amplitudes) amplitudes.push_back(quantity_json(a, digits));
    return json{{"labels", state.labels}, {"amplitudes", std::move(amplitudes)}};
}

json quantum_tree_json(const belief::QuantumTree& tree, int digits) {
    json marginals;
    for (std::size_t r = 0; r < tree.rows.size(); ++r) {
        marginals[tree.rows[r]] = rational_json(tree.marginals[r], digits);
    }
    json conditionals;
    for (std::size_t r = 0; r < tree.rows.size(); ++r) {
        json row;
        for (std::size_t c = 0; c < tree.cols.size(); ++c) {
            row[tree.cols[c]] = rational_json(tree.conditionals[r][c], digits);
        }
        conditionals[tree.rows[r]] = std::move(row);
    }
    return json{{"rows", tree.rows},
                {"cols", tree.cols},
                {"stage1_marginals", std::move(marginals)},
                {"stage2_conditionals", std::move(conditionals)}};
}

json effect_operator_json(const prospect::EffectOperator& effect, int digits) {
    return json{{"diag_loss", quantity_json(effect.diag_loss, digits)},
                {"diag_win", quantity_json(effect.diag_win, digits)},
                {"off_diag", quantity_json(effect.off_diag, digits)}};
}

json disjunction_report_json(const prospect::DisjunctionReport& report, int digits) {
    json out{
        {"gamble",
         {{"win", quantity_json(report.gamble.win_payoff, digits)},
          {"loss", quantity_json(report.gamble.loss_payoff, digits)},
          {"stated_win_chance", quantity_json(report.gamble.stated_win_chance, digits)}}},
        {"acceptance",
         {{"given_win", quantity_json(report.data.accept_given_win, digits)},
          {"given_loss", quantity_json(report.data.accept_given_loss, digits)},
          {"unknown", quantity_json(report.data.accept_unknown, digits)}}},
        {"reference",
         {{"amplitude_loss", quantity_json(report.reference.amplitude_loss, digits)},
          {"amplitude_win", quantity_json(report.reference.amplitude_win, digits)},
          {"probability_loss", quantity_json(report.reference.probability_loss(), digits)},
          {"probability_win", quantity_json(report.reference.probability_win(), digits)},
          {"utility",
           quantity_json(prospect::expected_utility(report.reference, report.gamble), digits)}}},
        {"classical_interval",
         json::array({quantity_json(report.classical_low, digits),
                      quantity_json(report.classical_high, digits)})},
        {"interference_free_unknown", quantity_json(report.interference_free_unknown, digits)},
        {"effect_present", report.effect_present},
        {"eigenvalues", json::array({quantity_json(report.eigen_min, digits),
                                     quantity_json(report.eigen_max, digits)})},
        // Positive rotation angles move amplitude toward the loss outcome.
        {"rotation_convention", "positive angles increase the loss amplitude"},
    };
    if (report.effect) {
        out["effect"] = effect_operator_json(*report.effect, digits);
    } else {
        out["effect"] = nullptr;
    }
    if (report.infeasibility) out["infeasibility"] = *report.infeasibility;
    return out;
}

belief::RawFractionGrid load_fraction_grid(const json& doc) {
    auto rows = label_field(doc, "rows");
    auto cols = label_field(doc, "cols");

    std::optional<std::vector<std::vector<belief::CellCounts>>> counts;
    if (doc.contains("counts") && !doc.at("counts").is_null()) {
        const auto& counts_doc = doc.at("counts");
        if (!counts_doc.is_array()) throw ParseError("'counts' must be an array of rows");
        std::vector<std::vector<belief::CellCounts>> parsed;
        for (const auto& row : counts_doc) {
            if (!row.is_array()) throw ParseError("'counts' rows must be arrays");
            std::vector<belief::CellCounts> out_row;
            for (const auto& cell : row) out_row.push_back(cell_counts_from_json(cell));
            parsed.push_back(std::move(out_row));
        }
        counts = std::move(parsed);
    }

    std::optional<std::vector<std::vector<double>>> fractions;
    if (doc.contains("fractions") && !doc.at("fractions").is_null()) {
        const auto& fractions_doc = doc.at("fractions");
        if (!fractions_doc.is_array()) throw ParseError("'fractions' must be an array of rows");
        std::vector<std::vector<double>> parsed;
        for (const auto& row : fractions_doc) {
            if (!row.is_array()) throw ParseError("'fractions' rows must be arrays");
            std::vector<double> out_row;
            for (const auto& cell : row) {
                if (!cell.is_number()) throw ParseError("'fractions' entries must be numbers");
                out_row.push_back(cell.get<double>());
            }
            parsed.push_back(std::move(out_row));
        }
        fractions = std::move(parsed);
    }

    if (counts) {
        auto grid = belief::RawFractionGrid::from_counts(std::move(rows), std::move(cols),
                                                         *std::move(counts));
        if (fractions) {
            // Counts are authoritative; printed fractions may be rounded.
            if (fractions->size() != grid.fractions.size()) {
                throw ParseError("'fractions' and 'counts' shapes differ");
            }
            for (std::size_t r = 0; r < grid.fractions.size(); ++r) {
                if ((*fractions)[r].size() != grid.fractions[r].size()) {
                    throw ParseError("'fractions' and 'counts' shapes differ");
                }
                for (std::size_t c = 0; c < grid.fractions[r].size(); ++c) {
                    const double stated = (*fractions)[r][c];
                    const double derived = to_double(grid.fractions[r][c]);
                    if (std::abs(stated - derived) > 1e-9) {
                        throw ParseError("'fractions' entry disagrees with 'counts'");
                    }
                }
            }
        }
        return grid;
    }
    if (!fractions) throw ParseError("grid needs 'fractions' or 'counts'");
    return belief::RawFractionGrid::from_decimals(std::move(rows), std::move(cols), *fractions);
}

std::pair<prospect::Gamble, prospect::AcceptanceData> load_gamble_input(const json& doc) {
    const double win = number_field(doc, "win");
    const double loss = number_field(doc, "loss");
    const double stated =
        doc.contains("stated_win_chance") ? number_field(doc, "stated_win_chance") : 0.5;
    try {
        prospect::Gamble gamble(win, loss, stated);
        prospect::AcceptanceData data(number_field(doc, "accept_given_win"),
                                      number_field(doc, "accept_given_loss"),
                                      number_field(doc, "accept_unknown"));
        return {gamble, data};
    } catch (const std::invalid_argument& bad) {
        throw ParseError(bad.what());
    }
}

StPetersburgInput load_stpetersburg_input(const json& doc) {
    StPetersburgInput input;
    input.spec.base_payout = doc.contains("base") ? number_field(doc, "base") : 1.0;
    if (doc.contains("max_rounds") && !doc.at("max_rounds").is_null()) {
        if (!doc.at("max_rounds").is_number_integer()) {
            throw ParseError("'max_rounds' must be an integer");
        }
        input.spec.max_rounds = doc.at("max_rounds").get<std::int64_t>();
    }
    if (doc.contains("bankroll") && !doc.at("bankroll").is_null()) {
        input.spec.house_bankroll = number_field(doc, "bankroll");
    }
    if (doc.contains("wealth") && !doc.at("wealth").is_null()) {
        input.wealth = number_field(doc, "wealth");
    }
    return input;
}

}  // namespace qparadox::io

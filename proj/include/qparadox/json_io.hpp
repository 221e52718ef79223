#pragma once

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "qparadox/belief.hpp"
#include "qparadox/contingency.hpp"
#include "qparadox/prospect.hpp"
#include "qparadox/rational.hpp"
#include "qparadox/stpetersburg.hpp"

namespace qparadox::io {

using nlohmann::json;

// Nearest double with the given number of significant digits (1..17).
double round_sig(double value, int digits);

// Shortest fixed/scientific rendering at `digits` significant digits.
std::string format_number(double value, int digits);

inline constexpr int kDefaultDigits = 12;

// {"exact": "4/7", "decimal": "0.571", "value": 0.571428571429}
json rational_json(const Rational& r, int digits = kDefaultDigits, unsigned decimal_places = 3);

std::string method_name(contingency::TestMethod method);

json test_result_json(const contingency::TestResult& result, int digits = kDefaultDigits);

json reversal_report_json(const contingency::ReversalReport& report, const std::string& label_a,
                          const std::string& label_b, int digits = kDefaultDigits);

json joint_table_json(const belief::JointOutcomeTable& joint, int digits = kDefaultDigits);

json belief_state_json(const belief::BeliefState& state, int digits = kDefaultDigits);

json quantum_tree_json(const belief::QuantumTree& tree, int digits = kDefaultDigits);

json effect_operator_json(const prospect::EffectOperator& effect, int digits = kDefaultDigits);

json disjunction_report_json(const prospect::DisjunctionReport& report,
                             int digits = kDefaultDigits);

// Input schemas. Structural problems raise ParseError.
belief::RawFractionGrid load_fraction_grid(const json& doc);

std::pair<prospect::Gamble, prospect::AcceptanceData> load_gamble_input(const json& doc);

struct StPetersburgInput {
    stpetersburg::StPetersburgSpec spec;
    std::optional<double> wealth;
};

StPetersburgInput load_stpetersburg_input(const json& doc);

}  // namespace qparadox::io

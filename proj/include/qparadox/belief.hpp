#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qparadox/errors.hpp"
#include "qparadox/rational.hpp"

namespace qparadox::belief {

// Source counts behind one improvement fraction.
struct CellCounts {
    std::int64_t successes = 0;
    std::int64_t trials = 1;
};

// Improvement fractions from a two-stage design: rows are stage-1 outcomes,
// columns stage-2 outcomes. Entries live in [0,1] and are exact rationals;
// decimal inputs are taken at face value (0.80 means 4/5).
struct RawFractionGrid {
    RawFractionGrid(std::vector<std::string> rows_, std::vector<std::string> cols_,
                    std::vector<std::vector<Rational>> fractions_,
                    std::optional<std::vector<std::vector<CellCounts>>> counts_ = std::nullopt);

    static RawFractionGrid from_decimals(std::vector<std::string> rows,
                                         std::vector<std::string> cols,
                                         const std::vector<std::vector<double>>& fractions);
    static RawFractionGrid from_counts(std::vector<std::string> rows,
                                       std::vector<std::string> cols,
                                       std::vector<std::vector<CellCounts>> counts);

    std::vector<std::string> rows;
    std::vector<std::string> cols;
    std::vector<std::vector<Rational>> fractions;
    std::optional<std::vector<std::vector<CellCounts>>> counts;
};

// Joint probabilities over (stage-1, stage-2) outcome pairs; sums to one.
struct JointOutcomeTable {
    JointOutcomeTable(std::vector<std::string> rows_, std::vector<std::string> cols_,
                      std::vector<std::vector<Rational>> probabilities_);

    std::vector<std::string> rows;
    std::vector<std::string> cols;
    std::vector<std::vector<Rational>> probabilities;

    std::size_t row_index(std::string_view label) const;
    std::size_t col_index(std::string_view label) const;
    const Rational& at(std::string_view row, std::string_view col) const;
    bool square() const { return rows == cols; }
};

// Unit-norm real amplitude vector over outcome labels.
struct BeliefState {
    BeliefState(std::vector<std::string> labels_, std::vector<double> amplitudes_);

    std::vector<std::string> labels;
    std::vector<double> amplitudes;

    double norm_squared() const;
    double amplitude(std::string_view label) const;
};

// Stage-1 marginals plus stage-2 conditional branch probabilities.
struct QuantumTree {
    std::vector<std::string> rows;
    std::vector<std::string> cols;
    std::vector<Rational> marginals;                  // per row
    std::vector<std::vector<Rational>> conditionals;  // [row][col]
};

// Response rates for two survey items under both question orders.
struct SurveyOrderData {
    std::string item_a;
    std::string item_b;
    double rate_a_when_a_first = 0.0;
    double rate_b_when_a_first = 0.0;
    double rate_a_when_b_first = 0.0;
    double rate_b_when_b_first = 0.0;
};

// Signed response shift per item: rate when asked second minus rate when
// asked first.
struct OrderShifts {
    double item_a = 0.0;
    double item_b = 0.0;
};

// Divides every fraction by the grand sum so the grid becomes a joint
// distribution. Throws AllZero when every fraction is zero.
JointOutcomeTable normalize_fractions(const RawFractionGrid& grid);

// Amplitudes are the square roots of the joint probabilities; outcome labels
// are row label followed by column label.
BeliefState state_from_joint(const JointOutcomeTable& joint);

// Stage-1 marginals and stage-2 conditionals. Throws ZeroMarginal naming the
// first row whose marginal is zero.
QuantumTree build_tree(const JointOutcomeTable& joint);

// Sum of one row of the joint.
Rational stage1_marginal(const JointOutcomeTable& joint, std::string_view row);

// joint(first, second) - joint(second, first); requires a square grid.
Rational order_effect(const JointOutcomeTable& joint, std::string_view first,
                      std::string_view second);

// joint(x, x) - marginal(x)^2; zero exactly when the stages are independent
// at x.
Rational independence_defect(const JointOutcomeTable& joint, std::string_view label);

// Squared amplitude of one outcome.
double measure(const BeliefState& state, std::string_view outcome);

// Planar rotation of a two-outcome state. Positive theta moves weight toward
// the first listed outcome; norm is preserved.
BeliefState rotate2(const BeliefState& state, double theta);

OrderShifts survey_order_shift(const SurveyOrderData& data);

}  // namespace qparadox::belief

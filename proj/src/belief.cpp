#include "qparadox/belief.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace qparadox::belief {

namespace {

constexpr double kNormTolerance = 1e-12;

void require(bool condition, const char* message) {
    if (!condition) throw std::invalid_argument(message);
}

void check_labels(const std::vector<std::string>& labels, const char* what) {
    require(!labels.empty(), "label list must not be empty");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) {
        throw std::invalid_argument(std::string(what) + ": duplicate labels");
    }
}

void check_shape(std::size_t rows, std::size_t cols,
                 const std::vector<std::vector<Rational>>& grid, const char* what) {
    if (grid.size() != rows) throw std::invalid_argument(std::string(what) + ": row count mismatch");
    for (const auto& row : grid) {
        if (row.size() != cols) {
            throw std::invalid_argument(std::string(what) + ": column count mismatch");
        }
    }
}

std::size_t index_of(const std::vector<std::string>& labels, std::string_view label,
                     const char* what) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return i;
    }
    throw LabelMismatch(std::string(what) + ": no outcome labelled '" + std::string(label) + "'");
}

}  // namespace

RawFractionGrid::RawFractionGrid(std::vector<std::string> rows_, std::vector<std::string> cols_,
                                 std::vector<std::vector<Rational>> fractions_,
                                 std::optional<std::vector<std::vector<CellCounts>>> counts_)
    : rows(std::move(rows_)),
      cols(std::move(cols_)),
      fractions(std::move(fractions_)),
      counts(std::move(counts_)) {
    check_labels(rows, "RawFractionGrid rows");
    check_labels(cols, "RawFractionGrid cols");
    check_shape(rows.size(), cols.size(), fractions, "RawFractionGrid");
    for (const auto& row : fractions) {
        for (const auto& f : row) {
            require(f >= 0 && f <= 1, "RawFractionGrid: fractions must lie in [0,1]");
        }
    }
    if (counts) {
        if (counts->size() != rows.size()) {
            throw std::invalid_argument("RawFractionGrid: counts row mismatch");
        }
        for (const auto& row : *counts) {
            if (row.size() != cols.size()) {
                throw std::invalid_argument("RawFractionGrid: counts column mismatch");
            }
            for (const auto& cell : row) {
                require(cell.trials >= 1 && cell.successes >= 0 && cell.successes <= cell.trials,
                        "RawFractionGrid: invalid cell counts");
            }
        }
    }
}

RawFractionGrid RawFractionGrid::from_decimals(std::vector<std::string> rows,
                                               std::vector<std::string> cols,
                                               const std::vector<std::vector<double>>& fractions) {
    std::vector<std::vector<Rational>> exact;
    exact.reserve(fractions.size());
    for (const auto& row : fractions) {
        std::vector<Rational> out;
        out.reserve(row.size());
        for (double f : row) out.push_back(rational_from_double(f));
        exact.push_back(std::move(out));
    }
    return RawFractionGrid(std::move(rows), std::move(cols), std::move(exact));
}

RawFractionGrid RawFractionGrid::from_counts(std::vector<std::string> rows,
                                             std::vector<std::string> cols,
                                             std::vector<std::vector<CellCounts>> counts) {
    std::vector<std::vector<Rational>> exact;
    exact.reserve(counts.size());
    for (const auto& row : counts) {
        std::vector<Rational> out;
        out.reserve(row.size());
        for (const CellCounts& cell : row) out.push_back(make_rational(cell.successes, cell.trials));
        exact.push_back(std::move(out));
    }
    return RawFractionGrid(std::move(rows), std::move(cols), std::move(exact), std::move(counts));
}

JointOutcomeTable::JointOutcomeTable(std::vector<std::string> rows_,
                                     std::vector<std::string> cols_,
                                     std::vector<std::vector<Rational>> probabilities_)
    : rows(std::move(rows_)), cols(std::move(cols_)), probabilities(std::move(probabilities_)) {
    check_labels(rows, "JointOutcomeTable rows");
    check_labels(cols, "JointOutcomeTable cols");
    check_shape(rows.size(), cols.size(), probabilities, "JointOutcomeTable");
    Rational sum = 0;
    for (const auto& row : probabilities) {
        for (const auto& p : row) {
            require(p >= 0, "JointOutcomeTable: probabilities must be nonnegative");
            sum += p;
        }
    }
    require(std::abs(to_double(sum - 1)) <= kNormTolerance,
            "JointOutcomeTable: probabilities must sum to 1");
}

std::size_t JointOutcomeTable::row_index(std::string_view label) const {
    return index_of(rows, label, "JointOutcomeTable row");
}

std::size_t JointOutcomeTable::col_index(std::string_view label) const {
    return index_of(cols, label, "JointOutcomeTable col");
}

const Rational& JointOutcomeTable::at(std::string_view row, std::string_view col) const {
    return probabilities[row_index(row)][col_index(col)];
}

BeliefState::BeliefState(std::vector<std::string> labels_, std::vector<double> amplitudes_)
    : labels(std::move(labels_)), amplitudes(std::move(amplitudes_)) {
    check_labels(labels, "BeliefState");
    require(labels.size() == amplitudes.size(), "BeliefState: one amplitude per label");
    require(std::abs(norm_squared() - 1.0) <= kNormTolerance, "BeliefState: amplitudes must be unit norm");
}

double BeliefState::norm_squared() const {
    double sum = 0.0;
    for (double a : amplitudes) sum += a * a;
    return sum;
}

double BeliefState::amplitude(std::string_view label) const {
    return amplitudes[index_of(labels, label, "BeliefState")];
}

JointOutcomeTable normalize_fractions(const RawFractionGrid& grid) {
    Rational total = 0;
    for (const auto& row : grid.fractions) {
        for (const auto& f : row) total += f;
    }
    if (total == 0) throw AllZero("normalize_fractions: every fraction is zero");

    std::vector<std::vector<Rational>> probabilities;
    probabilities.reserve(grid.fractions.size());
    for (const auto& row : grid.fractions) {
        std::vector<Rational> out;
        out.reserve(row.size());
        for (const auto& f : row) out.push_back(f / total);
        probabilities.push_back(std::move(out));
    }
    return JointOutcomeTable(grid.rows, grid.cols, std::move(probabilities));
}

BeliefState state_from_joint(const JointOutcomeTable& joint) {
    std::vector<std::string> labels;
    std::vector<double> amplitudes;
    labels.reserve(joint.rows.size() * joint.cols.size());
    amplitudes.reserve(labels.capacity());
    for (std::size_t r = 0; r < joint.rows.size(); ++r) {
        for (std::size_t c = 0; c < joint.cols.size(); ++c) {
            labels.push_back(joint.rows[r] + joint.cols[c]);
            amplitudes.push_back(std::sqrt(to_double(joint.probabilities[r][c])));
        }
    }
    return BeliefState(std::move(labels), std::move(amplitudes));
}

QuantumTree build_tree(const JointOutcomeTable& joint) {
    QuantumTree tree;
    tree.rows = joint.rows;
    tree.cols = joint.cols;
    for (std::size_t r = 0; r < joint.rows.size(); ++r) {
        Rational marginal = 0;
        for (const auto& p : joint.probabilities[r]) marginal += p;
        if (marginal == 0) {
            throw ZeroMarginal("build_tree: stage-1 marginal of row '" + joint.rows[r] +
                               "' is zero; its conditionals are undefined");
        }
        std::vector<Rational> conditional;
        conditional.reserve(joint.cols.size());
        for (const auto& p : joint.probabilities[r]) conditional.push_back(p / marginal);
        tree.marginals.push_back(std::move(marginal));
        tree.conditionals.push_back(std::move(conditional));
    }
    return tree;
}

Rational stage1_marginal(const JointOutcomeTable& joint, std::string_view row) {
    const std::size_t r = joint.row_index(row);
    Rational marginal = 0;
    for (const auto& p : joint.probabilities[r]) marginal += p;
    return marginal;
}

Rational order_effect(const JointOutcomeTable& joint, std::string_view first,
                      std::string_view second) {
    if (!joint.square()) {
        throw LabelMismatch("order_effect: grid must have identical row and column labels");
    }
    return joint.at(first, second) - joint.at(second, first);
}

Rational independence_defect(const JointOutcomeTable& joint, std::string_view label) {
    if (!joint.square()) {
        throw LabelMismatch("independence_defect: grid must have identical row and column labels");
    }
    const Rational marginal = stage1_marginal(joint, label);
    return joint.at(label, label) - marginal * marginal;
}

double measure(const BeliefState& state, std::string_view outcome) {
    const double a = state.amplitude(outcome);
    return a * a;
}

BeliefState rotate2(const BeliefState& state, double theta) {
    if (state.amplitudes.size() != 2) {
        throw DimensionError("rotate2: state must have exactly two outcomes");
    }
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double a1 = state.amplitudes[0];
    const double a2 = state.amplitudes[1];
    return BeliefState(state.labels, {a1 * c + a2 * s, a2 * c - a1 * s});
}

OrderShifts survey_order_shift(const SurveyOrderData& data) {
    for (double rate : {data.rate_a_when_a_first, data.rate_b_when_a_first,
                        data.rate_a_when_b_first, data.rate_b_when_b_first}) {
        require(rate >= 0.0 && rate <= 1.0, "survey_order_shift: rates must lie in [0,1]");
    }
    OrderShifts shifts;
    shifts.item_a = data.rate_a_when_b_first - data.rate_a_when_a_first;
    shifts.item_b = data.rate_b_when_a_first - data.rate_b_when_b_first;
    return shifts;
}

}  // namespace qparadox::belief

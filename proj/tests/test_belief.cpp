#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qparadox/belief.hpp"

using namespace qparadox;
using namespace qparadox::belief;

namespace {

// The two-stage improvement grid (fractions 0.80, 0.20 / 0.10, 0.30).
RawFractionGrid two_stage_grid() {
    return RawFractionGrid::from_counts(
        {"A", "B"}, {"A", "B"},
        {{CellCounts{36, 45}, CellCounts{3, 15}}, {CellCounts{1, 10}, CellCounts{9, 30}}});
}

JointOutcomeTable random_joint(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<int> numerator(0, 20);
    std::vector<std::vector<Rational>> cells(rows, std::vector<Rational>(cols));
    Rational total = 0;
    while (total == 0) {
        total = 0;
        for (auto& row : cells) {
            for (auto& cell : row) {
                cell = Rational(numerator(rng));
                total += cell;
            }
        }
    }
    for (auto& row : cells) {
        for (auto& cell : row) cell /= total;
    }
    std::vector<std::string> row_labels, col_labels;
    for (std::size_t r = 0; r < rows; ++r) row_labels.push_back("R" + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) col_labels.push_back("C" + std::to_string(c));
    return JointOutcomeTable(row_labels, col_labels, cells);
}

BeliefState random_pair_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    const double phi = angle(rng);
    return BeliefState({"first", "second"}, {std::cos(phi), std::sin(phi)});
}

}  // namespace

TEST_CASE("normalization divides by the grand sum of fractions") {
    const auto joint = normalize_fractions(two_stage_grid());
    CHECK(joint.at("A", "A") == make_rational(4, 7));
    CHECK(joint.at("A", "B") == make_rational(1, 7));
    CHECK(joint.at("B", "A") == make_rational(1, 14));
    CHECK(joint.at("B", "B") == make_rational(3, 14));
    CHECK(decimal_string(joint.at("A", "A"), 3) == "0.571");
    CHECK(decimal_string(joint.at("A", "B"), 3) == "0.143");
    CHECK(decimal_string(joint.at("B", "A"), 3) == "0.071");
    CHECK(decimal_string(joint.at("B", "B"), 3) == "0.214");
}

TEST_CASE("normalization is idempotent, scale-invariant, and rejects zero grids") {
    const auto grid = two_stage_grid();
    const auto once = normalize_fractions(grid);
    const auto twice = normalize_fractions(RawFractionGrid(once.rows, once.cols, once.probabilities));
    CHECK(once.probabilities == twice.probabilities);

    // Uniform grids flatten to 1/4 regardless of the common value.
    const RawFractionGrid uniform({"A", "B"}, {"A", "B"},
                                  {{make_rational(3, 10), make_rational(3, 10)},
                                   {make_rational(3, 10), make_rational(3, 10)}});
    for (const auto& row : normalize_fractions(uniform).probabilities) {
        for (const auto& p : row) CHECK(p == make_rational(1, 4));
    }

    const RawFractionGrid zero({"A", "B"}, {"A", "B"},
                               {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}});
    CHECK_THROWS_AS(normalize_fractions(zero), AllZero);

    std::mt19937 rng(21);
    std::uniform_int_distribution<int> numerator(0, 9);
    for (int i = 0; i < 10000; ++i) {
        std::vector<std::vector<Rational>> cells(2, std::vector<Rational>(2));
        Rational total = 0;
        for (auto& row : cells) {
            for (auto& cell : row) {
                cell = make_rational(numerator(rng), 10);
                total += cell;
            }
        }
        if (total == 0) continue;
        const Rational scale = make_rational(1 + static_cast<int>(rng() % 50), 7);
        auto scaled = cells;
        for (auto& row : scaled) {
            for (auto& cell : row) cell *= scale;
        }
        const RawFractionGrid plain({"A", "B"}, {"A", "B"}, cells);
        // Scaled entries may leave [0,1]; normalize the raw matrix directly.
        Rational scaled_total = total * scale;
        const auto normalized = normalize_fractions(plain);
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                CHECK(normalized.probabilities[r][c] == scaled[r][c] / scaled_total);
            }
        }
    }
}

TEST_CASE("belief amplitudes are square roots of the joint") {
    const auto joint = normalize_fractions(two_stage_grid());
    const auto state = state_from_joint(joint);
    REQUIRE(state.labels == std::vector<std::string>{"AA", "AB", "BA", "BB"});
    CHECK(state.amplitudes[0] == doctest::Approx(std::sqrt(4.0 / 7.0)).epsilon(1e-15));
    CHECK(state.amplitudes[1] == doctest::Approx(std::sqrt(1.0 / 7.0)).epsilon(1e-15));
    CHECK(state.amplitudes[2] == doctest::Approx(std::sqrt(1.0 / 14.0)).epsilon(1e-15));
    CHECK(state.amplitudes[3] == doctest::Approx(std::sqrt(3.0 / 14.0)).epsilon(1e-15));
    // Two-decimal readings of these amplitudes: 0.76, 0.38, 0.27, 0.46.
    CHECK(std::abs(state.amplitudes[0] - 0.75) < 0.01);
    CHECK(std::abs(state.amplitudes[1] - 0.37) < 0.01);
    CHECK(std::abs(state.amplitudes[2] - 0.26) < 0.01);
    CHECK(std::abs(state.amplitudes[3] - 0.47) < 0.01);
    CHECK(state.norm_squared() == doctest::Approx(1.0).epsilon(1e-13));

    const JointOutcomeTable point({"A", "B"}, {"A", "B"},
                                  {{Rational(1), Rational(0)}, {Rational(0), Rational(0)}});
    const auto basis = state_from_joint(point);
    CHECK(basis.amplitude("AA") == 1.0);
    CHECK(basis.amplitude("BB") == 0.0);

    const JointOutcomeTable uniform(
        {"A", "B"}, {"A", "B"},
        {{make_rational(1, 4), make_rational(1, 4)}, {make_rational(1, 4), make_rational(1, 4)}});
    for (double a : state_from_joint(uniform).amplitudes) CHECK(a == 0.5);
}

TEST_CASE("measuring a constructed state returns the joint probability") {
    std::mt19937 rng(22);
    for (int i = 0; i < 10000; ++i) {
        const auto joint = random_joint(rng, 2, 2);
        const auto state = state_from_joint(joint);
        for (std::size_t r = 0; r < joint.rows.size(); ++r) {
            for (std::size_t c = 0; c < joint.cols.size(); ++c) {
                const double expected = to_double(joint.probabilities[r][c]);
                const double measured = measure(state, joint.rows[r] + joint.cols[c]);
                CHECK(measured == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
    // Unequal two-outcome superposition: probabilities 2/3 and 1/3.
    const BeliefState lopsided({"1", "2"}, {std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0)});
    CHECK(measure(lopsided, "1") == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(measure(lopsided, "2") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    CHECK_THROWS_AS(measure(BeliefState({"X"}, {1.0}), "Y"), LabelMismatch);
}

TEST_CASE("quantum tree splits the joint into marginals and conditionals") {
    const auto joint = normalize_fractions(two_stage_grid());
    const auto tree = build_tree(joint);
    CHECK(tree.marginals[0] == make_rational(5, 7));
    CHECK(tree.marginals[1] == make_rational(2, 7));
    CHECK(decimal_string(tree.marginals[0], 2) == "0.71");
    CHECK(decimal_string(tree.marginals[1], 2) == "0.29");
    CHECK(tree.conditionals[0][0] == make_rational(4, 5));
    CHECK(tree.conditionals[0][1] == make_rational(1, 5));
    CHECK(tree.conditionals[1][0] == make_rational(1, 4));
    CHECK(tree.conditionals[1][1] == make_rational(3, 4));

    const JointOutcomeTable empty_row({"A", "B"}, {"A", "B"},
                                      {{Rational(0), Rational(0)},
                                       {make_rational(1, 2), make_rational(1, 2)}});
    CHECK_THROWS_WITH_AS(build_tree(empty_row), doctest::Contains("'A'"), ZeroMarginal);
}

TEST_CASE("tree reconstruction and product-joint structure") {
    std::mt19937 rng(23);
    int built = 0;
    while (built < 5000) {
        const auto joint = random_joint(rng, 2, 3);
        bool has_zero_row = false;
        for (std::size_t r = 0; r < joint.rows.size(); ++r) {
            Rational marginal = 0;
            for (const auto& p : joint.probabilities[r]) marginal += p;
            if (marginal == 0) has_zero_row = true;
        }
        if (has_zero_row) {
            CHECK_THROWS_AS(build_tree(joint), ZeroMarginal);
            continue;
        }
        const auto tree = build_tree(joint);
        for (std::size_t r = 0; r < joint.rows.size(); ++r) {
            for (std::size_t c = 0; c < joint.cols.size(); ++c) {
                CHECK(tree.marginals[r] * tree.conditionals[r][c] == joint.probabilities[r][c]);
            }
        }
        ++built;
    }

    // Independent stages: every row of conditionals equals the column law.
    const JointOutcomeTable product(
        {"A", "B"}, {"A", "B"},
        {{make_rational(3, 5) * make_rational(1, 4), make_rational(3, 5) * make_rational(3, 4)},
         {make_rational(2, 5) * make_rational(1, 4), make_rational(2, 5) * make_rational(3, 4)}});
    const auto tree = build_tree(product);
    CHECK(tree.conditionals[0] == tree.conditionals[1]);
    CHECK(tree.conditionals[0][0] == make_rational(1, 4));

    const JointOutcomeTable point({"A", "B"}, {"A", "B"},
                                  {{Rational(1), Rational(0)}, {Rational(0), Rational(0)}});
    CHECK_THROWS_AS(build_tree(point), ZeroMarginal);  // row B is empty
}

TEST_CASE("order effect is the antisymmetric off-diagonal gap") {
    const auto joint = normalize_fractions(two_stage_grid());
    CHECK(order_effect(joint, "A", "B") == make_rational(1, 14));
    CHECK(order_effect(joint, "B", "A") == make_rational(-1, 14));
    CHECK(order_effect(joint, "A", "A") == 0);

    std::mt19937 rng(24);
    for (int i = 0; i < 10000; ++i) {
        const auto square = random_joint(rng, 2, 2);
        const JointOutcomeTable relabeled({"A", "B"}, {"A", "B"}, square.probabilities);
        CHECK(order_effect(relabeled, "A", "B") == -order_effect(relabeled, "B", "A"));
    }

    const auto rectangular = random_joint(rng, 2, 3);
    CHECK_THROWS_AS(order_effect(rectangular, "R0", "R1"), LabelMismatch);
}

TEST_CASE("independence defect vanishes exactly on product joints") {
    const auto joint = normalize_fractions(two_stage_grid());
    CHECK(independence_defect(joint, "A") == make_rational(3, 49));
    CHECK(independence_defect(joint, "B") == make_rational(13, 98));

    const JointOutcomeTable product(
        {"A", "B"}, {"A", "B"},
        {{make_rational(3, 5) * make_rational(3, 5), make_rational(3, 5) * make_rational(2, 5)},
         {make_rational(2, 5) * make_rational(3, 5), make_rational(2, 5) * make_rational(2, 5)}});
    CHECK(independence_defect(product, "A") == 0);
    CHECK(independence_defect(product, "B") == 0);
}

TEST_CASE("two-outcome rotation preserves norm and composes additively") {
    const BeliefState up({"loss", "win"}, {0.0, 1.0});
    const auto identity = rotate2(up, 0.0);
    CHECK(identity.amplitudes[0] == 0.0);
    CHECK(identity.amplitudes[1] == 1.0);

    const auto quarter = rotate2(up, M_PI / 2.0);
    CHECK(quarter.amplitudes[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(quarter.amplitudes[1]) < 1e-15);

    std::mt19937 rng(25);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const auto state = random_pair_state(rng);
        const double a = angle(rng), b = angle(rng);
        const auto rotated = rotate2(state, a);
        CHECK(std::abs(rotated.norm_squared() - 1.0) <= 1e-12);
        const auto chained = rotate2(rotated, b);
        const auto direct = rotate2(state, a + b);
        CHECK(chained.amplitudes[0] == doctest::Approx(direct.amplitudes[0]).epsilon(1e-10));
        CHECK(chained.amplitudes[1] == doctest::Approx(direct.amplitudes[1]).epsilon(1e-10));
    }

    CHECK_THROWS_AS(rotate2(BeliefState({"x", "y", "z"}, {1.0, 0.0, 0.0}), 0.5), DimensionError);
}

TEST_CASE("positive rotation moves weight toward the first outcome") {
    const BeliefState balanced({"loss", "win"}, {std::sqrt(0.5), std::sqrt(0.5)});
    const auto nudged = rotate2(balanced, 0.1);
    CHECK(nudged.amplitudes[0] > balanced.amplitudes[0]);
    CHECK(nudged.amplitudes[1] < balanced.amplitudes[1]);
}

TEST_CASE("question order shifts") {
    // Approval poll: item asked first vs the same item asked second.
    SurveyOrderData poll;
    poll.item_a = "Clinton";
    poll.item_b = "Gore";
    poll.rate_a_when_a_first = 0.50;
    poll.rate_b_when_a_first = 0.60;
    poll.rate_a_when_b_first = 0.57;
    poll.rate_b_when_b_first = 0.68;
    const auto shifts = survey_order_shift(poll);
    CHECK(shifts.item_a == doctest::Approx(0.07).epsilon(1e-12));
    CHECK(shifts.item_b == doctest::Approx(-0.08).epsilon(1e-12));

    SurveyOrderData flat;
    flat.item_a = "X";
    flat.item_b = "Y";
    flat.rate_a_when_a_first = flat.rate_a_when_b_first = 0.4;
    flat.rate_b_when_a_first = flat.rate_b_when_b_first = 0.9;
    const auto zero = survey_order_shift(flat);
    CHECK(zero.item_a == 0.0);
    CHECK(zero.item_b == 0.0);

    std::mt19937 rng(26);
    std::uniform_real_distribution<double> rate(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        SurveyOrderData data;
        data.item_a = "X";
        data.item_b = "Y";
        data.rate_a_when_a_first = rate(rng);
        data.rate_b_when_a_first = rate(rng);
        data.rate_a_when_b_first = rate(rng);
        data.rate_b_when_b_first = rate(rng);
        const auto s = survey_order_shift(data);
        CHECK(s.item_a >= -1.0);
        CHECK(s.item_a <= 1.0);
        CHECK(s.item_b >= -1.0);
        CHECK(s.item_b <= 1.0);
    }
}

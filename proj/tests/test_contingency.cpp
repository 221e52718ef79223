#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qparadox/contingency.hpp"

using namespace qparadox;
using namespace qparadox::contingency;

namespace {

// The two clinical studies whose pooled ordering flips.
StratifiedTable clinical_studies() {
    return StratifiedTable{{
        {"Study 1", TwoArmTable("Treatment 1", ArmCounts(81, 87), "Treatment 2", ArmCounts(234, 270))},
        {"Study 2", TwoArmTable("Treatment 1", ArmCounts(192, 263), "Treatment 2", ArmCounts(55, 80))},
    }};
}

// Treatment vs control separated by gender; control wins both strata.
StratifiedTable gender_stratified() {
    return StratifiedTable{{
        {"Males", TwoArmTable("Treatment", ArmCounts(18, 30), "Control", ArmCounts(7, 10))},
        {"Females", TwoArmTable("Treatment", ArmCounts(2, 10), "Control", ArmCounts(9, 30))},
    }};
}

StratifiedTable random_stratified(std::mt19937& rng, int n_strata) {
    std::uniform_int_distribution<std::int64_t> trials_dist(1, 40);
    std::vector<std::pair<std::string, TwoArmTable>> strata;
    for (int s = 0; s < n_strata; ++s) {
        const std::int64_t ta = trials_dist(rng), tb = trials_dist(rng);
        std::uniform_int_distribution<std::int64_t> sa(0, ta), sb(0, tb);
        strata.emplace_back("S" + std::to_string(s),
                            TwoArmTable("A", ArmCounts(sa(rng), ta), "B", ArmCounts(sb(rng), tb)));
    }
    return StratifiedTable(std::move(strata));
}

}  // namespace

TEST_CASE("counts enforce their invariants") {
    CHECK_THROWS_AS(ArmCounts(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(ArmCounts(5, 4), std::invalid_argument);
    CHECK_THROWS_AS(ArmCounts(-1, 4), std::invalid_argument);
    CHECK_THROWS_AS(TwoArmTable("X", ArmCounts(1, 2), "X", ArmCounts(1, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(StratifiedTable({}), std::invalid_argument);
}

TEST_CASE("rate is the exact proportion") {
    CHECK(rate(ArmCounts(81, 87)) == make_rational(81, 87));
    CHECK(decimal_string(rate(ArmCounts(81, 87)), 3) == "0.931");
    CHECK(rate(ArmCounts(0, 10)) == 0);
    // 234/270 recomputes to 0.867; the source table prints 0.83 for it.
    CHECK(decimal_string(rate(ArmCounts(234, 270)), 3) == "0.867");
}

TEST_CASE("pooling sums successes and trials per arm") {
    const auto pooled = pool(clinical_studies());
    CHECK(pooled.arm_a.successes == 273);
    CHECK(pooled.arm_a.trials == 350);
    CHECK(pooled.arm_b.successes == 289);
    CHECK(pooled.arm_b.trials == 350);

    const auto pooled_gender = pool(gender_stratified());
    CHECK(pooled_gender.arm_a.successes == 20);
    CHECK(pooled_gender.arm_a.trials == 40);

    const StratifiedTable single{{{"only", TwoArmTable("A", ArmCounts(3, 9), "B", ArmCounts(1, 4))}}};
    const auto identity = pool(single);
    CHECK(identity.arm_a.successes == 3);
    CHECK(identity.arm_b.trials == 4);
}

TEST_CASE("pooling conservation holds for random tables") {
    std::mt19937 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const auto strata = random_stratified(rng, 1 + static_cast<int>(rng() % 5));
        const auto pooled = pool(strata);
        std::int64_t sa = 0, ta = 0, sb = 0, tb = 0;
        for (const auto& [label, table] : strata.strata) {
            sa += table.arm_a.successes;
            ta += table.arm_a.trials;
            sb += table.arm_b.successes;
            tb += table.arm_b.trials;
        }
        CHECK(pooled.arm_a.successes == sa);
        CHECK(pooled.arm_a.trials == ta);
        CHECK(pooled.arm_b.successes == sb);
        CHECK(pooled.arm_b.trials == tb);
    }
}

TEST_CASE("both stratified datasets reverse on pooling") {
    const auto clinical = detect_reversal(clinical_studies());
    CHECK(clinical.reversal);
    CHECK(clinical.per_stratum_direction == std::vector<int>{1, 1});
    CHECK(clinical.pooled_direction == -1);
    CHECK(clinical.pooled_rates.decimal_a == "0.780");
    CHECK(clinical.pooled_rates.decimal_b == "0.826");

    const auto gender = detect_reversal(gender_stratified());
    CHECK(gender.reversal);
    CHECK(gender.per_stratum_direction == std::vector<int>{-1, -1});
    CHECK(gender.pooled_direction == 1);
    CHECK(gender.pooled_rates.rate_a == make_rational(1, 2));
    CHECK(gender.pooled_rates.rate_b == make_rational(2, 5));
}

TEST_CASE("single stratum and ties never count as reversal") {
    const StratifiedTable single{{{"only", TwoArmTable("A", ArmCounts(3, 9), "B", ArmCounts(1, 4))}}};
    const auto report = detect_reversal(single);
    CHECK_FALSE(report.reversal);
    CHECK_FALSE(report.note.empty());

    const StratifiedTable tied{{
        {"S0", TwoArmTable("A", ArmCounts(1, 2), "B", ArmCounts(2, 4))},
        {"S1", TwoArmTable("A", ArmCounts(3, 4), "B", ArmCounts(1, 4))},
    }};
    const auto tied_report = detect_reversal(tied);
    CHECK(tied_report.per_stratum_direction.front() == 0);
    CHECK_FALSE(tied_report.reversal);
}

TEST_CASE("equal trial counts with equal per-arm rates cannot reverse") {
    // With matching denominators the pooled rate is the mean of the stratum
    // rates, so the ordering carries over; scan all small instances.
    for (std::int64_t ta = 1; ta <= 8; ++ta) {
        for (std::int64_t tb = 1; tb <= 8; ++tb) {
            for (std::int64_t sa = 0; sa <= ta; ++sa) {
                for (std::int64_t sb = 0; sb <= tb; ++sb) {
                    const StratifiedTable strata{{
                        {"S0", TwoArmTable("A", ArmCounts(sa, ta), "B", ArmCounts(sb, tb))},
                        {"S1", TwoArmTable("A", ArmCounts(sa, ta), "B", ArmCounts(sb, tb))},
                    }};
                    CHECK_FALSE(detect_reversal(strata).reversal);
                }
            }
        }
    }
}

TEST_CASE("detect_reversal is invariant under stratum order and arm swap") {
    std::mt19937 rng(12);
    for (int i = 0; i < 2000; ++i) {
        auto strata = random_stratified(rng, 2 + static_cast<int>(rng() % 3));
        const auto base = detect_reversal(strata);

        auto shuffled = strata.strata;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto permuted = detect_reversal(StratifiedTable(shuffled));
        CHECK(permuted.reversal == base.reversal);

        std::vector<std::pair<std::string, TwoArmTable>> swapped;
        for (const auto& [label, table] : strata.strata) {
            swapped.emplace_back(label,
                                 TwoArmTable(table.label_b, table.arm_b, table.label_a, table.arm_a));
        }
        const auto mirrored = detect_reversal(StratifiedTable(swapped));
        CHECK(mirrored.reversal == base.reversal);
        CHECK(mirrored.pooled_direction == -base.pooled_direction);
        for (std::size_t s = 0; s < base.per_stratum_direction.size(); ++s) {
            CHECK(mirrored.per_stratum_direction[s] == -base.per_stratum_direction[s]);
        }
    }
}

TEST_CASE("reversal condition on the clinical counts") {
    CHECK(reversal_condition(81, 87, 234, 270, 192, 263, 55, 80));
    CHECK_FALSE(reversal_condition(1, 2, 1, 2, 1, 2, 1, 2));
    CHECK_THROWS_AS(reversal_condition(1, 0, 1, 2, 1, 2, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(reversal_condition(3, 2, 1, 2, 1, 2, 1, 2), std::invalid_argument);
}

TEST_CASE("reversal condition agrees with a floating check on all small tables") {
    // Denominators up to 12; fractions with denominators this small are
    // separated far beyond double rounding, so the floating comparison is an
    // independent ground truth.
    long long checked = 0;
    for (std::int64_t b1 = 1; b1 <= 12; ++b1)
        for (std::int64_t d1 = 1; d1 <= 12; ++d1)
            for (std::int64_t b2 = 1; b2 <= 12; ++b2)
                for (std::int64_t d2 = 1; d2 <= 12; ++d2)
                    for (std::int64_t a1 = 0; a1 <= b1; ++a1)
                        for (std::int64_t c1 = 0; c1 <= d1; ++c1)
                            for (std::int64_t a2 = 0; a2 <= b2; ++a2)
                                for (std::int64_t c2 = 0; c2 <= d2; ++c2) {
                                    const bool expected =
                                        double(a1) / b1 > double(c1) / d1 &&
                                        double(a2) / b2 > double(c2) / d2 &&
                                        double(c1 + c2) / double(d1 + d2) >
                                            double(a1 + a2) / double(b1 + b2);
                                    if (expected !=
                                        reversal_condition(a1, b1, c1, d1, a2, b2, c2, d2)) {
                                        FAIL("mismatch at ", a1, "/", b1, " ", c1, "/", d1, " ",
                                             a2, "/", b2, " ", c2, "/", d2);
                                    }
                                    ++checked;
                                }
    CHECK(checked > 1000000);
}

TEST_CASE("reversal verdicts and the inequality predicate agree") {
    std::mt19937 rng(13);
    for (int i = 0; i < 5000; ++i) {
        const auto strata = random_stratified(rng, 2);
        const auto report = detect_reversal(strata);
        const auto& first = strata.strata[0].second;
        const auto& second = strata.strata[1].second;
        // Orient the predicate so (a, b) is the per-stratum winner.
        const bool a_wins_both =
            reversal_condition(first.arm_a.successes, first.arm_a.trials, first.arm_b.successes,
                               first.arm_b.trials, second.arm_a.successes, second.arm_a.trials,
                               second.arm_b.successes, second.arm_b.trials);
        const bool b_wins_both =
            reversal_condition(first.arm_b.successes, first.arm_b.trials, first.arm_a.successes,
                               first.arm_a.trials, second.arm_b.successes, second.arm_b.trials,
                               second.arm_a.successes, second.arm_a.trials);
        CHECK(report.reversal == (a_wins_both || b_wins_both));
    }
}

TEST_CASE("chi-squared matches the textbook formula") {
    const auto equal = chi_squared(TwoArmTable("A", ArmCounts(10, 20), "B", ArmCounts(10, 20)));
    CHECK(*equal.statistic == 0.0);
    CHECK(equal.p_value == 1.0);

    const auto pooled_clinical =
        chi_squared(TwoArmTable("T1", ArmCounts(273, 350), "T2", ArmCounts(289, 350)));
    CHECK(*pooled_clinical.statistic ==
          doctest::Approx(oracles::chi_squared_statistic_oracle(273, 77, 289, 61)).epsilon(1e-12));
    CHECK(*pooled_clinical.statistic == doctest::Approx(2.3105884780029915).epsilon(1e-12));
    CHECK(pooled_clinical.p_value ==
          doctest::Approx(oracles::chi_squared_sf_oracle(*pooled_clinical.statistic)).epsilon(1e-10));
    CHECK(pooled_clinical.p_value == doctest::Approx(0.12849539443997507).epsilon(1e-10));

    const auto pooled_gender =
        chi_squared(TwoArmTable("T", ArmCounts(20, 40), "C", ArmCounts(16, 40)));
    CHECK(*pooled_gender.statistic ==
          doctest::Approx(oracles::chi_squared_statistic_oracle(20, 20, 16, 24)).epsilon(1e-12));
    CHECK(*pooled_gender.statistic == doctest::Approx(0.8080808080808082).epsilon(1e-12));
    CHECK(pooled_gender.p_value == doctest::Approx(0.36868826936178156).epsilon(1e-10));
}

TEST_CASE("chi-squared statistic is zero exactly when proportions are equal") {
    std::mt19937 rng(14);
    for (int i = 0; i < 5000; ++i) {
        std::uniform_int_distribution<std::int64_t> trials_dist(1, 30);
        const std::int64_t ta = trials_dist(rng), tb = trials_dist(rng);
        std::uniform_int_distribution<std::int64_t> sa(0, ta), sb(0, tb);
        const std::int64_t a = sa(rng), bcount = sb(rng);
        const TwoArmTable table("A", ArmCounts(a, ta), "B", ArmCounts(bcount, tb));
        const std::int64_t succ = a + bcount;
        if (succ == 0 || succ == ta + tb) {
            CHECK_THROWS_AS(chi_squared(table), DegenerateTable);
            continue;
        }
        const bool equal_rates = a * tb == bcount * ta;
        CHECK((*chi_squared(table).statistic == 0.0) == equal_rates);
    }
}

TEST_CASE("yates correction shrinks the statistic") {
    const TwoArmTable table("T", ArmCounts(18, 30), "C", ArmCounts(7, 10));
    const auto plain = chi_squared(table);
    const auto corrected = chi_squared(table, true);
    CHECK(*corrected.statistic < *plain.statistic);
    CHECK(corrected.p_value > plain.p_value);
    // Correction cannot push the statistic below zero.
    const TwoArmTable near_equal("T", ArmCounts(10, 20), "C", ArmCounts(11, 21));
    CHECK(*chi_squared(near_equal, true).statistic == 0.0);
}

TEST_CASE("fisher exact test on the documented tables") {
    // Margins admit only two tables, both equally likely.
    const auto tiny = fisher_exact(TwoArmTable("A", ArmCounts(1, 1), "B", ArmCounts(0, 1)));
    CHECK(tiny.p_value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(tiny.statistic.has_value());

    const auto males = fisher_exact(TwoArmTable("T", ArmCounts(18, 30), "C", ArmCounts(7, 10)));
    CHECK(males.p_value ==
          doctest::Approx(oracles::fisher_two_sided_oracle(18, 12, 7, 3)).epsilon(1e-12));
    CHECK(males.p_value == doctest::Approx(0.7148133102642241).epsilon(1e-12));

    const auto improvement =
        fisher_exact(TwoArmTable("A1", ArmCounts(36, 45), "B1", ArmCounts(3, 15)));
    CHECK(improvement.p_value ==
          doctest::Approx(oracles::fisher_two_sided_oracle(36, 9, 3, 12)).epsilon(1e-12));
    CHECK(improvement.p_value == doctest::Approx(5.34194980518417e-05).epsilon(1e-10));

    CHECK_THROWS_AS(fisher_exact(TwoArmTable("A", ArmCounts(0, 3), "B", ArmCounts(0, 5))),
                    DegenerateTable);
}

TEST_CASE("one-sided fisher tails partition the distribution") {
    std::mt19937 rng(15);
    for (int i = 0; i < 500; ++i) {
        std::uniform_int_distribution<std::int64_t> trials_dist(1, 25);
        const std::int64_t ta = trials_dist(rng), tb = trials_dist(rng);
        std::uniform_int_distribution<std::int64_t> sa(0, ta), sb(0, tb);
        const TwoArmTable table("A", ArmCounts(sa(rng), ta), "B", ArmCounts(sb(rng), tb));
        const std::int64_t succ = table.arm_a.successes + table.arm_b.successes;
        if (succ == 0 || succ == ta + tb) continue;

        const double less = fisher_exact(table, FisherSide::less).p_value;
        const double greater = fisher_exact(table, FisherSide::greater).p_value;
        const double two = fisher_exact(table, FisherSide::two_sided).p_value;
        // less + greater double-counts exactly the observed table.
        CHECK(less + greater >= 1.0 - 1e-9);
        CHECK(two <= 1.0);
        CHECK(two >= std::min(less, greater) - 1e-12);
    }
}

TEST_CASE("fisher matches the exact enumeration oracle on random tables") {
    std::mt19937 rng(16);
    std::uniform_int_distribution<std::int64_t> trials_dist(1, 100);
    int tested = 0;
    while (tested < 2000) {
        const std::int64_t ta = trials_dist(rng), tb = trials_dist(rng);
        if (ta + tb > 200) continue;
        std::uniform_int_distribution<std::int64_t> sa(0, ta), sb(0, tb);
        const TwoArmTable table("A", ArmCounts(sa(rng), ta), "B", ArmCounts(sb(rng), tb));
        const std::int64_t succ = table.arm_a.successes + table.arm_b.successes;
        if (succ == 0 || succ == ta + tb) continue;
        const double expected = oracles::fisher_two_sided_oracle(
            table.arm_a.successes, table.arm_a.failures(), table.arm_b.successes,
            table.arm_b.failures());
        CHECK(fisher_exact(table).p_value == doctest::Approx(expected).epsilon(1e-12));
        ++tested;
    }
}

TEST_CASE("back-door adjustment on the gender data") {
    const auto strata = gender_stratified();
    CHECK(backdoor_adjust(strata, "Treatment") == make_rational(2, 5));
    CHECK(backdoor_adjust(strata, "Control") == make_rational(1, 2));
    // The adjusted ordering agrees with the per-stratum ordering.
    CHECK(backdoor_adjust(strata, "Control") > backdoor_adjust(strata, "Treatment"));
    CHECK_THROWS_AS(backdoor_adjust(strata, "Placebo"), LabelMismatch);

    const StratifiedTable single{{{"only", TwoArmTable("A", ArmCounts(3, 9), "B", ArmCounts(1, 4))}}};
    CHECK(backdoor_adjust(single, "A") == make_rational(1, 3));
}

TEST_CASE("adjusted rates stay inside the stratum rate envelope") {
    std::mt19937 rng(17);
    for (int i = 0; i < 2000; ++i) {
        const auto strata = random_stratified(rng, 1 + static_cast<int>(rng() % 4));
        for (const std::string arm : {"A", "B"}) {
            Rational lo = rate(strata.strata.front().second.arm(arm));
            Rational hi = lo;
            for (const auto& [label, table] : strata.strata) {
                const Rational r = rate(table.arm(arm));
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
            const Rational adjusted = backdoor_adjust(strata, arm);
            CHECK(adjusted >= lo);
            CHECK(adjusted <= hi);
        }
    }
}

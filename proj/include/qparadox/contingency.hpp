#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qparadox/errors.hpp"
#include "qparadox/rational.hpp"

namespace qparadox::contingency {

// Successes out of trials for one treatment arm.
struct ArmCounts {
    ArmCounts(std::int64_t successes_, std::int64_t trials_);

    std::int64_t successes;
    std::int64_t trials;

    std::int64_t failures() const { return trials - successes; }
};

// One 2x2 comparison: two named arms, successes vs failures.
struct TwoArmTable {
    TwoArmTable(std::string label_a_, ArmCounts arm_a_, std::string label_b_, ArmCounts arm_b_);

    std::string label_a;
    std::string label_b;
    ArmCounts arm_a;
    ArmCounts arm_b;

    const ArmCounts& arm(std::string_view label) const;
    std::int64_t grand_total() const { return arm_a.trials + arm_b.trials; }
};

// The same two arms observed across one or more strata of a conditioning
// variable. Stratum labels are distinct and every stratum carries the same
// pair of arm labels in the same order.
struct StratifiedTable {
    explicit StratifiedTable(std::vector<std::pair<std::string, TwoArmTable>> strata_);

    std::vector<std::pair<std::string, TwoArmTable>> strata;

    const std::string& arm_label_a() const { return strata.front().second.label_a; }
    const std::string& arm_label_b() const { return strata.front().second.label_b; }
};

enum class TestMethod {
    pearson_chi_squared,
    fisher_exact_two_sided,
    fisher_exact_less,
    fisher_exact_greater,
};

struct TestResult {
    std::optional<double> statistic;  // chi-squared only
    double p_value = 1.0;
    TestMethod method = TestMethod::pearson_chi_squared;
};

// Exact rate pair plus its fixed-point rendering.
struct RateEntry {
    Rational rate_a;
    Rational rate_b;
    std::string decimal_a;
    std::string decimal_b;
};

struct ReversalReport {
    // sign(rate_a - rate_b) per stratum, in stratum order.
    std::vector<int> per_stratum_direction;
    int pooled_direction = 0;
    // True iff every stratum direction is the same nonzero sign and the
    // pooled direction is the strict opposite sign.
    bool reversal = false;
    std::vector<std::pair<std::string, RateEntry>> per_stratum_rates;
    RateEntry pooled_rates;
    std::string note;
};

enum class FisherSide { two_sided, less, greater };

// successes/trials as an exact rational.
Rational rate(const ArmCounts& counts);

// Sums successes and trials across strata, arm by arm.
TwoArmTable pool(const StratifiedTable& strata);

// Compares per-stratum rate ordering against the pooled ordering, exactly.
// Ties count as direction 0 and block a reversal verdict. `decimal_places`
// controls the report's fixed-point renderings only.
ReversalReport detect_reversal(const StratifiedTable& strata, unsigned decimal_places = 3);

// True iff a1/b1 > c1/d1 and a2/b2 > c2/d2 while the aggregate ordering
// flips: (c1+c2)/(d1+d2) > (a1+a2)/(b1+b2). All comparisons are exact
// cross-multiplications.
bool reversal_condition(std::int64_t a1, std::int64_t b1, std::int64_t c1, std::int64_t d1,
                        std::int64_t a2, std::int64_t b2, std::int64_t c2, std::int64_t d2);

// Pearson statistic on the success/failure 2x2, p-value from the
// chi-squared survival function with one degree of freedom. No continuity
// correction unless `yates_correction` is set.
TestResult chi_squared(const TwoArmTable& table, bool yates_correction = false);

// Fisher's exact test. Two-sided sums the hypergeometric probabilities of
// every table with the same margins whose point probability is at most the
// observed one (ties compared within relative tolerance 1e-12).
TestResult fisher_exact(const TwoArmTable& table, FisherSide side = FisherSide::two_sided);

// Back-door adjusted success probability for one arm: stratum rates weighted
// by stratum share of all subjects.
Rational backdoor_adjust(const StratifiedTable& strata, std::string_view arm_label);

}  // namespace qparadox::contingency

#include "qparadox/contingency.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace qparadox::contingency {

namespace {

void require(bool condition, const char* message) {
    if (!condition) throw std::invalid_argument(message);
}

int sign_int(const Rational& r) {
    return r.sign();
}

RateEntry make_rate_entry(const TwoArmTable& table, unsigned places) {
    RateEntry entry;
    entry.rate_a = rate(table.arm_a);
    entry.rate_b = rate(table.arm_b);
    entry.decimal_a = decimal_string(entry.rate_a, places);
    entry.decimal_b = decimal_string(entry.rate_b, places);
    return entry;
}

// log k! for k = 0..n, built locally so the functions stay state-free.
std::vector<double> log_factorials(std::int64_t n) {
    std::vector<double> lf(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::int64_t k = 2; k <= n; ++k) {
        lf[static_cast<std::size_t>(k)] =
            lf[static_cast<std::size_t>(k - 1)] + std::log(static_cast<double>(k));
    }
    return lf;
}

}  // namespace

ArmCounts::ArmCounts(std::int64_t successes_, std::int64_t trials_)
    : successes(successes_), trials(trials_) {
    require(trials >= 1, "ArmCounts: trials must be >= 1");
    require(successes >= 0, "ArmCounts: successes must be >= 0");
    require(successes <= trials, "ArmCounts: successes must not exceed trials");
}

TwoArmTable::TwoArmTable(std::string label_a_, ArmCounts arm_a_, std::string label_b_,
                         ArmCounts arm_b_)
    : label_a(std::move(label_a_)), label_b(std::move(label_b_)), arm_a(arm_a_), arm_b(arm_b_) {
    require(label_a != label_b, "TwoArmTable: arm labels must be distinct");
}

const ArmCounts& TwoArmTable::arm(std::string_view label) const {
    if (label == label_a) return arm_a;
    if (label == label_b) return arm_b;
    throw LabelMismatch("no arm labelled '" + std::string(label) + "'");
}

StratifiedTable::StratifiedTable(std::vector<std::pair<std::string, TwoArmTable>> strata_)
    : strata(std::move(strata_)) {
    require(!strata.empty(), "StratifiedTable: at least one stratum required");
    std::set<std::string> seen;
    for (const auto& [label, table] : strata) {
        if (!seen.insert(label).second) {
            throw std::invalid_argument("StratifiedTable: duplicate stratum label '" + label + "'");
        }
        if (table.label_a != arm_label_a() || table.label_b != arm_label_b()) {
            throw LabelMismatch("StratifiedTable: stratum '" + label +
                                "' does not share the common arm labels");
        }
    }
}

Rational rate(const ArmCounts& counts) {
    return make_rational(counts.successes, counts.trials);
}

TwoArmTable pool(const StratifiedTable& strata) {
    std::int64_t successes_a = 0, trials_a = 0, successes_b = 0, trials_b = 0;
    for (const auto& [label, table] : strata.strata) {
        successes_a += table.arm_a.successes;
        trials_a += table.arm_a.trials;
        successes_b += table.arm_b.successes;
        trials_b += table.arm_b.trials;
    }
    return TwoArmTable(strata.arm_label_a(), ArmCounts(successes_a, trials_a),
                       strata.arm_label_b(), ArmCounts(successes_b, trials_b));
}

ReversalReport detect_reversal(const StratifiedTable& strata, unsigned decimal_places) {
    ReversalReport report;
    for (const auto& [label, table] : strata.strata) {
        RateEntry entry = make_rate_entry(table, decimal_places);
        report.per_stratum_direction.push_back(sign_int(entry.rate_a - entry.rate_b));
        report.per_stratum_rates.emplace_back(label, std::move(entry));
    }

    const TwoArmTable pooled = pool(strata);
    report.pooled_rates = make_rate_entry(pooled, decimal_places);
    report.pooled_direction = sign_int(report.pooled_rates.rate_a - report.pooled_rates.rate_b);

    if (strata.strata.size() < 2) {
        report.reversal = false;
        report.note = "single stratum: pooled ordering cannot differ from the stratum ordering";
        return report;
    }

    const int first = report.per_stratum_direction.front();
    const bool uniform = first != 0 &&
                         std::all_of(report.per_stratum_direction.begin(),
                                     report.per_stratum_direction.end(),
                                     [first](int d) { return d == first; });
    report.reversal = uniform && report.pooled_direction == -first;
    return report;
}

bool reversal_condition(std::int64_t a1, std::int64_t b1, std::int64_t c1, std::int64_t d1,
                        std::int64_t a2, std::int64_t b2, std::int64_t c2, std::int64_t d2) {
    require(b1 >= 1 && d1 >= 1 && b2 >= 1 && d2 >= 1, "reversal_condition: denominators must be >= 1");
    require(a1 >= 0 && c1 >= 0 && a2 >= 0 && c2 >= 0, "reversal_condition: numerators must be >= 0");
    require(a1 <= b1 && c1 <= d1 && a2 <= b2 && c2 <= d2,
            "reversal_condition: numerators must not exceed denominators");

    const BigInt A1(a1), B1(b1), C1(c1), D1(d1), A2(a2), B2(b2), C2(c2), D2(d2);
    const bool first = A1 * D1 > C1 * B1;
    const bool second = A2 * D2 > C2 * B2;
    const bool flipped = (C1 + C2) * (B1 + B2) > (A1 + A2) * (D1 + D2);
    return first && second && flipped;
}

TestResult chi_squared(const TwoArmTable& table, bool yates_correction) {
    const std::int64_t a = table.arm_a.successes, b = table.arm_a.failures();
    const std::int64_t c = table.arm_b.successes, d = table.arm_b.failures();
    const std::int64_t n = table.grand_total();
    const std::int64_t row_a = a + b, row_b = c + d;
    const std::int64_t col_success = a + c, col_failure = b + d;
    if (row_a == 0 || row_b == 0 || col_success == 0 || col_failure == 0) {
        throw DegenerateTable("chi_squared: a table margin is zero");
    }

    // N (ad - bc)^2 / (row_a row_b col_s col_f), with the cross-product kept
    // exact so equal proportions give a statistic of exactly zero.
    const BigInt cross = BigInt(a) * BigInt(d) - BigInt(b) * BigInt(c);
    const BigInt denom = BigInt(row_a) * BigInt(row_b) * BigInt(col_success) * BigInt(col_failure);

    Rational numerator;
    if (yates_correction) {
        Rational adjusted = Rational(abs(cross)) - make_rational(n, 2);
        if (adjusted < 0) adjusted = 0;
        numerator = Rational(n) * adjusted * adjusted;
    } else {
        numerator = Rational(BigInt(n) * cross * cross);
    }

    TestResult result;
    result.method = TestMethod::pearson_chi_squared;
    result.statistic = to_double(numerator / Rational(denom));
    result.p_value = std::erfc(std::sqrt(*result.statistic / 2.0));
    return result;
}

TestResult fisher_exact(const TwoArmTable& table, FisherSide side) {
    const std::int64_t row_a = table.arm_a.trials;
    const std::int64_t row_b = table.arm_b.trials;
    const std::int64_t col_success = table.arm_a.successes + table.arm_b.successes;
    const std::int64_t col_failure = table.arm_a.failures() + table.arm_b.failures();
    const std::int64_t n = table.grand_total();
    if (col_success == 0 || col_failure == 0) {
        throw DegenerateTable("fisher_exact: a column margin is zero");
    }

    const auto lf = log_factorials(n);
    const auto log_choose = [&lf](std::int64_t m, std::int64_t k) {
        return lf[static_cast<std::size_t>(m)] - lf[static_cast<std::size_t>(k)] -
               lf[static_cast<std::size_t>(m - k)];
    };

    // Successes in arm A range over all tables with the observed margins.
    const std::int64_t k_min = std::max<std::int64_t>(0, col_success - row_b);
    const std::int64_t k_max = std::min(row_a, col_success);
    const double log_denominator = log_choose(n, col_success);
    const auto log_point = [&](std::int64_t k) {
        return log_choose(row_a, k) + log_choose(row_b, col_success - k) - log_denominator;
    };

    const std::int64_t observed = table.arm_a.successes;
    const double log_observed = log_point(observed);

    double p = 0.0;
    TestMethod method = TestMethod::fisher_exact_two_sided;
    switch (side) {
        case FisherSide::two_sided:
            // Relative tolerance 1e-12 on probabilities is additive in logs.
            for (std::int64_t k = k_min; k <= k_max; ++k) {
                const double lp = log_point(k);
                if (lp <= log_observed + 1e-12) p += std::exp(lp);
            }
            break;
        case FisherSide::less:
            method = TestMethod::fisher_exact_less;
            for (std::int64_t k = k_min; k <= observed; ++k) p += std::exp(log_point(k));
            break;
        case FisherSide::greater:
            method = TestMethod::fisher_exact_greater;
            for (std::int64_t k = observed; k <= k_max; ++k) p += std::exp(log_point(k));
            break;
    }

    TestResult result;
    result.method = method;
    result.statistic = std::nullopt;
    result.p_value = std::min(p, 1.0);
    return result;
}

Rational backdoor_adjust(const StratifiedTable& strata, std::string_view arm_label) {
    BigInt grand_total = 0;
    for (const auto& [label, table] : strata.strata) {
        grand_total += table.grand_total();
    }

    Rational adjusted = 0;
    for (const auto& [label, table] : strata.strata) {
        const Rational weight(BigInt(table.grand_total()), grand_total);
        adjusted += rate(table.arm(arm_label)) * weight;
    }
    return adjusted;
}

}  // namespace qparadox::contingency

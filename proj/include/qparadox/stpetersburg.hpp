#pragma once

#include <cstdint>
#include <optional>

namespace qparadox::stpetersburg {

// Coin-flip gamble where the payout doubles on every tail and pays out at the
// first head. Payouts may be truncated after a fixed number of rounds and/or
// capped by the house bankroll.
struct StPetersburgSpec {
    double base_payout = 1.0;
    std::optional<std::int64_t> max_rounds;     // nullopt: unbounded
    std::optional<double> house_bankroll;       // nullopt: uncapped
};

// Expected value with the game truncated at max_rounds. The no-heads event
// pays nothing by default; `pay_cap_on_no_heads` pays the final round's
// amount instead.
double truncated_ev(const StPetersburgSpec& spec, bool pay_cap_on_no_heads = false);

// Expected value with every payoff capped at the house bankroll, summed until
// the cap binds plus the geometric tail in closed form.
double bankroll_capped_ev(const StPetersburgSpec& spec);

// Expected log gain of buying in at `price`: sum over rounds of
// 2^-k [ln(wealth - price + payoff_k) - ln(wealth)], honoring the gamble's
// truncation and cap; the series stops when terms fall below 1e-15.
double expected_log_gain(double price, double wealth, const StPetersburgSpec& spec);

// The buy-in price a log-utility agent is indifferent at, found by bisection
// on (0, wealth) to an absolute tolerance of 1e-9. Throws NoRoot when no sign
// change exists in the bracket.
double log_utility_fair_price(double wealth, const StPetersburgSpec& spec);

}  // namespace qparadox::stpetersburg

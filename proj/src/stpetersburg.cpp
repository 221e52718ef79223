#include "qparadox/stpetersburg.hpp"

#include <cmath>
#include <stdexcept>

#include "qparadox/errors.hpp"

namespace qparadox::stpetersburg {

namespace {

constexpr double kTermFloor = 1e-15;
constexpr std::int64_t kHardRoundLimit = 1100;  // 2^-k underflows past here

void validate(const StPetersburgSpec& spec) {
    if (spec.base_payout <= 0.0) {
        throw std::invalid_argument("StPetersburgSpec: base payout must be positive");
    }
    if (spec.max_rounds && *spec.max_rounds < 1) {
        throw std::invalid_argument("StPetersburgSpec: max_rounds must be >= 1");
    }
    if (spec.house_bankroll && *spec.house_bankroll <= 0.0) {
        throw std::invalid_argument("StPetersburgSpec: house bankroll must be positive");
    }
}

}  // namespace

double truncated_ev(const StPetersburgSpec& spec, bool pay_cap_on_no_heads) {
    validate(spec);
    if (!spec.max_rounds) {
        throw std::invalid_argument("truncated_ev: max_rounds required (unbounded EV diverges)");
    }
    const auto n = *spec.max_rounds;
    // Each round contributes 2^-k * base * 2^(k-1) = base/2; the no-heads
    // event contributes another base/2 only under the payout variant.
    double ev = static_cast<double>(n) * spec.base_payout / 2.0;
    if (pay_cap_on_no_heads) ev += spec.base_payout / 2.0;
    return ev;
}

double bankroll_capped_ev(const StPetersburgSpec& spec) {
    validate(spec);
    if (!spec.house_bankroll) {
        throw std::invalid_argument("bankroll_capped_ev: house bankroll required");
    }
    const double bankroll = *spec.house_bankroll;
    if (bankroll < spec.base_payout) {
        throw std::invalid_argument("bankroll_capped_ev: bankroll must cover the base payout");
    }

    // Uncapped rounds each contribute base/2; once the doubling payoff
    // reaches the bankroll, the remaining geometric tail sums in closed form.
    double payoff = spec.base_payout;
    std::int64_t uncapped_rounds = 0;
    while (payoff < bankroll && uncapped_rounds < kHardRoundLimit) {
        ++uncapped_rounds;
        payoff *= 2.0;
    }
    return static_cast<double>(uncapped_rounds) * spec.base_payout / 2.0 +
           bankroll * std::ldexp(1.0, static_cast<int>(-uncapped_rounds));
}

double expected_log_gain(double price, double wealth, const StPetersburgSpec& spec) {
    validate(spec);
    if (wealth <= 0.0) throw std::invalid_argument("expected_log_gain: wealth must be positive");

    const double log_wealth = std::log(wealth);
    const double residue = wealth - price;

    double gain = 0.0;
    double probability = 0.5;
    double payoff = spec.base_payout;
    for (std::int64_t k = 1; k <= kHardRoundLimit; ++k) {
        const double paid = spec.house_bankroll ? std::min(payoff, *spec.house_bankroll) : payoff;
        const double term = probability * (std::log(residue + paid) - log_wealth);
        gain += term;

        if (spec.max_rounds && k == *spec.max_rounds) {
            // No heads within the horizon: the player walks away unpaid.
            gain += probability * (std::log(residue) - log_wealth);
            break;
        }
        // Terms decay geometrically once the payoff stops crossing the
        // stake (payoff above wealth, or pinned at the bankroll cap).
        const bool decaying =
            paid >= wealth || (spec.house_bankroll && paid >= *spec.house_bankroll);
        if (decaying && std::abs(term) < kTermFloor) break;

        probability /= 2.0;
        if (payoff < 1e300) payoff *= 2.0;  // beyond this the log term is dead
    }
    return gain;
}

double log_utility_fair_price(double wealth, const StPetersburgSpec& spec) {
    validate(spec);
    if (wealth <= 0.0) {
        throw std::invalid_argument("log_utility_fair_price: wealth must be positive");
    }

    constexpr double kPriceTolerance = 1e-9;
    double low = 0.0;
    double high = wealth * (1.0 - 1e-12);

    if (expected_log_gain(low, wealth, spec) <= 0.0) {
        throw NoRoot("log_utility_fair_price: expected log gain not positive at a free ticket");
    }
    if (expected_log_gain(high, wealth, spec) > 0.0) {
        throw NoRoot("log_utility_fair_price: expected log gain stays positive up to the full "
                     "wealth; fair price is not below wealth");
    }

    while (high - low > kPriceTolerance) {
        const double mid = (low + high) / 2.0;
        if (expected_log_gain(mid, wealth, spec) > 0.0) {
            low = mid;
        } else {
            high = mid;
        }
    }
    return (low + high) / 2.0;
}

}  // namespace qparadox::stpetersburg

#include "qparadox/prospect.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qparadox::prospect {

namespace {

constexpr double kNormTolerance = 1e-12;

void require(bool condition, const char* message) {
    if (!condition) throw std::invalid_argument(message);
}

}  // namespace

Gamble::Gamble(double win_payoff_, double loss_payoff_, double stated_win_chance_)
    : win_payoff(win_payoff_), loss_payoff(loss_payoff_), stated_win_chance(stated_win_chance_) {
    require(win_payoff > 0.0, "Gamble: win payoff must be positive");
    require(loss_payoff < 0.0, "Gamble: loss payoff must be negative");
    require(stated_win_chance >= 0.0 && stated_win_chance <= 1.0,
            "Gamble: stated win chance must lie in [0,1]");
}

ProspectState::ProspectState(double amplitude_loss_, double amplitude_win_)
    : amplitude_loss(amplitude_loss_), amplitude_win(amplitude_win_) {
    const double norm = amplitude_loss * amplitude_loss + amplitude_win * amplitude_win;
    require(std::abs(norm - 1.0) <= kNormTolerance, "ProspectState: amplitudes must be unit norm");
}

AcceptanceData::AcceptanceData(double accept_given_win_, double accept_given_loss_,
                               double accept_unknown_)
    : accept_given_win(accept_given_win_),
      accept_given_loss(accept_given_loss_),
      accept_unknown(accept_unknown_) {
    for (double rate : {accept_given_win, accept_given_loss, accept_unknown}) {
        require(rate >= 0.0 && rate <= 1.0, "AcceptanceData: rates must lie in [0,1]");
    }
}

std::pair<double, double> effect_eigenvalues(const EffectOperator& effect) {
    const double mean = (effect.diag_loss + effect.diag_win) / 2.0;
    const double half_gap = (effect.diag_loss - effect.diag_win) / 2.0;
    const double radius = std::sqrt(half_gap * half_gap + effect.off_diag * effect.off_diag);
    return {mean - radius, mean + radius};
}

bool effect_is_valid(const EffectOperator& effect, double tolerance) {
    const auto [lo, hi] = effect_eigenvalues(effect);
    return lo >= -tolerance && hi <= 1.0 + tolerance;
}

ProspectState reference_state(const Gamble& gamble) {
    // Loss probability W/(W-L) zeroes the expected payoff; each probability
    // is computed by its own division so ratios like 2/3 and 1/3 come out
    // exactly.
    const double spread = gamble.win_payoff - gamble.loss_payoff;
    const double p_loss = gamble.win_payoff / spread;
    const double p_win = -gamble.loss_payoff / spread;
    return ProspectState(std::sqrt(p_loss), std::sqrt(p_win));
}

double expected_utility(const ProspectState& state, const Gamble& gamble) {
    return state.probability_loss() * gamble.loss_payoff +
           state.probability_win() * gamble.win_payoff;
}

ProspectState observe_reset(const ProspectState& /*state*/, const Gamble& gamble) {
    return reference_state(gamble);
}

ProspectState evolve_unrevealed(const ProspectState& state, double theta_per_round,
                                std::int64_t rounds) {
    require(theta_per_round >= 0.0, "evolve_unrevealed: theta_per_round must be >= 0");
    require(rounds >= 0, "evolve_unrevealed: rounds must be >= 0");
    const double c = std::cos(theta_per_round);
    const double s = std::sin(theta_per_round);
    double a_loss = state.amplitude_loss;
    double a_win = state.amplitude_win;
    for (std::int64_t i = 0; i < rounds; ++i) {
        const double next_loss = a_loss * c + a_win * s;
        const double next_win = a_win * c - a_loss * s;
        a_loss = next_loss;
        a_win = next_win;
    }
    return ProspectState(a_loss, a_win);
}

double angle_to_loss_axis(const ProspectState& state) {
    return std::acos(std::clamp(state.amplitude_loss, -1.0, 1.0));
}

double acceptance_probability(const ProspectState& state, const EffectOperator& effect) {
    if (!effect_is_valid(effect)) {
        const auto [lo, hi] = effect_eigenvalues(effect);
        std::ostringstream message;
        message << "acceptance_probability: effect eigenvalues [" << lo << ", " << hi
                << "] fall outside [0,1]";
        throw InvalidEffect(message.str());
    }
    const double a_l = state.amplitude_loss;
    const double a_w = state.amplitude_win;
    const double value = effect.diag_loss * a_l * a_l + effect.diag_win * a_w * a_w +
                         2.0 * effect.off_diag * a_l * a_w;
    // 0 <= E <= I bounds the quadratic form; clamp only floating residue.
    return std::clamp(value, 0.0, 1.0);
}

EffectOperator calibrate_effect(const AcceptanceData& data, const ProspectState& reference) {
    require(reference.amplitude_loss > 0.0 && reference.amplitude_win > 0.0,
            "calibrate_effect: reference amplitudes must both be positive");
    const double a_l = reference.amplitude_loss;
    const double a_w = reference.amplitude_win;

    EffectOperator effect;
    effect.diag_loss = data.accept_given_loss;
    effect.diag_win = data.accept_given_win;
    effect.off_diag = (data.accept_unknown - effect.diag_loss * a_l * a_l -
                       effect.diag_win * a_w * a_w) /
                      (2.0 * a_l * a_w);

    if (!effect_is_valid(effect)) {
        const auto [lo, hi] = effect_eigenvalues(effect);
        std::ostringstream message;
        message << "calibrate_effect: eigenvalues [" << lo << ", " << hi
                << "] violate 0 <= E <= I";
        throw InfeasibleCalibration(message.str(), lo, hi);
    }
    return effect;
}

DisjunctionReport disjunction_report(const Gamble& gamble, const AcceptanceData& data) {
    DisjunctionReport report{gamble, data, reference_state(gamble)};
    report.classical_low = std::min(data.accept_given_win, data.accept_given_loss);
    report.classical_high = std::max(data.accept_given_win, data.accept_given_loss);
    report.interference_free_unknown =
        data.accept_given_loss * report.reference.probability_loss() +
        data.accept_given_win * report.reference.probability_win();
    report.effect_present = data.accept_unknown < report.classical_low;

    try {
        report.effect = calibrate_effect(data, report.reference);
        const auto [lo, hi] = effect_eigenvalues(*report.effect);
        report.eigen_min = lo;
        report.eigen_max = hi;
    } catch (const InfeasibleCalibration& infeasible) {
        report.infeasibility = infeasible.what();
        report.eigen_min = infeasible.eigen_min;
        report.eigen_max = infeasible.eigen_max;
    }
    return report;
}

}  // namespace qparadox::prospect

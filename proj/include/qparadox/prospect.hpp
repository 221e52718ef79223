#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "qparadox/errors.hpp"

namespace qparadox::prospect {

// A win/lose gamble. The stated win chance is informational only; the model
// works from the payoffs.
struct Gamble {
    Gamble(double win_payoff_, double loss_payoff_, double stated_win_chance_ = 0.5);

    double win_payoff;
    double loss_payoff;
    double stated_win_chance;
};

// Two-outcome belief over the gamble, ordered loss then win.
struct ProspectState {
    ProspectState(double amplitude_loss_, double amplitude_win_);

    double amplitude_loss;
    double amplitude_win;

    double probability_loss() const { return amplitude_loss * amplitude_loss; }
    double probability_win() const { return amplitude_win * amplitude_win; }
};

// Observed acceptance rates: after a known win, after a known loss, and with
// the first outcome unrevealed.
struct AcceptanceData {
    AcceptanceData(double accept_given_win_, double accept_given_loss_, double accept_unknown_);

    double accept_given_win;
    double accept_given_loss;
    double accept_unknown;
};

// Symmetric 2x2 acceptance effect over the (loss, win) basis. Valid when
// 0 <= E <= I, i.e. both eigenvalues lie in [0,1]; the off-diagonal entry is
// the interference term.
struct EffectOperator {
    double diag_loss = 0.0;
    double diag_win = 0.0;
    double off_diag = 0.0;
};

// (min, max) eigenvalue of the symmetric effect matrix.
std::pair<double, double> effect_eigenvalues(const EffectOperator& effect);

bool effect_is_valid(const EffectOperator& effect, double tolerance = 1e-12);

// The superposition whose expected payoff is exactly zero: loss probability
// W / (W - L).
ProspectState reference_state(const Gamble& gamble);

// probability_loss * L + probability_win * W.
double expected_utility(const ProspectState& state, const Gamble& gamble);

// Learning the outcome resets the belief to the zero-utility reference,
// whatever the current state.
ProspectState observe_reset(const ProspectState& state, const Gamble& gamble);

// Plays with the outcome unrevealed rotate the state toward the loss basis
// vector, one rotation of `theta_per_round` per round.
ProspectState evolve_unrevealed(const ProspectState& state, double theta_per_round,
                                std::int64_t rounds);

// Rotation angle from `state` to the loss axis: arccos(amplitude_loss).
double angle_to_loss_axis(const ProspectState& state);

// <s|E|s>. Throws InvalidEffect if the operator fails 0 <= E <= I.
double acceptance_probability(const ProspectState& state, const EffectOperator& effect);

// Anchors the diagonal at the known-outcome acceptance rates and solves the
// off-diagonal so the reference state reproduces the unknown-outcome rate.
// Throws InfeasibleCalibration (with eigenvalue bounds) when the result
// leaves 0 <= E <= I.
EffectOperator calibrate_effect(const AcceptanceData& data, const ProspectState& reference);

struct DisjunctionReport {
    Gamble gamble;
    AcceptanceData data;
    ProspectState reference;
    // Classical mixtures of the known-outcome rates span this interval.
    double classical_low = 0.0;
    double classical_high = 0.0;
    // Acceptance at the reference with zero interference.
    double interference_free_unknown = 0.0;
    // Strictly below both known-outcome rates.
    bool effect_present = false;
    std::optional<EffectOperator> effect;
    std::optional<std::string> infeasibility;
    double eigen_min = 0.0;
    double eigen_max = 0.0;
};

// Full disjunction analysis; calibration infeasibility is reported as a
// field, not thrown.
DisjunctionReport disjunction_report(const Gamble& gamble, const AcceptanceData& data);

}  // namespace qparadox::prospect

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qparadox/app.hpp"
#include "qparadox/belief.hpp"
#include "qparadox/contingency.hpp"
#include "qparadox/errors.hpp"
#include "qparadox/prospect.hpp"
#include "qparadox/rational.hpp"
#include "qparadox/stpetersburg.hpp"

namespace py = pybind11;

namespace {

py::object big_to_pyint(const qparadox::BigInt& value) {
    return py::module_::import("builtins").attr("int")(py::str(value.str()));
}

void bind_rational(py::module_& m) {
    py::class_<qparadox::Rational>(m, "Rational", "Exact rational number")
        .def(py::init([](std::int64_t num, std::int64_t den) {
                 return qparadox::make_rational(num, den);
             }),
             py::arg("numerator"), py::arg("denominator") = 1)
        .def_property_readonly("numerator",
                               [](const qparadox::Rational& r) { return big_to_pyint(numerator(r)); })
        .def_property_readonly("denominator",
                               [](const qparadox::Rational& r) { return big_to_pyint(denominator(r)); })
        .def("to_decimal", &qparadox::decimal_string, py::arg("places") = 3)
        .def("__float__", [](const qparadox::Rational& r) { return qparadox::to_double(r); })
        .def("__str__", [](const qparadox::Rational& r) { return qparadox::fraction_string(r); })
        .def("__repr__",
             [](const qparadox::Rational& r) {
                 return "Rational(" + qparadox::fraction_string(r) + ")";
             })
        .def("__eq__",
             [](const qparadox::Rational& a, const qparadox::Rational& b) { return a == b; },
             py::is_operator())
        .def("__lt__",
             [](const qparadox::Rational& a, const qparadox::Rational& b) { return a < b; },
             py::is_operator());
    m.def("rational_from_decimal",
          [](const std::string& text) { return qparadox::rational_from_decimal(text); },
          py::arg("text"));
}

void bind_contingency(py::module_& m) {
    using namespace qparadox::contingency;

    py::class_<ArmCounts>(m, "ArmCounts")
        .def(py::init<std::int64_t, std::int64_t>(), py::arg("successes"), py::arg("trials"))
        .def_readonly("successes", &ArmCounts::successes)
        .def_readonly("trials", &ArmCounts::trials)
        .def("failures", &ArmCounts::failures);

    py::class_<TwoArmTable>(m, "TwoArmTable")
        .def(py::init<std::string, ArmCounts, std::string, ArmCounts>(), py::arg("label_a"),
             py::arg("arm_a"), py::arg("label_b"), py::arg("arm_b"))
        .def_readonly("label_a", &TwoArmTable::label_a)
        .def_readonly("label_b", &TwoArmTable::label_b)
        .def_readonly("arm_a", &TwoArmTable::arm_a)
        .def_readonly("arm_b", &TwoArmTable::arm_b)
        .def("arm", &TwoArmTable::arm, py::arg("label"))
        .def("grand_total", &TwoArmTable::grand_total);

    py::class_<StratifiedTable>(m, "StratifiedTable")
        .def(py::init<std::vector<std::pair<std::string, TwoArmTable>>>(), py::arg("strata"))
        .def_readonly("strata", &StratifiedTable::strata);

    py::enum_<TestMethod>(m, "TestMethod")
        .value("pearson_chi_squared", TestMethod::pearson_chi_squared)
        .value("fisher_exact_two_sided", TestMethod::fisher_exact_two_sided)
        .value("fisher_exact_less", TestMethod::fisher_exact_less)
        .value("fisher_exact_greater", TestMethod::fisher_exact_greater);

    py::enum_<FisherSide>(m, "FisherSide")
        .value("two_sided", FisherSide::two_sided)
        .value("less", FisherSide::less)
        .value("greater", FisherSide::greater);

    py::class_<TestResult>(m, "TestResult")
        .def_readonly("statistic", &TestResult::statistic)
        .def_readonly("p_value", &TestResult::p_value)
        .def_readonly("method", &TestResult::method);

    py::class_<RateEntry>(m, "RateEntry")
        .def_readonly("rate_a", &RateEntry::rate_a)
        .def_readonly("rate_b", &RateEntry::rate_b)
        .def_readonly("decimal_a", &RateEntry::decimal_a)
        .def_readonly("decimal_b", &RateEntry::decimal_b);

    py::class_<ReversalReport>(m, "ReversalReport")
        .def_readonly("per_stratum_direction", &ReversalReport::per_stratum_direction)
        .def_readonly("pooled_direction", &ReversalReport::pooled_direction)
        .def_readonly("reversal", &ReversalReport::reversal)
        .def_readonly("per_stratum_rates", &ReversalReport::per_stratum_rates)
        .def_readonly("pooled_rates", &ReversalReport::pooled_rates)
        .def_readonly("note", &ReversalReport::note);

    m.def("rate", &rate, py::arg("counts"), "Exact success proportion");
    m.def("pool", &pool, py::arg("strata"), "Sum counts across strata per arm");
    m.def("detect_reversal", &detect_reversal, py::arg("strata"), py::arg("decimal_places") = 3);
    m.def("reversal_condition", &reversal_condition, py::arg("a1"), py::arg("b1"), py::arg("c1"),
          py::arg("d1"), py::arg("a2"), py::arg("b2"), py::arg("c2"), py::arg("d2"));
    m.def("chi_squared", &chi_squared, py::arg("table"), py::arg("yates_correction") = false);
    m.def("fisher_exact", &fisher_exact, py::arg("table"),
          py::arg("side") = FisherSide::two_sided);
    m.def("backdoor_adjust", &backdoor_adjust, py::arg("strata"), py::arg("arm_label"));
}

void bind_belief(py::module_& m) {
    using namespace qparadox::belief;

    py::class_<CellCounts>(m, "CellCounts")
        .def(py::init([](std::int64_t successes, std::int64_t trials) {
                 return CellCounts{successes, trials};
             }),
             py::arg("successes"), py::arg("trials"))
        .def_readonly("successes", &CellCounts::successes)
        .def_readonly("trials", &CellCounts::trials);

    py::class_<RawFractionGrid>(m, "RawFractionGrid")
        .def_static(
            "from_decimals",
            [](std::vector<std::string> rows, std::vector<std::string> cols,
               const std::vector<std::vector<double>>& fractions) {
                return RawFractionGrid::from_decimals(std::move(rows), std::move(cols), fractions);
            },
            py::arg("rows"), py::arg("cols"), py::arg("fractions"))
        .def_static(
            "from_counts",
            [](std::vector<std::string> rows, std::vector<std::string> cols,
               const std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>>& counts) {
                std::vector<std::vector<CellCounts>> cells;
                for (const auto& row : counts) {
                    std::vector<CellCounts> out;
                    for (const auto& [successes, trials] : row) {
                        out.push_back(CellCounts{successes, trials});
                    }
                    cells.push_back(std::move(out));
                }
                return RawFractionGrid::from_counts(std::move(rows), std::move(cols),
                                                    std::move(cells));
            },
            py::arg("rows"), py::arg("cols"), py::arg("counts"))
        .def_readonly("rows", &RawFractionGrid::rows)
        .def_readonly("cols", &RawFractionGrid::cols)
        .def_readonly("fractions", &RawFractionGrid::fractions);

    py::class_<JointOutcomeTable>(m, "JointOutcomeTable")
        .def_static(
            "from_decimals",
            [](std::vector<std::string> rows, std::vector<std::string> cols,
               const std::vector<std::vector<double>>& probabilities) {
                std::vector<std::vector<qparadox::Rational>> exact;
                for (const auto& row : probabilities) {
                    std::vector<qparadox::Rational> out;
                    for (double p : row) out.push_back(qparadox::rational_from_double(p));
                    exact.push_back(std::move(out));
                }
                return JointOutcomeTable(std::move(rows), std::move(cols), std::move(exact));
            },
            py::arg("rows"), py::arg("cols"), py::arg("probabilities"))
        .def_readonly("rows", &JointOutcomeTable::rows)
        .def_readonly("cols", &JointOutcomeTable::cols)
        .def_readonly("probabilities", &JointOutcomeTable::probabilities)
        .def("at", &JointOutcomeTable::at, py::arg("row"), py::arg("col"));

    py::class_<BeliefState>(m, "BeliefState")
        .def(py::init<std::vector<std::string>, std::vector<double>>(), py::arg("labels"),
             py::arg("amplitudes"))
        .def_readonly("labels", &BeliefState::labels)
        .def_readonly("amplitudes", &BeliefState::amplitudes)
        .def("norm_squared", &BeliefState::norm_squared)
        .def("amplitude", &BeliefState::amplitude, py::arg("label"));

    py::class_<QuantumTree>(m, "QuantumTree")
        .def_readonly("rows", &QuantumTree::rows)
        .def_readonly("cols", &QuantumTree::cols)
        .def_readonly("marginals", &QuantumTree::marginals)
        .def_readonly("conditionals", &QuantumTree::conditionals);

    py::class_<SurveyOrderData>(m, "SurveyOrderData")
        .def(py::init([](std::string item_a, std::string item_b, double rate_a_when_a_first,
                         double rate_b_when_a_first, double rate_a_when_b_first,
                         double rate_b_when_b_first) {
                 SurveyOrderData data;
                 data.item_a = std::move(item_a);
                 data.item_b = std::move(item_b);
                 data.rate_a_when_a_first = rate_a_when_a_first;
                 data.rate_b_when_a_first = rate_b_when_a_first;
                 data.rate_a_when_b_first = rate_a_when_b_first;
                 data.rate_b_when_b_first = rate_b_when_b_first;
                 return data;
             }),
             py::arg("item_a"), py::arg("item_b"), py::arg("rate_a_when_a_first"),
             py::arg("rate_b_when_a_first"), py::arg("rate_a_when_b_first"),
             py::arg("rate_b_when_b_first"));

    py::class_<OrderShifts>(m, "OrderShifts")
        .def_readonly("item_a", &OrderShifts::item_a)
        .def_readonly("item_b", &OrderShifts::item_b);

    m.def("normalize_fractions", &normalize_fractions, py::arg("grid"));
    m.def("state_from_joint", &state_from_joint, py::arg("joint"));
    m.def("build_tree", &build_tree, py::arg("joint"));
    m.def("stage1_marginal", &stage1_marginal, py::arg("joint"), py::arg("row"));
    m.def("order_effect", &order_effect, py::arg("joint"), py::arg("first"), py::arg("second"));
    m.def("independence_defect", &independence_defect, py::arg("joint"), py::arg("label"));
    m.def("measure", &measure, py::arg("state"), py::arg("outcome"));
    m.def("rotate2", &rotate2, py::arg("state"), py::arg("theta"));
    m.def("survey_order_shift", &survey_order_shift, py::arg("data"));
}

void bind_prospect(py::module_& m) {
    using namespace qparadox::prospect;

    py::class_<Gamble>(m, "Gamble")
        .def(py::init<double, double, double>(), py::arg("win_payoff"), py::arg("loss_payoff"),
             py::arg("stated_win_chance") = 0.5)
        .def_readonly("win_payoff", &Gamble::win_payoff)
        .def_readonly("loss_payoff", &Gamble::loss_payoff)
        .def_readonly("stated_win_chance", &Gamble::stated_win_chance);

    py::class_<ProspectState>(m, "ProspectState")
        .def(py::init<double, double>(), py::arg("amplitude_loss"), py::arg("amplitude_win"))
        .def_readonly("amplitude_loss", &ProspectState::amplitude_loss)
        .def_readonly("amplitude_win", &ProspectState::amplitude_win)
        .def("probability_loss", &ProspectState::probability_loss)
        .def("probability_win", &ProspectState::probability_win);

    py::class_<AcceptanceData>(m, "AcceptanceData")
        .def(py::init<double, double, double>(), py::arg("accept_given_win"),
             py::arg("accept_given_loss"), py::arg("accept_unknown"))
        .def_readonly("accept_given_win", &AcceptanceData::accept_given_win)
        .def_readonly("accept_given_loss", &AcceptanceData::accept_given_loss)
        .def_readonly("accept_unknown", &AcceptanceData::accept_unknown);

    py::class_<EffectOperator>(m, "EffectOperator")
        .def(py::init([](double diag_loss, double diag_win, double off_diag) {
                 return EffectOperator{diag_loss, diag_win, off_diag};
             }),
             py::arg("diag_loss"), py::arg("diag_win"), py::arg("off_diag") = 0.0)
        .def_readonly("diag_loss", &EffectOperator::diag_loss)
        .def_readonly("diag_win", &EffectOperator::diag_win)
        .def_readonly("off_diag", &EffectOperator::off_diag);

    py::class_<DisjunctionReport>(m, "DisjunctionReport")
        .def_readonly("gamble", &DisjunctionReport::gamble)
        .def_readonly("data", &DisjunctionReport::data)
        .def_readonly("reference", &DisjunctionReport::reference)
        .def_readonly("classical_low", &DisjunctionReport::classical_low)
        .def_readonly("classical_high", &DisjunctionReport::classical_high)
        .def_readonly("interference_free_unknown", &DisjunctionReport::interference_free_unknown)
        .def_readonly("effect_present", &DisjunctionReport::effect_present)
        .def_readonly("effect", &DisjunctionReport::effect)
        .def_readonly("infeasibility", &DisjunctionReport::infeasibility)
        .def_readonly("eigen_min", &DisjunctionReport::eigen_min)
        .def_readonly("eigen_max", &DisjunctionReport::eigen_max);

    m.def("effect_eigenvalues", &effect_eigenvalues, py::arg("effect"));
    m.def("effect_is_valid", &effect_is_valid, py::arg("effect"), py::arg("tolerance") = 1e-12);
    m.def("reference_state", &reference_state, py::arg("gamble"));
    m.def("expected_utility", &expected_utility, py::arg("state"), py::arg("gamble"));
    m.def("observe_reset", &observe_reset, py::arg("state"), py::arg("gamble"));
    m.def("evolve_unrevealed", &evolve_unrevealed, py::arg("state"), py::arg("theta_per_round"),
          py::arg("rounds"));
    m.def("angle_to_loss_axis", &angle_to_loss_axis, py::arg("state"));
    m.def("acceptance_probability", &acceptance_probability, py::arg("state"), py::arg("effect"));
    m.def("calibrate_effect", &calibrate_effect, py::arg("data"), py::arg("reference"));
    m.def("disjunction_report", &disjunction_report, py::arg("gamble"), py::arg("data"));
}

void bind_stpetersburg(py::module_& m) {
    using namespace qparadox::stpetersburg;

    py::class_<StPetersburgSpec>(m, "StPetersburgSpec")
        .def(py::init([](double base, std::optional<std::int64_t> max_rounds,
                         std::optional<double> bankroll) {
                 StPetersburgSpec spec;
                 spec.base_payout = base;
                 spec.max_rounds = max_rounds;
                 spec.house_bankroll = bankroll;
                 return spec;
             }),
             py::arg("base_payout") = 1.0, py::arg("max_rounds") = std::nullopt,
             py::arg("house_bankroll") = std::nullopt)
        .def_readonly("base_payout", &StPetersburgSpec::base_payout)
        .def_readonly("max_rounds", &StPetersburgSpec::max_rounds)
        .def_readonly("house_bankroll", &StPetersburgSpec::house_bankroll);

    m.def("truncated_ev", &truncated_ev, py::arg("spec"), py::arg("pay_cap_on_no_heads") = false);
    m.def("bankroll_capped_ev", &bankroll_capped_ev, py::arg("spec"));
    m.def("expected_log_gain", &expected_log_gain, py::arg("price"), py::arg("wealth"),
          py::arg("spec"));
    m.def("log_utility_fair_price", &log_utility_fair_price, py::arg("wealth"), py::arg("spec"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Probability-reversal detection and quantum belief modeling";

    const auto error = py::register_exception<qparadox::Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<qparadox::DegenerateTable>(m, "DegenerateTable", error);
    py::register_exception<qparadox::LabelMismatch>(m, "LabelMismatch", error);
    py::register_exception<qparadox::DimensionError>(m, "DimensionError", error);
    py::register_exception<qparadox::ZeroMarginal>(m, "ZeroMarginal", error);
    py::register_exception<qparadox::AllZero>(m, "AllZero", error);
    py::register_exception<qparadox::InvalidEffect>(m, "InvalidEffect", error);
    py::register_exception<qparadox::InfeasibleCalibration>(m, "InfeasibleCalibration", error);
    py::register_exception<qparadox::NoRoot>(m, "NoRoot", error);
    py::register_exception<qparadox::ParseError>(m, "ParseError", error);
    py::register_exception<qparadox::ArityError>(m, "ArityError", error);

    bind_rational(m);

    auto contingency = m.def_submodule("contingency", "Stratified 2x2 analysis");
    bind_contingency(contingency);

    auto belief = m.def_submodule("belief", "Belief states and quantum trees");
    bind_belief(belief);

    auto prospect = m.def_submodule("prospect", "Quantum prospect model");
    bind_prospect(prospect);

    auto stpetersburg = m.def_submodule("stpetersburg", "St. Petersburg valuations");
    bind_stpetersburg(stpetersburg);

    m.def(
        "parse_stratified_csv",
        [](const std::string& path) { return qparadox::cli::parse_stratified_csv(path); },
        py::arg("path"), "Load a stratum,arm,successes,trials CSV");
}

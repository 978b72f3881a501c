#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "analytic.hpp"
#include "errors.hpp"
#include "params.hpp"
#include "shuffle.hpp"
#include "test_support.hpp"

using namespace zeno;
using testsupport::rel_err;

namespace {
const PhysicalParams fig1_params(0.1, 0.5);
const FitWindow full_window{0.0, 5.0};
}

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(MeasurementSchedule(0.0, 5.0), validation_error);
    CHECK_THROWS_AS(MeasurementSchedule(-0.1, 5.0), validation_error);
    CHECK_THROWS_AS(MeasurementSchedule(0.1, 0.0), validation_error);
    CHECK_THROWS_AS(MeasurementSchedule(0.1, 0.05), validation_error);   // < delta_t
    CHECK_THROWS_AS(MeasurementSchedule(0.1, 5.0, 0.2), validation_error);  // > delta_t
    CHECK_THROWS_AS(MeasurementSchedule(0.1, 5.0, 0.0), validation_error);
    CHECK_NOTHROW(MeasurementSchedule(0.1, 5.0, 0.1));  // equality allowed
}

TEST_CASE("regime classification against the characteristic times") {
    const DerivedScales s = derive_scales(fig1_params);

    CHECK(classify_regime(s, 1.0).label == ShuffleRegime::pure_anti_zeno);
    CHECK(classify_regime(s, 0.01).label == ShuffleRegime::zeno);
    CHECK(classify_regime(s, 0.06).label == ShuffleRegime::crossover_zeno);
    // 0.1 sits above tau_inflx ~ 0.0707, below tau_Z ~ 0.1414
    CHECK(classify_regime(s, 0.1).label == ShuffleRegime::convex_anti_zeno);

    // boundary conventions
    CHECK(classify_regime(s, s.tau_zeno).label == ShuffleRegime::pure_anti_zeno);
    CHECK(classify_regime(s, s.tau_inflx).label == ShuffleRegime::crossover_zeno);
    CHECK(classify_regime(s, s.tau).label == ShuffleRegime::crossover_zeno);
    CHECK(classify_regime(s, std::nextafter(s.tau, 0.0)).label == ShuffleRegime::zeno);

    CHECK_THROWS_AS(classify_regime(s, 0.0), validation_error);

    // totality: a dense scan maps every interval to exactly one label
    for (double dt = 1e-4; dt < 1.0; dt *= 1.07) {
        const auto label = classify_regime(s, dt).label;
        const bool valid = label == ShuffleRegime::zeno ||
                           label == ShuffleRegime::crossover_zeno ||
                           label == ShuffleRegime::convex_anti_zeno ||
                           label == ShuffleRegime::pure_anti_zeno;
        CHECK(valid);
    }

    const RegimeLabel label = classify_regime(s, 0.06);
    CHECK(label.tau == s.tau);
    CHECK(label.tau_inflx == s.tau_inflx);
    CHECK(label.tau_zeno == s.tau_zeno);
}

TEST_CASE("envelope rates reproduce the reference decay constants") {
    const DerivedScales s = derive_scales(fig1_params);
    CHECK(rel_err(envelope_rate_amplitude(s, 1.0), 25.0) < 1e-12);
    CHECK(rel_err(envelope_rate_amplitude(s, 0.1), 2.5) < 1e-12);
    CHECK(rel_err(envelope_rate_amplitude(s, 0.01), 0.25) < 1e-12);
    CHECK(envelope_rate(s, 0.01) == 0.01 / (s.tau_zeno * s.tau_zeno));
}

TEST_CASE("envelope rate is linear in delta_t and the trace starts at 1") {
    const DerivedScales s = derive_scales(fig1_params);
    for (const double dt : {0.005, 0.02, 0.08}) {
        CHECK(rel_err(envelope_rate(s, 3.0 * dt), 3.0 * envelope_rate(s, dt)) < 1e-13);
        CHECK(envelope_rate(s, dt) == dt / (s.tau_zeno * s.tau_zeno));
    }
    const MeasurementSchedule schedule(0.01, 1.0);
    const CorrelationTrace env = envelope_trace(fig1_params, schedule);
    CHECK(env.values.front() == std::complex<double>(1.0, 0.0));
    CHECK(env.kind == TraceKind::envelope);
}

TEST_CASE("shuffled survival: product law and segment structure") {
    const MeasurementSchedule schedule(0.1, 5.0);

    // before the first measurement nothing happened yet
    for (const double t : {0.0, 0.01, 0.05, 0.09}) {
        CHECK(shuffled_survival(fig1_params, schedule, t) ==
              survival_unperturbed(fig1_params, t));
    }

    // at the instants the value is exactly the power of the one-interval survival
    const double p_dt = survival_unperturbed(fig1_params, schedule.delta_t());
    const auto n_max = static_cast<long long>(5.0 / schedule.delta_t());
    for (long long n = 1; n <= n_max; ++n) {
        const double t = static_cast<double>(n) * schedule.delta_t();
        CHECK(shuffled_survival(fig1_params, schedule, t) ==
              std::pow(p_dt, static_cast<double>(n)));
    }

    CHECK_THROWS_AS(shuffled_survival(fig1_params, schedule, -0.01), validation_error);
    CHECK_THROWS_AS(shuffled_survival(fig1_params, schedule, 5.01), validation_error);
}

TEST_CASE("perturbed trace: piecewise copies of the first segment") {
    const MeasurementSchedule schedule(1.0, 5.0, 1e-3);
    const CorrelationTrace trace = shuffled_trace(fig1_params, schedule);

    CHECK(trace.values.front() == std::complex<double>(1.0, 0.0));
    for (const auto& value : trace.values) CHECK(std::abs(value) <= 1.0 + 1e-15);
    for (std::size_t i = 1; i < trace.times.size(); ++i) {
        CHECK(trace.times[i] > trace.times[i - 1]);
    }

    const double c_dt = correlation_modulus(fig1_params, schedule.delta_t());
    for (const long long n : {1LL, 2LL, 4LL}) {
        for (const double s : {0.0, 0.2, 0.5, 0.9}) {
            const double t = static_cast<double>(n) * schedule.delta_t() + s;
            const auto value = shuffled_correlation(fig1_params, schedule, t);
            const double expected = std::pow(c_dt, static_cast<double>(n)) *
                                    correlation_modulus(fig1_params, s);
            CHECK(rel_err(std::abs(value), expected) < 1e-13);
        }
    }

    // post-measurement value right at the instants
    for (const long long n : {1LL, 3LL, 5LL}) {
        const double t = static_cast<double>(n) * schedule.delta_t();
        const auto value = shuffled_correlation(fig1_params, schedule, t);
        CHECK(std::abs(value) == std::pow(c_dt, static_cast<double>(n)));
    }
}

TEST_CASE("sampling refinement keeps shared sample points bit-identical") {
    const MeasurementSchedule coarse(0.1, 2.0, 1e-3);
    const MeasurementSchedule fine(0.1, 2.0, 5e-4);
    const CorrelationTrace trace_coarse = shuffled_trace(fig1_params, coarse);
    const CorrelationTrace trace_fine = shuffled_trace(fig1_params, fine);
    REQUIRE(trace_fine.times.size() == 2 * trace_coarse.times.size() - 1);
    for (std::size_t i = 0; i < trace_coarse.times.size(); ++i) {
        CHECK(trace_coarse.times[i] == trace_fine.times[2 * i]);
        CHECK(trace_coarse.values[i] == trace_fine.values[2 * i]);
    }
}

TEST_CASE("frequent measurements ride their exponential envelope") {
    // the cited convergence case: 2 % agreement for delta_t = 0.01 up to t = 5
    const DerivedScales s = derive_scales(fig1_params);
    {
        const MeasurementSchedule schedule(0.01, 5.0);
        const CorrelationTrace trace = shuffled_trace(fig1_params, schedule);
        const double rate = envelope_rate_amplitude(s, schedule.delta_t());
        double worst = 0.0;
        for (std::size_t i = 0; i < trace.times.size(); ++i) {
            const double deviation =
                std::abs(std::abs(trace.values[i]) / std::exp(-rate * trace.times[i]) - 1.0);
            worst = std::max(worst, deviation);
        }
        CHECK(worst <= 0.02);
    }

    // agreement improves monotonically as delta_t shrinks
    double previous = 1e9;
    for (const double dt : {0.04, 0.02, 0.01, 0.005}) {
        const MeasurementSchedule schedule(dt, 5.0);
        const CorrelationTrace trace = shuffled_trace(fig1_params, schedule);
        const double rate = envelope_rate_amplitude(s, dt);
        double worst = 0.0;
        for (std::size_t i = 0; i < trace.times.size(); ++i) {
            const double deviation =
                std::abs(std::abs(trace.values[i]) / std::exp(-rate * trace.times[i]) - 1.0);
            worst = std::max(worst, deviation);
        }
        CHECK(worst < previous);
        previous = worst;
    }
}

TEST_CASE("exponential fit recovers a pure exponential") {
    const std::vector<double> times = uniform_time_grid(5.0, 1e-3);
    std::vector<double> values(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        values[i] = std::exp(-0.731 * times[i]);
    }
    const double fitted = fit_exponential(times, values, {0.0, 5.0});
    CHECK(rel_err(fitted, 0.731) < 1e-9);

    // deterministic: repeated fits give the identical double
    CHECK(fit_exponential(times, values, {0.0, 5.0}) == fitted);
}

TEST_CASE("fit window validation") {
    const std::vector<double> times = {0.0, 0.1, 0.2, 0.3};
    const std::vector<double> values = {1.0, 0.9, 0.8, 0.7};
    CHECK_THROWS_AS(fit_exponential(times, values, {0.0, 0.15}), validation_error);
    CHECK_THROWS_AS(fit_exponential(times, values, {2.0, 3.0}), validation_error);
    CHECK_THROWS_AS(fit_exponential(times, values, {0.3, 0.0}), validation_error);
    CHECK_NOTHROW(fit_exponential(times, values, {0.0, 0.3}));
}

TEST_CASE("fitted rates for the reference schedules") {
    // frequent measurements: fit lands on the estimate
    {
        const MeasurementSchedule schedule(0.01, 5.0);
        const CorrelationTrace trace = shuffled_trace(fig1_params, schedule);
        const double fitted = fit_exponential(trace, full_window);
        CHECK(fitted == doctest::Approx(0.249).epsilon(0.01));
        CHECK(fitted >= 0.237);
        CHECK(fitted <= 0.262);
        CHECK(std::abs(fitted - 0.25) / 0.25 <= 0.05);
        CHECK(std::abs(fitted - 0.248597) < 1e-4);
    }
    // sparse measurements: fit diverges far below the estimate
    {
        const MeasurementSchedule schedule(1.0, 5.0);
        const CorrelationTrace trace = shuffled_trace(fig1_params, schedule);
        const double fitted = fit_exponential(trace, full_window);
        const double estimated =
            envelope_rate_amplitude(derive_scales(fig1_params), 1.0);
        CHECK(fitted / estimated < 0.1);
        CHECK(std::abs(fitted - 1.365898) < 1e-3);
    }
    // intermediate case for the record
    {
        const MeasurementSchedule schedule(0.1, 5.0);
        const CorrelationTrace trace = shuffled_trace(fig1_params, schedule);
        const double fitted = fit_exponential(trace, full_window);
        CHECK(std::abs(fitted - 1.697466) < 1e-3);
    }
}

TEST_CASE("markov distance vanishes in the frequent-measurement limit") {
    const MeasurementSchedule frequent(0.01, 5.0);
    const MarkovDistance small = markov_distance(fig1_params, frequent, full_window);
    CHECK(small.max_abs <= 0.02);
    CHECK(small.max_abs == doctest::Approx(0.00207).epsilon(0.25));
    CHECK(small.delta.front() == 0.0);

    const MeasurementSchedule sparse(1.0, 5.0);
    const MarkovDistance large = markov_distance(fig1_params, sparse, full_window);
    CHECK(large.max_abs > 0.05);

    const MeasurementSchedule middle(0.1, 5.0);
    const MarkovDistance mid = markov_distance(fig1_params, middle, full_window);
    CHECK(mid.max_abs > 0.05);

    // strict ordering across the three reference intervals
    CHECK(large.max_abs > mid.max_abs);
    CHECK(mid.max_abs > small.max_abs);

    // summary consistency
    double manual_max = 0.0;
    double manual_sum = 0.0;
    for (const double d : small.delta) {
        manual_max = std::max(manual_max, std::abs(d));
        manual_sum += d * d;
    }
    CHECK(small.max_abs == manual_max);
    CHECK(small.l2 == doctest::Approx(std::sqrt(manual_sum * 1e-4)).epsilon(1e-12));
}

TEST_CASE("identical envelope and fitted rates give vanishing distance") {
    const DerivedScales s = derive_scales(fig1_params);
    const double rate = envelope_rate_amplitude(s, 0.01);
    const std::vector<double> times = uniform_time_grid(5.0, 1e-3);
    std::vector<double> values(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        values[i] = std::exp(-rate * times[i]);
    }
    const double fitted = fit_exponential(times, values, {0.0, 5.0});
    double worst = 0.0;
    for (const double t : times) {
        worst = std::max(worst, std::abs(std::exp(-rate * t) - std::exp(-fitted * t)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("crossing times per regime") {
    // sparse measurements cross within the second segment
    {
        const MeasurementSchedule schedule(1.0, 5.0);
        const auto crossing = crossing_time(fig1_params, schedule);
        REQUIRE(crossing.has_value());
        CHECK(*crossing > 1.0);
        CHECK(*crossing <= 2.0);
        CHECK(*crossing == doctest::Approx(1.02).epsilon(5e-3));
    }
    // crossover regime: stays above for a while, then falls below
    {
        const MeasurementSchedule schedule(0.1, 5.0);
        const auto crossing = crossing_time(fig1_params, schedule);
        REQUIRE(crossing.has_value());
        CHECK(*crossing == doctest::Approx(0.4638).epsilon(5e-3));
        CHECK(*crossing > 4.0 * schedule.delta_t());
    }
    // Zeno regime: no crossing on a short horizon ...
    {
        const MeasurementSchedule schedule(0.01, 0.5);
        CHECK_FALSE(crossing_time(fig1_params, schedule).has_value());
    }
    // ... but the inhibition is only apparent on a long one
    {
        const MeasurementSchedule schedule(0.01, 20.0);
        const auto crossing = crossing_time(fig1_params, schedule);
        REQUIRE(crossing.has_value());
        CHECK(*crossing == doctest::Approx(9.0588).epsilon(2e-3));
    }
}

TEST_CASE("steady-arrow bookkeeping is equivalent to collapsing") {
    for (const double dt : {1.0, 0.1, 0.01}) {
        const MeasurementSchedule schedule(dt, 5.0, 1e-3);
        for (const double t : uniform_time_grid(5.0, 1e-3)) {
            const double stopping = shuffled_survival(fig1_params, schedule, t);
            const double steady = steady_arrow_survival(fig1_params, schedule, t);
            CHECK(std::abs(stopping - steady) <= 1e-12);
        }
    }

    const MeasurementSchedule schedule(0.1, 5.0);
    for (const double t : {0.0, 0.03, 0.09}) {
        CHECK(steady_arrow_survival(fig1_params, schedule, t) ==
              survival_unperturbed(fig1_params, t));
    }

    // the attenuation per interval does not depend on which interval it is
    const double alpha = survival_unperturbed(fig1_params, schedule.delta_t());
    for (long long n = 2; n <= 20; ++n) {
        const double now =
            steady_arrow_survival(fig1_params, schedule, n * schedule.delta_t());
        const double before =
            steady_arrow_survival(fig1_params, schedule, (n - 1) * schedule.delta_t());
        CHECK(rel_err(now / before, alpha) < 1e-10);
    }
}

TEST_CASE("the Zeno limit freezes the decay from below") {
    const DerivedScales s = derive_scales(fig1_params);
    double previous = 0.0;
    for (const double dt : {1e-2, 1e-3, 1e-4}) {
        const MeasurementSchedule schedule(dt, 1.0, dt);
        const double survived = shuffled_survival(fig1_params, schedule, 1.0);
        CHECK(survived > previous);
        CHECK(survived < 1.0);
        // approaches exp(-gamma t) with gamma = dt / tau_Z^2
        const double envelope = std::exp(-envelope_rate(s, dt) * 1.0);
        CHECK(rel_err(survived, envelope) < 2.0 * dt / s.tau);
        previous = survived;
    }
}

TEST_CASE("full analysis bundle") {
    const MeasurementSchedule schedule(1.0, 5.0, 1e-3);
    const ShuffleResult result =
        run_shuffle_analysis(fig1_params, schedule, full_window);
    CHECK(result.regime.label == ShuffleRegime::pure_anti_zeno);
    CHECK(rel_err(result.envelope_rate_amp, 25.0) < 1e-12);
    CHECK(result.envelope_rate == 2.0 * result.envelope_rate_amp);
    CHECK(result.fit_ok);
    CHECK(result.fitted_rate_amp / result.envelope_rate_amp < 0.1);
    REQUIRE(result.crossing.has_value());
    CHECK(*result.crossing <= 2.0);
    CHECK(result.trace.kind == TraceKind::perturbed);
    CHECK(result.markov.max_abs > 0.05);
    CHECK(result.fit_message.empty());

    CHECK_THROWS_AS(run_shuffle_analysis(fig1_params, schedule, FitWindow{0.0, 6.0}),
                    validation_error);
    CHECK_THROWS_AS(run_shuffle_analysis(fig1_params, schedule, FitWindow{-1.0, 5.0}),
                    validation_error);
}

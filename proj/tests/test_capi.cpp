#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <zeno/zeno.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace {

struct Fixture {
    zeno_params* params = nullptr;
    zeno_schedule* schedule = nullptr;

    Fixture(double delta_t = 0.01, double total_time = 1.0, double sample_dt = 1e-3,
            double p0 = 0.0) {
        REQUIRE(zeno_params_create(1.0, 0.1, 0.5, 0.0, p0, &params) == ZENO_OK);
        REQUIRE(zeno_schedule_create(delta_t, total_time, sample_dt, &schedule) ==
                ZENO_OK);
    }
    ~Fixture() {
        zeno_schedule_free(schedule);
        zeno_params_free(params);
    }
};

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(zeno_version()) == "0.1.0");
    CHECK(std::string(zeno_status_name(ZENO_OK)) == "ok");
    CHECK(std::string(zeno_status_name(ZENO_ERR_INVALID_ARGUMENT)) ==
          "invalid argument");
    CHECK(std::string(zeno_status_name(ZENO_ERR_GRID)) == "grid error");
    CHECK(std::string(zeno_status_name(ZENO_ERR_FIT_FAILED)) == "fit failed");
}

TEST_CASE("invalid parameters surface an error message") {
    zeno_params* params = nullptr;
    CHECK(zeno_params_create(1.0, 0.1, 0.0, 0.0, 0.0, &params) ==
          ZENO_ERR_INVALID_ARGUMENT);
    CHECK(params == nullptr);
    CHECK(std::string(zeno_last_error()).find("sigma0") != std::string::npos);

    CHECK(zeno_params_create(1.0, -0.1, 0.5, 0.0, 0.0, &params) ==
          ZENO_ERR_INVALID_ARGUMENT);
    CHECK(std::string(zeno_last_error()).find("mass") != std::string::npos);

    CHECK(zeno_params_create(1.0, 0.1, 0.5, 0.0, 0.0, nullptr) ==
          ZENO_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scales through the C surface") {
    Fixture fx;
    zeno_scales scales{};
    REQUIRE(zeno_params_scales(fx.params, &scales) == ZENO_OK);
    CHECK(scales.tau == 0.05);
    CHECK(std::abs(scales.tau_zeno - 0.1414213562373095) < 1e-12);
    CHECK(std::abs(scales.tau_inflx - std::sqrt(2.0) * 0.05) < 1e-15);
    CHECK(scales.p_spread == 1.0);
    CHECK(scales.momentum_ratio == 0.0);

    double mean_h = 0.0;
    double delta_e = 0.0;
    REQUIRE(zeno_energy_moments(fx.params, &mean_h, &delta_e) == ZENO_OK);
    CHECK(std::abs(mean_h - 5.0) < 1e-12);
    CHECK(std::abs(delta_e - std::sqrt(50.0)) < 1e-12);
}

TEST_CASE("regimes and names") {
    Fixture fx;
    zeno_natural_regime natural{};
    REQUIRE(zeno_natural_regime_at(fx.params, 0.05 / 1000.0, &natural) == ZENO_OK);
    CHECK(natural == ZENO_NATURAL_EHRENFEST_HUYGENS);
    REQUIRE(zeno_natural_regime_at(fx.params, 5.0, &natural) == ZENO_OK);
    CHECK(natural == ZENO_NATURAL_FRAUNHOFER);
    CHECK(zeno_natural_regime_at(fx.params, -1.0, &natural) ==
          ZENO_ERR_INVALID_ARGUMENT);
    CHECK(std::string(zeno_natural_regime_name(ZENO_NATURAL_FRESNEL)) == "Fresnel");

    zeno_shuffle_regime regime{};
    REQUIRE(zeno_classify_regime(fx.params, 1.0, &regime) == ZENO_OK);
    CHECK(regime == ZENO_SHUFFLE_PURE_ANTI_ZENO);
    REQUIRE(zeno_classify_regime(fx.params, 0.01, &regime) == ZENO_OK);
    CHECK(regime == ZENO_SHUFFLE_ZENO);
    CHECK(std::string(zeno_shuffle_regime_name(ZENO_SHUFFLE_CROSSOVER_ZENO)) ==
          "CrossoverZeno");

    int overlap_ok = -1;
    REQUIRE(zeno_overlap_condition(fx.params, &overlap_ok) == ZENO_OK);
    CHECK(overlap_ok == 1);
}

TEST_CASE("pointwise evaluators") {
    Fixture fx;
    double re = 0.0;
    double im = 0.0;
    REQUIRE(zeno_psi(fx.params, 0.0, 0.0, &re, &im) == ZENO_OK);
    CHECK(std::abs(re - std::pow(2.0 * M_PI * 0.25, -0.25)) < 1e-12);
    CHECK(std::abs(im) < 1e-15);

    double density = 0.0;
    REQUIRE(zeno_density(fx.params, 0.0, 0.0, &density) == ZENO_OK);
    CHECK(std::abs(density - 1.0 / std::sqrt(2.0 * M_PI * 0.25)) < 1e-12);
    CHECK(zeno_density_fraunhofer(fx.params, 0.0, 0.0, &density) ==
          ZENO_ERR_INVALID_ARGUMENT);
    REQUIRE(zeno_density_fresnel(fx.params, 0.0, 0.005, &density) == ZENO_OK);

    REQUIRE(zeno_correlation(fx.params, 0.1, &re, &im) == ZENO_OK);
    double survival = 0.0;
    REQUIRE(zeno_survival(fx.params, 0.1, &survival) == ZENO_OK);
    CHECK(survival == re * re + im * im);

    double phase = 0.0;
    REQUIRE(zeno_correlation_phase(fx.params, 0.1, &phase) == ZENO_OK);
    CHECK(phase == doctest::Approx(-0.5 * std::atan(1.0)).epsilon(1e-12));

    double short_time = 0.0;
    REQUIRE(zeno_survival_short_time(fx.params, 0.005, &short_time) == ZENO_OK);
    CHECK(short_time == doctest::Approx(1.0 - 0.005 * 0.005 / 0.02).epsilon(1e-12));

    CHECK(zeno_survival(fx.params, -1.0, &survival) == ZENO_ERR_INVALID_ARGUMENT);
}

TEST_CASE("schedule validation through the C surface") {
    zeno_schedule* schedule = nullptr;
    CHECK(zeno_schedule_create(0.0, 5.0, 1e-4, &schedule) ==
          ZENO_ERR_INVALID_ARGUMENT);
    CHECK(zeno_schedule_create(0.01, 5.0, 0.02, &schedule) ==
          ZENO_ERR_INVALID_ARGUMENT);
    CHECK(std::string(zeno_last_error()).find("sample_dt") != std::string::npos);
}

TEST_CASE("survival under measurements") {
    Fixture fx;
    double survival = 0.0;
    REQUIRE(zeno_shuffled_survival(fx.params, fx.schedule, 0.5, &survival) == ZENO_OK);
    CHECK(survival > 0.0);
    CHECK(survival < 1.0);

    double steady = 0.0;
    REQUIRE(zeno_steady_arrow_survival(fx.params, fx.schedule, 0.5, &steady) ==
            ZENO_OK);
    CHECK(std::abs(survival - steady) <= 1e-12);

    double rate = 0.0;
    double rate_amp = 0.0;
    REQUIRE(zeno_envelope_rates(fx.params, 0.01, &rate, &rate_amp) == ZENO_OK);
    CHECK(std::abs(rate - 0.5) < 1e-12);
    CHECK(std::abs(rate_amp - 0.25) < 1e-12);

    // survival at 0.5 with delta_t = 0.01 rides close to exp(-0.5 * 0.5)
    CHECK(std::abs(survival - std::exp(-rate * 0.5)) < 0.01);
}

TEST_CASE("run bundle exposes the column arrays") {
    Fixture fx;
    zeno_run* run = nullptr;
    REQUIRE(zeno_run_create(fx.params, fx.schedule, 0.0, 1.0, &run) == ZENO_OK);

    const size_t count = zeno_run_sample_count(run);
    CHECK(count == 1001);
    const double* times = zeno_run_times(run);
    const double* unperturbed = zeno_run_unperturbed(run);
    const double* perturbed = zeno_run_perturbed(run);
    const double* envelope = zeno_run_envelope(run);
    REQUIRE(times != nullptr);
    REQUIRE(unperturbed != nullptr);
    REQUIRE(perturbed != nullptr);
    REQUIRE(envelope != nullptr);
    CHECK(times[0] == 0.0);
    CHECK(times[count - 1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unperturbed[0] == 1.0);
    CHECK(perturbed[0] == 1.0);
    CHECK(envelope[0] == 1.0);

    zeno_run_summary summary{};
    REQUIRE(zeno_run_get_summary(run, &summary) == ZENO_OK);
    CHECK(summary.fit_ok == 1);
    REQUIRE(zeno_run_fit(run) != nullptr);
    REQUIRE(zeno_run_delta(run) != nullptr);
    CHECK(std::abs(summary.gamma_prime_est - 0.25) < 1e-12);
    CHECK(summary.gamma_prime_fit > 0.2);
    CHECK(summary.gamma_prime_fit < 0.3);
    CHECK(summary.has_crossing == 0);
    CHECK(std::string(zeno_run_fit_message(run)).empty());
    CHECK(summary.regime == ZENO_SHUFFLE_ZENO);

    zeno_run_free(run);

    // window outside the horizon is a validation error
    CHECK(zeno_run_create(fx.params, fx.schedule, 0.0, 2.0, &run) ==
          ZENO_ERR_INVALID_ARGUMENT);
}

TEST_CASE("standalone fit") {
    std::vector<double> times(501);
    std::vector<double> values(501);
    for (size_t i = 0; i < times.size(); ++i) {
        times[i] = 0.01 * static_cast<double>(i);
        values[i] = std::exp(-1.7 * times[i]);
    }
    double rate = 0.0;
    REQUIRE(zeno_fit_exponential(times.data(), values.data(), times.size(), 0.0, 5.0,
                                 &rate) == ZENO_OK);
    CHECK(rate == doctest::Approx(1.7).epsilon(1e-9));

    CHECK(zeno_fit_exponential(times.data(), values.data(), 2, 0.0, 5.0, &rate) ==
          ZENO_ERR_INVALID_ARGUMENT);
    CHECK(zeno_fit_exponential(nullptr, values.data(), times.size(), 0.0, 5.0,
                               &rate) == ZENO_ERR_INVALID_ARGUMENT);
}

TEST_CASE("oracle check through the C surface") {
    Fixture fx(0.05, 1.0, 1e-3);
    zeno_oracle_options options{};
    options.n_points = 2048;
    options.horizon = 0.2;
    options.compare_points = 21;
    zeno_oracle_report report{};
    REQUIRE(zeno_oracle_check(fx.params, fx.schedule, &options, &report) == ZENO_OK);
    CHECK(report.pass == 1);
    CHECK(report.correlation_max_error <= 1e-6);
    CHECK(report.shuffle_max_error <= 1e-5);

    options.n_points = 256;
    options.horizon = 1.0;
    CHECK(zeno_oracle_check(fx.params, fx.schedule, &options, &report) ==
          ZENO_ERR_GRID);
    CHECK(std::string(zeno_last_error()).find("suggest") != std::string::npos);
}

#include "zeno/zeno.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "params.hpp"
#include "shuffle.hpp"

namespace {

thread_local std::string tl_error;

void set_error(const char* msg) { tl_error = msg; }

template <typename Fn>
zeno_status guarded(Fn&& fn) {
    try {
        fn();
        tl_error.clear();
        return ZENO_OK;
    } catch (const zeno::grid_error& err) {
        set_error(err.what());
        return ZENO_ERR_GRID;
    } catch (const zeno::validation_error& err) {
        set_error(err.what());
        return ZENO_ERR_INVALID_ARGUMENT;
    } catch (const zeno::fit_error& err) {
        set_error(err.what());
        return ZENO_ERR_FIT_FAILED;
    } catch (const std::exception& err) {
        set_error(err.what());
        return ZENO_ERR_INTERNAL;
    }
}

zeno_status require(bool condition, const char* msg) {
    if (condition) return ZENO_OK;
    set_error(msg);
    return ZENO_ERR_INVALID_ARGUMENT;
}

zeno_shuffle_regime to_c(zeno::ShuffleRegime regime) {
    switch (regime) {
        case zeno::ShuffleRegime::pure_anti_zeno:
            return ZENO_SHUFFLE_PURE_ANTI_ZENO;
        case zeno::ShuffleRegime::convex_anti_zeno:
            return ZENO_SHUFFLE_CONVEX_ANTI_ZENO;
        case zeno::ShuffleRegime::crossover_zeno:
            return ZENO_SHUFFLE_CROSSOVER_ZENO;
        case zeno::ShuffleRegime::zeno:
            return ZENO_SHUFFLE_ZENO;
    }
    return ZENO_SHUFFLE_ZENO;
}

}  // namespace

extern "C" {

struct zeno_params {
    zeno::PhysicalParams rep;
};

struct zeno_schedule {
    zeno::MeasurementSchedule rep;
};

struct zeno_run {
    zeno::ShuffleResult rep;
    std::vector<double> unperturbed;
    std::vector<double> perturbed;
    std::vector<double> perturbed_phase;
    std::vector<double> envelope;
    std::vector<double> fit;
    std::vector<double> delta;
};

const char* zeno_version(void) { return "0.1.0"; }

const char* zeno_status_name(zeno_status status) {
    switch (status) {
        case ZENO_OK:
            return "ok";
        case ZENO_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case ZENO_ERR_GRID:
            return "grid error";
        case ZENO_ERR_FIT_FAILED:
            return "fit failed";
        case ZENO_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown";
}

const char* zeno_last_error(void) { return tl_error.c_str(); }

zeno_status zeno_params_create(double hbar, double mass, double sigma0, double x0,
                               double p0, zeno_params** out) {
    if (auto bad = require(out != nullptr, "null output pointer")) return bad;
    return guarded([&] {
        *out = new zeno_params{zeno::PhysicalParams(mass, sigma0, x0, p0, hbar)};
    });
}

void zeno_params_free(zeno_params* params) { delete params; }

zeno_status zeno_params_scales(const zeno_params* params, zeno_scales* out) {
    if (auto bad = require(params && out, "null pointer")) return bad;
    return guarded([&] {
        const zeno::DerivedScales s = zeno::derive_scales(params->rep);
        *out = {s.tau,    s.tau_zeno, s.tau_inflx, s.p_spread,
                s.e0,     s.mean_h,   s.delta_e,   s.momentum_ratio};
    });
}

zeno_status zeno_natural_regime_at(const zeno_params* params, double t,
                                   zeno_natural_regime* out) {
    if (auto bad = require(params && out, "null pointer")) return bad;
    return guarded([&] {
        switch (zeno::classify_natural_regime(t, zeno::derive_scales(params->rep))) {
            case zeno::NaturalRegime::ehrenfest_huygens:
                *out = ZENO_NATURAL_EHRENFEST_HUYGENS;
                break;
            case zeno::NaturalRegime::fresnel:
                *out = ZENO_NATURAL_FRESNEL;
                break;
            case zeno::NaturalRegime::fraunhofer:
                *out = ZENO_NATURAL_FRAUNHOFER;
                break;
        }
    });
}

const char* zeno_natural_regime_name(zeno_natural_regime regime) {
    switch (regime) {
        case ZENO_NATURAL_EHRENFEST_HUYGENS:
            return "EhrenfestHuygens";
        case ZENO_NATURAL_FRESNEL:
            return "Fresnel";
        case ZENO_NATURAL_FRAUNHOFER:
            return "Fraunhofer";
    }
    return "Unknown";
}

zeno_status zeno_overlap_condition(const zeno_params* params, int* ok) {
    if (auto bad = require(params && ok, "null pointer")) return bad;
    return guarded([&] { *ok = zeno::overlap_condition_ok(params->rep) ? 1 : 0; });
}

zeno_status zeno_psi(const zeno_params* params, double x, double t, double* re,
                     double* im) {
    if (auto bad = require(params && re && im, "null pointer")) return bad;
    return guarded([&] {
        const auto amp = zeno::psi_at(params->rep, x, t);
        *re = amp.real();
        *im = amp.imag();
    });
}

zeno_status zeno_density(const zeno_params* params, double x, double t, double* out) {
    if (auto bad = require(params && out, "null pointer")) return bad;
    return guarded([&] { *out = zeno::density_exact(params->rep, x, t); });
}

zeno_status zeno_density_fresnel(const zeno_params* params, double x, double t,
                                 double* out) {
    if (auto bad = require(params && out, "null pointer")) return bad;
    return guarded([&] { *out = zeno::density_fresnel(params->rep, x, t); });
}

zeno_status zeno_density_fraunhofer(const zeno_params* params, double x, double t,
                                    double* out) {
    if (auto bad = require(params && out, "null pointer")) return bad;
    return guarded([&] { *out = zeno::density_fraunhofer(params->rep, x, t); });
}

zeno_status zeno_energy_moments(const zeno_params* params, double* mean_h,
                                double* delta_e) {
    if (auto bad = require(params && mean_h && delta_e, "null pointer")) return bad;
    return guarded([&] {
        const auto moments = zeno::energy_moments(params->rep);
        *mean_h = moments.mean_h;
        *delta_e = moments.delta_e;
    });
}

zeno_status zeno_correlation(const zeno_params* params, double t, double* re,
                             double* im) {
    if (auto bad = require(params && re && im, "null pointer")) return bad;
    return guarded([&] {
        const auto value = zeno::correlation_unperturbed(params->rep, t);
        *re = value.real();
        *im = value.imag();
    });
}

zeno_status zeno_correlation_phase(const zeno_params* params, double t, double* out) {
    if (auto bad = require(params && out, "null pointer")) return bad;
    return guarded([&] { *out = zeno::correlation_phase(params->rep, t); });
}

zeno_status zeno_survival(const zeno_params* params, double t, double* out) {
    if (auto bad = require(params && out, "null pointer")) return bad;
    return guarded([&] { *out = zeno::survival_unperturbed(params->rep, t); });
}

zeno_status zeno_survival_short_time(const zeno_params* params, double t,
                                     double* out) {
    if (auto bad = require(params && out, "null pointer")) return bad;
    return guarded([&] { *out = zeno::survival_short_time(params->rep, t); });
}

zeno_status zeno_schedule_create(double delta_t, double total_time, double sample_dt,
                                 zeno_schedule** out) {
    if (auto bad = require(out != nullptr, "null output pointer")) return bad;
    return guarded([&] {
        *out = new zeno_schedule{
            zeno::MeasurementSchedule(delta_t, total_time, sample_dt)};
    });
}

void zeno_schedule_free(zeno_schedule* schedule) { delete schedule; }

zeno_status zeno_classify_regime(const zeno_params* params, double delta_t,
                                 zeno_shuffle_regime* out) {
    if (auto bad = require(params && out, "null pointer")) return bad;
    return guarded([&] {
        *out = to_c(
            zeno::classify_regime(zeno::derive_scales(params->rep), delta_t).label);
    });
}

const char* zeno_shuffle_regime_name(zeno_shuffle_regime regime) {
    switch (regime) {
        case ZENO_SHUFFLE_PURE_ANTI_ZENO:
            return "PureAntiZeno";
        case ZENO_SHUFFLE_CONVEX_ANTI_ZENO:
            return "ConvexAntiZeno";
        case ZENO_SHUFFLE_CROSSOVER_ZENO:
            return "CrossoverZeno";
        case ZENO_SHUFFLE_ZENO:
            return "Zeno";
    }
    return "Unknown";
}

zeno_status zeno_envelope_rates(const zeno_params* params, double delta_t,
                                double* gamma, double* gamma_prime) {
    if (auto bad = require(params != nullptr, "null pointer")) return bad;
    return guarded([&] {
        if (!(delta_t > 0.0) || !std::isfinite(delta_t)) {
            throw zeno::validation_error("delta_t must be finite and > 0");
        }
        const auto scales = zeno::derive_scales(params->rep);
        if (gamma) *gamma = zeno::envelope_rate(scales, delta_t);
        if (gamma_prime) *gamma_prime = zeno::envelope_rate_amplitude(scales, delta_t);
    });
}

zeno_status zeno_shuffled_survival(const zeno_params* params,
                                   const zeno_schedule* schedule, double t,
                                   double* out) {
    if (auto bad = require(params && schedule && out, "null pointer")) return bad;
    return guarded(
        [&] { *out = zeno::shuffled_survival(params->rep, schedule->rep, t); });
}

zeno_status zeno_steady_arrow_survival(const zeno_params* params,
                                       const zeno_schedule* schedule, double t,
                                       double* out) {
    if (auto bad = require(params && schedule && out, "null pointer")) return bad;
    return guarded(
        [&] { *out = zeno::steady_arrow_survival(params->rep, schedule->rep, t); });
}

zeno_status zeno_crossing_time(const zeno_params* params,
                               const zeno_schedule* schedule, int* found, double* t) {
    if (auto bad = require(params && schedule && found && t, "null pointer")) {
        return bad;
    }
    return guarded([&] {
        const auto crossing = zeno::crossing_time(params->rep, schedule->rep);
        *found = crossing.has_value() ? 1 : 0;
        if (crossing) *t = *crossing;
    });
}

zeno_status zeno_run_create(const zeno_params* params, const zeno_schedule* schedule,
                            double fit_lo, double fit_hi, zeno_run** out) {
    if (auto bad = require(params && schedule && out, "null pointer")) return bad;
    return guarded([&] {
        auto run = std::make_unique<zeno_run>();
        run->rep = zeno::run_shuffle_analysis(params->rep, schedule->rep,
                                              {fit_lo, fit_hi});
        const auto& trace = run->rep.trace;
        const std::size_t n = trace.times.size();
        run->unperturbed.resize(n);
        run->perturbed.resize(n);
        run->perturbed_phase.resize(n);
        run->envelope.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            run->unperturbed[i] =
                zeno::correlation_modulus(params->rep, trace.times[i]);
            run->perturbed[i] = std::abs(trace.values[i]);
            run->perturbed_phase[i] = std::arg(trace.values[i]);
            run->envelope[i] = std::exp(-run->rep.envelope_rate_amp * trace.times[i]);
        }
        if (run->rep.fit_ok) {
            run->fit.resize(n);
            run->delta.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                run->fit[i] = std::exp(-run->rep.fitted_rate_amp * trace.times[i]);
                run->delta[i] = run->envelope[i] - run->fit[i];
            }
        }
        *out = run.release();
    });
}

void zeno_run_free(zeno_run* run) { delete run; }

size_t zeno_run_sample_count(const zeno_run* run) {
    return run ? run->rep.trace.times.size() : 0;
}

const double* zeno_run_times(const zeno_run* run) {
    return run ? run->rep.trace.times.data() : nullptr;
}

const double* zeno_run_unperturbed(const zeno_run* run) {
    return run ? run->unperturbed.data() : nullptr;
}

const double* zeno_run_perturbed(const zeno_run* run) {
    return run ? run->perturbed.data() : nullptr;
}

const double* zeno_run_perturbed_phase(const zeno_run* run) {
    return run ? run->perturbed_phase.data() : nullptr;
}

const double* zeno_run_envelope(const zeno_run* run) {
    return run ? run->envelope.data() : nullptr;
}

const double* zeno_run_fit(const zeno_run* run) {
    return run && run->rep.fit_ok ? run->fit.data() : nullptr;
}

const double* zeno_run_delta(const zeno_run* run) {
    return run && run->rep.fit_ok ? run->delta.data() : nullptr;
}

zeno_status zeno_run_get_summary(const zeno_run* run, zeno_run_summary* out) {
    if (auto bad = require(run && out, "null pointer")) return bad;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    out->gamma_est = run->rep.envelope_rate;
    out->gamma_prime_est = run->rep.envelope_rate_amp;
    out->gamma_prime_fit = run->rep.fit_ok ? run->rep.fitted_rate_amp : nan;
    out->max_abs_delta = run->rep.fit_ok ? run->rep.markov.max_abs : nan;
    out->l2_delta = run->rep.fit_ok ? run->rep.markov.l2 : nan;
    out->has_crossing = run->rep.crossing.has_value() ? 1 : 0;
    out->crossing_time = run->rep.crossing.value_or(nan);
    out->fit_ok = run->rep.fit_ok ? 1 : 0;
    out->regime = to_c(run->rep.regime.label);
    return ZENO_OK;
}

const char* zeno_run_fit_message(const zeno_run* run) {
    return run ? run->rep.fit_message.c_str() : "";
}

zeno_status zeno_fit_exponential(const double* times, const double* values,
                                 size_t count, double lo, double hi, double* rate) {
    if (auto bad = require(times && values && rate, "null pointer")) return bad;
    return guarded([&] {
        *rate = zeno::fit_exponential(std::span(times, count),
                                      std::span(values, count), {lo, hi});
    });
}

zeno_status zeno_oracle_check(const zeno_params* params, const zeno_schedule* schedule,
                              const zeno_oracle_options* options,
                              zeno_oracle_report* out) {
    if (auto bad = require(params && schedule && out, "null pointer")) return bad;
    return guarded([&] {
        zeno::OracleOptions opts;
        if (options) {
            if (options->n_points > 0) opts.n_points = options->n_points;
            if (options->pad_sigmas > 0.0) opts.pad_sigmas = options->pad_sigmas;
            if (options->horizon > 0.0) opts.horizon = options->horizon;
            if (options->compare_points > 0) opts.compare_points = options->compare_points;
        }
        const auto report = zeno::oracle_check(params->rep, schedule->rep, opts);
        *out = {report.norm_error,
                report.x_mean_error,
                report.p_mean_error,
                report.mean_h_rel_error,
                report.delta_e_rel_error,
                report.correlation_max_error,
                report.phase_max_error,
                report.shuffle_max_error,
                report.pass ? 1 : 0};
    });
}

}  // extern "C"

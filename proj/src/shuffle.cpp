#include "shuffle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace zeno {

namespace {

using cd = std::complex<double>;

struct SegmentPos {
    long long n;      ///< measurements already applied
    double residual;  ///< time elapsed since the last one
};

// Sample times land within rounding of the instants n*delta_t; snap those onto
// the instant so the product law is exact there (post-measurement convention).
SegmentPos segment_position(double t, double delta_t) {
    auto n = static_cast<long long>(std::floor(t / delta_t));
    double r = t - static_cast<double>(n) * delta_t;
    if (r < 0.0) {
        --n;
        r = t - static_cast<double>(n) * delta_t;
    }
    if (r > delta_t * (1.0 - 1e-9)) {
        ++n;
        r = 0.0;
    } else if (r < delta_t * 1e-9) {
        r = 0.0;
    }
    return {n, r};
}

void require_in_horizon(double t, const MeasurementSchedule& schedule) {
    // Rounding slack: instants assembled as n * delta_t may land an ulp past
    // the horizon.
    const double limit = schedule.total_time() * (1.0 + 1e-9);
    if (!(t >= 0.0) || !(t <= limit)) {
        throw validation_error("time outside [0, total_time]");
    }
}

double objective(std::span<const double> t, std::span<const double> y, double rate) {
    double sum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double resid = y[i] - std::exp(-rate * t[i]);
        sum += resid * resid;
    }
    return sum;
}

}  // namespace

MeasurementSchedule::MeasurementSchedule(double delta_t, double total_time,
                                         double sample_dt)
    : delta_t_(delta_t), total_time_(total_time), sample_dt_(sample_dt) {
    if (!(delta_t > 0.0) || !std::isfinite(delta_t)) {
        throw validation_error("delta_t must be finite and > 0");
    }
    if (!(total_time > 0.0) || !std::isfinite(total_time)) {
        throw validation_error("total_time must be finite and > 0");
    }
    if (!(sample_dt > 0.0) || !std::isfinite(sample_dt)) {
        throw validation_error("sample_dt must be finite and > 0");
    }
    if (sample_dt > delta_t) {
        throw validation_error("sample_dt must not exceed delta_t");
    }
    if (total_time < delta_t) {
        throw validation_error("total_time must cover at least one interval");
    }
}

std::string to_string(ShuffleRegime regime) {
    switch (regime) {
        case ShuffleRegime::pure_anti_zeno:
            return "PureAntiZeno";
        case ShuffleRegime::convex_anti_zeno:
            return "ConvexAntiZeno";
        case ShuffleRegime::crossover_zeno:
            return "CrossoverZeno";
        case ShuffleRegime::zeno:
            return "Zeno";
    }
    return "Unknown";
}

RegimeLabel classify_regime(const DerivedScales& scales, double delta_t) {
    if (!(delta_t > 0.0) || !std::isfinite(delta_t)) {
        throw validation_error("delta_t must be finite and > 0");
    }
    RegimeLabel out{ShuffleRegime::zeno, scales.tau, scales.tau_inflx, scales.tau_zeno};
    if (delta_t >= scales.tau_zeno) {
        out.label = ShuffleRegime::pure_anti_zeno;
    } else if (delta_t > scales.tau_inflx) {
        out.label = ShuffleRegime::convex_anti_zeno;
    } else if (delta_t >= scales.tau) {
        out.label = ShuffleRegime::crossover_zeno;
    }
    return out;
}

double envelope_rate(const DerivedScales& scales, double delta_t) {
    return delta_t / (scales.tau_zeno * scales.tau_zeno);
}

double envelope_rate_amplitude(const DerivedScales& scales, double delta_t) {
    return envelope_rate(scales, delta_t) / 2.0;
}

double shuffled_survival(const PhysicalParams& params,
                         const MeasurementSchedule& schedule, double t) {
    require_in_horizon(t, schedule);
    const SegmentPos pos = segment_position(t, schedule.delta_t());
    const double p_interval = survival_unperturbed(params, schedule.delta_t());
    return std::pow(p_interval, static_cast<double>(pos.n)) *
           survival_unperturbed(params, pos.residual);
}

std::complex<double> shuffled_correlation(const PhysicalParams& params,
                                          const MeasurementSchedule& schedule,
                                          double t) {
    require_in_horizon(t, schedule);
    const SegmentPos pos = segment_position(t, schedule.delta_t());
    const double mod_dt = correlation_modulus(params, schedule.delta_t());
    const double phase_dt = correlation_phase(params, schedule.delta_t());
    const double n = static_cast<double>(pos.n);
    return std::polar(
        std::pow(mod_dt, n) * correlation_modulus(params, pos.residual),
        n * phase_dt + correlation_phase(params, pos.residual));
}

double steady_arrow_survival(const PhysicalParams& params,
                             const MeasurementSchedule& schedule, double t) {
    require_in_horizon(t, schedule);
    const SegmentPos pos = segment_position(t, schedule.delta_t());
    const double alpha = std::norm(correlation_unperturbed(params, schedule.delta_t()));
    double attenuation = 1.0;
    for (long long k = 0; k < pos.n; ++k) attenuation *= alpha;
    return attenuation * std::norm(correlation_unperturbed(params, pos.residual));
}

CorrelationTrace shuffled_trace(const PhysicalParams& params,
                                const MeasurementSchedule& schedule) {
    CorrelationTrace trace{TraceKind::perturbed,
                           uniform_time_grid(schedule.total_time(), schedule.sample_dt()),
                           {}};
    trace.values.reserve(trace.times.size());
    const double mod_dt = correlation_modulus(params, schedule.delta_t());
    const double phase_dt = correlation_phase(params, schedule.delta_t());
    for (const double t : trace.times) {
        const SegmentPos pos = segment_position(t, schedule.delta_t());
        const double n = static_cast<double>(pos.n);
        trace.values.push_back(std::polar(
            std::pow(mod_dt, n) * correlation_modulus(params, pos.residual),
            n * phase_dt + correlation_phase(params, pos.residual)));
    }
    return trace;
}

CorrelationTrace unperturbed_trace(const PhysicalParams& params,
                                   const MeasurementSchedule& schedule) {
    CorrelationTrace trace{TraceKind::unperturbed,
                           uniform_time_grid(schedule.total_time(), schedule.sample_dt()),
                           {}};
    trace.values.reserve(trace.times.size());
    for (const double t : trace.times) {
        trace.values.push_back(correlation_unperturbed(params, t));
    }
    return trace;
}

CorrelationTrace envelope_trace(const PhysicalParams& params,
                                const MeasurementSchedule& schedule) {
    const double rate = envelope_rate_amplitude(derive_scales(params),
                                                schedule.delta_t());
    CorrelationTrace trace{TraceKind::envelope,
                           uniform_time_grid(schedule.total_time(), schedule.sample_dt()),
                           {}};
    trace.values.reserve(trace.times.size());
    for (const double t : trace.times) {
        trace.values.emplace_back(std::exp(-rate * t), 0.0);
    }
    return trace;
}

double fit_exponential(std::span<const double> times, std::span<const double> values,
                       FitWindow window) {
    if (times.size() != values.size()) {
        throw validation_error("times and values must have equal length");
    }
    if (!(window.lo <= window.hi)) {
        throw validation_error("fit window must satisfy lo <= hi");
    }
    std::vector<double> t;
    std::vector<double> y;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] >= window.lo && times[i] <= window.hi) {
            t.push_back(times[i]);
            y.push_back(values[i]);
        }
    }
    if (t.size() < 3) {
        throw validation_error("fit window holds fewer than 3 samples");
    }

    // Initial guess from the endpoint log-slope when usable.
    double guess = 1.0;
    if (y.front() > 0.0 && y.back() > 0.0 && t.back() > t.front()) {
        const double slope = std::log(y.front() / y.back()) / (t.back() - t.front());
        if (std::isfinite(slope) && slope > 0.0) guess = slope;
    }
    guess = std::clamp(guess, 1e-8, 1e8);

    auto f = [&](double rate) { return objective(t, y, rate); };

    // Bracket a minimum with a triple a < b < c, f(b) <= f(a), f(b) <= f(c).
    double a = 0.0;
    double b = guess;
    double fa = f(a);
    double fb = f(b);
    while (fb > fa && b > 1e-14) {
        b *= 0.5;
        fb = f(b);
    }
    if (fb > fa) {
        // Minimum sits at rate = 0.
        return 0.0;
    }
    double c = 2.0 * b;
    double fc = f(c);
    int expansions = 0;
    while (fc < fb) {
        a = b;
        b = c;
        fb = fc;
        c *= 2.0;
        fc = f(c);
        if (++expansions > 200) {
            throw fit_error("exponential fit failed to bracket a minimum");
        }
    }

    // Golden-section on [a, c] to relative tolerance 1e-10.
    constexpr double kGolden = 0.6180339887498949;
    double lo = a;
    double hi = c;
    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    int iterations = 0;
    while (hi - lo > 1e-10 * std::max(1.0, hi)) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = f(x2);
        }
        if (++iterations > 400) {
            throw fit_error("exponential fit did not converge");
        }
    }
    return 0.5 * (lo + hi);
}

double fit_exponential(const CorrelationTrace& trace, FitWindow window) {
    std::vector<double> moduli(trace.values.size());
    for (std::size_t i = 0; i < trace.values.size(); ++i) {
        moduli[i] = std::abs(trace.values[i]);
    }
    return fit_exponential(trace.times, moduli, window);
}

MarkovDistance markov_distance(const PhysicalParams& params,
                               const MeasurementSchedule& schedule, FitWindow window) {
    const CorrelationTrace trace = shuffled_trace(params, schedule);
    const double fitted = fit_exponential(trace, window);
    const double estimated =
        envelope_rate_amplitude(derive_scales(params), schedule.delta_t());

    MarkovDistance out{{}, {}, 0.0, 0.0};
    double sum_sq = 0.0;
    for (const double t : trace.times) {
        if (t < window.lo || t > window.hi) continue;
        const double d = std::exp(-estimated * t) - std::exp(-fitted * t);
        out.times.push_back(t);
        out.delta.push_back(d);
        out.max_abs = std::max(out.max_abs, std::abs(d));
        sum_sq += d * d;
    }
    out.l2 = std::sqrt(sum_sq * schedule.sample_dt());
    return out;
}

std::optional<double> crossing_time(const PhysicalParams& params,
                                    const MeasurementSchedule& schedule) {
    // The curves coincide over the whole first interval and touch (without
    // crossing) at the first instant, so detection needs a noise guard.
    constexpr double kNoise = 1e-12;
    const double dt_meas = schedule.delta_t();
    const double mod_dt = correlation_modulus(params, dt_meas);
    auto gap = [&](double t) {
        const SegmentPos pos = segment_position(t, dt_meas);
        const double perturbed = std::pow(mod_dt, static_cast<double>(pos.n)) *
                                 correlation_modulus(params, pos.residual);
        return perturbed - correlation_modulus(params, t);
    };

    const std::vector<double> grid =
        uniform_time_grid(schedule.total_time(), schedule.sample_dt());
    std::size_t below = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (gap(grid[i]) < -kNoise) {
            below = i;
            break;
        }
    }
    if (below == 0) return std::nullopt;

    double lo = grid[below - 1];
    double hi = grid[below];
    const double tol = schedule.sample_dt() / 20.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) < -kNoise) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ShuffleResult run_shuffle_analysis(const PhysicalParams& params,
                                   const MeasurementSchedule& schedule,
                                   FitWindow window) {
    if (!(window.lo >= 0.0) || !(window.hi <= schedule.total_time()) ||
        !(window.lo <= window.hi)) {
        throw validation_error("fit window must lie inside [0, total_time]");
    }
    const DerivedScales scales = derive_scales(params);

    ShuffleResult result{shuffled_trace(params, schedule),
                         envelope_rate(scales, schedule.delta_t()),
                         envelope_rate_amplitude(scales, schedule.delta_t()),
                         std::numeric_limits<double>::quiet_NaN(),
                         false,
                         {},
                         {{}, {}, 0.0, 0.0},
                         classify_regime(scales, schedule.delta_t()),
                         crossing_time(params, schedule)};
    try {
        result.fitted_rate_amp = fit_exponential(result.trace, window);
        result.fit_ok = true;
        double sum_sq = 0.0;
        for (const double t : result.trace.times) {
            if (t < window.lo || t > window.hi) continue;
            const double d = std::exp(-result.envelope_rate_amp * t) -
                             std::exp(-result.fitted_rate_amp * t);
            result.markov.times.push_back(t);
            result.markov.delta.push_back(d);
            result.markov.max_abs = std::max(result.markov.max_abs, std::abs(d));
            sum_sq += d * d;
        }
        result.markov.l2 = std::sqrt(sum_sq * schedule.sample_dt());
    } catch (const fit_error& err) {
        result.fit_message = err.what();
    }
    return result;
}

}  // namespace zeno

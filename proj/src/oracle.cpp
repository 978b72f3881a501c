#include "oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "analytic.hpp"
#include "errors.hpp"

namespace zeno {

namespace {

using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& plan_mutex() {
    static std::mutex mutex;
    return mutex;
}

void fft_inplace(std::vector<cd>& data, int sign) {
    const int n = static_cast<int>(data.size());
    auto* raw = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(n, raw, raw, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    if (sign == FFTW_BACKWARD) {
        const double scale = 1.0 / n;
        for (auto& v : data) v *= scale;
    }
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double wavenumber(int index, int n, double dk) {
    return (index < n / 2 ? index : index - n) * dk;
}

void require_matching(const GridState& a, const GridState& b) {
    if (a.spec.x_min != b.spec.x_min || a.spec.x_max != b.spec.x_max ||
        a.spec.n_points != b.spec.n_points) {
        throw validation_error("grid states live on different grids");
    }
}

double spread_at(const PhysicalParams& params, double t) {
    const double tau = derive_scales(params).tau;
    return params.sigma0() * std::sqrt(1.0 + (t / tau) * (t / tau));
}

}  // namespace

GridSpec auto_grid_spec(const PhysicalParams& params, double horizon,
                        int n_points, double pad_sigmas) {
    if (!(horizon >= 0.0)) throw validation_error("horizon must be >= 0");
    const double sigma_T = spread_at(params, horizon);
    const double x_start = params.x0();
    const double x_end = params.x0() + params.p0() / params.mass() * horizon;
    GridSpec spec{std::min(x_start, x_end) - pad_sigmas * sigma_T,
                  std::max(x_start, x_end) + pad_sigmas * sigma_T, n_points};
    validate_grid(spec, params, horizon, pad_sigmas);
    return spec;
}

void validate_grid(const GridSpec& spec, const PhysicalParams& params,
                   double horizon, double pad_sigmas) {
    std::ostringstream problems;
    if (!power_of_two(spec.n_points) || spec.n_points < 256) {
        problems << "n_points must be a power of two >= 256 (got "
                 << spec.n_points << "); ";
    }
    if (!(spec.x_max > spec.x_min)) {
        problems << "empty domain; ";
    }
    if (problems.str().empty()) {
        const double sigma_T = spread_at(params, horizon);
        const double x_start = params.x0();
        const double x_end = params.x0() + params.p0() / params.mass() * horizon;
        const double lo_needed = std::min(x_start, x_end) - pad_sigmas * sigma_T;
        const double hi_needed = std::max(x_start, x_end) + pad_sigmas * sigma_T;
        if (spec.x_min > lo_needed || spec.x_max < hi_needed) {
            problems << "domain [" << spec.x_min << ", " << spec.x_max
                     << "] does not clear the centroid path by " << pad_sigmas
                     << " sigma_T; need at least [" << lo_needed << ", "
                     << hi_needed << "]; ";
        }
        // Momentum support: the packet's spectrum is centered at p0/hbar with
        // width 1/(2 sigma0).
        const double k_max = kPi / spec.dx();
        const double k_needed = std::abs(params.p0()) / params.hbar() +
                                pad_sigmas / (2.0 * params.sigma0());
        if (k_max < k_needed) {
            problems << "momentum cutoff pi/dx = " << k_max
                     << " below required " << k_needed
                     << " (increase n_points); ";
        }
    }
    const std::string msg = problems.str();
    if (!msg.empty()) {
        const GridSpec hint = [&] {
            const double sigma_T = spread_at(params, horizon);
            const double x_end = params.x0() + params.p0() / params.mass() * horizon;
            return GridSpec{std::min(params.x0(), x_end) - pad_sigmas * sigma_T,
                            std::max(params.x0(), x_end) + pad_sigmas * sigma_T,
                            std::max(spec.n_points, 4096)};
        }();
        throw grid_error("inadequate grid: " + msg + "suggest x_min=" +
                         std::to_string(hint.x_min) + " x_max=" +
                         std::to_string(hint.x_max) + " n_points=" +
                         std::to_string(hint.n_points));
    }
}

double grid_norm(const GridState& state) {
    const auto& amps = state.amps;
    double sum = 0.5 * (std::norm(amps.front()) + std::norm(amps.back()));
    for (std::size_t i = 1; i + 1 < amps.size(); ++i) sum += std::norm(amps[i]);
    return sum * state.spec.dx();
}

GridState init_gaussian(const GridSpec& spec, const PhysicalParams& params) {
    validate_grid(spec, params, 0.0);
    GridState state{spec, std::vector<cd>(spec.n_points)};
    for (int i = 0; i < spec.n_points; ++i) {
        state.amps[i] = psi_at(params, spec.node(i), 0.0);
    }
    return state;
}

GridState propagate_free(const GridState& state, const PhysicalParams& params,
                         double dt) {
    if (!(dt >= 0.0) || !std::isfinite(dt)) {
        throw validation_error("dt must be finite and >= 0");
    }
    GridState out{state.spec, state.amps};
    fft_inplace(out.amps, FFTW_FORWARD);
    const int n = state.spec.n_points;
    const double dk = 2.0 * kPi / (state.spec.x_max - state.spec.x_min);
    const double coeff = params.hbar() * dt / (2.0 * params.mass());
    for (int i = 0; i < n; ++i) {
        const double k = wavenumber(i, n, dk);
        out.amps[i] *= std::polar(1.0, -coeff * k * k);
    }
    fft_inplace(out.amps, FFTW_BACKWARD);
    return out;
}

std::complex<double> overlap(const GridState& a, const GridState& b) {
    require_matching(a, b);
    cd sum = 0.5 * (std::conj(a.amps.front()) * b.amps.front() +
                    std::conj(a.amps.back()) * b.amps.back());
    for (std::size_t i = 1; i + 1 < a.amps.size(); ++i) {
        sum += std::conj(a.amps[i]) * b.amps[i];
    }
    return sum * a.spec.dx();
}

GridState project_measure(const GridState& state, const GridState& reference) {
    require_matching(state, reference);
    const cd weight = overlap(reference, state);
    GridState out{reference.spec, reference.amps};
    for (auto& v : out.amps) v *= weight;
    return out;
}

double position_mean(const GridState& state) {
    double sum = 0.0;
    const int n = state.spec.n_points;
    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        sum += w * state.spec.node(i) * std::norm(state.amps[i]);
    }
    return sum * state.spec.dx() / grid_norm(state);
}

double momentum_mean(const GridState& state, const PhysicalParams& params) {
    std::vector<cd> spectrum = state.amps;
    fft_inplace(spectrum, FFTW_FORWARD);
    const int n = state.spec.n_points;
    const double dk = 2.0 * kPi / (state.spec.x_max - state.spec.x_min);
    double weight_sum = 0.0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = std::norm(spectrum[i]);
        weight_sum += w;
        sum += w * params.hbar() * wavenumber(i, n, dk);
    }
    return sum / weight_sum;
}

GridEnergyMoments grid_energy_moments(const GridState& state,
                                      const PhysicalParams& params) {
    std::vector<cd> spectrum = state.amps;
    fft_inplace(spectrum, FFTW_FORWARD);
    const int n = state.spec.n_points;
    const double dk = 2.0 * kPi / (state.spec.x_max - state.spec.x_min);
    double weight_sum = 0.0;
    double sum_e = 0.0;
    double sum_e2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = std::norm(spectrum[i]);
        const double k = wavenumber(i, n, dk);
        const double energy = params.hbar() * params.hbar() * k * k /
                              (2.0 * params.mass());
        weight_sum += w;
        sum_e += w * energy;
        sum_e2 += w * energy * energy;
    }
    const double mean = sum_e / weight_sum;
    const double mean2 = sum_e2 / weight_sum;
    return {mean, std::sqrt(std::max(0.0, mean2 - mean * mean))};
}

OracleReport oracle_check(const PhysicalParams& params,
                          const MeasurementSchedule& schedule,
                          const OracleOptions& options,
                          const OracleTolerances& tolerances) {
    const double horizon = options.horizon;
    const GridSpec spec =
        auto_grid_spec(params, std::max(horizon, schedule.delta_t()),
                       options.n_points, options.pad_sigmas);
    const GridState initial = init_gaussian(spec, params);

    OracleReport report{};
    report.norm_error = std::abs(grid_norm(initial) - 1.0);
    report.x_mean_error = std::abs(position_mean(initial) - params.x0());
    report.p_mean_error = std::abs(momentum_mean(initial, params) - params.p0());

    const GridEnergyMoments grid_moments = grid_energy_moments(initial, params);
    const EnergyMoments closed = energy_moments(params);
    report.mean_h_rel_error =
        std::abs(grid_moments.mean_h - closed.mean_h) / std::abs(closed.mean_h);
    report.delta_e_rel_error =
        std::abs(grid_moments.delta_e - closed.delta_e) / closed.delta_e;

    // Correlation modulus and phase against the closed form over [0, horizon].
    report.correlation_max_error = 0.0;
    report.phase_max_error = 0.0;
    const int points = std::max(2, options.compare_points);
    for (int i = 0; i < points; ++i) {
        const double t = horizon * i / (points - 1);
        const cd c_grid = overlap(initial, propagate_free(initial, params, t));
        const cd c_closed = correlation_unperturbed(params, t);
        report.correlation_max_error = std::max(
            report.correlation_max_error, std::abs(std::abs(c_grid) - std::abs(c_closed)));
        const double phase_gap = std::abs(std::arg(c_grid * std::conj(c_closed)));
        report.phase_max_error = std::max(report.phase_max_error, phase_gap);
    }

    // Measurement pipeline: propagate + project cycles against the closed-form
    // product law, checked at the instants and at mid-segment.
    report.shuffle_max_error = 0.0;
    const double dt_meas = schedule.delta_t();
    const auto cycles = static_cast<long long>(
        std::floor(std::min(horizon, schedule.total_time()) / dt_meas + 1e-9));
    GridState current = initial;
    for (long long n = 1; n <= cycles; ++n) {
        // Mid-segment: the post-measurement state is the reference scaled by
        // the accumulated attenuation, so this overlap carries the product law.
        const GridState half = propagate_free(current, params, dt_meas / 2.0);
        const double t_half = (n - 1) * dt_meas + dt_meas / 2.0;
        const double survival_half = std::norm(overlap(initial, half));
        report.shuffle_max_error = std::max(
            report.shuffle_max_error,
            std::abs(survival_half - shuffled_survival(params, schedule, t_half)));

        current = propagate_free(half, params, dt_meas / 2.0);
        current = project_measure(current, initial);
        const double survival_n = grid_norm(current);
        report.shuffle_max_error = std::max(
            report.shuffle_max_error,
            std::abs(survival_n -
                     shuffled_survival(params, schedule, n * dt_meas)));
    }

    report.pass = report.norm_error <= tolerances.norm &&
                  report.x_mean_error <= tolerances.centroid &&
                  report.p_mean_error <= tolerances.centroid &&
                  report.mean_h_rel_error <= tolerances.moments_rel &&
                  report.delta_e_rel_error <= tolerances.moments_rel &&
                  report.correlation_max_error <= tolerances.correlation &&
                  report.phase_max_error <= tolerances.phase &&
                  report.shuffle_max_error <= tolerances.shuffle;
    return report;
}

}  // namespace zeno

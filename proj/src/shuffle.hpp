#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "params.hpp"
#include "trace.hpp"

namespace zeno {

/// Periodic von Neumann measurements at t_n = n * delta_t, traced at
/// sample_dt resolution up to total_time.
class MeasurementSchedule {
public:
    MeasurementSchedule(double delta_t, double total_time, double sample_dt = 1e-4);

    double delta_t() const { return delta_t_; }
    double total_time() const { return total_time_; }
    double sample_dt() const { return sample_dt_; }

private:
    double delta_t_;
    double total_time_;
    double sample_dt_;
};

enum class ShuffleRegime { pure_anti_zeno, convex_anti_zeno, crossover_zeno, zeno };

std::string to_string(ShuffleRegime regime);

/// Regime decision for a measurement interval, with the bounds it was
/// decided against.
struct RegimeLabel {
    ShuffleRegime label;
    double tau;
    double tau_inflx;
    double tau_zeno;
};

/// delta_t >= tau_Z: pure anti-Zeno; tau_inflx < delta_t < tau_Z: anti-Zeno by
/// convexity; tau <= delta_t <= tau_inflx: slower start, later crossover;
/// delta_t < tau: Zeno.
RegimeLabel classify_regime(const DerivedScales& scales, double delta_t);

/// Decay rate of the frequent-measurement envelope for the survival
/// probability, gamma = delta_t / tau_Z^2.
double envelope_rate(const DerivedScales& scales, double delta_t);

/// gamma' = gamma / 2, the amplitude (|C|) rate.
double envelope_rate_amplitude(const DerivedScales& scales, double delta_t);

/// Survival probability under measurements: [P(delta_t)]^n * P(t - n delta_t)
/// with n = floor(t / delta_t); exact overlaps, post-measurement value at the
/// instants themselves.
double shuffled_survival(const PhysicalParams& params,
                         const MeasurementSchedule& schedule, double t);

/// Complex perturbed correlation [C(delta_t)]^n * C(t - n delta_t).
std::complex<double> shuffled_correlation(const PhysicalParams& params,
                                          const MeasurementSchedule& schedule,
                                          double t);

/// Steady-arrow (photograph) variant: the state is never reset, an attenuation
/// alpha = |<psi_0|psi_dt>|^2 accumulates per elapsed interval and the residual
/// overlap follows from the free-propagator time-translation identity.
double steady_arrow_survival(const PhysicalParams& params,
                             const MeasurementSchedule& schedule, double t);

CorrelationTrace shuffled_trace(const PhysicalParams& params,
                                const MeasurementSchedule& schedule);

CorrelationTrace unperturbed_trace(const PhysicalParams& params,
                                   const MeasurementSchedule& schedule);

/// exp(-gamma' t) on the schedule's sample grid.
CorrelationTrace envelope_trace(const PhysicalParams& params,
                                const MeasurementSchedule& schedule);

struct FitWindow {
    double lo;
    double hi;
};

/// Least-squares rate of y ~ exp(-gamma t) over samples inside the window
/// (amplitude pinned to 1 at t = 0). Deterministic: bracketed golden-section
/// to relative tolerance 1e-10, rate >= 0.
double fit_exponential(std::span<const double> times, std::span<const double> values,
                       FitWindow window);

double fit_exponential(const CorrelationTrace& trace, FitWindow window);

/// Distance between estimated and fitted envelopes, sampled over the window.
struct MarkovDistance {
    std::vector<double> times;
    std::vector<double> delta;
    double max_abs;
    double l2;  ///< sqrt(sum delta^2 * sample_dt)
};

MarkovDistance markov_distance(const PhysicalParams& params,
                               const MeasurementSchedule& schedule, FitWindow window);

/// First t > 0 where the perturbed |C| falls strictly below the unperturbed
/// one, refined by bisection on the closed forms; nullopt when no crossing
/// occurs within total_time.
std::optional<double> crossing_time(const PhysicalParams& params,
                                    const MeasurementSchedule& schedule);

/// Full analysis bundle for one (params, schedule) experiment.
struct ShuffleResult {
    CorrelationTrace trace;  ///< perturbed
    double envelope_rate;
    double envelope_rate_amp;
    double fitted_rate_amp;  ///< NaN when the fit failed
    bool fit_ok;
    std::string fit_message;  ///< empty on success
    MarkovDistance markov;    ///< empty when the fit failed
    RegimeLabel regime;
    std::optional<double> crossing;
};

ShuffleResult run_shuffle_analysis(const PhysicalParams& params,
                                   const MeasurementSchedule& schedule,
                                   FitWindow window);

}  // namespace zeno

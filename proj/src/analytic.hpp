#pragma once

#include <complex>

#include "params.hpp"

namespace zeno {

/// Complex spreading sigma0 * (1 + i hbar t / 2 m sigma0^2) and its modulus.
struct ComplexSpread {
    std::complex<double> value;
    double modulus;
};

ComplexSpread complex_spread(const PhysicalParams& params, double t);

/// Wave function amplitude at (x, t) together with the accumulated real phase
/// (unwrapped, phase of the amplitude mod 2*pi).
struct WaveSample {
    double x;
    double t;
    std::complex<double> amplitude;
    double real_phase;
};

/// Free-space amplitude at position x, time t >= 0.
std::complex<double> psi_at(const PhysicalParams& params, double x, double t);

WaveSample wave_sample(const PhysicalParams& params, double x, double t);

/// |psi_t(x)|^2, exact closed form.
double density_exact(const PhysicalParams& params, double x, double t);

/// Short-time (quadratic spreading) limit of the density; intended for t << tau.
double density_fresnel(const PhysicalParams& params, double x, double t);

/// Long-time (linear spreading) limit of the density with the tau/t prefactor;
/// intended for t >> tau. Rejects t = 0.
double density_fraunhofer(const PhysicalParams& params, double x, double t);

struct EnergyMoments {
    double mean_h;
    double delta_e;
};

EnergyMoments energy_moments(const PhysicalParams& params);

/// Two-time correlation <psi_0|psi_t>, exact closed form.
std::complex<double> correlation_unperturbed(const PhysicalParams& params, double t);

/// |C(t)| without the trigonometric round trip.
double correlation_modulus(const PhysicalParams& params, double t);

/// Correlation phase, continuous in t (never wrapped); tends to -pi/4.
double correlation_phase(const PhysicalParams& params, double t);

/// Survival probability |C(t)|^2 (identical floating path to the correlation).
double survival_unperturbed(const PhysicalParams& params, double t);

/// Quadratic short-time law 1 - [1 + 2 (p0/p_s)^2] t^2 / 8 tau^2
/// == 1 - (delta_e t / hbar)^2.
double survival_short_time(const PhysicalParams& params, double t);

/// True when spreading (not translation) dominates decorrelation:
/// p0/p_s <= 1/sqrt(2), the window where Zeno/anti-Zeno behavior is observable.
bool overlap_condition_ok(const PhysicalParams& params);

}  // namespace zeno

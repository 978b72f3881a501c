#include "analytic.hpp"

#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace zeno {

namespace {

using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw validation_error("time must be finite and >= 0");
    }
}

void require_position(double x) {
    if (!std::isfinite(x)) throw validation_error("position must be finite");
}

}  // namespace

ComplexSpread complex_spread(const PhysicalParams& params, double t) {
    require_time(t);
    const double s0 = params.sigma0();
    const double theta = params.hbar() * t / (2.0 * params.mass() * s0 * s0);
    const cd value = s0 * cd(1.0, theta);
    return {value, s0 * std::sqrt(1.0 + theta * theta)};
}

std::complex<double> psi_at(const PhysicalParams& params, double x, double t) {
    require_position(x);
    const ComplexSpread spread = complex_spread(params, t);
    const double s0 = params.sigma0();
    const double xt = params.x0() + params.p0() / params.mass() * t;
    const double e0 = params.p0() * params.p0() / (2.0 * params.mass());
    const cd norm = std::pow(2.0 * kPi * spread.value * spread.value, -0.25);
    const cd exponent =
        -(x - xt) * (x - xt) / (4.0 * s0 * spread.value) +
        cd(0.0, (params.p0() * (x - xt) + e0 * t) / params.hbar());
    return norm * std::exp(exponent);
}

WaveSample wave_sample(const PhysicalParams& params, double x, double t) {
    const cd amp = psi_at(params, x, t);
    const double st = complex_spread(params, t).modulus;
    const double s0 = params.sigma0();
    const double m = params.mass();
    const double hbar = params.hbar();
    const double xt = params.x0() + params.p0() / m * t;
    const double e0 = params.p0() * params.p0() / (2.0 * m);
    const double dx = x - xt;
    // phase of the amplitude, kept continuous: translation + spreading +
    // propagation - normalization terms
    const double phase = (params.p0() * dx + e0 * t) / hbar +
                         hbar * t * dx * dx / (8.0 * m * s0 * s0 * st * st) -
                         0.5 * std::atan(hbar * t / (2.0 * m * s0 * s0));
    return {x, t, amp, phase};
}

double density_exact(const PhysicalParams& params, double x, double t) {
    require_position(x);
    const double st = complex_spread(params, t).modulus;
    const double xt = params.x0() + params.p0() / params.mass() * t;
    return std::exp(-(x - xt) * (x - xt) / (2.0 * st * st)) /
           std::sqrt(2.0 * kPi * st * st);
}

double density_fresnel(const PhysicalParams& params, double x, double t) {
    require_position(x);
    require_time(t);
    const double s0 = params.sigma0();
    const double tau = derive_scales(params).tau;
    const double xt = params.x0() + params.p0() / params.mass() * t;
    return (1.0 - t * t / (2.0 * tau * tau)) *
           std::exp(-(x - xt) * (x - xt) / (2.0 * s0 * s0)) /
           std::sqrt(2.0 * kPi * s0 * s0);
}

double density_fraunhofer(const PhysicalParams& params, double x, double t) {
    require_position(x);
    require_time(t);
    if (t == 0.0) throw validation_error("Fraunhofer form is undefined at t = 0");
    const double s0 = params.sigma0();
    const double tau = derive_scales(params).tau;
    const double xt = params.x0() + params.p0() / params.mass() * t;
    const double ratio = tau / t;
    return ratio * std::exp(-ratio * ratio * (x - xt) * (x - xt) / (2.0 * s0 * s0)) /
           std::sqrt(2.0 * kPi * s0 * s0);
}

EnergyMoments energy_moments(const PhysicalParams& params) {
    const DerivedScales scales = derive_scales(params);
    return {scales.mean_h, scales.delta_e};
}

double correlation_modulus(const PhysicalParams& params, double t) {
    require_time(t);
    const DerivedScales scales = derive_scales(params);
    const double x = t / (2.0 * scales.tau);
    const double r = scales.momentum_ratio;
    return std::pow(1.0 + x * x, -0.25) *
           std::exp(-r * r * x * x / (2.0 * (1.0 + x * x)));
}

double correlation_phase(const PhysicalParams& params, double t) {
    require_time(t);
    const DerivedScales scales = derive_scales(params);
    const double x = t / (2.0 * scales.tau);
    const double r = scales.momentum_ratio;
    return -r * r * x / (2.0 * (1.0 + x * x)) - 0.5 * std::atan(x);
}

std::complex<double> correlation_unperturbed(const PhysicalParams& params, double t) {
    return std::polar(correlation_modulus(params, t), correlation_phase(params, t));
}

double survival_unperturbed(const PhysicalParams& params, double t) {
    return std::norm(correlation_unperturbed(params, t));
}

double survival_short_time(const PhysicalParams& params, double t) {
    require_time(t);
    const DerivedScales scales = derive_scales(params);
    const double r = scales.momentum_ratio;
    return 1.0 - (1.0 + 2.0 * r * r) * t * t / (8.0 * scales.tau * scales.tau);
}

bool overlap_condition_ok(const PhysicalParams& params) {
    const DerivedScales scales = derive_scales(params);
    return std::abs(scales.momentum_ratio) <= 1.0 / std::sqrt(2.0);
}

}  // namespace zeno

#pragma once

#include <complex>
#include <vector>

#include "params.hpp"
#include "shuffle.hpp"

namespace zeno {

/// Uniform spatial grid; n_points must be a power of two >= 256.
struct GridSpec {
    double x_min;
    double x_max;
    int n_points;

    double dx() const { return (x_max - x_min) / n_points; }
    double node(int i) const { return x_min + i * dx(); }
};

/// Domain sized to keep pad_sigmas * sigma_T of clearance beyond the centroid
/// path over the simulation horizon.
GridSpec auto_grid_spec(const PhysicalParams& params, double horizon,
                        int n_points = 4096, double pad_sigmas = 10.0);

/// Throws grid_error (with a sizing suggestion) when the spec cannot support
/// the packet over the horizon.
void validate_grid(const GridSpec& spec, const PhysicalParams& params,
                   double horizon, double pad_sigmas = 10.0);

/// Complex amplitudes sampled at grid nodes.
struct GridState {
    GridSpec spec;
    std::vector<std::complex<double>> amps;
};

/// Trapezoid quadrature of |psi|^2.
double grid_norm(const GridState& state);

/// Samples the initial Gaussian; rejects grids that cannot hold it.
GridState init_gaussian(const GridSpec& spec, const PhysicalParams& params);

/// Exact free propagation: multiply by exp(-i hbar k^2 dt / 2m) in momentum
/// space. No time-step error; discretization only.
GridState propagate_free(const GridState& state, const PhysicalParams& params,
                         double dt);

/// Trapezoid quadrature of conj(a) * b; grids must match.
std::complex<double> overlap(const GridState& a, const GridState& b);

/// Von Neumann projection onto the reference without renormalization: the
/// result is reference scaled by <reference|state>.
GridState project_measure(const GridState& state, const GridState& reference);

double position_mean(const GridState& state);
double momentum_mean(const GridState& state, const PhysicalParams& params);

struct GridEnergyMoments {
    double mean_h;
    double delta_e;
};

/// <H> and Delta E via spectral quadrature.
GridEnergyMoments grid_energy_moments(const GridState& state,
                                      const PhysicalParams& params);

struct OracleOptions {
    int n_points = 4096;
    double pad_sigmas = 10.0;
    double horizon = 1.0;     ///< correlation comparison window [0, horizon]
    int compare_points = 101;
};

struct OracleTolerances {
    double norm = 1e-8;
    double centroid = 1e-8;
    double moments_rel = 1e-6;
    double correlation = 1e-6;
    double phase = 1e-5;
    double shuffle = 1e-5;
};

struct OracleReport {
    double norm_error;
    double x_mean_error;
    double p_mean_error;
    double mean_h_rel_error;
    double delta_e_rel_error;
    double correlation_max_error;  ///< max | |C|_grid - |C|_closed |
    double phase_max_error;        ///< max wrapped phase discrepancy
    double shuffle_max_error;      ///< pipeline vs closed-form product law
    bool pass;
};

/// Runs the full comparison battery: moments at t = 0, correlation modulus and
/// phase over [0, horizon], and the propagate+project measurement pipeline
/// against the closed-form product law.
OracleReport oracle_check(const PhysicalParams& params,
                          const MeasurementSchedule& schedule,
                          const OracleOptions& options = {},
                          const OracleTolerances& tolerances = {});

}  // namespace zeno

#pragma once

#include <string>

namespace zeno {

/// Free Gaussian wave packet: centroid (x0, p0), initial spreading sigma0,
/// particle mass, and hbar (1 in natural units, configurable so unit scaling
/// stays testable).
class PhysicalParams {
public:
    PhysicalParams(double mass, double sigma0, double x0 = 0.0, double p0 = 0.0,
                   double hbar = 1.0);

    double mass() const { return mass_; }
    double sigma0() const { return sigma0_; }
    double x0() const { return x0_; }
    double p0() const { return p0_; }
    double hbar() const { return hbar_; }

private:
    double mass_;
    double sigma0_;
    double x0_;
    double p0_;
    double hbar_;
};

/// Characteristic scales derived once from the parameters.
struct DerivedScales {
    double tau;             ///< spreading time 2 m sigma0^2 / hbar
    double tau_zeno;        ///< hbar / delta_e
    double tau_inflx;       ///< sqrt(2) * tau
    double p_spread;        ///< hbar / (2 sigma0)
    double e0;              ///< p0^2 / 2m
    double mean_h;          ///< e0 + p_spread^2 / 2m
    double delta_e;         ///< energy spread
    double momentum_ratio;  ///< p0 / p_spread
};

DerivedScales derive_scales(const PhysicalParams& params);

/// Natural (unperturbed) spreading regimes.
enum class NaturalRegime { ehrenfest_huygens, fresnel, fraunhofer };

/// Same trichotomy with the crossover window kept explicit.
enum class NaturalRegimeFine { ehrenfest_huygens, fresnel, transition, fraunhofer };

/// Fixed cutoffs: t < tau/100 Ehrenfest-Huygens, t < tau/3 Fresnel,
/// t > 10 tau Fraunhofer, in between "transition".
NaturalRegimeFine classify_natural_regime_fine(double t, const DerivedScales& scales);

/// Three-way classification; the transition window maps to Fresnel.
NaturalRegime classify_natural_regime(double t, const DerivedScales& scales);

std::string to_string(NaturalRegime regime);

}  // namespace zeno

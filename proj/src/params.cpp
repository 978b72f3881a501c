#include "params.hpp"

#include <cmath>

#include "errors.hpp"

namespace zeno {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw validation_error(std::string(name) + " must be finite");
    }
}

}  // namespace

PhysicalParams::PhysicalParams(double mass, double sigma0, double x0, double p0,
                               double hbar)
    : mass_(mass), sigma0_(sigma0), x0_(x0), p0_(p0), hbar_(hbar) {
    require_finite(mass, "mass");
    require_finite(sigma0, "sigma0");
    require_finite(x0, "x0");
    require_finite(p0, "p0");
    require_finite(hbar, "hbar");
    if (mass <= 0.0) throw validation_error("mass must be > 0");
    if (sigma0 <= 0.0) throw validation_error("sigma0 must be > 0");
    if (hbar <= 0.0) throw validation_error("hbar must be > 0");
}

DerivedScales derive_scales(const PhysicalParams& params) {
    const double m = params.mass();
    const double s0 = params.sigma0();
    const double hbar = params.hbar();
    const double p0 = params.p0();

    DerivedScales out;
    out.tau = 2.0 * m * s0 * s0 / hbar;
    out.tau_inflx = std::sqrt(2.0) * out.tau;
    out.p_spread = hbar / (2.0 * s0);
    out.e0 = p0 * p0 / (2.0 * m);
    out.mean_h = out.e0 + out.p_spread * out.p_spread / (2.0 * m);
    out.delta_e = std::sqrt(2.0 * out.p_spread * out.p_spread / m) *
                  std::sqrt(p0 * p0 / (2.0 * m) +
                            out.p_spread * out.p_spread / (4.0 * m));
    out.tau_zeno = hbar / out.delta_e;
    out.momentum_ratio = p0 / out.p_spread;
    return out;
}

NaturalRegimeFine classify_natural_regime_fine(double t, const DerivedScales& scales) {
    if (!(t >= 0.0)) throw validation_error("time must be >= 0");
    if (t < scales.tau / 100.0) return NaturalRegimeFine::ehrenfest_huygens;
    if (t < scales.tau / 3.0) return NaturalRegimeFine::fresnel;
    if (t > 10.0 * scales.tau) return NaturalRegimeFine::fraunhofer;
    return NaturalRegimeFine::transition;
}

NaturalRegime classify_natural_regime(double t, const DerivedScales& scales) {
    switch (classify_natural_regime_fine(t, scales)) {
        case NaturalRegimeFine::ehrenfest_huygens:
            return NaturalRegime::ehrenfest_huygens;
        case NaturalRegimeFine::fraunhofer:
            return NaturalRegime::fraunhofer;
        default:
            return NaturalRegime::fresnel;
    }
}

std::string to_string(NaturalRegime regime) {
    switch (regime) {
        case NaturalRegime::ehrenfest_huygens:
            return "EhrenfestHuygens";
        case NaturalRegime::fresnel:
            return "Fresnel";
        case NaturalRegime::fraunhofer:
            return "Fraunhofer";
    }
    return "Unknown";
}

}  // namespace zeno

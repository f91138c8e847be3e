// Physical parameters of the chiral emitter/resonator chain and the
// conversion identities between waveguide coupling coefficients and
// tight-binding strengths.
//
// All frequencies and rates are stored as angular quantities (rad/s). The
// free spectral range follows the same convention, so a ring quoted as
// "FSR/2pi = 0.6 THz" is stored as 2*pi*0.6e12.
#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chirow/linalg.hpp"

namespace chirow {

inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double two_pi = 6.283185307179586476925286766559;

class InvalidParams : public std::invalid_argument {
public:
    explicit InvalidParams(const std::string& what) : std::invalid_argument(what) {}
};

// Experiment-level knobs. Coupling coefficients kappa_* are purely imaginary
// by waveguide mode-coupling theory; t = sqrt(1-|kappa|^2) is real.
struct PhysicalParams {
    double omega0 = 0.0;      // resonator resonance
    double fsr = 0.0;         // free spectral range (angular)
    double n_eff = 0.0;       // effective index (0 = geometry route unused)
    double radius = 0.0;      // ring radius, m (0 = geometry route unused)
    double omega_q = 0.0;     // emitter transition (defaults to omega0)
    double gamma_qe = 0.0;    // emitter nonguided dissipation
    double Gamma = 0.0;       // emitter decay into the resonator mode
    cplx kappa1{0.0, 0.0};    // intra-cell resonator coupling
    cplx kappa2{0.0, 0.0};    // inter-cell resonator coupling
    cplx kappa_in{0.0, 0.0};  // input waveguide coupling
    cplx kappa_out{0.0, 0.0}; // output waveguide coupling
    double gamma_in = 0.0;    // resonator intrinsic loss
    int n_cells = 1;
    double epsilon = 0.0;               // scatterer strength (0 disables)
    std::optional<int> scatterer_cell;  // defaults to the middle cell
};

struct TightBindingParams {
    double g = 0.0;
    double J1 = 0.0;
    double J2 = 0.0;
    double omega0 = 0.0;
    double omega_q = 0.0;
    double gamma_qe = 0.0;
    int n_cells = 1;
};

struct DerivedLosses {
    double gamma_ex = 0.0;   // external loss of the edge resonators
    double gamma_tol = 0.0;  // gamma_ex + gamma_in
    double alpha = 1.0;      // propagation loss coefficient, clamped to [0,1]
};

// Angular FSR from ring geometry: 2*pi * c/(n_eff * 2*pi*r) = c/(n_eff*r).
inline double fsr_from_geometry(double n_eff, double radius) {
    if (n_eff <= 0.0 || radius <= 0.0)
        throw InvalidParams("fsr_from_geometry: n_eff and radius must be positive");
    return speed_of_light / (n_eff * radius);
}

inline double transmission_coefficient(cplx kappa, const char* name) {
    if (std::abs(kappa.real()) > 1e-12 * std::max(1.0, std::abs(kappa)))
        throw InvalidParams(std::string(name) + ": coupling coefficient must be purely imaginary");
    const double k = std::abs(kappa);
    if (k >= 1.0) throw InvalidParams(std::string(name) + ": |kappa| must be < 1");
    return std::sqrt(1.0 - k * k);
}

// Full-document validation; returns all problems at once.
inline std::vector<std::string> validate(const PhysicalParams& p) {
    std::vector<std::string> errs;
    auto coupling = [&](cplx kappa, const char* name) {
        if (std::abs(kappa.real()) > 1e-12 * std::max(1.0, std::abs(kappa)))
            errs.push_back(std::string(name) + ": must be purely imaginary");
        if (std::abs(kappa) >= 1.0) errs.push_back(std::string(name) + ": |kappa| must be < 1");
        if (kappa.imag() < 0.0) errs.push_back(std::string(name) + ": Im(kappa) must be >= 0");
    };
    coupling(p.kappa1, "kappa1");
    coupling(p.kappa2, "kappa2");
    coupling(p.kappa_in, "kappa_in");
    coupling(p.kappa_out, "kappa_out");
    if (p.omega0 <= 0.0) errs.push_back("omega0: must be positive");
    if (p.fsr < 0.0) errs.push_back("fsr: must be >= 0");
    if (p.Gamma < 0.0) errs.push_back("Gamma: must be >= 0");
    if (p.gamma_qe < 0.0) errs.push_back("gamma_qe: must be >= 0");
    if (p.gamma_in < 0.0) errs.push_back("gamma_in: must be >= 0");
    if (p.n_cells < 1) errs.push_back("n_cells: must be >= 1");
    if (p.epsilon < 0.0) errs.push_back("epsilon: must be >= 0");
    if (p.scatterer_cell && (*p.scatterer_cell < 1 || *p.scatterer_cell > p.n_cells))
        errs.push_back("scatterer_cell: must lie in [1, n_cells]");

    const bool geometry = p.n_eff > 0.0 && p.radius > 0.0;
    if (p.fsr <= 0.0 && !geometry)
        errs.push_back("fsr: give fsr directly or n_eff plus radius");
    if (p.fsr > 0.0 && geometry) {
        const double geo = fsr_from_geometry(p.n_eff, p.radius);
        if (std::abs(geo - p.fsr) > 0.01 * p.fsr)
            errs.push_back("fsr: disagrees with c/(n_eff*2*pi*r) by more than 1%");
    }
    return errs;
}

// Validated copy with defaults resolved (fsr from geometry, omega_q = omega0,
// scatterer in the middle cell).
inline PhysicalParams resolve(PhysicalParams p) {
    if (p.omega_q == 0.0) p.omega_q = p.omega0;
    if (p.fsr <= 0.0 && p.n_eff > 0.0 && p.radius > 0.0)
        p.fsr = fsr_from_geometry(p.n_eff, p.radius);
    if (!p.scatterer_cell) p.scatterer_cell = (p.n_cells + 1) / 2;
    auto errs = validate(p);
    if (!errs.empty()) {
        std::string what = "invalid parameters:";
        for (const auto& e : errs) what += "\n  " + e;
        throw InvalidParams(what);
    }
    return p;
}

// g = sqrt(2*Gamma*F), J_i = Im(kappa_i)*F.
inline TightBindingParams derive_tight_binding(const PhysicalParams& p) {
    if (p.kappa1.imag() < 0.0 || p.kappa2.imag() < 0.0)
        throw InvalidParams("derive_tight_binding: Im(kappa) < 0 breaks the coupling sign convention");
    transmission_coefficient(p.kappa1, "kappa1");
    transmission_coefficient(p.kappa2, "kappa2");
    TightBindingParams tb;
    tb.g = std::sqrt(2.0 * p.Gamma * p.fsr);
    tb.J1 = p.kappa1.imag() * p.fsr;
    tb.J2 = p.kappa2.imag() * p.fsr;
    tb.omega0 = p.omega0;
    tb.omega_q = p.omega_q == 0.0 ? p.omega0 : p.omega_q;
    tb.gamma_qe = p.gamma_qe;
    tb.n_cells = p.n_cells;
    return tb;
}

// Inverse map, used by the round-trip identity tests.
inline PhysicalParams invert_tight_binding(const TightBindingParams& tb, double fsr) {
    PhysicalParams p;
    p.omega0 = tb.omega0;
    p.omega_q = tb.omega_q;
    p.gamma_qe = tb.gamma_qe;
    p.n_cells = tb.n_cells;
    p.fsr = fsr;
    p.Gamma = tb.g * tb.g / (2.0 * fsr);
    p.kappa1 = cplx{0.0, tb.J1 / fsr};
    p.kappa2 = cplx{0.0, tb.J2 / fsr};
    return p;
}

// gamma_ex = -ln|t_in| * F, gamma_tol = gamma_ex + gamma_in, alpha = 1 - 2*gamma_in/F.
inline DerivedLosses derived_losses(const PhysicalParams& p) {
    const double t_in = transmission_coefficient(p.kappa_in, "kappa_in");
    DerivedLosses d;
    d.gamma_ex = -std::log(t_in) * p.fsr;
    d.gamma_tol = d.gamma_ex + p.gamma_in;
    d.alpha = std::clamp(1.0 - 2.0 * p.gamma_in / p.fsr, 0.0, 1.0);
    return d;
}

// Backscattering rate of the embedded scatterer, h = epsilon * F.
inline double scatterer_coupling(const PhysicalParams& p) {
    if (p.epsilon < 0.0) throw InvalidParams("scatterer_coupling: epsilon must be >= 0");
    return p.epsilon * p.fsr;
}

}  // namespace chirow

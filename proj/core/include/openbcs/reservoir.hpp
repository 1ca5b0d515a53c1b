// reservoir.hpp — Thermal bosonic bath: Bose occupation functions, the coupling
// spectral density, the six complex damping coefficients Gamma_alpha^{(a,b)},
// and the finite-coupling double time integral whose vanishing-coupling limit
// they govern.
//
// The bath enters only through correlation functions; modes are never stored.
// All mode sums are evaluated as continuum radial quadratures in momentum,
// where the integrands stay smooth down to p = 0.

#pragma once

#include <array>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "openbcs/meanfield.hpp"

namespace openbcs::reservoir {

using Complex = std::complex<double>;
using meanfield::Alpha;
using meanfield::idx;

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Quadrature {
    int n_radial{4001};   // radial grid points (forced odd for Simpson)
    double p_max{0.0};    // momentum cutoff; 0 = derived from f_width
};

// Bath parameters: inverse temperature, quadratic dispersion eps_p = p^2/2m,
// and an isotropic Gaussian coupling profile f(p) = A exp(-p^2 / 2 sigma^2).
struct ReservoirSpec {
    double beta{1.0};
    double mass{1.0};
    double f_width{1.0};
    double f_amplitude{1.0};
    Quadrature quadrature{};
    double broadening{0.05};   // Gaussian delta width (energy units)
    double k_boltzmann{1.0};

    // Cutoff where |f(p)|^2 drops below 1e-12 of its peak, unless overridden.
    double effective_p_max() const;

    void validate() const;
};

struct BoseOccupation {
    double m;  // <a a^dag> = 1/(1 - e^{-beta eps})
    double n;  // <a^dag a> = m - 1
};

// Thermal two-point functions of a mode at energy epsilon > 0.
BoseOccupation occupation(const ReservoirSpec& spec, double epsilon);

// Continuum density of |f|^2 over energy: J(eps) = m p |f(p)|^2 / (2 pi^2)
// with p = sqrt(2 m eps); zero for eps <= 0.
double spectral_density(const ReservoirSpec& spec, double epsilon);

// The six damping coefficients, indexed by the oscillation branch alpha.
struct GammaSet {
    std::array<Complex, 3> a{};  // Gamma_alpha^{(a)}
    std::array<Complex, 3> b{};  // Gamma_alpha^{(b)}

    GammaSet scaled(double c) const;
};

// Real parts in closed form: pi J(Omega) m(Omega) and pi J(Omega) n(Omega)
// at the resonance energy Omega_alpha = nu + alpha*omega, zero when
// Omega_alpha <= 0 (no bath mode there). Imaginary parts are left at zero.
GammaSet gamma_resonant(const ReservoirSpec& spec, double omega, double nu);

// Full complex coefficients with the exact resonant real parts plus
// principal-value imaginary parts. Sign convention: the half-line time
// integrals give +i PV for the (a) family and -i PV for the (b) family.
GammaSet gamma_limit(const ReservoirSpec& spec, double omega, double nu);

// Real parts via a Gaussian-broadened delta of width `broadening` instead of
// the closed form; converges to gamma_resonant as the broadening shrinks.
GammaSet gamma_full(const ReservoirSpec& spec, const meanfield::MeanFieldPoint& point);

// D(a,b) = int_0^t dt1 int_0^{t1} dt2 e^{i a t1/lambda^2} e^{-i b t2/lambda^2},
// evaluated in closed form with series fallbacks near vanishing denominators.
Complex double_phase_integral(double a, double b, double lambda, double t);

// Second-order term I_lambda(t) of the coupling expansion, per site, for an
// arbitrary system state. As lambda -> 0, I_lambda(t)/t approaches
// stochastic_limit_rate. Set cross_terms_only to isolate the off-diagonal
// (alpha != beta) oscillation branches.
Complex second_order_term(const ReservoirSpec& spec,
                          const meanfield::MeanFieldPoint& point,
                          const Eigen::Matrix2cd& system_state,
                          double lambda, double t,
                          bool cross_terms_only = false);

// The limit value I(t)/t = -sum_alpha { <rho rho^dag> Gamma^(a)
//                                     + <rho^dag rho> Gamma^(b) }.
Complex stochastic_limit_rate(const ReservoirSpec& spec,
                              const meanfield::MeanFieldPoint& point,
                              const Eigen::Matrix2cd& system_state);

}  // namespace openbcs::reservoir

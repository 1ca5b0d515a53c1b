// meanfield.hpp — Semiclassical single-site layer: classical intensive values,
// oscillation frequencies, the rho decomposition of the freely evolved sigma^+

#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace openbcs::meanfield {

using Complex = std::complex<double>;
using SiteOperator = Eigen::Matrix2cd;

// Oscillation branch labels of the free evolution: frequencies nu + alpha*omega.
enum class Alpha { Zero = 0, Plus = 1, Minus = 2 };

constexpr std::size_t idx(Alpha a) { return static_cast<std::size_t>(a); }

inline constexpr std::array<double, 3> kAlphaSign{0.0, +1.0, -1.0};

SiteOperator sigma_plus();
SiteOperator sigma_minus();
SiteOperator sigma_zero();

// Classical values of the intensive operators plus the model couplings.
// x is the polarization S^0, y the pairing amplitude S+S-, s the classical
// S+ with |s|^2 = y (default phase convention: s real nonnegative).
struct MeanFieldPoint {
    double x{0.0};
    double y{0.0};
    Complex s{0.0, 0.0};
    double epsilon_tilde{0.0};
    double g{1.0};

    // s = +sqrt(y)
    static MeanFieldPoint from_xy(double x, double y, double epsilon_tilde, double g);
    // s = sqrt(y) e^{i phase}
    static MeanFieldPoint with_phase(double x, double y, double phase,
                                     double epsilon_tilde, double g);

    // Bloch-vector length of the matching product state is sqrt(x^2+4y);
    // a single-site density matrix exists only when it does not exceed 1.
    bool admissible(double slack = 1e-12) const;

    void validate() const;
};

struct Pulsation {
    double omega;  // g sqrt(x^2 + 4y)
    double nu;     // 2 epsilon_tilde + g x
};

Pulsation pulsation(const MeanFieldPoint& point);

// nu_alpha(p) = nu - epsilon_p + alpha*omega, indexed by Alpha.
std::array<double, 3> resonance_frequencies(const MeanFieldPoint& point,
                                            double epsilon_p);

// The three site operators splitting sigma^+(t) into oscillation branches.
// Requires y > 0: the branch denominators omega +- g x vanish at y = 0.
std::array<SiteOperator, 3> rho_operators(const MeanFieldPoint& point);

// sigma^+(t) = e^{i nu t} rho_0 + e^{i(nu+omega)t} rho_+ + e^{i(nu-omega)t} rho_-.
SiteOperator sigma_plus_evolution(const MeanFieldPoint& point, double t);

// sigma^0(t) integrated in closed form from
// d sigma^0/dt = 2ig (sigma^+(t) sbar e^{-i nu t} - sigma^-(t) s e^{i nu t}).
SiteOperator sigma_zero_evolution(const MeanFieldPoint& point, double t);

// Central-difference residual of
// d sigma^+/dt = 2i eps sigma^+(t) + i g s e^{i nu t} sigma^0(t); O(dt^2).
double classical_flow_residual(const MeanFieldPoint& point, double t,
                               double dt = 1e-4);

// Single-site density matrix with <sigma^0> = x and <sigma^+> = s.
// Requires x^2 + 4y <= 1.
SiteOperator meanfield_state(const MeanFieldPoint& point);

}  // namespace openbcs::meanfield

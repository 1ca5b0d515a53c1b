// meanfield.cpp — Semiclassical free evolution of the site operators

#include "openbcs/meanfield.hpp"

#include <cmath>
#include <stdexcept>

namespace openbcs::meanfield {

namespace {

const Complex kI{0.0, 1.0};

}  // namespace

SiteOperator sigma_plus() {
    SiteOperator m;
    m << 0, 1, 0, 0;
    return m;
}

SiteOperator sigma_minus() {
    SiteOperator m;
    m << 0, 0, 1, 0;
    return m;
}

SiteOperator sigma_zero() {
    SiteOperator m;
    m << 1, 0, 0, -1;
    return m;
}

MeanFieldPoint MeanFieldPoint::from_xy(double x, double y, double epsilon_tilde,
                                       double g) {
    MeanFieldPoint p{x, y, Complex(std::sqrt(std::max(y, 0.0)), 0.0), epsilon_tilde, g};
    p.validate();
    return p;
}

MeanFieldPoint MeanFieldPoint::with_phase(double x, double y, double phase,
                                          double epsilon_tilde, double g) {
    const double r = std::sqrt(std::max(y, 0.0));
    MeanFieldPoint p{x, y, Complex(r * std::cos(phase), r * std::sin(phase)),
                     epsilon_tilde, g};
    p.validate();
    return p;
}

bool MeanFieldPoint::admissible(double slack) const {
    return x * x + 4.0 * y <= 1.0 + slack;
}

void MeanFieldPoint::validate() const {
    if (g <= 0.0) {
        throw std::invalid_argument("coupling g must be positive");
    }
    if (y < 0.0) {
        throw std::invalid_argument("pairing amplitude y must be nonnegative");
    }
    if (std::abs(std::norm(s) - y) > 1e-14 * std::max(1.0, y)) {
        throw std::invalid_argument("|s|^2 must equal y");
    }
}

Pulsation pulsation(const MeanFieldPoint& point) {
    const double r2 = point.x * point.x + 4.0 * point.y;
    if (r2 <= 0.0) {
        throw std::domain_error("degenerate point: x = y = 0 has no pulsation");
    }
    return {point.g * std::sqrt(r2), 2.0 * point.epsilon_tilde + point.g * point.x};
}

std::array<double, 3> resonance_frequencies(const MeanFieldPoint& point,
                                            double epsilon_p) {
    const Pulsation p = pulsation(point);
    std::array<double, 3> nu{};
    for (std::size_t k = 0; k < 3; ++k) {
        nu[k] = p.nu - epsilon_p + kAlphaSign[k] * p.omega;
    }
    return nu;
}

std::array<SiteOperator, 3> rho_operators(const MeanFieldPoint& point) {
    point.validate();
    if (point.y <= 0.0) {
        throw std::domain_error("rho operators need y > 0 (singular branch denominators)");
    }
    const auto [omega, nu] = pulsation(point);
    const double g = point.g;
    const Complex s = point.s;
    const Complex sbar = std::conj(s);
    const double u = omega + g * point.x;
    const double v = omega - g * point.x;

    const SiteOperator sp = sigma_plus();
    const SiteOperator sm = sigma_minus();
    const SiteOperator s0 = sigma_zero();

    std::array<SiteOperator, 3> rho;
    rho[idx(Alpha::Zero)] =
        (g * g * s / (omega * omega)) * (2.0 * sbar * sp + point.x * s0 + 2.0 * s * sm);
    rho[idx(Alpha::Plus)] =
        (g * s / (omega * omega)) *
        (g * sbar * (v / u) * sp + (v / 2.0) * s0 - g * s * sm);
    rho[idx(Alpha::Minus)] =
        (g * s / (omega * omega)) *
        (g * sbar * (u / v) * sp - (u / 2.0) * s0 - g * s * sm);
    return rho;
}

SiteOperator sigma_plus_evolution(const MeanFieldPoint& point, double t) {
    const auto rho = rho_operators(point);
    const auto [omega, nu] = pulsation(point);
    SiteOperator out = SiteOperator::Zero();
    for (std::size_t k = 0; k < 3; ++k) {
        out += std::exp(kI * ((nu + kAlphaSign[k] * omega) * t)) * rho[k];
    }
    return out;
}

SiteOperator sigma_zero_evolution(const MeanFieldPoint& point, double t) {
    const auto rho = rho_operators(point);
    const auto [omega, nu] = pulsation(point);
    (void)nu;
    // int_0^t e^{+-i omega u} du; the branch-0 contributions cancel exactly.
    const Complex ep = (std::exp(kI * (omega * t)) - 1.0) / (kI * omega);
    const Complex em = std::conj(ep);
    const Complex s = point.s;
    const Complex sbar = std::conj(s);
    const SiteOperator& rp = rho[idx(Alpha::Plus)];
    const SiteOperator& rm = rho[idx(Alpha::Minus)];
    return sigma_zero() +
           2.0 * kI * point.g *
               (sbar * (rp * ep + rm * em) -
                s * (rp.adjoint() * em + rm.adjoint() * ep));
}

double classical_flow_residual(const MeanFieldPoint& point, double t, double dt) {
    if (dt <= 0.0) {
        throw std::invalid_argument("dt must be positive");
    }
    const auto [omega, nu] = pulsation(point);
    (void)omega;
    const SiteOperator derivative =
        (sigma_plus_evolution(point, t + dt) - sigma_plus_evolution(point, t - dt)) /
        (2.0 * dt);
    const SiteOperator rhs =
        2.0 * kI * point.epsilon_tilde * sigma_plus_evolution(point, t) +
        kI * point.g * point.s * std::exp(kI * (nu * t)) * sigma_zero_evolution(point, t);
    return (derivative - rhs).cwiseAbs().maxCoeff();
}

SiteOperator meanfield_state(const MeanFieldPoint& point) {
    point.validate();
    if (!point.admissible()) {
        throw std::domain_error("(x, y) not realizable by a single-site state: x^2 + 4y > 1");
    }
    SiteOperator tau;
    tau << 0.5 * (1.0 + point.x), std::conj(point.s),
           point.s,               0.5 * (1.0 - point.x);
    return tau;
}

}  // namespace openbcs::meanfield

// generator.cpp — Generator evaluation and the two-route comparison

#include "openbcs/generator.hpp"

#include <cmath>
#include <stdexcept>

namespace openbcs::generator {

using Complex = std::complex<double>;

namespace {

SiteOperator comm(const SiteOperator& a, const SiteOperator& b) {
    return a * b - b * a;
}

}  // namespace

SiteOperator lindblad_apply(const MeanFieldPoint& point, const GammaSet& gammas,
                            const SiteOperator& x) {
    const auto rho = meanfield::rho_operators(point);
    SiteOperator out = SiteOperator::Zero();
    for (std::size_t k = 0; k < 3; ++k) {
        const SiteOperator& r = rho[k];
        const SiteOperator rd = r.adjoint();
        out += comm(r, x) * rd * gammas.a[k];
        out += comm(rd, x) * r * gammas.b[k];
        out -= r * comm(rd, x) * std::conj(gammas.a[k]);
        out -= rd * comm(r, x) * std::conj(gammas.b[k]);
    }
    return out;
}

double h_function(const MeanFieldPoint& point, const GammaSet& gammas) {
    const auto [omega, nu] = meanfield::pulsation(point);
    (void)nu;
    const double u = omega + point.g * point.x;
    const double v = omega - point.g * point.x;
    if (std::abs(u) < 1e-300 || std::abs(v) < 1e-300) {
        throw std::domain_error("h_function: singular branch denominators (y = 0)");
    }
    const double g = point.g;
    using meanfield::Alpha;
    using meanfield::idx;
    return gammas.a[idx(Alpha::Plus)].real() * (omega - g) / (u * u) +
           gammas.a[idx(Alpha::Minus)].real() * (omega + g) / (v * v) +
           gammas.b[idx(Alpha::Plus)].real() * (omega + g) / (u * u) +
           gammas.b[idx(Alpha::Minus)].real() * (omega - g) / (v * v);
}

double generator_s0_closed(const MeanFieldPoint& point, const GammaSet& gammas) {
    const auto [omega, nu] = meanfield::pulsation(point);
    (void)nu;
    const double g = point.g;
    return -8.0 * std::pow(g, 4) * point.x * point.y * point.y /
           std::pow(omega, 3) * h_function(point, gammas);
}

double generator_splus_sminus_closed(const MeanFieldPoint& point,
                                     const GammaSet& gammas) {
    const auto [omega, nu] = meanfield::pulsation(point);
    (void)nu;
    const double g = point.g;
    return -16.0 * std::pow(g, 4) * std::pow(point.y, 3) /
           std::pow(omega, 3) * h_function(point, gammas);
}

GeneratorReport oracle_compare(const MeanFieldPoint& point, const GammaSet& gammas) {
    if (!point.admissible()) {
        throw std::domain_error("oracle_compare needs an admissible point (x^2 + 4y <= 1)");
    }
    if (point.y <= 0.0) {
        throw std::domain_error("oracle_compare needs y > 0");
    }

    GeneratorReport report;
    report.point = point;
    report.gammas = gammas;

    const SiteOperator tau = meanfield::meanfield_state(point);
    const Complex t1 = (tau * lindblad_apply(point, gammas, meanfield::sigma_zero())).trace();
    const Complex t2 = (tau * lindblad_apply(point, gammas, meanfield::sigma_plus())).trace();

    report.f1_oracle = t1.real();
    report.f2_oracle = 2.0 * (std::conj(point.s) * t2).real();
    report.f1_closed = generator_s0_closed(point, gammas);
    report.f2_closed = generator_splus_sminus_closed(point, gammas);

    report.res1_abs = std::abs(report.f1_closed - report.f1_oracle);
    report.res2_abs = std::abs(report.f2_closed - report.f2_oracle);
    const double d1 = std::max(std::abs(report.f1_closed), std::abs(report.f1_oracle));
    const double d2 = std::max(std::abs(report.f2_closed), std::abs(report.f2_oracle));
    report.res1_rel = d1 > 1e-12 ? report.res1_abs / d1 : 0.0;
    report.res2_rel = d2 > 1e-12 ? report.res2_abs / d2 : 0.0;
    return report;
}

}  // namespace openbcs::generator

// reservoir.cpp — Thermal-bath correlation machinery

#include "openbcs/reservoir.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace openbcs::reservoir {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI{0.0, 1.0};

// Largest oscillatory grid before second_order_term refuses to run.
constexpr int kMaxOscillatoryPoints = (1 << 22) + 1;

int force_odd(int n) { return (n % 2 == 0) ? n + 1 : n; }

double simpson(const std::vector<double>& f, double h) {
    double acc = f.front() + f.back();
    for (std::size_t i = 1; i + 1 < f.size(); i += 2) acc += 4.0 * f[i];
    for (std::size_t i = 2; i + 1 < f.size(); i += 2) acc += 2.0 * f[i];
    return acc * h / 3.0;
}

// |f(p)|^2 = A^2 exp(-p^2 / sigma^2)
double coupling_sq(const ReservoirSpec& spec, double p) {
    const double a = spec.f_amplitude;
    return a * a * std::exp(-p * p / (spec.f_width * spec.f_width));
}

// Radial continuum measure of the mode sum: K(p) = p^2 |f(p)|^2 / (2 pi^2),
// so that sum_p |f(p)|^2 / V -> int K(p) dp.
double mode_kernel(const ReservoirSpec& spec, double p) {
    return p * p * coupling_sq(spec, p) / (2.0 * kPi * kPi);
}

// K(p) m(eps_p); the 1/eps Bose divergence cancels against the p^2 phase
// space, so the product extends smoothly to p = 0.
double kernel_m(const ReservoirSpec& spec, double p) {
    const double eps = p * p / (2.0 * spec.mass);
    const double z = spec.beta * eps;
    if (z > 1e-6) {
        return mode_kernel(spec, p) / (-std::expm1(-z));
    }
    const double base = spec.mass * coupling_sq(spec, p) / (kPi * kPi * spec.beta);
    return base * (1.0 + z / 2.0 + z * z / 12.0);
}

double kernel_n(const ReservoirSpec& spec, double p) {
    return kernel_m(spec, p) - mode_kernel(spec, p);
}

// PV int_0^pmax dp q(p) / (Omega - eps_p) by subtracting the singular part.
template <typename F>
double pv_integral(const ReservoirSpec& spec, F&& q, double omega_res) {
    const double p_max = spec.effective_p_max();
    const int n = force_odd(std::max(spec.quadrature.n_radial, 101));
    const double h = p_max / (n - 1);
    const double eps_max = p_max * p_max / (2.0 * spec.mass);
    std::vector<double> vals(n);

    if (omega_res <= 0.0 || omega_res >= eps_max) {
        for (int i = 0; i < n; ++i) {
            const double p = i * h;
            vals[i] = q(p) / (omega_res - p * p / (2.0 * spec.mass));
        }
        return simpson(vals, h);
    }

    const double ps = std::sqrt(2.0 * spec.mass * omega_res);
    const double ws = 2.0 * spec.mass * q(ps) / (2.0 * ps);
    for (int i = 0; i < n; ++i) {
        const double p = i * h;
        const double w = 2.0 * spec.mass * q(p) / (ps + p);
        const double d = ps - p;
        if (std::abs(d) > 1e-9 * p_max) {
            vals[i] = (w - ws) / d;
        } else {
            // removable point: -(dW/dp)(ps)
            const double wl = 2.0 * spec.mass * q(ps - h) / (ps + ps - h);
            const double wr = 2.0 * spec.mass * q(ps + h) / (ps + ps + h);
            vals[i] = -(wr - wl) / (2.0 * h);
        }
    }
    return simpson(vals, h) + ws * std::log(ps / (p_max - ps));
}

// int_0^T e^{i c u} du
Complex phase_integral(double c, double t) {
    const Complex z = kI * (c * t);
    if (std::abs(z) < 1e-4) {
        return t * (1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0);
    }
    return (std::exp(z) - 1.0) / (kI * c);
}

// M_k = int_0^T u^k e^{iAu} du for k = 0..kmax
void power_phase_integrals(double a, double t, int kmax, Complex* m) {
    if (std::abs(a * t) <= 30.0) {
        const int mmax = static_cast<int>(std::abs(a * t)) + 45;
        std::vector<Complex> pw(mmax + 1);
        pw[0] = 1.0;
        for (int j = 1; j <= mmax; ++j) {
            pw[j] = pw[j - 1] * (kI * (a * t)) / double(j);
        }
        double t_pow = t;
        for (int k = 0; k <= kmax; ++k) {
            Complex acc{0.0, 0.0};
            for (int j = 0; j <= mmax; ++j) {
                acc += pw[j] * (t_pow / double(k + j + 1));
            }
            m[k] = acc;
            t_pow *= t;
        }
    } else {
        m[0] = phase_integral(a, t);
        const Complex eiat = std::exp(kI * (a * t));
        double t_pow = 1.0;
        for (int k = 1; k <= kmax; ++k) {
            t_pow *= t;
            m[k] = (t_pow * eiat - double(k) * m[k - 1]) / (kI * a);
        }
    }
}

struct BranchTraces {
    Complex forward;   // tr(state rho_a rho_b^dag)
    Complex backward;  // tr(state rho_a^dag rho_b)
};

}  // namespace

double ReservoirSpec::effective_p_max() const {
    if (quadrature.p_max > 0.0) return quadrature.p_max;
    // exp(-p^2/sigma^2) = 1e-12  =>  p = sigma sqrt(12 ln 10)
    return f_width * std::sqrt(12.0 * std::log(10.0));
}

void ReservoirSpec::validate() const {
    if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
    if (mass <= 0.0) throw std::invalid_argument("mass must be positive");
    if (f_width <= 0.0) throw std::invalid_argument("f_width must be positive");
    if (f_amplitude <= 0.0) throw std::invalid_argument("f_amplitude must be positive");
    if (broadening < 0.0) throw std::invalid_argument("broadening must be nonnegative");
    if (k_boltzmann <= 0.0) throw std::invalid_argument("k_boltzmann must be positive");
    if (quadrature.n_radial < 101) {
        throw std::invalid_argument("n_radial must be at least 101");
    }
    if (quadrature.p_max < 0.0) throw std::invalid_argument("p_max must be nonnegative");
}

BoseOccupation occupation(const ReservoirSpec& spec, double epsilon) {
    if (epsilon <= 0.0) {
        throw std::domain_error("occupation undefined at nonpositive energy");
    }
    const double m = 1.0 / (-std::expm1(-spec.beta * epsilon));
    return {m, m - 1.0};
}

double spectral_density(const ReservoirSpec& spec, double epsilon) {
    if (epsilon <= 0.0) return 0.0;
    const double p = std::sqrt(2.0 * spec.mass * epsilon);
    return spec.mass * p * coupling_sq(spec, p) / (2.0 * kPi * kPi);
}

GammaSet GammaSet::scaled(double c) const {
    GammaSet out;
    for (std::size_t k = 0; k < 3; ++k) {
        out.a[k] = c * a[k];
        out.b[k] = c * b[k];
    }
    return out;
}

GammaSet gamma_resonant(const ReservoirSpec& spec, double omega, double nu) {
    spec.validate();
    if (omega <= 0.0) throw std::invalid_argument("omega must be positive");
    GammaSet out;
    for (std::size_t k = 0; k < 3; ++k) {
        const double res = nu + meanfield::kAlphaSign[k] * omega;
        if (res > 0.0) {
            const double j = spectral_density(spec, res);
            const BoseOccupation occ = occupation(spec, res);
            out.a[k] = Complex(kPi * j * occ.m, 0.0);
            out.b[k] = Complex(kPi * j * occ.n, 0.0);
        }
    }
    return out;
}

GammaSet gamma_limit(const ReservoirSpec& spec, double omega, double nu) {
    GammaSet out = gamma_resonant(spec, omega, nu);
    for (std::size_t k = 0; k < 3; ++k) {
        const double res = nu + meanfield::kAlphaSign[k] * omega;
        const double ima =
            pv_integral(spec, [&](double p) { return kernel_m(spec, p); }, res);
        const double imb =
            pv_integral(spec, [&](double p) { return kernel_n(spec, p); }, res);
        out.a[k] += kI * ima;
        out.b[k] -= kI * imb;
    }
    return out;
}

GammaSet gamma_full(const ReservoirSpec& spec, const meanfield::MeanFieldPoint& point) {
    spec.validate();
    const auto [omega, nu] = meanfield::pulsation(point);
    const double eta = spec.broadening;
    if (eta <= 0.0) {
        throw std::invalid_argument("gamma_full needs a positive broadening width");
    }
    const double p_max = spec.effective_p_max();

    auto broadened = [&](auto&& q, double res, int n_points) {
        const int n = force_odd(n_points);
        const double h = p_max / (n - 1);
        std::vector<double> vals(n);
        const double norm = 1.0 / (eta * std::sqrt(2.0 * kPi));
        for (int i = 0; i < n; ++i) {
            const double p = i * h;
            const double d = res - p * p / (2.0 * spec.mass);
            vals[i] = q(p) * norm * std::exp(-d * d / (2.0 * eta * eta));
        }
        return kPi * simpson(vals, h);
    };

    GammaSet out = gamma_limit(spec, omega, nu);  // imaginary parts: PV, eta-free
    const int n = force_odd(std::max(spec.quadrature.n_radial, 101));
    for (std::size_t k = 0; k < 3; ++k) {
        const double res = nu + meanfield::kAlphaSign[k] * omega;
        const double rea_full = broadened([&](double p) { return kernel_m(spec, p); }, res, n);
        const double rea_half = broadened([&](double p) { return kernel_m(spec, p); }, res, n / 2 + 1);
        const double reb_full = broadened([&](double p) { return kernel_n(spec, p); }, res, n);
        const double reb_half = broadened([&](double p) { return kernel_n(spec, p); }, res, n / 2 + 1);
        const double drift = std::max(std::abs(rea_full - rea_half),
                                      std::abs(reb_full - reb_half));
        if (drift > std::max(1e-9, 1e-6 * std::max(std::abs(rea_full), std::abs(reb_full)))) {
            throw QuadratureError(
                "gamma_full quadrature not converged: grid " + std::to_string(n) +
                " vs " + std::to_string(n / 2 + 1) + " differs by " + std::to_string(drift) +
                " (broadening " + std::to_string(eta) + ", p_max " + std::to_string(p_max) + ")");
        }
        out.a[k] = Complex(rea_full, out.a[k].imag());
        out.b[k] = Complex(reb_full, out.b[k].imag());
    }
    return out;
}

Complex double_phase_integral(double a, double b, double lambda, double t) {
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    if (t < 0.0) throw std::invalid_argument("t must be nonnegative");
    const double scale = lambda * lambda;
    const double big_a = a / scale;
    const double big_b = b / scale;

    if (std::abs(big_b * t) <= 1.0) {
        // expand the inner integral: D = sum_k (-iB)^k M_{k+1} / (k+1)!
        constexpr int kmax = 25;
        std::array<Complex, kmax + 2> m{};
        power_phase_integrals(big_a, t, kmax + 1, m.data());
        Complex acc{0.0, 0.0};
        Complex coef{1.0, 0.0};
        for (int k = 0; k <= kmax; ++k) {
            const Complex term = coef * m[k + 1];
            acc += term;
            if (std::abs(term) < 1e-18 * std::max(std::abs(acc), 1e-300)) break;
            coef *= (-kI * big_b) / double(k + 2);
        }
        return acc;
    }
    return (phase_integral(big_a, t) - phase_integral(big_a - big_b, t)) / (kI * big_b);
}

Complex second_order_term(const ReservoirSpec& spec,
                          const meanfield::MeanFieldPoint& point,
                          const Eigen::Matrix2cd& system_state,
                          double lambda, double t,
                          bool cross_terms_only) {
    spec.validate();
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    if (t <= 0.0) throw std::invalid_argument("t must be positive");

    const auto rho = meanfield::rho_operators(point);
    const auto [omega, nu] = meanfield::pulsation(point);
    const double p_max = spec.effective_p_max();

    // resolve the e^{i nu_alpha(p) t / lambda^2} oscillation in p
    const double needed =
        16.0 * p_max * p_max * t / (2.0 * kPi * spec.mass * lambda * lambda);
    if (needed > double(kMaxOscillatoryPoints)) {
        throw QuadratureError(
            "second_order_term: oscillatory grid needs " + std::to_string(needed) +
            " points, cap is " + std::to_string(kMaxOscillatoryPoints) +
            " (lambda " + std::to_string(lambda) + ", t " + std::to_string(t) + ")");
    }
    const int n = force_odd(std::max({spec.quadrature.n_radial, 8001,
                                      static_cast<int>(needed) + 1}));
    const double h = p_max / (n - 1);

    std::vector<double> wm(n), wn(n), eps(n);
    for (int i = 0; i < n; ++i) {
        const double p = i * h;
        eps[i] = p * p / (2.0 * spec.mass);
        wm[i] = kernel_m(spec, p);
        wn[i] = kernel_n(spec, p);
    }

    BranchTraces traces[3][3];
    for (std::size_t ia = 0; ia < 3; ++ia) {
        for (std::size_t ib = 0; ib < 3; ++ib) {
            traces[ia][ib].forward =
                (system_state * rho[ia] * rho[ib].adjoint()).trace();
            traces[ia][ib].backward =
                (system_state * rho[ia].adjoint() * rho[ib]).trace();
        }
    }

    Complex acc{0.0, 0.0};
    for (std::size_t ia = 0; ia < 3; ++ia) {
        const double da = meanfield::kAlphaSign[ia] * omega + nu;
        for (std::size_t ib = 0; ib < 3; ++ib) {
            if (cross_terms_only && ia == ib) continue;
            const double db = meanfield::kAlphaSign[ib] * omega + nu;
            const Complex fwd = traces[ia][ib].forward;
            const Complex bwd = traces[ia][ib].backward;
            if (std::abs(fwd) < 1e-18 && std::abs(bwd) < 1e-18) continue;

            Complex sum_f{0.0, 0.0};
            Complex sum_b{0.0, 0.0};
            for (int i = 0; i < n; ++i) {
                const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
                const double na = da - eps[i];
                const double nb = db - eps[i];
                if (std::abs(fwd) >= 1e-18) {
                    sum_f += w * wm[i] * double_phase_integral(na, nb, lambda, t);
                }
                if (std::abs(bwd) >= 1e-18) {
                    sum_b += w * wn[i] * double_phase_integral(-na, -nb, lambda, t);
                }
            }
            acc += fwd * sum_f * (h / 3.0);
            acc += bwd * sum_b * (h / 3.0);
        }
    }
    return -acc / (lambda * lambda);
}

Complex stochastic_limit_rate(const ReservoirSpec& spec,
                              const meanfield::MeanFieldPoint& point,
                              const Eigen::Matrix2cd& system_state) {
    const auto rho = meanfield::rho_operators(point);
    const auto [omega, nu] = meanfield::pulsation(point);
    const GammaSet gam = gamma_limit(spec, omega, nu);
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < 3; ++k) {
        acc += (system_state * rho[k] * rho[k].adjoint()).trace() * gam.a[k];
        acc += (system_state * rho[k].adjoint() * rho[k]).trace() * gam.b[k];
    }
    return -acc;
}

}  // namespace openbcs::reservoir

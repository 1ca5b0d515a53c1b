// phase.cpp — Gap-equation solver and phase-structure sweeps

#include "openbcs/phase.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "openbcs/generator.hpp"

namespace openbcs::phase {

namespace {

// log form of the gap relation: F(xi) = e^{bg xi}(1-xi) - (1+xi) and
// Flog(xi) = bg xi + log(1-xi) - log(1+xi) share sign and zero set on (0,1),
// but Flog never overflows.
double gap_log_form(double xi, double bg) {
    return bg * xi + std::log1p(-xi) - std::log1p(xi);
}

double gap_log_form_deriv(double xi, double bg) {
    return bg - 1.0 / (1.0 - xi) - 1.0 / (1.0 + xi);
}

}  // namespace

double gap_function(double xi, double beta, double g) {
    if (beta <= 0.0 || g <= 0.0) {
        throw std::invalid_argument("beta and g must be positive");
    }
    if (xi < 0.0 || xi >= 1.0) {
        throw std::domain_error("gap_function defined on [0, 1)");
    }
    return std::exp(beta * g * xi) - (1.0 + xi) / (1.0 - xi);
}

std::optional<double> solve_gap(double beta, double g, double tol) {
    if (beta <= 0.0 || g <= 0.0) {
        throw std::invalid_argument("beta and g must be positive");
    }
    if (tol < 1e-14) {
        throw std::invalid_argument("tol must be at least 1e-14");
    }
    const double bg = beta * g;
    if (bg <= 2.0) return std::nullopt;

    const double lo = 1e-8;
    const double hi = 1.0 - 1e-12;

    if (gap_log_form(hi, bg) >= 0.0) {
        // root squeezed against 1 (bg beyond ~28): solve for u = 1 - xi from
        // u = (2 - u) e^{-bg (1 - u)}, a contraction for small u
        double u = 2.0 * std::exp(-bg);
        for (int i = 0; i < 64 && u > 0.0; ++i) {
            const double next = (2.0 - u) * std::exp(-bg * (1.0 - u));
            if (std::abs(next - u) <= 1e-18 * u) {
                u = next;
                break;
            }
            u = next;
        }
        if (u <= 0.0) return std::nextafter(1.0, 0.0);
        return 1.0 - u;
    }

    // unique sign change on a fine scan brackets the root
    const int scan = 1000;
    double a = lo, b = hi;
    int changes = 0;
    double prev_xi = lo;
    double prev_val = gap_log_form(lo, bg);
    for (int i = 1; i <= scan; ++i) {
        const double xi = lo + (hi - lo) * double(i) / scan;
        const double val = gap_log_form(xi, bg);
        if (prev_val > 0.0 && val <= 0.0) {
            a = prev_xi;
            b = xi;
            ++changes;
        }
        prev_xi = xi;
        prev_val = val;
    }
    if (changes != 1) {
        throw std::logic_error("gap relation: expected exactly one sign change, found " +
                               std::to_string(changes));
    }

    for (int i = 0; i < 200 && (b - a) > 1e-16; ++i) {
        const double mid = 0.5 * (a + b);
        if (gap_log_form(mid, bg) > 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }

    double xi = 0.5 * (a + b);
    for (int i = 0; i < 50; ++i) {
        const double f = gap_log_form(xi, bg);
        // |F| = (1+xi)|e^{Flog}-1| ~ 2|Flog| near the root
        if (std::abs(f) < 0.25 * tol) break;
        const double d = gap_log_form_deriv(xi, bg);
        if (d == 0.0) break;
        const double next = xi - f / d;
        if (next <= a || next >= b) break;
        xi = next;
    }
    return xi;
}

double critical_temperature(double g, double k_boltzmann) {
    if (g <= 0.0 || k_boltzmann <= 0.0) {
        throw std::invalid_argument("g and k_B must be positive");
    }
    return g / (2.0 * k_boltzmann);
}

double tanh_gap_residual(double omega, double beta, double g) {
    if (beta <= 0.0 || g <= 0.0) {
        throw std::invalid_argument("beta and g must be positive");
    }
    if (omega <= 0.0 || omega >= g) {
        throw std::domain_error("tanh_gap_residual defined for 0 < omega < g");
    }
    return g * std::tanh(beta * omega / 2.0) - omega;
}

OrderParameters order_parameters(double xi_star, double epsilon_tilde, double g) {
    if (g <= 0.0) throw std::invalid_argument("g must be positive");
    if (xi_star <= 0.0 || xi_star >= 1.0) {
        throw std::domain_error("xi_star must lie in (0, 1)");
    }
    const double x = -2.0 * epsilon_tilde / g;
    if (std::abs(x) > 1.0) {
        throw std::domain_error("|epsilon_tilde| > g/2: polarization outside [-1, 1]");
    }
    if (xi_star * xi_star < x * x) {
        throw ResonanceInaccessibleError(
            "xi*^2 < x^2: no admissible pairing amplitude on the resonance slice");
    }
    const double y = (xi_star * xi_star - x * x) / 4.0;
    return {x, y, 0.5 * std::sqrt(y)};
}

GapSolution solve_point(double beta, double g, double epsilon_tilde,
                        double k_boltzmann) {
    GapSolution sol;
    sol.beta = beta;
    sol.g = g;
    sol.epsilon_tilde = epsilon_tilde;
    sol.k_boltzmann = k_boltzmann;
    sol.t_critical = critical_temperature(g, k_boltzmann);
    sol.x = -2.0 * epsilon_tilde / g;

    const std::optional<double> xi = solve_gap(beta, g);
    if (!xi) {
        sol.phase = PhaseLabel::Normal;
        return sol;
    }
    sol.phase = PhaseLabel::Superconducting;
    sol.xi_star = *xi;
    sol.omega_star = g * *xi;
    try {
        const OrderParameters op = order_parameters(*xi, epsilon_tilde, g);
        sol.x = op.x;
        sol.y = op.y;
        sol.delta = op.delta;
    } catch (const ResonanceInaccessibleError&) {
        sol.status = "resonance-inaccessible";
    } catch (const std::domain_error&) {
        sol.status = "unphysical-epsilon";
    }
    return sol;
}

std::vector<PhaseDiagramRow> phase_diagram(const std::vector<double>& t_grid,
                                           const std::vector<double>& g_grid,
                                           double epsilon_tilde,
                                           double k_boltzmann) {
    if (t_grid.empty() || g_grid.empty()) {
        throw std::invalid_argument("temperature and coupling grids must be nonempty");
    }
    for (double t : t_grid) {
        if (t <= 0.0) throw std::invalid_argument("temperatures must be positive");
    }
    for (double g : g_grid) {
        if (g <= 0.0) throw std::invalid_argument("couplings must be positive");
    }
    std::vector<PhaseDiagramRow> rows;
    rows.reserve(t_grid.size() * g_grid.size());
    for (double t : t_grid) {
        for (double g : g_grid) {
            PhaseDiagramRow row{t, g, {}};
            try {
                row.solution = solve_point(1.0 / (k_boltzmann * t), g, epsilon_tilde,
                                           k_boltzmann);
            } catch (const std::exception& e) {
                row.solution.status = std::string("error: ") + e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

struct FlowField {
    const reservoir::ReservoirSpec& spec;
    double epsilon_tilde;
    double g;

    // f1 = d<S^0>/dt, f2 = d<S+S->/dt at (x, y), damping recomputed in place
    std::pair<double, double> operator()(double x, double y) const {
        const auto point = meanfield::MeanFieldPoint::from_xy(x, y, epsilon_tilde, g);
        const auto [omega, nu] = meanfield::pulsation(point);
        const reservoir::GammaSet gam = reservoir::gamma_resonant(spec, omega, nu);
        return {generator::generator_s0_closed(point, gam),
                generator::generator_splus_sminus_closed(point, gam)};
    }
};

struct RkState {
    double x;
    double y;
};

RkState rk4_step(const FlowField& field, RkState state, double h) {
    const auto [k1x, k1y] = field(state.x, state.y);
    const auto [k2x, k2y] = field(state.x + 0.5 * h * k1x, state.y + 0.5 * h * k1y);
    const auto [k3x, k3y] = field(state.x + 0.5 * h * k2x, state.y + 0.5 * h * k2y);
    const auto [k4x, k4y] = field(state.x + h * k3x, state.y + h * k3y);
    return {state.x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
            state.y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)};
}

bool in_region(const RkState& s) {
    return s.y > 1e-10 && s.x * s.x + 4.0 * s.y <= 1.0 + 1e-12;
}

}  // namespace

FlowResult meanfield_flow(const meanfield::MeanFieldPoint& initial,
                          const reservoir::ReservoirSpec& spec,
                          double t_max, double dt) {
    initial.validate();
    spec.validate();
    if (t_max <= 0.0 || dt <= 0.0) {
        throw std::invalid_argument("t_max and dt must be positive");
    }
    if (initial.y <= 0.0 || !initial.admissible()) {
        throw std::invalid_argument("flow needs an admissible start with y > 0");
    }

    const FlowField field{spec, initial.epsilon_tilde, initial.g};
    FlowResult result;
    RkState state{initial.x, initial.y};
    const long n_steps = std::lround(t_max / dt);

    auto record = [&](double t) {
        const auto [f1, f2] = field(state.x, state.y);
        result.samples.push_back({t, state.x, state.y, f1, f2});
    };
    record(0.0);

    for (long step = 0; step < n_steps; ++step) {
        const RkState full = rk4_step(field, state, dt);
        if (!in_region(full)) {
            result.status = FlowStatus::BoundaryExit;
            return result;
        }
        const RkState half = rk4_step(field, rk4_step(field, state, 0.5 * dt), 0.5 * dt);
        const double err = std::max(std::abs(full.x - half.x),
                                    std::abs(full.y - half.y)) / 15.0;
        if (err > 1e-6) {
            result.status = FlowStatus::StepFailure;
            return result;
        }
        state = full;
        record(double(step + 1) * dt);
    }
    return result;
}

}  // namespace openbcs::phase

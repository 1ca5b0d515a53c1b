// phase.hpp — Gap equation, critical temperature, order parameters, and the
// dissipative mean-field flow

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "openbcs/meanfield.hpp"
#include "openbcs/reservoir.hpp"

namespace openbcs::phase {

// The resonance slice carries no admissible pairing amplitude (xi*^2 < x^2).
struct ResonanceInaccessibleError : std::domain_error {
    using std::domain_error::domain_error;
};

// G(xi) = e^{beta g xi} - (1+xi)/(1-xi) on [0, 1).
double gap_function(double xi, double beta, double g);

// Unique root of G in (0,1); absent iff beta*g <= 2. Bisection on the
// pole-free log form, Newton polish to |F| < tol.
std::optional<double> solve_gap(double beta, double g, double tol = 1e-12);

// T_c = g / (2 k_B)
double critical_temperature(double g, double k_boltzmann);

// g tanh(beta omega / 2) - omega, for 0 < omega < g.
double tanh_gap_residual(double omega, double beta, double g);

struct OrderParameters {
    double x;      // -2 epsilon_tilde / g
    double y;      // (xi*^2 - x^2) / 4
    double delta;  // sqrt(y) / 2
};

OrderParameters order_parameters(double xi_star, double epsilon_tilde, double g);

enum class PhaseLabel { Normal, Superconducting };

struct GapSolution {
    double beta{0.0};
    double g{0.0};
    double epsilon_tilde{0.0};
    double k_boltzmann{1.0};
    std::optional<double> xi_star;
    std::optional<double> omega_star;
    std::optional<double> x;
    std::optional<double> y;
    std::optional<double> delta;
    PhaseLabel phase{PhaseLabel::Normal};
    double t_critical{0.0};
    std::string status{"ok"};  // "ok", "resonance-inaccessible", ...
};

// Full solve at one parameter set; order-parameter failures are reported in
// `status` with the phase label intact.
GapSolution solve_point(double beta, double g, double epsilon_tilde,
                        double k_boltzmann);

struct PhaseDiagramRow {
    double temperature;
    double g;
    GapSolution solution;
};

// One row per (T, g), T-major order, deterministic; row-level failures land
// in the row status and never abort the sweep.
std::vector<PhaseDiagramRow> phase_diagram(const std::vector<double>& t_grid,
                                           const std::vector<double>& g_grid,
                                           double epsilon_tilde,
                                           double k_boltzmann);

enum class FlowStatus { Ok, BoundaryExit, StepFailure };

struct FlowSample {
    double t;
    double x;
    double y;
    double f1;
    double f2;
};

struct FlowResult {
    std::vector<FlowSample> samples;
    FlowStatus status{FlowStatus::Ok};
};

// Classic fourth-order integration of xdot = f1(x,y), ydot = f2(x,y), with the
// damping coefficients recomputed from gamma_resonant as (x, y) move. Stops
// with a flag when the trajectory leaves the admissible region or the
// per-step error estimate exceeds 1e-6.
FlowResult meanfield_flow(const meanfield::MeanFieldPoint& initial,
                          const reservoir::ReservoirSpec& spec,
                          double t_max, double dt);

}  // namespace openbcs::phase

// generator.hpp — Dissipative generator on site operators, its closed forms on
// the macroscopic variables, and the two-route comparison between them

#pragma once

#include <Eigen/Dense>

#include "openbcs/meanfield.hpp"
#include "openbcs/reservoir.hpp"

namespace openbcs::generator {

using meanfield::MeanFieldPoint;
using meanfield::SiteOperator;
using reservoir::GammaSet;

// L(X) = sum_alpha { [rho_a, X] rho_a^dag G_a^(a) + [rho_a^dag, X] rho_a G_a^(b)
//        - rho_a [rho_a^dag, X] conj(G_a^(a)) - rho_a^dag [rho_a, X] conj(G_a^(b)) }
// per site, with the intensive operators frozen to their classical values.
SiteOperator lindblad_apply(const MeanFieldPoint& point, const GammaSet& gammas,
                            const SiteOperator& x);

// h(x,y) = Re G_+^a (w-g)/(w+gx)^2 + Re G_-^a (w+g)/(w-gx)^2
//        + Re G_+^b (w+g)/(w+gx)^2 + Re G_-^b (w-g)/(w-gx)^2.
// Its zero set carries the phase structure.
double h_function(const MeanFieldPoint& point, const GammaSet& gammas);

// d<S^0>/dt = -8 g^4 x y^2 / omega^3 * h(x,y)
double generator_s0_closed(const MeanFieldPoint& point, const GammaSet& gammas);

// d<S+S->/dt = -16 g^4 y^3 / omega^3 * h(x,y)
double generator_splus_sminus_closed(const MeanFieldPoint& point,
                                     const GammaSet& gammas);

struct GeneratorReport {
    MeanFieldPoint point;
    GammaSet gammas;
    double f1_closed{0.0};
    double f1_oracle{0.0};
    double f2_closed{0.0};
    double f2_oracle{0.0};
    double res1_abs{0.0};
    double res2_abs{0.0};
    double res1_rel{0.0};  // 0 when both routes sit below 1e-12
    double res2_rel{0.0};
};

// First-principles route against the closed forms. The oracle evaluates the
// generator on sigma^0 and sigma^+ and traces against the product state
// realizing (x, s); f2 uses the factorized j != k limit
// 2 Re( conj(s) tr(tau L(sigma^+)) ).
GeneratorReport oracle_compare(const MeanFieldPoint& point, const GammaSet& gammas);

}  // namespace openbcs::generator

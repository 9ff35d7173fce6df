#pragma once

// Plane-wave dynamics of the two signals once the atoms are adiabatically
// eliminated. The controls define a dark direction (c1, c2)/|c| that
// propagates freely and an orthogonal bright direction absorbed at rate eta.

#include <vector>

#include "lambda2/core.hpp"

namespace lambda2 {

struct ReducedTrajectory
{
    std::vector<double> taus;
    std::vector<SignalPair> states;

    const SignalPair& final_state() const { return states.back(); }
};

struct TransferResult
{
    SignalPair out;
    double r1 = 0.0;              // |out.s1|^2 / |in.s1|^2
    double r2 = 0.0;
    bool r1_applicable = true;    // false when the input beam was exactly zero
    bool r2_applicable = true;
    double out_intensity1 = 0.0;  // absolute |out.s1|^2
    double out_intensity2 = 0.0;
};

/// d(Omega_s)/d(tau) of the reduced model.
SignalPair reduced_rhs(const SignalPair& s, const ControlPair& c, double eta);

/// Fixed-step RK4 integration of reduced_rhs. Requires dt * eta <= 0.1.
ReducedTrajectory integrate_reduced(const SignalPair& s0, const ControlPair& c, double eta,
                                    double tau_end, double dt);

/// Same integration, returning only the final state.
SignalPair integrate_reduced_final(const SignalPair& s0, const ControlPair& c, double eta,
                                   double tau_end, double dt);

/// Smallest tau for which the bright-mode factor exp(-eta tau) drops below 1e-10.
double asymptotic_tau(double eta);

/// tau -> infinity limit of the reduced model in closed form.
TransferResult asymptotic_transfer(const SignalPair& s0, const ControlPair& c);

/// Projection of s onto the dark direction of c.
SignalPair dark_projection(const SignalPair& s, const ControlPair& c);

/// Unit bright vector (c2*, -c1*) / |c|.
SignalPair bright_direction(const ControlPair& c);

/// arg c1 - arg c2 + arg s2 - arg s1, wrapped to (-pi, pi].
double phase_mismatch(const SignalPair& s, const ControlPair& c);

struct AmplificationRatio
{
    double r1 = 0.0;
    double r2 = 0.0;
};

/// Intensity gain of each beam in the tau -> infinity limit.
AmplificationRatio amplification_ratio(double xi, double mu, double delta0);

/// d r_i / d xi, analytic.
double amplification_slope(double xi, double mu, double delta0, int which_beam);

struct OptimalXi
{
    double xi = 0.0;
    double r_max = 0.0;
    double slope = 0.0;    // d r / d xi at the optimum
    bool interior = true;  // false when the optimum sits on a search boundary
};

/// Maximises the gain of one beam over xi in [0, xi_max].
OptimalXi optimal_xi(double mu, double delta0, int which_beam, double xi_max = 100.0);

} // namespace lambda2

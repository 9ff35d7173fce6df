#include "lambda2/reduced.hpp"

#include <cmath>

namespace lambda2 {

SignalPair reduced_rhs(const SignalPair& s, const ControlPair& c, double eta)
{
    validate_controls(c);
    const double total = c.total();
    const Complex d1 = std::norm(c.c2) * s.s1 - c.c1 * std::conj(c.c2) * s.s2;
    const Complex d2 = std::norm(c.c1) * s.s2 - std::conj(c.c1) * c.c2 * s.s1;
    return {-eta * d1 / total, -eta * d2 / total};
}

namespace {

SignalPair rk4_step(const SignalPair& s, const ControlPair& c, double eta, double h)
{
    const SignalPair k1 = reduced_rhs(s, c, eta);
    const SignalPair k2 = reduced_rhs(s + (0.5 * h) * k1, c, eta);
    const SignalPair k3 = reduced_rhs(s + (0.5 * h) * k2, c, eta);
    const SignalPair k4 = reduced_rhs(s + h * k3, c, eta);
    return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class Visit>
void integrate(const SignalPair& s0, const ControlPair& c, double eta, double tau_end, double dt,
               Visit&& visit)
{
    validate_controls(c);
    if (!(tau_end > 0.0) || !(dt > 0.0))
        throw Error(ErrorCode::InvalidArgument, "tau_end and dt must be > 0");
    if (eta < 0.0)
        throw Error(ErrorCode::NegativeParameter, "eta must be >= 0");
    if (dt * eta > 0.1)
        throw Error(ErrorCode::StepTooLarge, "dt * eta must be <= 0.1");

    // The last step is shortened so the trajectory lands exactly on tau_end.
    const auto steps = static_cast<long>(std::ceil(tau_end / dt - 1e-9));
    SignalPair s = s0;
    visit(0.0, s);
    for (long n = 0; n < steps; ++n) {
        const double tau = n * dt;
        const double h = (n + 1 == steps) ? tau_end - tau : dt;
        s = rk4_step(s, c, eta, h);
        visit(n + 1 == steps ? tau_end : tau + h, s);
    }
}

} // namespace

ReducedTrajectory integrate_reduced(const SignalPair& s0, const ControlPair& c, double eta,
                                    double tau_end, double dt)
{
    ReducedTrajectory traj;
    traj.taus.reserve(static_cast<std::size_t>(tau_end / dt) + 2);
    traj.states.reserve(traj.taus.capacity());
    integrate(s0, c, eta, tau_end, dt, [&](double tau, const SignalPair& s) {
        traj.taus.push_back(tau);
        traj.states.push_back(s);
    });
    return traj;
}

SignalPair integrate_reduced_final(const SignalPair& s0, const ControlPair& c, double eta,
                                   double tau_end, double dt)
{
    SignalPair last;
    integrate(s0, c, eta, tau_end, dt, [&](double, const SignalPair& s) { last = s; });
    return last;
}

double asymptotic_tau(double eta)
{
    if (!(eta > 0.0))
        throw Error(ErrorCode::NegativeParameter, "eta must be > 0");
    return std::log(1e10) / eta; // 23.03 / eta
}

SignalPair dark_projection(const SignalPair& s, const ControlPair& c)
{
    validate_controls(c);
    const Complex overlap = (std::conj(c.c1) * s.s1 + std::conj(c.c2) * s.s2) / c.total();
    return {overlap * c.c1, overlap * c.c2};
}

SignalPair bright_direction(const ControlPair& c)
{
    validate_controls(c);
    const double norm = std::sqrt(c.total());
    return {std::conj(c.c2) / norm, -std::conj(c.c1) / norm};
}

TransferResult asymptotic_transfer(const SignalPair& s0, const ControlPair& c)
{
    validate_controls(c);
    TransferResult r;
    const bool closed_form = s0.s1 != Complex{} && s0.s2 != Complex{} && c.c1 != Complex{}
                             && c.c2 != Complex{};
    if (closed_form) {
        const double xi = control_ratio_xi(c);
        const PhaseParams p = phase_params(s0, c);
        const Complex phase = std::polar(1.0, p.delta0);
        r.out.s1 = s0.s1 * (1.0 + std::sqrt(xi * p.mu) * phase) / (1.0 + xi);
        r.out.s2 = s0.s2 * (xi + std::sqrt(xi / p.mu) * std::conj(phase)) / (1.0 + xi);
    } else {
        r.out = dark_projection(s0, c);
    }
    r.out_intensity1 = std::norm(r.out.s1);
    r.out_intensity2 = std::norm(r.out.s2);
    r.r1_applicable = s0.s1 != Complex{};
    r.r2_applicable = s0.s2 != Complex{};
    r.r1 = r.r1_applicable ? r.out_intensity1 / std::norm(s0.s1) : 0.0;
    r.r2 = r.r2_applicable ? r.out_intensity2 / std::norm(s0.s2) : 0.0;
    return r;
}

double phase_mismatch(const SignalPair& s, const ControlPair& c)
{
    if (s.s1 == Complex{} || s.s2 == Complex{} || c.c1 == Complex{} || c.c2 == Complex{})
        throw Error(ErrorCode::ZeroAmplitudePhase, "phase of a zero amplitude");
    return wrap_phase(std::arg(c.c1) - std::arg(c.c2) + std::arg(s.s2) - std::arg(s.s1));
}

namespace {
void check_ratio_args(double xi, double mu)
{
    if (!(xi >= 0.0))
        throw Error(ErrorCode::NegativeParameter, "xi must be >= 0");
    if (!(mu > 0.0))
        throw Error(ErrorCode::NegativeParameter, "mu must be > 0");
}
} // namespace

AmplificationRatio amplification_ratio(double xi, double mu, double delta0)
{
    check_ratio_args(xi, mu);
    const double cosd = std::cos(delta0);
    const double denom = (1.0 + xi) * (1.0 + xi);
    AmplificationRatio r;
    r.r1 = (1.0 + xi * mu + 2.0 * std::sqrt(xi * mu) * cosd) / denom;
    r.r2 = (xi * xi + xi / mu + 2.0 * xi * std::sqrt(xi / mu) * cosd) / denom;
    return r;
}

double amplification_slope(double xi, double mu, double delta0, int which_beam)
{
    check_ratio_args(xi, mu);
    const double cosd = std::cos(delta0);
    const double rx = std::sqrt(xi);
    double num = 0.0;
    double dnum = 0.0;
    if (which_beam == 1) {
        num = 1.0 + xi * mu + 2.0 * std::sqrt(mu) * rx * cosd;
        dnum = mu + std::sqrt(mu) * cosd / rx;
    } else {
        num = xi * xi + xi / mu + 2.0 * xi * rx * cosd / std::sqrt(mu);
        dnum = 2.0 * xi + 1.0 / mu + 3.0 * rx * cosd / std::sqrt(mu);
    }
    return (dnum * (1.0 + xi) - 2.0 * num) / ((1.0 + xi) * (1.0 + xi) * (1.0 + xi));
}

OptimalXi optimal_xi(double mu, double delta0, int which_beam, double xi_max)
{
    if (!(mu > 0.0))
        throw Error(ErrorCode::NegativeParameter, "mu must be > 0");
    if (!(xi_max > 0.0))
        throw Error(ErrorCode::NegativeParameter, "xi_max must be > 0");
    if (which_beam != 1 && which_beam != 2)
        throw Error(ErrorCode::InvalidArgument, "which_beam must be 1 or 2");

    // Search in t = sqrt(xi); the gain is a smooth rational function of t.
    const auto gain = [&](double t) {
        const auto r = amplification_ratio(t * t, mu, delta0);
        return which_beam == 1 ? r.r1 : r.r2;
    };
    const double t_max = std::sqrt(xi_max);
    constexpr int kScan = 4000;
    int best = 0;
    double best_gain = gain(0.0);
    for (int i = 1; i <= kScan; ++i) {
        const double g = gain(t_max * i / kScan);
        if (g > best_gain) {
            best_gain = g;
            best = i;
        }
    }

    double a = t_max * std::max(best - 1, 0) / kScan;
    double b = t_max * std::min(best + 1, kScan) / kScan;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double g1 = gain(x1);
    double g2 = gain(x2);
    while (b * b - a * a > 1e-9) {
        if (g1 < g2) {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + inv_phi * (b - a);
            g2 = gain(x2);
        } else {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - inv_phi * (b - a);
            g1 = gain(x1);
        }
    }

    OptimalXi out;
    double t = 0.5 * (a + b);
    // Boundary optima: compare with the exact endpoints.
    if (best == 0 && gain(0.0) >= gain(t)) {
        t = 0.0;
        out.interior = false;
    } else if (best == kScan && gain(t_max) >= gain(t)) {
        t = t_max;
        out.interior = false;
    }
    out.xi = t * t;
    out.r_max = gain(t);
    if (out.interior) {
        out.slope = amplification_slope(out.xi, mu, delta0, which_beam);
        if (std::abs(out.slope) >= 1e-6)
            throw Error(ErrorCode::InvalidArgument, "optimum failed the stationarity check");
    }
    return out;
}

} // namespace lambda2

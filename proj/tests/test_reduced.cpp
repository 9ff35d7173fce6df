#include "doctest.h"

#include <cmath>
#include <random>

#include "lambda2/reduced.hpp"

using namespace lambda2;

namespace {

// Independent oracle: the reduced flow is s(t) = P_d s0 + exp(-eta t) P_b s0
// with P_b the projector on b = (c2*, -c1*) / sqrt(T).
SignalPair flow_oracle(const SignalPair& s0, const ControlPair& c, double eta, double t)
{
    const double T = std::norm(c.c1) + std::norm(c.c2);
    const Complex b1 = std::conj(c.c2), b2 = -std::conj(c.c1);
    const Complex bright = (std::conj(b1) * s0.s1 + std::conj(b2) * s0.s2) / T;
    const double k = 1.0 - std::exp(-eta * t);
    return {s0.s1 - k * bright * b1, s0.s2 - k * bright * b2};
}

double err(const SignalPair& a, const SignalPair& b) { return std::max(std::abs(a.s1 - b.s1), std::abs(a.s2 - b.s2)); }

struct Random
{
    std::mt19937_64 rng{2024};
    std::uniform_real_distribution<double> u{-1.0, 1.0}, mag{0.2, 3.0}, ph{-kPi, kPi};
    Complex z() { return {u(rng), u(rng)}; }
    ControlPair c() { return {std::polar(mag(rng), ph(rng)), std::polar(mag(rng), ph(rng))}; }
    SignalPair s() { return {z(), z()}; }
};

} // namespace

TEST_CASE("reduced_rhs examples")
{
    CHECK(err(reduced_rhs({1.0, 0.0}, {1.0, 1.0}, 1.0), {-0.5, 0.5}) < 1e-15);
    CHECK(err(reduced_rhs({1.0, 1.0}, {1.0, 1.0}, 1.0), {0.0, 0.0}) < 1e-15);
    CHECK(err(reduced_rhs({1.0, -1.0}, {1.0, 1.0}, 1.0), {-1.0, 1.0}) < 1e-15);
    CHECK_THROWS_AS(reduced_rhs({1.0, 0.0}, {0.0, 0.0}, 1.0), Error);
}

TEST_CASE("integrate_reduced examples")
{
    CHECK(err(integrate_reduced_final({1.0, 0.0}, {1.0, 1.0}, 1.0, 40.0, 0.01), {0.5, 0.5}) < 1e-8);
    const ReducedTrajectory dark = integrate_reduced({1.0, 1.0}, {1.0, 1.0}, 1.0, 5.0, 0.01);
    CHECK(dark.taus.front() == 0.0);
    for (const auto& s : dark.states)
        CHECK(err(s, {1.0, 1.0}) < 1e-14);
    CHECK(err(integrate_reduced_final({1.0, 1.0}, {1.0, -1.0}, 1.0, 40.0, 0.01), {0.0, 0.0}) < 1e-8);
    try {
        integrate_reduced({1.0, 0.0}, {1.0, 1.0}, 1.0, 1.0, 0.2);
        FAIL("expected StepTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::StepTooLarge);
    }
}

TEST_CASE("integrate_reduced is fourth order and tracks the analytic flow")
{
    Random r;
    const SignalPair s0 = r.s();
    const ControlPair c = r.c();
    const double e1 = err(integrate_reduced_final(s0, c, 1.0, 2.0, 0.1), flow_oracle(s0, c, 1.0, 2.0));
    const double e2 = err(integrate_reduced_final(s0, c, 1.0, 2.0, 0.05), flow_oracle(s0, c, 1.0, 2.0));
    CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.05));

    const ReducedTrajectory tr = integrate_reduced(s0, c, 1.0, 3.0, 0.01);
    for (std::size_t i = 0; i < tr.taus.size(); ++i) {
        if (i > 0) {
            CHECK(tr.taus[i] > tr.taus[i - 1]);
            CHECK(tr.states[i].intensity() <= tr.states[i - 1].intensity() + 1e-9);
        }
        CHECK(err(tr.states[i], flow_oracle(s0, c, 1.0, tr.taus[i])) < 1e-9);
    }
    CHECK(tr.taus.back() == doctest::Approx(3.0));
}

TEST_CASE("asymptotic_transfer examples")
{
    const TransferResult eit = asymptotic_transfer({1.0, 1.0}, {1.0, 1.0});
    CHECK(err(eit.out, {1.0, 1.0}) < 1e-15);
    CHECK(eit.r1 == doctest::Approx(1.0));
    CHECK(eit.r2 == doctest::Approx(1.0));
    CHECK(err(asymptotic_transfer({1.0, -1.0}, {1.0, 1.0}).out, {0.0, 0.0}) < 1e-15);

    const TransferResult twin = asymptotic_transfer({0.0, 1.0}, {1.0, 1.0});
    CHECK(err(twin.out, {0.5, 0.5}) < 1e-15);
    CHECK_FALSE(twin.r1_applicable);
    CHECK(twin.r1 == 0.0);
    CHECK(twin.out_intensity1 == doctest::Approx(0.25));

    const double xi = 3.0 - 2.0 * std::sqrt(2.0);
    CHECK(asymptotic_transfer({1.0, 1.0}, {1.0, std::sqrt(xi)}).r1 == doctest::Approx(1.4571).epsilon(0.0005 / 1.4571));
}

TEST_CASE("dark_projection examples")
{
    CHECK(err(dark_projection({1.0, 0.0}, {1.0, 1.0}), {0.5, 0.5}) < 1e-15);
    const ControlPair c{Complex{0.3, -1.2}, Complex{2.0, 0.5}};
    CHECK(err(dark_projection({c.c1, c.c2}, c), {c.c1, c.c2}) < 1e-15);
    CHECK(err(dark_projection({1.0, -1.0}, {1.0, 1.0}), {0.0, 0.0}) < 1e-15);
}

TEST_CASE("phase_mismatch examples")
{
    CHECK(phase_mismatch({1.0, 2.0}, {3.0, 4.0}) == 0.0);
    CHECK(phase_mismatch({1.0, kI}, {1.0, kI}) == doctest::Approx(0.0));
    CHECK(phase_mismatch({1.0, -1.0}, {1.0, 1.0}) == doctest::Approx(kPi));
    try {
        phase_mismatch({0.0, 1.0}, {1.0, 1.0});
        FAIL("expected ZeroAmplitudePhase");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroAmplitudePhase);
    }
}

TEST_CASE("amplification_ratio examples")
{
    auto r = amplification_ratio(1.0, 1.0, 0.0);
    CHECK(r.r1 == doctest::Approx(1.0));
    CHECK(r.r2 == doctest::Approx(1.0));
    r = amplification_ratio(1.0, 1.0, kPi);
    CHECK(std::abs(r.r1) < 1e-15);
    CHECK(std::abs(r.r2) < 1e-15);
    r = amplification_ratio(1.0, 1.0, 0.5 * kPi);
    CHECK(r.r1 == doctest::Approx(0.5));
    CHECK(r.r2 == doctest::Approx(0.5));
    r = amplification_ratio(3.0 - 2.0 * std::sqrt(2.0), 1.0, 0.0);
    CHECK(r.r1 == doctest::Approx(1.4571).epsilon(1e-4));
    CHECK(r.r2 == doctest::Approx(0.25).epsilon(1e-12));
    try {
        amplification_ratio(-1.0, 1.0, 0.0);
        FAIL("expected NegativeParameter");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NegativeParameter);
    }
    CHECK_THROWS_AS(amplification_ratio(1.0, 0.0, 0.0), Error);
}

TEST_CASE("amplification_ratio agrees with the projection for random inputs")
{
    Random r;
    for (int i = 0; i < 300; ++i) {
        const SignalPair s = r.s();
        const ControlPair c = r.c();
        const PhaseParams p = phase_params(s, c);
        const double xi = control_ratio_xi(c);
        const AmplificationRatio a = amplification_ratio(xi, p.mu, p.delta0);
        const SignalPair d = dark_projection(s, c);
        CHECK(a.r1 == doctest::Approx(std::norm(d.s1) / std::norm(s.s1)).epsilon(1e-10));
        CHECK(a.r2 == doctest::Approx(std::norm(d.s2) / std::norm(s.s2)).epsilon(1e-10));
    }
}

TEST_CASE("amplification_slope matches a finite difference")
{
    for (double xi : {0.05, 0.3, 1.0, 2.5}) {
        for (double d0 : {0.0, 1.0, 2.5}) {
            for (int beam : {1, 2}) {
                const double h = 1e-6 * xi;
                auto f = [&](double x) {
                    const auto a = amplification_ratio(x, 1.3, d0);
                    return beam == 1 ? a.r1 : a.r2;
                };
                const double fd = (f(xi + h) - f(xi - h)) / (2.0 * h);
                CHECK(amplification_slope(xi, 1.3, d0, beam) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
            }
        }
    }
}

TEST_CASE("optimal_xi examples")
{
    const OptimalXi b1 = optimal_xi(1.0, 0.0, 1);
    CHECK(b1.xi == doctest::Approx(3.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-8));
    CHECK(b1.r_max == doctest::Approx(1.4571).epsilon(1e-4));
    CHECK(b1.interior);
    CHECK(std::abs(b1.slope) < 1e-6);
    const OptimalXi b2 = optimal_xi(1.0, 0.0, 2);
    CHECK(b2.xi == doctest::Approx(3.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-8));
    CHECK(b2.r_max == doctest::Approx(1.4571).epsilon(1e-4));
    const OptimalXi q = optimal_xi(1.0, kPi, 1);
    CHECK(q.xi == doctest::Approx(0.0));
    CHECK(q.r_max == doctest::Approx(1.0));
    CHECK_FALSE(q.interior);
    CHECK_THROWS_AS(optimal_xi(-1.0, 0.0, 1), Error);
}

TEST_CASE("reduced-model properties")
{
    Random r;
    for (int i = 0; i < 500; ++i) {
        const SignalPair s = r.s(), s2 = r.s();
        const ControlPair c = r.c();
        const double eta = 0.5 + std::abs(r.u(r.rng)) * 2.0;

        // Equivalence of the closed form and the projection.
        CHECK(err(asymptotic_transfer(s, c).out, dark_projection(s, c)) < 1e-12);
        // Fixed point.
        CHECK(err(reduced_rhs(dark_projection(s, c), c, eta), {}) < 1e-12);
        // Bright eigenvector decays at rate eta.
        const SignalPair b = bright_direction(c);
        CHECK(err(reduced_rhs(b, c, eta), -eta * b) < 1e-12);
        // Contraction.
        CHECK(dark_projection(s, c).intensity() <= s.intensity() + 1e-15);
        // Linearity.
        const Complex a = r.z();
        CHECK(err(dark_projection(s + a * s2, c), dark_projection(s, c) + a * dark_projection(s2, c)) < 1e-12);
        // Phase covariance.
        const Complex g = std::polar(1.0, r.ph(r.rng));
        CHECK(err(reduced_rhs(s, {g * c.c1, g * c.c2}, eta), reduced_rhs(s, c, eta)) < 1e-12);
        CHECK(err(dark_projection(g * s, c), g * dark_projection(s, c)) < 1e-12);
        // Output lies along the controls.
        const SignalPair out = asymptotic_transfer(s, c).out;
        if (std::abs(out.s1) > 1e-6)
            CHECK(std::abs(out.s2 / out.s1 - c.c2 / c.c1) < 1e-10);
    }
    // Equality in the contraction only along the control direction.
    const ControlPair c{1.0, Complex{0.5, 0.5}};
    const SignalPair along{2.0 * c.c1, 2.0 * c.c2};
    CHECK(dark_projection(along, c).intensity() == doctest::Approx(along.intensity()).epsilon(1e-14));
}

TEST_CASE("asymptotic_tau bounds the bright-mode residue")
{
    CHECK(asymptotic_tau(1.0) >= 23.0);
    CHECK(asymptotic_tau(1.0) < 23.1);
    for (double eta : {0.25, 1.0, 2.0, 9.0})
        CHECK(std::exp(-asymptotic_tau(eta) * eta) <= 1e-10);
    CHECK_THROWS_AS(asymptotic_tau(0.0), Error);
}

#include "doctest.h"

#include <cmath>
#include <random>

#include "lambda2/bloch.hpp"
#include "lambda2/reduced.hpp"

using namespace lambda2;

namespace {

double diff(const AtomicSlice& a, const AtomicSlice& b)
{
    return std::max({std::abs(a.S1 - b.S1), std::abs(a.S2 - b.S2), std::abs(a.S - b.S)});
}

struct Random
{
    std::mt19937_64 rng{99};
    std::uniform_real_distribution<double> u{-1.0, 1.0}, ph{-kPi, kPi};
    Complex z(double scale = 1.0) { return {scale * u(rng), scale * u(rng)}; }
    Complex polar(double lo, double hi)
    {
        return std::polar(lo + (hi - lo) * 0.5 * (1.0 + u(rng)), ph(rng));
    }
};

Matrix4c random_density(Random& r)
{
    Eigen::Matrix4cd a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            a(i, j) = r.z();
    Matrix4c rho = a * a.adjoint();
    return rho / rho.trace().real();
}

} // namespace

TEST_CASE("bloch_rhs_linear examples")
{
    const Complex om{0.7, -0.2};
    const AtomicSlice d = bloch_rhs_linear({}, {om, 0.0}, {1.0, 2.0}, 0.0);
    CHECK(std::abs(d.S1 - 0.5 * kI * om) < 1e-15);
    CHECK(d.S2 == Complex{});
    CHECK(d.S == Complex{});

    const ControlPair c{Complex{1.0, 0.5}, Complex{-0.3, 2.0}};
    const Complex k{0.4, 0.1};
    CHECK(diff(bloch_rhs_linear({0.0, 0.0, -k}, {k * c.c1, k * c.c2}, c, 0.0), {}) < 1e-15);

    const AtomicSlice a{Complex{0.1, 0.2}, Complex{-0.3, 0.0}, Complex{0.5, 0.5}};
    CHECK(diff(bloch_rhs_linear(a, {}, {}, 0.0), {-a.S1, -a.S2, 0.0}) < 1e-15);
    CHECK(diff(bloch_rhs_linear(a, {}, {}, 0.1), {-a.S1, -a.S2, -0.1 * a.S}) < 1e-15);
}

TEST_CASE("adiabatic_polarizations examples")
{
    CHECK(diff(adiabatic_polarizations({}, {1.0, 1.0}), {}) < 1e-15);
    CHECK(diff(adiabatic_polarizations({0.1, 0.1}, {2.0, 2.0}), {0.0, 0.0, -0.05}) < 1e-15);
    CHECK(diff(adiabatic_polarizations({1.0, 0.0}, {1.0, 1.0}), {0.25 * kI, -0.25 * kI, -0.5}) < 1e-15);
    CHECK_THROWS_AS(adiabatic_polarizations({1.0, 0.0}, {0.0, 0.0}), Error);
}

TEST_CASE("bloch_step examples")
{
    CHECK(bloch_step({}, {}, {}, 0.0, 0.01) == AtomicSlice{});
    const ControlPair c{2.0, Complex{0.0, 1.0}};
    const AtomicSlice dark{0.0, 0.0, -0.3};
    CHECK(diff(bloch_step(dark, {0.3 * c.c1, 0.3 * c.c2}, c, 0.0, 0.05), dark) < 1e-12);
    const AtomicSlice decayed = bloch_step({1.0, 0.0, 0.0}, {}, {}, 0.0, 0.01);
    CHECK(std::abs(decayed.S1 - std::exp(-0.01)) < 1e-10);

    try {
        bloch_step({}, {}, {}, 0.0, 0.2);
        FAIL("expected StepTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::StepTooLarge);
    }
    CHECK_THROWS_AS(bloch_step({}, {}, {30.0, 0.0}, 0.0, 0.01), Error);
    CHECK_NOTHROW(bloch_step({}, {}, {20.0, 0.0}, 0.0, 0.01));
}

TEST_CASE("adiabatic elimination reproduces the reduced model")
{
    Random r;
    for (int i = 0; i < 500; ++i) {
        const double chi = 0.5 + 3.0 * std::abs(r.u(r.rng));
        const SignalPair s{r.z(), r.z()};
        const ControlPair c{r.polar(0.2, 5.0), r.polar(0.2, 5.0)};
        const AtomicSlice a = adiabatic_polarizations(s, c);
        const SignalPair field_rate{0.5 * kI * chi * chi * a.S1, 0.5 * kI * chi * chi * a.S2};
        const SignalPair reduced = reduced_rhs(s, c, chi * chi / 4.0);
        CHECK(distance(field_rate, reduced) < 1e-12);
        // The adiabatic slice is the stationary point of the linear system.
        CHECK(diff(bloch_rhs_linear(a, s, c, 0.0), {}) < 1e-12);
    }
}

TEST_CASE("linear system relaxes to the adiabatic slice")
{
    Random r;
    for (int i = 0; i < 10; ++i) {
        const ControlPair c{r.polar(0.8, 3.0), r.polar(0.8, 3.0)};
        if (c.total() < 1.0)
            continue;
        const SignalPair s{r.z(), r.z()};
        const double dt = 0.19 / std::max(2.0, c.max_abs());
        AtomicSlice a{};
        const int steps = static_cast<int>(std::ceil(50.0 / dt));
        for (int n = 0; n < steps; ++n)
            a = bloch_step(a, s, c, 0.0, dt);
        CHECK(diff(a, adiabatic_polarizations(s, c)) < 1e-6);
    }
}

TEST_CASE("DensityMatrix4 validation")
{
    CHECK_NOTHROW(DensityMatrix4::pure(level::b).validate());
    CHECK(DensityMatrix4::pure(level::a)(level::a, level::a) == Complex{1.0});
    CHECK_THROWS_AS(DensityMatrix4::pure(4), Error);

    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 0.5;
    try {
        DensityMatrix4 bad(m);
        FAIL("expected InvalidDensityMatrix");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidDensityMatrix);
    }
    m(0, 0) = 1.0;
    m(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix4{m}, Error);
    m(0, 1) = 0.0;
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix4{m}, Error);
}

TEST_CASE("full_lindblad_rhs examples")
{
    const Matrix4c ground = full_lindblad_rhs(DensityMatrix4::pure(level::b), {}, {});
    CHECK(ground.norm() < 1e-15);

    const Matrix4c up = full_lindblad_rhs(DensityMatrix4::pure(level::a), {}, {});
    CHECK(up(level::a, level::a).real() == doctest::Approx(-1.0));
    CHECK(up(level::b, level::b).real() == doctest::Approx(0.5));
    CHECK(up(level::c, level::c).real() == doctest::Approx(0.5));
    CHECK(up(level::d, level::d).real() == doctest::Approx(0.0));

    Random r;
    for (int i = 0; i < 200; ++i) {
        const DensityMatrix4 rho(random_density(r));
        const Matrix4c d = full_lindblad_rhs(rho, {r.z(), r.z()}, {r.polar(0.1, 3.0), r.polar(0.1, 3.0)});
        CHECK(std::abs(d.trace()) < 1e-12);
        CHECK((d - d.adjoint()).norm() < 1e-12);
    }
}

TEST_CASE("lindblad_step preserves the density-matrix invariants")
{
    Random r;
    for (int i = 0; i < 5; ++i) {
        DensityMatrix4 rho(random_density(r));
        const SignalPair s{r.z(0.5), r.z(0.5)};
        const ControlPair c{r.polar(0.5, 3.0), r.polar(0.5, 3.0)};
        for (int n = 0; n < 300; ++n) {
            rho = lindblad_step(rho, s, c, 0.01);
            CHECK(rho.trace_error() < 1e-10);
            CHECK(rho.hermiticity_error() < 1e-10);
        }
        CHECK(rho.min_eigenvalue() > -1e-9);
    }
}

TEST_CASE("weak-signal limit of the full tier matches the linear tier")
{
    Random r;
    for (int i = 0; i < 5; ++i) {
        const ControlPair c{r.polar(0.5, 2.0), r.polar(0.5, 2.0)};
        const double scale = 1e-3 * std::min(std::abs(c.c1), std::abs(c.c2));
        const SignalPair s{std::polar(scale, r.ph(r.rng)), std::polar(scale, r.ph(r.rng))};

        // Instantaneous rates out of the ground state.
        const AtomicSlice lin0 = bloch_rhs_linear({}, s, c, 0.0);
        const AtomicSlice full0 = coherences(full_lindblad_rhs(DensityMatrix4::pure(level::b), s, c));
        CHECK(diff(full0, lin0) <= 1e-2 * std::abs(lin0.S1) + 1e-15);

        // Trajectories over a few relaxation times.
        DensityMatrix4 rho = DensityMatrix4::pure(level::b);
        AtomicSlice a{};
        for (int n = 0; n < 800; ++n) {
            rho = lindblad_step(rho, s, c, 0.01);
            a = bloch_step(a, s, c, 0.0, 0.01);
        }
        const AtomicSlice full = coherences(rho.matrix());
        const double ref = std::max({std::abs(a.S1), std::abs(a.S2), std::abs(a.S)});
        CHECK(diff(full, a) < 1e-2 * ref);
    }
}

TEST_CASE("weak-signal regime flag")
{
    CHECK(in_weak_signal_regime({0.5, 0.5, -0.9}));
    CHECK_FALSE(in_weak_signal_regime({0.0, 0.0, -1.2}));
}

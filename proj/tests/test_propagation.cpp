#include "doctest.h"

#include <cmath>

#include "lambda2/propagation.hpp"
#include "lambda2/reduced.hpp"

using namespace lambda2;

namespace {

struct Run
{
    MediumParams medium;
    Grid grid;
};

Run small_run(double chi, double length, int cells, double dtau, double tau_end, double gamma_bc = 0.0)
{
    const MediumParams m = MediumParams::make(chi, length, cells, gamma_bc);
    return {m, Grid::make(m, dtau, tau_end)};
}

ControlSchedule constant(const Run& r, const ControlPair& c)
{
    return ControlSchedule::constant(c, r.grid.tau_end + r.medium.length);
}

ErrorCode code_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("Grid invariants")
{
    const MediumParams m = MediumParams::make(2.0, 1.0, 100);
    CHECK(Grid::make(m, 0.005, 10.0).steps() == 2000);
    CHECK(Grid::make(m, 0.01, 10.0).dz == doctest::Approx(0.01));
    CHECK(code_of([&] { Grid::make(m, 0.02, 10.0).validate(); }) == ErrorCode::CourantViolation);
}

TEST_CASE("propagate rejects bad setups")
{
    Run r = small_run(2.0, 1.0, 100, 0.005, 10.0);
    const SignalSource src = make_source(gaussian_pulse(1.0, 5.0, 1.0), zero_envelope());
    Grid coarse = r.grid;
    coarse.dtau = 0.02;
    CHECK(code_of([&] { propagate(r.medium, coarse, src, constant(r, {1.0, 1.0})); }) == ErrorCode::CourantViolation);
    CHECK(code_of([&] { propagate(r.medium, r.grid, src, constant(r, {50.0, 1.0})); }) == ErrorCode::StepTooLarge);
    CHECK_THROWS_AS(propagate(r.medium, r.grid, src, ControlSchedule::constant({1.0, 1.0}, 2.0)), Error);
}

TEST_CASE("zero input gives a zero record")
{
    const Run r = small_run(2.0, 1.0, 100, 0.005, 10.0);
    const SpaceTimeRecord rec =
        propagate(r.medium, r.grid, make_source(zero_envelope(), zero_envelope()), constant(r, {2.0, 2.0}));
    CHECK(rec.max_field == 0.0);
    for (const auto& s : rec.output)
        CHECK(s == SignalPair{});
    const ProbeMetrics m = probe_metrics(rec);
    CHECK(m.beam[0].energy_out == 0.0);
    CHECK(m.beam[1].peak_out == 0.0);
    CHECK(m.beam[0].delay == 0.0);
}

TEST_CASE("free propagation at chi = 0")
{
    const Run r = small_run(0.0, 3.0, 150, 0.01, 40.0);
    const SpaceTimeRecord rec = propagate(r.medium, r.grid,
                                          make_source(gaussian_pulse({1.0, 0.2}, 15.0, 3.0), zero_envelope()),
                                          constant(r, {4.0, 1.0}));
    const ProbeMetrics m = probe_metrics(rec);
    CHECK(std::abs(m.beam[0].energy_out - m.beam[0].energy_in) < 1e-10);
    CHECK(m.beam[0].delay == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(rec.taus_out.front() == doctest::Approx(rec.taus_in.front() + 3.0));
}

TEST_CASE("EmptyRecord")
{
    CHECK(code_of([] { probe_metrics(SpaceTimeRecord{}); }) == ErrorCode::EmptyRecord);
}

TEST_CASE("single-Lambda slow light: delay grows as the control weakens")
{
    const double length = 2.0;
    double last_delay = length;
    for (double c1 : {4.0, 3.0, 2.0}) {
        const Run r = small_run(2.0, length, 200, 0.005, 90.0);
        const SpaceTimeRecord rec = propagate(r.medium, r.grid,
                                              make_source(gaussian_pulse(1.0, 40.0, 10.0), zero_envelope()),
                                              constant(r, {c1, 0.0}));
        const ProbeMetrics m = probe_metrics(rec);
        const double vg = c1 * c1 / (c1 * c1 + 4.0);
        CHECK(m.beam[0].delay > last_delay);
        CHECK(m.beam[0].delay == doctest::Approx(length / vg).epsilon(0.1));
        // A passive medium: no gain without a partner beam.
        CHECK(m.beam[0].energy_out <= m.beam[0].energy_in);
        CHECK(m.beam[1].energy_out == 0.0);
        last_delay = m.beam[0].delay;
    }
}

TEST_CASE("steady state matches the reduced model along the medium")
{
    // For a constant input the stationary atoms are exactly the adiabatic
    // slice, so the output equals the reduced flow over the medium length.
    const ControlPair c{2.0, Complex{1.0, 1.0}};
    const SignalPair s0{1.0, Complex{0.3, -0.2}};
    const Run r = small_run(2.0, 1.5, 150, 0.005, 60.0);
    const SpaceTimeRecord rec = propagate(
        r.medium, r.grid, make_source(cw_envelope(s0.s1, 0.0, 5.0), cw_envelope(s0.s2, 0.0, 5.0)), constant(r, c));
    const SignalPair expect = integrate_reduced_final(s0, c, r.medium.eta, r.medium.length, 0.001);
    CHECK(distance(rec.output.back(), expect) < 1e-3);
}

TEST_CASE("phase locking for a long medium")
{
    const ControlPair c{2.0, Complex{0.0, 2.0}};
    const Run r = small_run(2.0, 12.0, 600, 0.01, 60.0);
    const SpaceTimeRecord rec = propagate(r.medium, r.grid,
                                          make_source(cw_envelope(1.0, 0.0, 5.0), zero_envelope()), constant(r, c));
    const SignalPair out = rec.output.back();
    REQUIRE(std::abs(out.s1) > 1e-6);
    CHECK(std::abs(out.s2 / out.s1 - c.c2 / c.c1) < 1e-3 * std::abs(c.c2 / c.c1));
}

TEST_CASE("grid refinement changes the output by less than 1%")
{
    const auto run = [](int cells, double dtau) {
        const Run r = small_run(2.0, 2.0, cells, dtau, 40.0);
        return propagate(r.medium, r.grid, make_source(zero_envelope(), gaussian_pulse(1.0, 15.0, 5.0)),
                         constant(r, {4.0, 4.0}));
    };
    const SpaceTimeRecord coarse = run(200, 0.005);
    const SpaceTimeRecord fine = run(400, 0.0025);
    std::vector<SignalPair> fine_on_coarse;
    for (std::size_t i = 0; i < fine.output.size(); i += 2)
        fine_on_coarse.push_back(fine.output[i]);
    REQUIRE(fine_on_coarse.size() == coarse.output.size());
    for (int beam : {1, 2})
        CHECK(relative_l2(beam_series(coarse.output, beam), beam_series(fine_on_coarse, beam)) < 1e-2);
}

TEST_CASE("identical runs are bit-identical")
{
    const auto run = [] {
        const Run r = small_run(2.0, 1.0, 100, 0.005, 20.0);
        return propagate(r.medium, r.grid,
                         make_source(gaussian_pulse({0.3, 0.4}, 8.0, 2.0), gaussian_pulse(1.0, 9.0, 3.0)),
                         constant(r, {3.0, Complex{1.0, -2.0}}));
    };
    const SpaceTimeRecord a = run(), b = run();
    CHECK(a.output == b.output);
    CHECK(a.input == b.input);
}

TEST_CASE("snapshots and probe stride")
{
    const Run r = small_run(2.0, 1.0, 100, 0.005, 10.0);
    PropagationOptions opts;
    opts.snapshot_times = {5.0};
    opts.snapshot_stride = 25;
    opts.probe_stride = 4;
    const SpaceTimeRecord rec = propagate(r.medium, r.grid, make_source(gaussian_pulse(1.0, 4.0, 1.0), zero_envelope()),
                                          constant(r, {2.0, 2.0}), opts);
    CHECK(rec.zs.size() == 5);
    REQUIRE(rec.snapshots.size() == 1);
    CHECK(rec.snapshots[0].fields.size() == 5);
    CHECK(rec.dtau == doctest::Approx(0.02));
    CHECK(rec.taus_in.size() == 501);
}

TEST_CASE("storage: ground-coherence decay during the hold")
{
    // Same protocol with two hold times; the light retrieved after the read
    // ramp isolates the spin-wave decay exp(-2 gamma_bc delta_hold).
    const double gamma_bc = 0.05;
    const auto retrieved = [&](double hold) {
        const double tau_end = 160.0 + hold;
        const Run r = small_run(2.0, 20.0, 400, 0.02, tau_end, gamma_bc);
        StoragePlan plan;
        plan.write_level = {2.0, 0.0};
        plan.read_level = {2.0, 0.0};
        plan.write_until = 45.0;
        plan.ramp = 10.0;
        plan.hold = hold;
        const StorageRecord s = storage_cycle(r.medium, r.grid,
                                              make_source(gaussian_pulse(1.0, 25.0, 5.0), zero_envelope()), plan);
        std::vector<double> taus;
        std::vector<SignalPair> out;
        for (std::size_t i = 0; i < s.record.taus_out.size(); ++i) {
            if (s.record.taus_out[i] >= plan.read_start()) {
                taus.push_back(s.record.taus_out[i]);
                out.push_back(s.record.output[i]);
            }
        }
        return series_energy(taus, out, 1);
    };
    const double e0 = retrieved(10.0);
    const double e1 = retrieved(30.0);
    CHECK(e0 > 0.01);
    CHECK(e1 / e0 == doctest::Approx(std::exp(-2.0 * gamma_bc * 20.0)).epsilon(0.1));
}

TEST_CASE("storage plan schedule")
{
    StoragePlan plan;
    plan.write_level = {3.0, 3.0};
    plan.read_level = {3.0, 0.0};
    plan.write_until = 10.0;
    plan.ramp = 5.0;
    plan.hold = 4.0;
    const ControlSchedule s = plan.schedule(40.0);
    CHECK_NOTHROW(s.validate(40.0));
    CHECK(s.at(5.0) == ControlPair{3.0, 3.0});
    CHECK(std::abs(s.at(17.0).c1) < 1e-15);
    CHECK(plan.hold_mid() == doctest::Approx(17.0));
    CHECK(s.at(30.0).c1 == Complex{3.0});
    CHECK(std::abs(s.at(30.0).c2) < 1e-15);
}

#include "doctest.h"

#include <cmath>

#include "lambda2/schemes.hpp"

using namespace lambda2;

namespace {

bool has_note(const SchemeReport& r, const std::string& needle)
{
    for (const auto& n : r.notes)
        if (n.find(needle) != std::string::npos)
            return true;
    return false;
}

double total_in(const SchemeReport& r) { return r.metrics.beam[0].energy_in + r.metrics.beam[1].energy_in; }
double total_out(const SchemeReport& r) { return r.metrics.beam[0].energy_out + r.metrics.beam[1].energy_out; }

} // namespace

TEST_CASE("twin generation")
{
    SUBCASE("equal controls halve the amplitude on both beams")
    {
        const SchemeReport r = scheme_twin(TwinConfig{});
        CHECK(r.passed());
        CHECK(r.value("amplitude_1") == doctest::Approx(0.5).epsilon(0.05));
        CHECK(r.value("amplitude_2") == doctest::Approx(0.5).epsilon(0.05));
        CHECK(r.value("shape_mismatch_l2") <= 0.02);
        CHECK(total_out(r) <= total_in(r));
    }
    SUBCASE("xi = 4")
    {
        TwinConfig cfg;
        cfg.xi = 4.0;
        cfg.control_level = 12.0;
        const SchemeReport r = scheme_twin(cfg);
        CHECK(r.value("expected_amplitude_1") == doctest::Approx(0.4));
        CHECK(r.value("expected_amplitude_2") == doctest::Approx(0.8));
        CHECK(r.value("amplitude_1") == doctest::Approx(0.4).epsilon(0.05));
        CHECK(r.value("amplitude_2") == doctest::Approx(0.8).epsilon(0.05));
        CHECK(r.passed());
    }
    SUBCASE("zero input passes vacuously")
    {
        TwinConfig cfg;
        cfg.amplitude = 0.0;
        const SchemeReport r = scheme_twin(cfg);
        CHECK(r.passed());
        CHECK(has_note(r, "degenerate"));
        CHECK(r.metrics.beam[0].peak_out == 0.0);
    }
    SUBCASE("bad arguments")
    {
        TwinConfig cfg;
        cfg.input_beam = 3;
        CHECK_THROWS_AS(scheme_twin(cfg), Error);
        cfg.input_beam = 2;
        cfg.xi = -1.0;
        CHECK_THROWS_AS(scheme_twin(cfg), Error);
    }
}

TEST_CASE("twin runs are deterministic")
{
    TwinConfig cfg;
    cfg.run.cells = 250;
    const SchemeReport a = scheme_twin(cfg);
    const SchemeReport b = scheme_twin(cfg);
    CHECK(a.record.output == b.record.output);
    CHECK(a.values == b.values);
}

TEST_CASE("data correction")
{
    PulseTrain a = PulseTrain::from_mask({true, false, true});
    PulseTrain b = PulseTrain::from_mask({true, true, false});
    SUBCASE("complementary blanks are restored")
    {
        const SchemeReport r = scheme_correction(a, b, CorrectionConfig{});
        CHECK(r.passed());
        CHECK(has_note(r, "output_mask_1 = 111"));
        CHECK(has_note(r, "output_mask_2 = 111"));
        CHECK(r.value("beam_mismatch_l2") <= 0.02);
        CHECK(total_out(r) <= total_in(r) * (1.0 + 1e-6));
    }
    SUBCASE("a blank shared by both trains stays blank")
    {
        const SchemeReport r = scheme_correction(a, a, CorrectionConfig{});
        CHECK(r.passed());
        CHECK(has_note(r, "output_mask_1 = 101"));
        CHECK(has_note(r, "output_mask_2 = 101"));
        CHECK(r.value("slot1_peak_1") < 0.01);
    }
    SUBCASE("identical complete trains pass through")
    {
        const PulseTrain full = PulseTrain::from_mask({true, true, true});
        const SchemeReport r = scheme_correction(full, full, CorrectionConfig{});
        CHECK(r.passed());
        CHECK(r.metrics.beam[0].energy_ratio == doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("trains must share their slot geometry")
    {
        b.slot_period = 13.0;
        try {
            scheme_correction(a, b, CorrectionConfig{});
            FAIL("expected MismatchedTrains");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MismatchedTrains);
        }
    }
    SUBCASE("pulse train validation")
    {
        a.pulse_width = 12.0;
        CHECK_THROWS_AS(a.validate(), Error);
    }
}

TEST_CASE("amplification in transmission")
{
    SUBCASE("optimal xi")
    {
        const SchemeReport r = scheme_amplify_transmission(AmplifyConfig{});
        CHECK(r.passed());
        CHECK(r.value("ratio_1") == doctest::Approx(1.457).epsilon(0.02));
        // Contraction: beam 2 pays for the gain on beam 1.
        CHECK(total_out(r) <= total_in(r) * (1.0 + 1e-6));
        CHECK(r.metrics.beam[1].energy_out < r.metrics.beam[1].energy_in);
    }
    SUBCASE("transparency at xi = 1")
    {
        AmplifyConfig cfg;
        cfg.xi = 1.0;
        CHECK(scheme_amplify_transmission(cfg).value("ratio_1") == doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("quench at delta0 = pi")
    {
        AmplifyConfig cfg;
        cfg.xi = 1.0;
        cfg.delta0 = kPi;
        CHECK(scheme_amplify_transmission(cfg).value("ratio_1") < 0.05);
    }
}

TEST_CASE("transfer between beams")
{
    // Computed once; doctest re-enters the body for every subcase.
    static const SchemeReport slow = scheme_transfer(TransferConfig{});
    SUBCASE("default ramp")
    {
        CHECK(slow.passed());
        CHECK(slow.value("efficiency") >= 0.9);
        CHECK(slow.value("residual_1") < 0.05);
    }
    SUBCASE("without the swap the pulse stays on beam 1")
    {
        TransferConfig cfg;
        cfg.swap = false;
        const SchemeReport r = scheme_transfer(cfg);
        CHECK(r.value("efficiency") < 1e-12);
        CHECK(r.value("residual_1") > 0.5);
        CHECK_FALSE(r.passed());
    }
    SUBCASE("an abrupt swap transfers less")
    {
        TransferConfig cfg;
        cfg.ramp = cfg.run.dtau;
        const SchemeReport r = scheme_transfer(cfg);
        CHECK(r.value("efficiency") < slow.value("efficiency") - 0.05);
    }
    SUBCASE("swap may not start before tau = 0")
    {
        TransferConfig cfg;
        cfg.swap_mid = 10.0;
        cfg.ramp = 40.0;
        CHECK_THROWS_AS(scheme_transfer(cfg), Error);
    }
}

TEST_CASE("amplification through storage")
{
    SUBCASE("default protocol")
    {
        const SchemeReport r = scheme_amplify_storage(StorageConfig{});
        CHECK(r.passed());
        CHECK(r.value("ratio_1") >= 1.30);
        CHECK(r.value("ratio_1") <= 1.60);
        CHECK(r.value("energy_ratio_2") < 0.01);
        CHECK(r.value("spin_wave_peak") > 0.0);
    }
    SUBCASE("symmetric read retrieves both beams without gain, losses vanish with slower ramps")
    {
        double last = 0.0;
        for (double ramp : {40.0, 80.0, 160.0}) {
            StorageConfig cfg;
            cfg.read_both = true;
            cfg.ramp = ramp;
            const SchemeReport r = scheme_amplify_storage(cfg);
            CHECK(r.passed());
            CHECK(r.value("energy_ratio_1") == doctest::Approx(r.value("energy_ratio_2")).epsilon(1e-6));
            CHECK(r.value("energy_ratio_1") > last);
            last = r.value("energy_ratio_1");
        }
        CHECK(last == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("storage: spin-wave decay over a long hold")
{
    const auto ratio = [](double hold) {
        StorageConfig cfg;
        cfg.run.gamma_bc = 0.05;
        cfg.hold = hold;
        return scheme_amplify_storage(cfg).value("energy_ratio_1");
    };
    const double short_hold = ratio(20.0);
    const double long_hold = ratio(120.0);
    CHECK(long_hold / short_hold == doctest::Approx(std::exp(-2.0 * 0.05 * 100.0)).epsilon(0.1));
}

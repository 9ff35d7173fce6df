#pragma once

// Ready-made scenarios for the five signal-manipulation protocols: twin
// generation, data correction, amplification in transmission, transfer
// between beams and amplification through storage.

#include <string>
#include <utility>
#include <vector>

#include "lambda2/propagation.hpp"

namespace lambda2 {

struct PulseTrain
{
    int slot_count = 8;
    double slot_period = 12.0;
    double pulse_width = 3.0;
    double edge = 3.0;          // raised-cosine edge duration
    double first_center = 12.0; // lab time of slot 0 at the entrance
    Complex amplitude{1.0, 0.0};
    std::vector<bool> mask;

    static PulseTrain from_mask(std::vector<bool> mask);

    double slot_center(int k) const { return first_center + k * slot_period; }
    void validate() const;
    Envelope envelope() const;
};

struct SchemeReport
{
    std::string scheme;
    ProbeMetrics metrics;
    std::vector<std::pair<std::string, double>> values;
    std::vector<std::pair<std::string, bool>> verdicts;
    std::vector<std::string> notes;
    SpaceTimeRecord record;

    bool passed() const;
    double value(const std::string& key) const;
    void add(std::string key, double v) { values.emplace_back(std::move(key), v); }
    void check(std::string key, bool ok) { verdicts.emplace_back(std::move(key), ok); }
};

/// Numerical setup shared by all schemes.
struct RunSetup
{
    double chi = 2.0;
    double gamma_bc = 0.0;
    double length = 10.0;
    int cells = 1000;
    double dtau = 0.005;
    double tau_end = 0.0; // 0 selects a scheme-specific default
    int probe_stride = 1;

    MediumParams medium() const { return MediumParams::make(chi, length, cells, gamma_bc); }
};

struct TwinConfig
{
    RunSetup run{};
    double control_level = 24.0; // |c1|; 12 chi
    double xi = 1.0;
    Complex amplitude{1.0, 0.0};
    double width = 5.0;          // Gaussian 1/e half-width
    double center = 25.0;
    int input_beam = 2;
};

SchemeReport scheme_twin(const TwinConfig& cfg);

struct CorrectionConfig
{
    RunSetup run{};
    double control_level = 24.0;
};

SchemeReport scheme_correction(const PulseTrain& train1, const PulseTrain& train2,
                               const CorrectionConfig& cfg);

struct AmplifyConfig
{
    RunSetup run{};
    double control_level = 24.0;
    double xi = 0.1716;
    double mu = 1.0;
    double delta0 = 0.0;
    Complex amplitude{1.0, 0.0};
    double width = 10.0;
    double center = 40.0;
};

SchemeReport scheme_amplify_transmission(const AmplifyConfig& cfg);

struct TransferConfig
{
    // Slow light keeps the photonic share of the polariton small while the
    // controls swap; a long pulse keeps it inside the transparency window.
    RunSetup run{2.0, 0.0, 166.0, 332, 0.1, 0.0, 10};
    double high_level = 0.8;
    double low_level = 0.0;
    double ramp = 40.0;
    double swap_mid = 1800.0; // lab time at the middle of the exchange
    bool swap = true;
    Complex amplitude{1.0, 0.0};
    double width = 400.0;
    double center = 1200.0;
};

SchemeReport scheme_transfer(const TransferConfig& cfg);

struct StorageConfig
{
    RunSetup run{2.0, 0.0, 100.0, 1000, 0.03, 0.0, 1};
    double control_level = 6.0;
    double write_until = 150.0;
    double ramp = 40.0;
    double hold = 20.0;
    bool read_both = false;
    Complex amplitude{1.0, 0.0};
    double width = 15.0;
    double center = 115.0;
};

SchemeReport scheme_amplify_storage(const StorageConfig& cfg);

} // namespace lambda2

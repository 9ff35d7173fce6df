#pragma once

// One-dimensional propagation of the two signals through the medium.
//
// The solver works in the retarded frame (zeta = z, tau_r = tau - z) where the
// field equation becomes d(Omega_i)/d(zeta) = (i/2) chi^2 S_i. At each retarded
// time the fields are obtained from the atoms by a fourth-order sweep from the
// entrance; the atoms at all cells are then advanced together with RK4, the
// fields being re-swept at every stage. Controls are prescribed, undepleted
// and uniform in space, so a cell at zeta sees c(tau_r + zeta).

#include <array>
#include <string>
#include <vector>

#include "lambda2/bloch.hpp"
#include "lambda2/pulses.hpp"
#include "lambda2/schedule.hpp"

namespace lambda2 {

struct Grid
{
    int cells = 1000;
    double dz = 0.01;
    double dtau = 0.005;
    double tau_end = 60.0; // last retarded time

    static Grid make(const MediumParams& medium, double dtau, double tau_end);

    int steps() const;
    /// dtau <= dz; positive sizes.
    void validate() const;
};

/// Fields and atoms across the medium at one lab time.
struct Snapshot
{
    double tau = 0.0;
    std::vector<SignalPair> fields;
    std::vector<AtomicSlice> atoms;
};

struct SpaceTimeRecord
{
    double length = 0.0;
    double dtau = 0.0;

    /// Lab times at z = 0; the matching output times are taus_in + length.
    std::vector<double> taus_in;
    std::vector<SignalPair> input;
    std::vector<double> taus_out;
    std::vector<SignalPair> output;
    /// Control envelopes at the exit, aligned with taus_out.
    std::vector<ControlPair> controls_out;

    std::vector<double> zs;
    std::vector<Snapshot> snapshots;

    std::array<double, 2> energy_in{};
    std::array<double, 2> energy_out{};

    long weak_signal_violations = 0;
    double max_field = 0.0;
};

struct PropagationOptions
{
    std::vector<double> snapshot_times; // lab times
    int snapshot_stride = 10;           // keep every n-th cell in snapshots
    int probe_stride = 1;               // keep every n-th retarded step in probes
    double blowup_factor = 1e3;
};

/// Atoms start in |b> (all coherences zero); fields and atoms are taken as
/// zero for tau_r < 0.
SpaceTimeRecord propagate(const MediumParams& medium, const Grid& grid, const SignalSource& input,
                          const ControlSchedule& schedule, const PropagationOptions& options = {});

/// Write / hold / read protocol for light storage.
struct StoragePlan
{
    ControlPair write_level{1.0, 1.0};
    double write_until = 150.0; // lab time at which the write ramp starts
    double ramp = 10.0;
    double hold = 20.0;         // both controls off
    ControlPair read_level{1.0, 1.0};
    RampShape shape = RampShape::RaisedCosine;

    ControlSchedule schedule(double tau_end) const;
    double hold_start() const { return write_until + ramp; }
    double hold_mid() const { return hold_start() + 0.5 * hold; }
    double read_start() const { return hold_start() + hold; }
};

struct StorageRecord
{
    SpaceTimeRecord record;
    Snapshot spin_wave; // mid-hold snapshot
};

StorageRecord storage_cycle(const MediumParams& medium, const Grid& grid, const SignalSource& input,
                            const StoragePlan& plan, PropagationOptions options = {});

struct BeamMetrics
{
    double peak_in = 0.0;
    double peak_out = 0.0;
    double energy_in = 0.0;
    double energy_out = 0.0;
    double centroid_in = 0.0;
    double centroid_out = 0.0;
    double delay = 0.0;
    double energy_ratio = 0.0; // 0 when the input energy is zero
    double peak_ratio = 0.0;
};

struct ProbeMetrics
{
    std::array<BeamMetrics, 2> beam;
};

ProbeMetrics probe_metrics(const SpaceTimeRecord& rec);

/// Trapezoidal integral of |beam|^2 over the samples.
double series_energy(const std::vector<double>& taus, const std::vector<SignalPair>& series, int beam);

/// Relative L2 distance between two complex series.
double relative_l2(const std::vector<Complex>& a, const std::vector<Complex>& b);

std::vector<Complex> beam_series(const std::vector<SignalPair>& series, int beam);

} // namespace lambda2

#include "lambda2/propagation.hpp"

#include <cmath>

namespace lambda2 {

Grid Grid::make(const MediumParams& medium, double dtau, double tau_end)
{
    medium.validate();
    Grid g;
    g.cells = medium.cells;
    g.dz = medium.length / medium.cells;
    g.dtau = dtau;
    g.tau_end = tau_end;
    g.validate();
    return g;
}

int Grid::steps() const { return static_cast<int>(std::llround(tau_end / dtau)); }

void Grid::validate() const
{
    if (cells < 1 || !(dz > 0.0) || !(dtau > 0.0) || !(tau_end > 0.0))
        throw Error(ErrorCode::InvalidArgument, "grid sizes must be positive");
    if (dtau > dz * (1.0 + 1e-12))
        throw Error(ErrorCode::CourantViolation, "dtau must not exceed dz");
}

ControlSchedule StoragePlan::schedule(double tau_end) const
{
    const auto build = [&](Complex write, Complex read) {
        BeamSchedule b = BeamSchedule::starting_at(write);
        b.hold_until(write_until).ramp_to(0.0, ramp, shape).hold_for(hold).ramp_to(read, ramp, shape);
        if (b.end() < tau_end)
            b.hold_until(tau_end);
        return b;
    };
    return {build(write_level.c1, read_level.c1), build(write_level.c2, read_level.c2)};
}

namespace {

struct Workspace
{
    std::vector<AtomicSlice> k1, k2, k3, k4, stage;
    std::vector<SignalPair> fields, stage_fields;

    explicit Workspace(std::size_t n)
        : k1(n), k2(n), k3(n), k4(n), stage(n), fields(n), stage_fields(n)
    {
    }
};

} // namespace

SpaceTimeRecord propagate(const MediumParams& medium, const Grid& grid, const SignalSource& input,
                          const ControlSchedule& schedule, const PropagationOptions& options)
{
    medium.validate();
    grid.validate();
    if (grid.cells != medium.cells || std::abs(grid.dz * grid.cells - medium.length) > 1e-9 * medium.length)
        throw Error(ErrorCode::InvalidArgument, "grid does not match the medium");
    schedule.validate(grid.tau_end);
    check_bloch_step(grid.dtau, schedule.max_abs());
    if (options.snapshot_stride < 1 || options.probe_stride < 1)
        throw Error(ErrorCode::InvalidArgument, "strides must be >= 1");

    const std::size_t nodes = static_cast<std::size_t>(grid.cells) + 1;
    const double dt = grid.dtau;
    const double gamma_bc = medium.gamma_bc;
    // (i/2) chi^2 dz / 24: fourth-order weights for the cumulative field integral.
    const Complex g = kI * medium.chi * medium.chi * grid.dz / 48.0;

    std::vector<double> zeta(nodes);
    for (std::size_t j = 0; j < nodes; ++j)
        zeta[j] = grid.dz * static_cast<double>(j);

    std::vector<AtomicSlice> atoms(nodes);
    Workspace ws(nodes);

    // Cell [j, j+1] uses the Adams-Moulton stencil (j-2 .. j+1), so each field
    // depends only on atoms at or before it. The first two cells borrow the
    // cubic through nodes 0..3; with fewer than four nodes the rule falls back
    // to the trapezoid.
    const auto sweep = [&](double tr, const std::vector<AtomicSlice>& a, std::vector<SignalPair>& f) {
        f[0] = input(tr);
        const auto step = [&](std::size_t j, double w0, double w1, double w2, double w3, std::size_t base) {
            f[j + 1].s1 = f[j].s1 + g * (w0 * a[base].S1 + w1 * a[base + 1].S1 + w2 * a[base + 2].S1 + w3 * a[base + 3].S1);
            f[j + 1].s2 = f[j].s2 + g * (w0 * a[base].S2 + w1 * a[base + 1].S2 + w2 * a[base + 2].S2 + w3 * a[base + 3].S2);
        };
        if (nodes < 4) {
            for (std::size_t j = 0; j + 1 < nodes; ++j) {
                f[j + 1].s1 = f[j].s1 + 12.0 * g * (a[j].S1 + a[j + 1].S1);
                f[j + 1].s2 = f[j].s2 + 12.0 * g * (a[j].S2 + a[j + 1].S2);
            }
            return;
        }
        step(0, 9.0, 19.0, -5.0, 1.0, 0);
        step(1, -1.0, 13.0, 13.0, -1.0, 0);
        for (std::size_t j = 2; j + 1 < nodes; ++j)
            step(j, 1.0, -5.0, 19.0, 9.0, j - 2);
    };
    const auto rhs = [&](double tr, const std::vector<AtomicSlice>& a, std::vector<AtomicSlice>& out,
                         std::vector<SignalPair>& f) {
        sweep(tr, a, f);
        for (std::size_t j = 0; j < nodes; ++j)
            out[j] = bloch_rhs_linear(a[j], f[j], schedule.at(tr + zeta[j]), gamma_bc);
    };

    SpaceTimeRecord rec;
    rec.length = medium.length;
    rec.dtau = dt * options.probe_stride;

    for (std::size_t j = 0; j < nodes; j += static_cast<std::size_t>(options.snapshot_stride))
        rec.zs.push_back(zeta[j]);
    if ((nodes - 1) % static_cast<std::size_t>(options.snapshot_stride) != 0)
        rec.zs.push_back(zeta[nodes - 1]);
    std::vector<std::size_t> snap_cells;
    for (double z : rec.zs)
        snap_cells.push_back(static_cast<std::size_t>(std::llround(z / grid.dz)));
    for (double t : options.snapshot_times) {
        Snapshot s;
        s.tau = t;
        s.fields.assign(snap_cells.size(), SignalPair{});
        s.atoms.assign(snap_cells.size(), AtomicSlice{});
        rec.snapshots.push_back(std::move(s));
    }

    std::vector<AtomicSlice> prev_atoms(nodes);
    std::vector<SignalPair> prev_fields(nodes);
    double max_input = 0.0;
    const int steps = grid.steps();

    for (int n = 0; n <= steps; ++n) {
        const double tr = n * dt;
        rhs(tr, atoms, ws.k1, ws.fields);

        max_input = std::max({max_input, std::abs(ws.fields[0].s1), std::abs(ws.fields[0].s2)});
        for (std::size_t j = 0; j < nodes; ++j) {
            const SignalPair& f = ws.fields[j];
            if (!f.finite())
                throw Error(ErrorCode::NonFiniteField, "field became non-finite at tau_r = " + std::to_string(tr));
            const double m = std::max(std::abs(f.s1), std::abs(f.s2));
            rec.max_field = std::max(rec.max_field, m);
            if (max_input > 0.0 && m > options.blowup_factor * max_input)
                throw Error(ErrorCode::NonFiniteField,
                            "field exceeds " + std::to_string(options.blowup_factor)
                                + "x the largest input at tau_r = " + std::to_string(tr));
            if (!in_weak_signal_regime(atoms[j]))
                ++rec.weak_signal_violations;
        }

        if (n % options.probe_stride == 0 || n == steps) {
            rec.taus_in.push_back(tr);
            rec.input.push_back(ws.fields[0]);
            rec.taus_out.push_back(tr + medium.length);
            rec.output.push_back(ws.fields[nodes - 1]);
            rec.controls_out.push_back(schedule.at(tr + medium.length));
        }

        // Snapshot cells whose retarded target time T - zeta lies in (tr - dt, tr].
        for (auto& snap : rec.snapshots) {
            for (std::size_t k = 0; k < snap_cells.size(); ++k) {
                const std::size_t j = snap_cells[k];
                const double target = snap.tau - zeta[j];
                if (n == 0) {
                    if (std::abs(target) <= 1e-12 * dt) {
                        snap.fields[k] = ws.fields[j];
                        snap.atoms[k] = atoms[j];
                    }
                    continue;
                }
                if (target > tr - dt && target <= tr) {
                    const double w = (target - (tr - dt)) / dt;
                    snap.fields[k] = prev_fields[j] + w * (ws.fields[j] - prev_fields[j]);
                    snap.atoms[k] = prev_atoms[j] + w * (atoms[j] + (-1.0) * prev_atoms[j]);
                }
            }
        }

        if (n == steps)
            break;
        if (!rec.snapshots.empty()) {
            prev_atoms = atoms;
            prev_fields = ws.fields;
        }

        for (std::size_t j = 0; j < nodes; ++j)
            ws.stage[j] = atoms[j] + (0.5 * dt) * ws.k1[j];
        rhs(tr + 0.5 * dt, ws.stage, ws.k2, ws.stage_fields);
        for (std::size_t j = 0; j < nodes; ++j)
            ws.stage[j] = atoms[j] + (0.5 * dt) * ws.k2[j];
        rhs(tr + 0.5 * dt, ws.stage, ws.k3, ws.stage_fields);
        for (std::size_t j = 0; j < nodes; ++j)
            ws.stage[j] = atoms[j] + dt * ws.k3[j];
        rhs(tr + dt, ws.stage, ws.k4, ws.stage_fields);
        for (std::size_t j = 0; j < nodes; ++j)
            atoms[j] += (dt / 6.0) * (ws.k1[j] + 2.0 * ws.k2[j] + 2.0 * ws.k3[j] + ws.k4[j]);
    }

    for (int b = 0; b < 2; ++b) {
        rec.energy_in[b] = series_energy(rec.taus_in, rec.input, b + 1);
        rec.energy_out[b] = series_energy(rec.taus_out, rec.output, b + 1);
    }
    return rec;
}

StorageRecord storage_cycle(const MediumParams& medium, const Grid& grid, const SignalSource& input,
                            const StoragePlan& plan, PropagationOptions options)
{
    if (!(plan.ramp >= 0.0) || !(plan.hold >= 0.0) || !(plan.write_until >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "storage plan durations must be >= 0");
    const ControlSchedule schedule = plan.schedule(grid.tau_end);
    options.snapshot_times.push_back(plan.hold_mid());
    StorageRecord out;
    out.record = propagate(medium, grid, input, schedule, options);
    out.spin_wave = out.record.snapshots.back();
    out.record.snapshots.pop_back();
    return out;
}

std::vector<Complex> beam_series(const std::vector<SignalPair>& series, int beam)
{
    std::vector<Complex> v;
    v.reserve(series.size());
    for (const auto& s : series)
        v.push_back(beam == 1 ? s.s1 : s.s2);
    return v;
}

double series_energy(const std::vector<double>& taus, const std::vector<SignalPair>& series, int beam)
{
    double e = 0.0;
    for (std::size_t i = 1; i < taus.size(); ++i) {
        const auto& a = series[i - 1];
        const auto& b = series[i];
        const double ia = std::norm(beam == 1 ? a.s1 : a.s2);
        const double ib = std::norm(beam == 1 ? b.s1 : b.s2);
        e += 0.5 * (ia + ib) * (taus[i] - taus[i - 1]);
    }
    return e;
}

double relative_l2(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::InvalidArgument, "series lengths differ");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::max(std::norm(a[i]), std::norm(b[i]));
    }
    return den == 0.0 ? 0.0 : std::sqrt(num / den);
}

namespace {

BeamMetrics beam_metrics(const SpaceTimeRecord& rec, int beam)
{
    BeamMetrics m;
    const auto centroid = [&](const std::vector<double>& taus, const std::vector<SignalPair>& s,
                              double energy) {
        if (energy == 0.0)
            return 0.0;
        double acc = 0.0;
        for (std::size_t i = 1; i < taus.size(); ++i) {
            const double ia = std::norm(beam == 1 ? s[i - 1].s1 : s[i - 1].s2);
            const double ib = std::norm(beam == 1 ? s[i].s1 : s[i].s2);
            acc += 0.5 * (ia * taus[i - 1] + ib * taus[i]) * (taus[i] - taus[i - 1]);
        }
        return acc / energy;
    };
    for (const auto& s : rec.input)
        m.peak_in = std::max(m.peak_in, std::norm(beam == 1 ? s.s1 : s.s2));
    for (const auto& s : rec.output)
        m.peak_out = std::max(m.peak_out, std::norm(beam == 1 ? s.s1 : s.s2));
    m.energy_in = series_energy(rec.taus_in, rec.input, beam);
    m.energy_out = series_energy(rec.taus_out, rec.output, beam);
    m.centroid_in = centroid(rec.taus_in, rec.input, m.energy_in);
    m.centroid_out = centroid(rec.taus_out, rec.output, m.energy_out);
    if (m.energy_in > 0.0 && m.energy_out > 0.0)
        m.delay = m.centroid_out - m.centroid_in;
    m.energy_ratio = m.energy_in > 0.0 ? m.energy_out / m.energy_in : 0.0;
    m.peak_ratio = m.peak_in > 0.0 ? m.peak_out / m.peak_in : 0.0;
    return m;
}

} // namespace

ProbeMetrics probe_metrics(const SpaceTimeRecord& rec)
{
    if (rec.taus_in.empty() || rec.taus_out.empty())
        throw Error(ErrorCode::EmptyRecord, "record has no samples");
    return {{beam_metrics(rec, 1), beam_metrics(rec, 2)}};
}

} // namespace lambda2

#include "lambda2/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "lambda2/output.hpp"

namespace lambda2 {

SchemeReport scheme_custom(const CustomConfig& cfg)
{
    validate_controls(cfg.controls);
    const double tau_end = cfg.run.tau_end > 0.0 ? cfg.run.tau_end : cfg.center + 5.0 * cfg.width + 10.0;
    const MediumParams medium = cfg.run.medium();
    const Grid grid = Grid::make(medium, cfg.run.dtau, tau_end);
    PropagationOptions opts;
    opts.probe_stride = cfg.run.probe_stride;

    SchemeReport rep;
    rep.scheme = "custom";
    rep.record = propagate(medium, grid,
                           make_source(gaussian_pulse(cfg.amplitude1, cfg.center, cfg.width),
                                       gaussian_pulse(cfg.amplitude2, cfg.center, cfg.width)),
                           ControlSchedule::constant(cfg.controls, tau_end), opts);
    rep.metrics = probe_metrics(rep.record);
    const double e_in = rep.metrics.beam[0].energy_in + rep.metrics.beam[1].energy_in;
    const double e_out = rep.metrics.beam[0].energy_out + rep.metrics.beam[1].energy_out;
    rep.add("energy_in_total", e_in);
    rep.add("energy_out_total", e_out);
    rep.add("transmission", e_in > 0.0 ? e_out / e_in : 0.0);
    return rep;
}

SchemeReport sweep_report(const SweepSpec& spec, const std::vector<SweepRow>& rows)
{
    SchemeReport rep;
    rep.scheme = "sweep";
    rep.add("points", static_cast<double>(rows.size()));
    rep.add("mu", spec.mu);
    std::vector<double> deltas = spec.delta0s;
    std::sort(deltas.begin(), deltas.end());
    for (std::size_t d = 0; d < deltas.size(); ++d) {
        const SweepRow* best = nullptr;
        for (const auto& r : rows)
            if (r.delta0 == deltas[d] && (!best || r.r1 > best->r1))
                best = &r;
        const std::string p = "set" + std::to_string(d + 1) + ".";
        rep.add(p + "delta0", deltas[d]);
        if (best) {
            rep.add(p + "r1_max", best->r1);
            rep.add(p + "xi_at_r1_max", best->xi);
        }
    }
    return rep;
}

SchemeReport run_scheme(const ScenarioConfig& cfg, unsigned jobs, std::vector<SweepRow>* sweep_rows)
{
    switch (cfg.scheme) {
    case SchemeId::Sweep: {
        const SweepSpec spec = sweep_spec(cfg);
        auto rows = amplification_sweep(spec, jobs);
        SchemeReport rep = sweep_report(spec, rows);
        if (sweep_rows)
            *sweep_rows = std::move(rows);
        return rep;
    }
    case SchemeId::Twin: return scheme_twin(twin_config(cfg));
    case SchemeId::Correct: {
        const auto [t1, t2] = correction_trains(cfg);
        return scheme_correction(t1, t2, correction_config(cfg));
    }
    case SchemeId::Amplify: return scheme_amplify_transmission(amplify_config(cfg));
    case SchemeId::Transfer: return scheme_transfer(transfer_config(cfg));
    case SchemeId::Store: return scheme_amplify_storage(storage_config(cfg));
    case SchemeId::Custom: return scheme_custom(custom_config(cfg));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown scheme");
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir, unsigned jobs)
{
    ScenarioResult res;
    try {
        const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path(cfg.text("output.dir")) : out_dir;
        const long long seed = cfg.integer("scheme.seed");

        std::vector<SweepRow> rows;
        res.report = run_scheme(cfg, jobs, &rows);
        if (cfg.scheme == SchemeId::Sweep) {
            res.files.push_back(dir / "sweep.csv");
            emit_sweep_csv(res.files.back(), rows);
        } else {
            const SpaceTimeRecord& rec = res.report.record;
            res.files.push_back(dir / "series_input.csv");
            emit_series_csv(res.files.back(), rec.taus_in, rec.input);
            res.files.push_back(dir / "series_output.csv");
            emit_series_csv(res.files.back(), rec.taus_out, rec.output);
        }
        res.files.push_back(dir / "config.txt");
        write_file_atomic(res.files.back(), render_config(cfg));
        res.files.push_back(dir / "report.txt");
        write_file_atomic(res.files.back(), report_text(res.report, seed));

        res.exit_code = res.report.passed() ? kExitPass : kExitVerdictFail;
    } catch (const std::exception& e) {
        res.exit_code = kExitError;
        res.error = e.what();
    }
    return res;
}

} // namespace lambda2

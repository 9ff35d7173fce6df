// lambda2 command-line front end.
//
//   lambda2 <scheme> [--config FILE] [--out DIR] [--seed N] [--print-config]
//   lambda2 sweep [--xi-min X] [--xi-max X] [--xi-steps N] [--delta0-list L] [--mu M] [--out DIR]
//   lambda2 check [--filter NAME] [--tamper-eta F] [--jobs N]
//
// Exit status: 0 verdict pass, 2 verdict fail, 1 error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "lambda2/acceptance.hpp"
#include "lambda2/scenario.hpp"

namespace {

using namespace lambda2;

std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::IoError, "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int finish(const ScenarioResult& res)
{
    if (res.exit_code == kExitError) {
        std::cerr << "lambda2: " << res.error << "\n";
        return res.exit_code;
    }
    std::cout << res.report.scheme << ": " << (res.report.passed() ? "pass" : "fail") << "\n";
    for (const auto& [name, ok] : res.report.verdicts)
        std::cout << "  verdict " << name << ": " << (ok ? "pass" : "fail") << "\n";
    for (const auto& f : res.files)
        std::cout << "  wrote " << f.string() << "\n";
    return res.exit_code;
}

ScenarioConfig load(SchemeId id, const std::string& config_path)
{
    if (config_path.empty())
        return default_config(id);
    ScenarioConfig cfg = parse_config(read_file(config_path), id);
    if (cfg.scheme != id)
        throw Error(ErrorCode::ValidationError, std::string("config file describes scheme '") + to_string(cfg.scheme)
                                                    + "' but the command is '" + to_string(id) + "'");
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"lambda2: double-Lambda signal manipulation toolkit"};
    app.require_subcommand(1);
    unsigned jobs = 0;
    app.add_option("--jobs", jobs, "worker threads (default: LAMBDA2_JOBS or all cores)");

    struct SchemeArgs
    {
        std::string config;
        std::string out;
        long long seed = -1;
        bool print = false;
    };
    std::vector<std::pair<SchemeId, CLI::App*>> scheme_cmds;
    std::map<SchemeId, SchemeArgs> scheme_args;
    for (SchemeId id : all_schemes()) {
        if (id == SchemeId::Sweep)
            continue;
        auto& a = scheme_args[id];
        CLI::App* sub = app.add_subcommand(to_string(id), std::string("run the ") + to_string(id) + " scenario");
        sub->add_option("--config", a.config, "scenario file");
        sub->add_option("--out", a.out, "output directory (overrides output.dir)");
        sub->add_option("--seed", a.seed, "seed (overrides scheme.seed)")->check(CLI::NonNegativeNumber);
        sub->add_flag("--print-config", a.print, "print the effective configuration and exit");
        scheme_cmds.emplace_back(id, sub);
    }

    CLI::App* sweep = app.add_subcommand("sweep", "plane-wave amplification curves r1, r2 versus xi");
    std::string sweep_config, sweep_out, delta_list;
    double xi_min = 0.0, xi_max = 0.0, mu = 0.0;
    long long xi_steps = 0;
    bool sweep_print = false;
    auto* o_min = sweep->add_option("--xi-min", xi_min, "smallest xi");
    auto* o_max = sweep->add_option("--xi-max", xi_max, "largest xi");
    auto* o_steps = sweep->add_option("--xi-steps", xi_steps, "number of xi points");
    auto* o_delta = sweep->add_option("--delta0-list", delta_list, "comma-separated phase offsets (pi allowed)");
    auto* o_mu = sweep->add_option("--mu", mu, "input intensity ratio");
    sweep->add_option("--config", sweep_config, "scenario file");
    sweep->add_option("--out", sweep_out, "output directory");
    sweep->add_flag("--print-config", sweep_print, "print the effective configuration and exit");

    CLI::App* check = app.add_subcommand("check", "run the acceptance suite");
    std::string filter;
    double tamper = 1.0;
    check->add_option("--filter", filter, "run only criteria whose name contains this text");
    check->add_option("--tamper-eta", tamper, "scale eta in the adiabatic check (fault injection)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitError;
    }

    try {
        for (const auto& [id, sub] : scheme_cmds) {
            if (!sub->parsed())
                continue;
            const SchemeArgs& a = scheme_args[id];
            ScenarioConfig cfg = load(id, a.config);
            if (a.seed >= 0)
                cfg.set("scheme.seed", a.seed);
            if (!a.out.empty())
                cfg.set("output.dir", a.out);
            if (a.print) {
                std::cout << render_config(cfg);
                return kExitPass;
            }
            return finish(run_scenario(cfg, {}, jobs));
        }

        if (sweep->parsed()) {
            ScenarioConfig cfg = load(SchemeId::Sweep, sweep_config);
            // Ranges are applied together so the cross-field check sees the final pair.
            if (*o_min || *o_max) {
                ScenarioConfig next = cfg;
                next.entries["sweep.xi_min"].value = *o_min ? xi_min : cfg.real("sweep.xi_min");
                next.entries["sweep.xi_max"].value = *o_max ? xi_max : cfg.real("sweep.xi_max");
                next.set("sweep.xi_min", std::get<double>(next.value("sweep.xi_min")));
                next.set("sweep.xi_max", std::get<double>(next.value("sweep.xi_max")));
                cfg = next;
            }
            if (*o_steps)
                cfg.set("sweep.xi_steps", xi_steps);
            if (*o_delta)
                cfg.set("sweep.delta0", parse_config("[sweep]\ndelta0 = " + delta_list, SchemeId::Sweep).reals("sweep.delta0"));
            if (*o_mu)
                cfg.set("sweep.mu", mu);
            if (!sweep_out.empty())
                cfg.set("output.dir", sweep_out);
            if (sweep_print) {
                std::cout << render_config(cfg);
                return kExitPass;
            }
            return finish(run_scenario(cfg, {}, jobs));
        }

        if (check->parsed()) {
            AcceptanceOptions opts;
            opts.filter = filter;
            opts.eta_scale = tamper;
            opts.jobs = jobs;
            const AcceptanceSummary s = run_acceptance(opts);
            if (s.results.empty()) {
                std::cerr << "lambda2: no acceptance criterion matches '" << filter << "'\n";
                return kExitError;
            }
            int passed = 0;
            for (const auto& r : s.results) {
                std::cout << format_result(r) << "\n";
                for (const auto& d : r.details)
                    std::cout << "         " << d << "\n";
                passed += r.passed ? 1 : 0;
            }
            std::cout << passed << "/" << s.results.size() << " criteria passed\n";
            return s.all_passed() ? kExitPass : kExitVerdictFail;
        }
    } catch (const std::exception& e) {
        std::cerr << "lambda2: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

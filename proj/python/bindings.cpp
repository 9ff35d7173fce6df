#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lambda2/acceptance.hpp"
#include "lambda2/config.hpp"
#include "lambda2/reduced.hpp"
#include "lambda2/scenario.hpp"
#include "lambda2/sweep.hpp"

namespace py = pybind11;
using namespace lambda2;

namespace {

py::tuple pair(const SignalPair& s) { return py::make_tuple(s.s1, s.s2); }

py::array_t<double> reals(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::array_t<Complex> beam(const std::vector<SignalPair>& series, int which)
{
    const std::vector<Complex> v = beam_series(series, which);
    return py::array_t<Complex>(v.size(), v.data());
}

py::object to_python(const ConfigValue& v)
{
    return std::visit([](const auto& x) -> py::object { return py::cast(x); }, v);
}

// Python ints, floats, bools, complex numbers, lists and strings map onto the
// value kinds; the schema decides whether the kind fits.
ConfigValue from_python(const ScenarioConfig& cfg, const std::string& key, const py::handle& obj)
{
    const ConfigValue& current = cfg.value(key);
    if (std::holds_alternative<std::vector<bool>>(current)) {
        if (!py::isinstance<py::str>(obj))
            return obj.cast<std::vector<bool>>();
        std::vector<bool> mask;
        for (char ch : obj.cast<std::string>()) {
            if (ch == '0' || ch == '1')
                mask.push_back(ch == '1');
            else if (ch != ',' && ch != ' ')
                throw py::value_error("mask strings may contain only 0, 1, commas and blanks");
        }
        return mask;
    }
    if (py::isinstance<py::bool_>(obj))
        return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) {
        if (std::holds_alternative<long long>(current))
            return obj.cast<long long>();
        return obj.cast<double>();
    }
    if (py::isinstance<py::float_>(obj))
        return obj.cast<double>();
    if (PyComplex_Check(obj.ptr()))
        return obj.cast<Complex>();
    if (py::isinstance<py::str>(obj))
        return obj.cast<std::string>();
    if (py::isinstance<py::sequence>(obj))
        return obj.cast<std::vector<double>>();
    throw py::type_error("unsupported value for '" + key + "'");
}

py::dict metrics_dict(const BeamMetrics& m)
{
    py::dict d;
    d["peak_in"] = m.peak_in;
    d["peak_out"] = m.peak_out;
    d["energy_in"] = m.energy_in;
    d["energy_out"] = m.energy_out;
    d["delay"] = m.delay;
    d["energy_ratio"] = m.energy_ratio;
    d["peak_ratio"] = m.peak_ratio;
    return d;
}

py::dict report_dict(const SchemeReport& r)
{
    py::dict d;
    d["scheme"] = r.scheme;
    d["passed"] = r.passed();
    py::dict values, verdicts;
    for (const auto& [k, v] : r.values)
        values[py::str(k)] = v;
    for (const auto& [k, v] : r.verdicts)
        verdicts[py::str(k)] = v;
    d["values"] = values;
    d["verdicts"] = verdicts;
    d["notes"] = r.notes;
    d["beam1"] = metrics_dict(r.metrics.beam[0]);
    d["beam2"] = metrics_dict(r.metrics.beam[1]);
    const SpaceTimeRecord& rec = r.record;
    py::dict series;
    series["tau_in"] = reals(rec.taus_in);
    series["in1"] = beam(rec.input, 1);
    series["in2"] = beam(rec.input, 2);
    series["tau_out"] = reals(rec.taus_out);
    series["out1"] = beam(rec.output, 1);
    series["out2"] = beam(rec.output, 2);
    d["series"] = series;
    return d;
}

py::dict sweep_dict(const std::vector<SweepRow>& rows)
{
    std::vector<double> xi, d0, r1, r2;
    for (const auto& r : rows) {
        xi.push_back(r.xi);
        d0.push_back(r.delta0);
        r1.push_back(r.r1);
        r2.push_back(r.r2);
    }
    py::dict d;
    d["xi"] = reals(xi);
    d["delta0"] = reals(d0);
    d["r1"] = reals(r1);
    d["r2"] = reals(r2);
    return d;
}

ScenarioConfig with_overrides(SchemeId id, const py::dict& overrides)
{
    ScenarioConfig cfg = default_config(id);
    for (const auto& [k, v] : overrides) {
        const std::string key = py::str(k);
        cfg.set(key, from_python(cfg, key, v));
    }
    return cfg;
}

} // namespace

PYBIND11_MODULE(_lambda2, m)
{
    m.doc() = "Double-Lambda signal manipulation: reduced model, propagation and scheme runners";

    // Exception types live for the whole process; the raw references are
    // intentionally never released.
    static PyObject* base = PyErr_NewException("lambda2.Lambda2Error", PyExc_RuntimeError, nullptr);
    static PyObject* parse_exc = PyErr_NewException("lambda2.ConfigParseError", base, nullptr);
    static PyObject* valid_exc = PyErr_NewException("lambda2.ConfigValidationError", base, nullptr);
    m.attr("Lambda2Error") = py::reinterpret_borrow<py::object>(base);
    m.attr("ConfigParseError") = py::reinterpret_borrow<py::object>(parse_exc);
    m.attr("ConfigValidationError") = py::reinterpret_borrow<py::object>(valid_exc);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const ConfigParseError& e) {
            PyErr_SetObject(parse_exc, py::make_tuple(e.what(), e.line(), e.column()).ptr());
        } catch (const ConfigValidationError& e) {
            PyErr_SetObject(valid_exc, py::make_tuple(e.what(), e.field(), e.allowed()).ptr());
        } catch (const Error& e) {
            PyErr_SetObject(base, py::make_tuple(e.what(), to_string(e.code())).ptr());
        }
    });

    // Reduced model
    m.def("control_ratio_xi", [](Complex c1, Complex c2) { return control_ratio_xi({c1, c2}); }, py::arg("c1"),
          py::arg("c2"));
    m.def("reduced_rhs", [](Complex s1, Complex s2, Complex c1, Complex c2, double eta) {
        return pair(reduced_rhs({s1, s2}, {c1, c2}, eta));
    }, py::arg("s1"), py::arg("s2"), py::arg("c1"), py::arg("c2"), py::arg("eta") = 1.0);
    m.def("dark_projection", [](Complex s1, Complex s2, Complex c1, Complex c2) {
        return pair(dark_projection({s1, s2}, {c1, c2}));
    }, py::arg("s1"), py::arg("s2"), py::arg("c1"), py::arg("c2"));
    m.def("asymptotic_transfer", [](Complex s1, Complex s2, Complex c1, Complex c2) {
        const TransferResult t = asymptotic_transfer({s1, s2}, {c1, c2});
        py::dict d;
        d["out"] = pair(t.out);
        d["r1"] = t.r1_applicable ? py::object(py::float_(t.r1)) : py::object(py::none());
        d["r2"] = t.r2_applicable ? py::object(py::float_(t.r2)) : py::object(py::none());
        d["intensity1"] = t.out_intensity1;
        d["intensity2"] = t.out_intensity2;
        return d;
    }, py::arg("s1"), py::arg("s2"), py::arg("c1"), py::arg("c2"));
    m.def("integrate_reduced", [](Complex s1, Complex s2, Complex c1, Complex c2, double eta, double tau_end,
                                  double dt) {
        const ReducedTrajectory tr = integrate_reduced({s1, s2}, {c1, c2}, eta, tau_end, dt);
        return py::make_tuple(reals(tr.taus), beam(tr.states, 1), beam(tr.states, 2));
    }, py::arg("s1"), py::arg("s2"), py::arg("c1"), py::arg("c2"), py::arg("eta") = 1.0,
          py::arg("tau_end") = 40.0, py::arg("dt") = 0.01);
    m.def("phase_mismatch", [](Complex s1, Complex s2, Complex c1, Complex c2) {
        return phase_mismatch({s1, s2}, {c1, c2});
    });
    m.def("amplification_ratio", [](double xi, double mu, double delta0) {
        const AmplificationRatio r = amplification_ratio(xi, mu, delta0);
        return py::make_tuple(r.r1, r.r2);
    }, py::arg("xi"), py::arg("mu") = 1.0, py::arg("delta0") = 0.0);
    m.def("optimal_xi", [](double mu, double delta0, int beam_index) {
        const OptimalXi o = optimal_xi(mu, delta0, beam_index);
        py::dict d;
        d["xi"] = o.xi;
        d["r_max"] = o.r_max;
        d["slope"] = o.slope;
        d["interior"] = o.interior;
        return d;
    }, py::arg("mu") = 1.0, py::arg("delta0") = 0.0, py::arg("beam") = 1);
    m.def("amplification_sweep", [](double xi_min, double xi_max, int xi_steps, std::vector<double> delta0s,
                                    double mu, unsigned jobs) {
        SweepSpec spec;
        spec.xi_min = xi_min;
        spec.xi_max = xi_max;
        spec.xi_steps = xi_steps;
        spec.delta0s = std::move(delta0s);
        spec.mu = mu;
        std::vector<SweepRow> rows;
        {
            py::gil_scoped_release release;
            rows = amplification_sweep(spec, jobs);
        }
        return sweep_dict(rows);
    }, py::arg("xi_min") = 0.0, py::arg("xi_max") = 5.0, py::arg("xi_steps") = 501,
          py::arg("delta0") = std::vector<double>{0.0, 0.5 * kPi, kPi}, py::arg("mu") = 1.0, py::arg("jobs") = 0);

    // Configuration
    py::class_<ScenarioConfig>(m, "Config")
        .def_property_readonly("scheme", [](const ScenarioConfig& c) { return std::string(to_string(c.scheme)); })
        .def("keys", [](const ScenarioConfig& c) {
            std::vector<std::string> k;
            for (const auto& kv : c.entries)
                k.push_back(kv.first);
            return k;
        })
        .def("__getitem__", [](const ScenarioConfig& c, const std::string& key) { return to_python(c.value(key)); })
        .def("__setitem__", [](ScenarioConfig& c, const std::string& key, const py::handle& v) {
            c.set(key, from_python(c, key, v));
        })
        .def("__contains__", &ScenarioConfig::has)
        .def("__eq__", [](const ScenarioConfig& a, const ScenarioConfig& b) { return a == b; })
        .def("provenance_notes", &ScenarioConfig::provenance_notes)
        .def("render", [](const ScenarioConfig& c) { return render_config(c); })
        .def("__repr__", [](const ScenarioConfig& c) { return "<lambda2.Config scheme=" + std::string(to_string(c.scheme)) + ">"; });

    m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
    m.def("default_config", [](const std::string& scheme) { return default_config(parse_scheme_id(scheme)); },
          py::arg("scheme"));
    m.def("schemes", [] {
        std::vector<std::string> out;
        for (SchemeId id : all_schemes())
            out.emplace_back(to_string(id));
        return out;
    });

    // Runs
    m.def("run", [](const ScenarioConfig& cfg, unsigned jobs) {
        std::vector<SweepRow> rows;
        SchemeReport rep;
        {
            py::gil_scoped_release release;
            rep = run_scheme(cfg, jobs, &rows);
        }
        py::dict d = report_dict(rep);
        if (cfg.scheme == SchemeId::Sweep)
            d["sweep"] = sweep_dict(rows);
        return d;
    }, py::arg("config"), py::arg("jobs") = 0, "Run a configured scheme in memory and return its report.");
    m.def("run_scheme", [](const std::string& scheme, const py::dict& overrides, unsigned jobs) {
        const ScenarioConfig cfg = with_overrides(parse_scheme_id(scheme), overrides);
        std::vector<SweepRow> rows;
        SchemeReport rep;
        {
            py::gil_scoped_release release;
            rep = run_scheme(cfg, jobs, &rows);
        }
        py::dict d = report_dict(rep);
        if (cfg.scheme == SchemeId::Sweep)
            d["sweep"] = sweep_dict(rows);
        return d;
    }, py::arg("scheme"), py::arg("overrides") = py::dict(), py::arg("jobs") = 0,
          "Run a scheme from its defaults with `section.key` overrides.");
    m.def("run_scenario", [](const ScenarioConfig& cfg, const std::filesystem::path& out_dir, unsigned jobs) {
        ScenarioResult r;
        {
            py::gil_scoped_release release;
            r = run_scenario(cfg, out_dir, jobs);
        }
        py::dict d;
        d["exit_code"] = r.exit_code;
        d["error"] = r.error;
        d["files"] = r.files;
        d["passed"] = r.exit_code == kExitPass;
        return d;
    }, py::arg("config"), py::arg("out_dir"), py::arg("jobs") = 0,
          "Run and write report.txt, config.txt and the CSV series into out_dir.");

    m.def("acceptance_criteria", &acceptance_criteria);
    m.def("run_acceptance", [](const std::string& filter, double eta_scale, unsigned jobs) {
        AcceptanceOptions opts;
        opts.filter = filter;
        opts.eta_scale = eta_scale;
        opts.jobs = jobs;
        AcceptanceSummary s;
        {
            py::gil_scoped_release release;
            s = run_acceptance(opts);
        }
        py::list out;
        for (const auto& r : s.results) {
            py::dict d;
            d["id"] = r.id;
            d["name"] = r.name;
            d["passed"] = r.passed;
            d["measured"] = r.measured;
            d["target"] = r.target;
            d["tolerance"] = r.tolerance;
            d["details"] = r.details;
            d["line"] = format_result(r);
            out.append(d);
        }
        return out;
    }, py::arg("filter") = "", py::arg("eta_scale") = 1.0, py::arg("jobs") = 0);

    m.attr("EXIT_PASS") = kExitPass;
    m.attr("EXIT_ERROR") = kExitError;
    m.attr("EXIT_VERDICT_FAIL") = kExitVerdictFail;
}

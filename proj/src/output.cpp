#include "lambda2/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include <unistd.h>

namespace lambda2 {

std::string format_fixed(double v)
{
    if (!std::isfinite(v))
        throw Error(ErrorCode::InvalidArgument, "cannot format a non-finite value");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    std::string s(buf);
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        s.erase(s.find_last_not_of('0') + 1);
        if (s.back() == '.')
            s.pop_back();
    }
    if (s == "-0")
        s = "0";
    return s;
}

std::string series_csv(const std::vector<double>& taus, const std::vector<SignalPair>& series)
{
    if (taus.size() != series.size())
        throw Error(ErrorCode::InvalidArgument, "time and sample counts differ");
    std::string out = "tau,re_s1,im_s1,re_s2,im_s2,I1,I2\n";
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (i > 0 && !(taus[i] > taus[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "tau must be strictly increasing");
        const SignalPair& s = series[i];
        const double parts[] = {taus[i],         s.s1.real(), s.s1.imag(),  s.s2.real(),
                                s.s2.imag(), std::norm(s.s1), std::norm(s.s2)};
        for (std::size_t k = 0; k < 7; ++k) {
            if (k > 0)
                out += ',';
            out += format_fixed(parts[k]);
        }
        out += '\n';
    }
    return out;
}

std::string sweep_csv(std::vector<SweepRow> rows)
{
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.delta0 != b.delta0 ? a.delta0 < b.delta0 : a.xi < b.xi;
    });
    std::string out = "xi,delta0,r1,r2\n";
    for (const auto& r : rows)
        out += format_fixed(r.xi) + ',' + format_fixed(r.delta0) + ',' + format_fixed(r.r1) + ','
               + format_fixed(r.r2) + '\n';
    return out;
}

namespace {

std::string report_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

std::string report_text(const SchemeReport& report, long long seed)
{
    std::string out;
    auto line = [&out](const std::string& key, const std::string& value) {
        out += key;
        out += ": ";
        out += value;
        out += '\n';
    };
    line("scheme", report.scheme);
    line("status", report.passed() ? "pass" : "fail");
    line("seed", std::to_string(seed));
    for (const auto& [name, ok] : report.verdicts)
        line("verdict." + name, ok ? "pass" : "fail");
    for (const auto& [name, v] : report.values)
        line("value." + name, report_number(v));
    if (!report.record.taus_out.empty()) {
        for (int b = 0; b < 2; ++b) {
            const BeamMetrics& m = report.metrics.beam[static_cast<std::size_t>(b)];
            const std::string p = "beam" + std::to_string(b + 1) + ".";
            line(p + "peak_in", report_number(m.peak_in));
            line(p + "peak_out", report_number(m.peak_out));
            line(p + "energy_in", report_number(m.energy_in));
            line(p + "energy_out", report_number(m.energy_out));
            line(p + "delay", report_number(m.delay));
            line(p + "energy_ratio", report_number(m.energy_ratio));
            line(p + "peak_ratio", report_number(m.peak_ratio));
        }
        line("record.samples", std::to_string(report.record.taus_out.size()));
        line("record.weak_signal_violations", std::to_string(report.record.weak_signal_violations));
    }
    for (const auto& note : report.notes)
        line("note", note);
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec)
            throw Error(ErrorCode::IoError, "cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw Error(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            fs::remove(tmp, ec);
            throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw Error(ErrorCode::IoError, "cannot rename onto " + path.string() + ": " + ec.message());
    }
}

void emit_series_csv(const std::filesystem::path& path, const std::vector<double>& taus,
                     const std::vector<SignalPair>& series)
{
    write_file_atomic(path, series_csv(taus, series));
}

void emit_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows)
{
    write_file_atomic(path, sweep_csv(rows));
}

} // namespace lambda2

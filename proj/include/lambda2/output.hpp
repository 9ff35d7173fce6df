#pragma once

// CSV and report serialization. Every writer goes through write_file_atomic,
// so a reader never observes a half-written file.

#include <filesystem>
#include <string>
#include <vector>

#include "lambda2/schemes.hpp"
#include "lambda2/sweep.hpp"

namespace lambda2 {

/// Fixed 12-digit decimal with trailing zeros removed; -0 prints as 0.
std::string format_fixed(double v);

/// Header `tau,re_s1,im_s1,re_s2,im_s2,I1,I2`; taus must be strictly increasing.
std::string series_csv(const std::vector<double>& taus, const std::vector<SignalPair>& series);

/// Header `xi,delta0,r1,r2`; rows sorted by (delta0, xi).
std::string sweep_csv(std::vector<SweepRow> rows);

/// Stable `key: value` lines.
std::string report_text(const SchemeReport& report, long long seed);

void write_file_atomic(const std::filesystem::path& path, const std::string& content);

void emit_series_csv(const std::filesystem::path& path, const std::vector<double>& taus,
                     const std::vector<SignalPair>& series);
void emit_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

} // namespace lambda2

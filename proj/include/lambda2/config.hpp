#pragma once

// Scenario configuration: a line-based sectioned key = value format.
//
//   # comment
//   [scheme]
//   id = twin
//   [controls]
//   xi = 4
//   [input]
//   amplitude = 1+0.5j
//
// Complex values are written re+imj, lists are comma separated, masks are
// strings of 0/1 (or comma separated 0/1). Real values also accept multiples
// of pi such as `pi/2` or `-2pi`. Every scheme has its own key set; unknown
// keys are rejected.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lambda2/schemes.hpp"
#include "lambda2/sweep.hpp"

namespace lambda2 {

enum class SchemeId { Sweep, Twin, Correct, Amplify, Transfer, Store, Custom };

const char* to_string(SchemeId id);
/// Throws ConfigValidationError naming `scheme.id` for unknown names.
SchemeId parse_scheme_id(const std::string& name);
const std::vector<SchemeId>& all_schemes();

enum class ValueKind { Real, Integer, Boolean, Complex, RealList, Mask, Text };

/// Alternative index matches ValueKind.
using ConfigValue =
    std::variant<double, long long, bool, Complex, std::vector<double>, std::vector<bool>, std::string>;

enum class Provenance { Default, File, Override };

struct ConfigEntry
{
    ConfigValue value;
    Provenance provenance = Provenance::Default;
    std::string note; // why the default is what it is
};

class ConfigParseError : public Error
{
public:
    ConfigParseError(int line, int column, const std::string& what);
    int line() const noexcept { return m_line; }
    int column() const noexcept { return m_column; }

private:
    int m_line;
    int m_column;
};

class ConfigValidationError : public Error
{
public:
    ConfigValidationError(std::string field, std::string allowed, const std::string& what);
    const std::string& field() const noexcept { return m_field; }
    const std::string& allowed() const noexcept { return m_allowed; }

private:
    std::string m_field;
    std::string m_allowed;
};

struct ScenarioConfig
{
    SchemeId scheme = SchemeId::Twin;
    std::map<std::string, ConfigEntry> entries; // keyed "section.key"

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    const ConfigValue& value(const std::string& key) const;
    double real(const std::string& key) const;
    long long integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    Complex complex(const std::string& key) const;
    const std::vector<double>& reals(const std::string& key) const;
    const std::vector<bool>& mask(const std::string& key) const;
    const std::string& text(const std::string& key) const;

    /// Replaces a value after checking its kind and range, then re-runs the
    /// cross-field checks. Provenance becomes Override.
    void set(const std::string& key, ConfigValue v);

    /// "section.key = value (default: note)" for every defaulted field.
    std::vector<std::string> provenance_notes() const;

    /// Equality of scheme and values; provenance is ignored.
    friend bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);
};

/// All defaults for a scheme, each marked Provenance::Default.
ScenarioConfig default_config(SchemeId id);

/// `fallback_scheme` is used when the document has no [scheme] id.
ScenarioConfig parse_config(std::string_view text, std::optional<SchemeId> fallback_scheme = std::nullopt);

/// Inverse of parse_config; defaulted fields carry a trailing comment.
std::string render_config(const ScenarioConfig& cfg);

/// Textual form of a single value as the parser reads it.
std::string render_value(const ConfigValue& v);

// Typed views for the scheme runners.
RunSetup run_setup(const ScenarioConfig& cfg);
TwinConfig twin_config(const ScenarioConfig& cfg);
CorrectionConfig correction_config(const ScenarioConfig& cfg);
std::pair<PulseTrain, PulseTrain> correction_trains(const ScenarioConfig& cfg);
AmplifyConfig amplify_config(const ScenarioConfig& cfg);
TransferConfig transfer_config(const ScenarioConfig& cfg);
StorageConfig storage_config(const ScenarioConfig& cfg);
SweepSpec sweep_spec(const ScenarioConfig& cfg);

/// Constant controls and a Gaussian pulse on each beam; no verdicts.
struct CustomConfig
{
    RunSetup run{};
    ControlPair controls{24.0, 24.0};
    Complex amplitude1{1.0, 0.0};
    Complex amplitude2{0.0, 0.0};
    double width = 5.0;
    double center = 25.0;
};

CustomConfig custom_config(const ScenarioConfig& cfg);

} // namespace lambda2

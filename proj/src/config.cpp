#include "lambda2/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace lambda2 {

// ---------------------------------------------------------------------------
// Errors

ConfigParseError::ConfigParseError(int line, int column, const std::string& what)
    : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      m_line(line), m_column(column)
{
}

ConfigValidationError::ConfigValidationError(std::string field, std::string allowed, const std::string& what)
    : Error(ErrorCode::ValidationError, "field '" + field + "': " + what + (allowed.empty() ? "" : " (allowed: " + allowed + ")")),
      m_field(std::move(field)), m_allowed(std::move(allowed))
{
}

// ---------------------------------------------------------------------------
// Scheme ids

namespace {
constexpr std::array<std::pair<SchemeId, const char*>, 7> kSchemeNames{{
    {SchemeId::Sweep, "sweep"},
    {SchemeId::Twin, "twin"},
    {SchemeId::Correct, "correct"},
    {SchemeId::Amplify, "amplify"},
    {SchemeId::Transfer, "transfer"},
    {SchemeId::Store, "store"},
    {SchemeId::Custom, "custom"},
}};
} // namespace

const char* to_string(SchemeId id)
{
    for (const auto& [k, name] : kSchemeNames)
        if (k == id)
            return name;
    return "unknown";
}

SchemeId parse_scheme_id(const std::string& name)
{
    for (const auto& [k, n] : kSchemeNames)
        if (name == n)
            return k;
    throw ConfigValidationError("scheme.id", "sweep|twin|correct|amplify|transfer|store|custom",
                                "unknown scheme '" + name + "'");
}

const std::vector<SchemeId>& all_schemes()
{
    static const std::vector<SchemeId> ids{SchemeId::Sweep,    SchemeId::Twin,  SchemeId::Correct, SchemeId::Amplify,
                                           SchemeId::Transfer, SchemeId::Store, SchemeId::Custom};
    return ids;
}

// ---------------------------------------------------------------------------
// Schema

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Range
{
    double lo = -kInf;
    double hi = kInf;
    bool lo_open = false;
    bool hi_open = false;

    bool contains(double v) const
    {
        if (lo_open ? !(v > lo) : !(v >= lo))
            return false;
        return hi_open ? v < hi : v <= hi;
    }

    std::string describe() const
    {
        auto num = [](double v) {
            std::ostringstream os;
            os << v;
            return os.str();
        };
        if (lo == -kInf && hi == kInf)
            return "any finite value";
        if (hi == kInf)
            return std::string(lo_open ? "> " : ">= ") + num(lo);
        if (lo == -kInf)
            return std::string(hi_open ? "< " : "<= ") + num(hi);
        return std::string(lo_open ? "(" : "[") + num(lo) + ", " + num(hi) + (hi_open ? ")" : "]");
    }
};

const Range kAny{};
const Range kNonNegative{0.0};
const Range kPositive{0.0, kInf, true};
const Range kAtLeastOne{1.0};

struct FieldSpec
{
    std::string section;
    std::string key;
    ValueKind kind;
    ConfigValue def;
    Range range;
    std::string note;

    std::string name() const { return section + "." + key; }
};

using Schema = std::vector<FieldSpec>;

bool is_space(char c) { return c == ' ' || c == '\t'; }

ValueKind kind_of(const ConfigValue& v) { return static_cast<ValueKind>(v.index()); }

const char* kind_name(ValueKind k)
{
    switch (k) {
    case ValueKind::Real: return "real number";
    case ValueKind::Integer: return "integer";
    case ValueKind::Boolean: return "boolean";
    case ValueKind::Complex: return "complex number";
    case ValueKind::RealList: return "list of real numbers";
    case ValueKind::Mask: return "0/1 mask";
    case ValueKind::Text: return "text";
    }
    return "value";
}

void add_common(Schema& s)
{
    s.push_back({"scheme", "seed", ValueKind::Integer, 0LL, kNonNegative, "seed for randomized suites"});
    s.push_back({"output", "dir", ValueKind::Text, std::string("lambda2-out"), kAny, "artifact directory"});
}

void add_run(Schema& s, const RunSetup& r)
{
    s.push_back({"medium", "chi", ValueKind::Real, r.chi, kNonNegative, "collective coupling g*sqrt(N)/gamma"});
    s.push_back({"medium", "gamma_bc", ValueKind::Real, r.gamma_bc, kNonNegative, "no ground-coherence decay"});
    s.push_back({"medium", "length", ValueKind::Real, r.length, kPositive, "medium length in c/gamma"});
    s.push_back({"medium", "cells", ValueKind::Integer, static_cast<long long>(r.cells), kAtLeastOne, ""});
    s.push_back({"grid", "dtau", ValueKind::Real, r.dtau, Range{0.0, 0.1, true, false}, ""});
    s.push_back({"grid", "tau_end", ValueKind::Real, r.tau_end, kNonNegative, "0 picks a scheme-specific end time"});
    s.push_back({"grid", "probe_stride", ValueKind::Integer, static_cast<long long>(r.probe_stride), kAtLeastOne,
                 ""});
}

void add_gaussian(Schema& s, Complex amplitude, double width, double center)
{
    s.push_back({"input", "amplitude", ValueKind::Complex, amplitude, kAny, "weak probe"});
    s.push_back({"input", "width", ValueKind::Real, width, kPositive, "Gaussian 1/e half-width"});
    s.push_back({"input", "center", ValueKind::Real, center, kNonNegative, ""});
}

Schema build_schema(SchemeId id)
{
    Schema s;
    add_common(s);
    switch (id) {
    case SchemeId::Sweep: {
        const SweepSpec d;
        s.push_back({"sweep", "xi_min", ValueKind::Real, d.xi_min, kNonNegative, ""});
        s.push_back({"sweep", "xi_max", ValueKind::Real, d.xi_max, kNonNegative, ""});
        s.push_back({"sweep", "xi_steps", ValueKind::Integer, static_cast<long long>(d.xi_steps), kAtLeastOne, ""});
        s.push_back({"sweep", "delta0", ValueKind::RealList, d.delta0s, kAny, "transparency, quadrature, absorption"});
        s.push_back({"sweep", "mu", ValueKind::Real, d.mu, kPositive, "equal input intensities"});
        break;
    }
    case SchemeId::Twin: {
        const TwinConfig d;
        add_run(s, d.run);
        s.push_back({"controls", "level", ValueKind::Real, d.control_level, kPositive, "12 chi"});
        s.push_back({"controls", "xi", ValueKind::Real, d.xi, kNonNegative, "equal controls"});
        add_gaussian(s, d.amplitude, d.width, d.center);
        s.push_back({"input", "beam", ValueKind::Integer, static_cast<long long>(d.input_beam), Range{1.0, 2.0},
                     "signal enters on beam 2 only"});
        break;
    }
    case SchemeId::Correct: {
        const CorrectionConfig d;
        const PulseTrain t;
        add_run(s, d.run);
        s.push_back({"controls", "level", ValueKind::Real, d.control_level, kPositive, "12 chi"});
        s.push_back({"input", "mask1", ValueKind::Mask, std::vector<bool>{1, 0, 1, 1, 0, 1, 1, 1}, kAny, ""});
        s.push_back({"input", "mask2", ValueKind::Mask, std::vector<bool>{1, 1, 0, 1, 1, 1, 0, 1}, kAny, ""});
        s.push_back({"input", "slot_period", ValueKind::Real, t.slot_period, kPositive, ""});
        s.push_back({"input", "pulse_width", ValueKind::Real, t.pulse_width, kPositive, "half-amplitude width"});
        s.push_back({"input", "edge", ValueKind::Real, t.edge, kNonNegative, "raised-cosine edge"});
        s.push_back({"input", "first_center", ValueKind::Real, t.first_center, kNonNegative, ""});
        s.push_back({"input", "amplitude", ValueKind::Complex, t.amplitude, kAny, "weak probe"});
        break;
    }
    case SchemeId::Amplify: {
        const AmplifyConfig d;
        add_run(s, d.run);
        s.push_back({"controls", "level", ValueKind::Real, d.control_level, kPositive, "12 chi"});
        s.push_back({"controls", "xi", ValueKind::Real, d.xi, kNonNegative, "3 - 2 sqrt(2), maximum gain on beam 1"});
        s.push_back({"input", "mu", ValueKind::Real, d.mu, kPositive, "identical pulses"});
        s.push_back({"input", "delta0", ValueKind::Real, d.delta0, kAny, "in phase"});
        add_gaussian(s, d.amplitude, d.width, d.center);
        break;
    }
    case SchemeId::Transfer: {
        const TransferConfig d;
        add_run(s, d.run);
        s.push_back({"controls", "high_level", ValueKind::Real, d.high_level, kPositive,
                     "slow light: small photonic share during the swap"});
        s.push_back({"controls", "low_level", ValueKind::Real, d.low_level, kNonNegative, ""});
        s.push_back({"controls", "ramp", ValueKind::Real, d.ramp, kNonNegative, "raised-cosine exchange"});
        s.push_back({"controls", "swap_mid", ValueKind::Real, d.swap_mid, kNonNegative,
                     "pulse centred in the medium"});
        s.push_back({"controls", "swap", ValueKind::Boolean, d.swap, kAny, ""});
        add_gaussian(s, d.amplitude, d.width, d.center);
        break;
    }
    case SchemeId::Store: {
        const StorageConfig d;
        add_run(s, d.run);
        s.push_back({"controls", "level", ValueKind::Real, d.control_level, kPositive, ""});
        s.push_back({"controls", "write_until", ValueKind::Real, d.write_until, kNonNegative, "controls equal until 150"});
        s.push_back({"controls", "ramp", ValueKind::Real, d.ramp, kNonNegative, "slow enough for low write/read loss"});
        s.push_back({"controls", "hold", ValueKind::Real, d.hold, kNonNegative, ""});
        s.push_back({"controls", "read_both", ValueKind::Boolean, d.read_both, kAny, "read with beam-1 control only"});
        add_gaussian(s, d.amplitude, d.width, d.center);
        break;
    }
    case SchemeId::Custom: {
        const CustomConfig d;
        add_run(s, d.run);
        s.push_back({"controls", "c1", ValueKind::Complex, d.controls.c1, kAny, ""});
        s.push_back({"controls", "c2", ValueKind::Complex, d.controls.c2, kAny, ""});
        s.push_back({"input", "amplitude1", ValueKind::Complex, d.amplitude1, kAny, ""});
        s.push_back({"input", "amplitude2", ValueKind::Complex, d.amplitude2, kAny, ""});
        s.push_back({"input", "width", ValueKind::Real, d.width, kPositive, "Gaussian 1/e half-width"});
        s.push_back({"input", "center", ValueKind::Real, d.center, kNonNegative, ""});
        break;
    }
    }
    return s;
}

const Schema& schema(SchemeId id)
{
    static const std::array<Schema, 7> all = [] {
        std::array<Schema, 7> a;
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] = build_schema(kSchemeNames[i].first);
        return a;
    }();
    for (std::size_t i = 0; i < kSchemeNames.size(); ++i)
        if (kSchemeNames[i].first == id)
            return all[i];
    throw Error(ErrorCode::InvalidArgument, "unknown scheme id");
}

const FieldSpec* find_field(SchemeId id, const std::string& name)
{
    for (const auto& f : schema(id))
        if (f.name() == name)
            return &f;
    return nullptr;
}

void check_range(const FieldSpec& f, const ConfigValue& v)
{
    const auto fail = [&](const std::string& what) { throw ConfigValidationError(f.name(), f.range.describe(), what); };
    auto num = [](double x) {
        std::ostringstream os;
        os << x;
        return os.str();
    };
    switch (kind_of(v)) {
    case ValueKind::Real: {
        const double x = std::get<double>(v);
        if (!std::isfinite(x) || !f.range.contains(x))
            fail("value " + num(x) + " is out of range");
        break;
    }
    case ValueKind::Integer: {
        const auto x = static_cast<double>(std::get<long long>(v));
        if (!f.range.contains(x))
            fail("value " + num(x) + " is out of range");
        break;
    }
    case ValueKind::Complex: {
        const Complex z = std::get<Complex>(v);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            fail("value must be finite");
        break;
    }
    case ValueKind::RealList: {
        const auto& xs = std::get<std::vector<double>>(v);
        if (xs.empty())
            throw ConfigValidationError(f.name(), "at least one entry", "list is empty");
        for (double x : xs)
            if (!std::isfinite(x) || !f.range.contains(x))
                fail("entry " + num(x) + " is out of range");
        break;
    }
    case ValueKind::Mask:
        if (std::get<std::vector<bool>>(v).empty())
            throw ConfigValidationError(f.name(), "at least one slot", "mask is empty");
        break;
    case ValueKind::Text:
    {
        const std::string& t = std::get<std::string>(v);
        const std::string allowed = "single-line text without surrounding blanks or comments";
        if (t.empty())
            throw ConfigValidationError(f.name(), allowed, "value is empty");
        if (t.find('\n') != std::string::npos || t.find('\r') != std::string::npos || t.front() == '#'
            || is_space(t.front()) || is_space(t.back()) || t.find(" #") != std::string::npos
            || t.find("\t#") != std::string::npos)
            throw ConfigValidationError(f.name(), allowed, "value cannot be written back unchanged");
        break;
    }
    case ValueKind::Boolean: break;
    }
}

void cross_check(const ScenarioConfig& cfg)
{
    if (cfg.has("grid.dtau")) {
        const double dz = cfg.real("medium.length") / static_cast<double>(cfg.integer("medium.cells"));
        if (cfg.real("grid.dtau") > dz)
            throw ConfigValidationError("grid.dtau", "<= medium.length / medium.cells = " + std::to_string(dz),
                                        "time step exceeds the cell size");
    }
    switch (cfg.scheme) {
    case SchemeId::Sweep: {
        if (cfg.real("sweep.xi_max") < cfg.real("sweep.xi_min"))
            throw ConfigValidationError("sweep.xi_max", ">= sweep.xi_min", "range is reversed");
        if (cfg.integer("sweep.xi_steps") == 1 && cfg.real("sweep.xi_max") != cfg.real("sweep.xi_min"))
            throw ConfigValidationError("sweep.xi_steps", ">= 2 for a non-empty range", "too few steps");
        break;
    }
    case SchemeId::Correct: {
        if (cfg.mask("input.mask1").size() != cfg.mask("input.mask2").size())
            throw ConfigValidationError("input.mask2", "same length as input.mask1", "mask lengths differ");
        if (!(cfg.real("input.pulse_width") < cfg.real("input.slot_period")))
            throw ConfigValidationError("input.pulse_width", "< input.slot_period", "pulses would overlap");
        if (cfg.real("input.edge") > cfg.real("input.pulse_width"))
            throw ConfigValidationError("input.edge", "<= input.pulse_width", "edge longer than the pulse");
        break;
    }
    case SchemeId::Transfer: {
        if (cfg.real("controls.swap_mid") < 0.5 * cfg.real("controls.ramp"))
            throw ConfigValidationError("controls.swap_mid", ">= controls.ramp / 2", "swap would start before tau = 0");
        break;
    }
    case SchemeId::Custom: {
        if (cfg.complex("controls.c1") == 0.0 && cfg.complex("controls.c2") == 0.0)
            throw ConfigValidationError("controls.c2", "not both controls zero", "controls are degenerate");
        break;
    }
    default: break;
    }
}

// ---------------------------------------------------------------------------
// Lexing and value parsing

struct RawEntry
{
    int line;
    int key_col;
    int value_col;
    std::string section;
    std::string key;
    std::string raw;
};

bool is_ident(std::string_view s)
{
    if (s.empty())
        return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        const bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
        const bool digit = c >= '0' && c <= '9';
        if (!(alpha || (i > 0 && digit)))
            return false;
    }
    return true;
}

// Returns [begin, end) of the trimmed range within s.
std::pair<std::size_t, std::size_t> trim_range(std::string_view s, std::size_t b, std::size_t e)
{
    while (b < e && is_space(s[b]))
        ++b;
    while (e > b && is_space(s[e - 1]))
        --e;
    return {b, e};
}

std::string_view trim(std::string_view s)
{
    const auto [b, e] = trim_range(s, 0, s.size());
    return s.substr(b, e - b);
}

struct ValueError
{
    std::size_t offset; // within the raw value
    std::string what;
};

std::optional<double> plain_number(std::string_view s)
{
    if (s.empty())
        return std::nullopt;
    std::string_view body = s;
    if (body.front() == '+')
        body.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

// Number or multiple of pi: "2.5", "pi", "-pi/2", "2pi", "0.5*pi".
std::optional<double> parse_real_token(std::string_view s)
{
    if (auto v = plain_number(s))
        return v;
    const auto p = s.find("pi");
    if (p == std::string_view::npos)
        return std::nullopt;
    std::string_view factor = s.substr(0, p);
    std::string_view rest = s.substr(p + 2);
    if (!factor.empty() && factor.back() == '*')
        factor.remove_suffix(1);
    double k = 1.0;
    if (factor == "-")
        k = -1.0;
    else if (factor == "+" || factor.empty())
        k = 1.0;
    else if (auto f = plain_number(factor))
        k = *f;
    else
        return std::nullopt;
    double d = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/')
            return std::nullopt;
        auto q = plain_number(rest.substr(1));
        if (!q || *q == 0.0)
            return std::nullopt;
        d = *q;
    }
    return k * kPi / d;
}

double parse_real(std::string_view s, std::size_t offset = 0)
{
    if (auto v = parse_real_token(s))
        return *v;
    throw ValueError{offset, "expected a finite real number, got '" + std::string(s) + "'"};
}

Complex parse_complex(std::string_view s)
{
    if (s.empty())
        throw ValueError{0, "expected a complex number"};
    if (s.back() != 'j')
        return {parse_real(s), 0.0};
    std::string_view body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not part of an exponent.
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            const double re = parse_real(body.substr(0, i));
            std::string_view im = body.substr(i);
            if (im == "+" || im == "-")
                return {re, im == "+" ? 1.0 : -1.0};
            return {re, parse_real(im, i)};
        }
    }
    if (body.empty() || body == "+" || body == "-")
        return {0.0, body == "-" ? -1.0 : 1.0};
    return {0.0, parse_real(body)};
}

ConfigValue parse_value(ValueKind kind, std::string_view raw)
{
    switch (kind) {
    case ValueKind::Real: return parse_real(raw);
    case ValueKind::Integer: {
        long long v = 0;
        std::string_view body = raw;
        if (!body.empty() && body.front() == '+')
            body.remove_prefix(1);
        const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
        if (ec != std::errc() || ptr != body.data() + body.size())
            throw ValueError{0, "expected an integer, got '" + std::string(raw) + "'"};
        return v;
    }
    case ValueKind::Boolean: {
        if (raw == "true" || raw == "yes" || raw == "on" || raw == "1")
            return true;
        if (raw == "false" || raw == "no" || raw == "off" || raw == "0")
            return false;
        throw ValueError{0, "expected true or false, got '" + std::string(raw) + "'"};
    }
    case ValueKind::Complex: return parse_complex(raw);
    case ValueKind::RealList: {
        std::vector<double> out;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = raw.find(',', start);
            const std::size_t end = comma == std::string_view::npos ? raw.size() : comma;
            const auto [b, e] = trim_range(raw, start, end);
            if (b == e)
                throw ValueError{b, "empty list entry"};
            out.push_back(parse_real(raw.substr(b, e - b), b));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        return out;
    }
    case ValueKind::Mask: {
        std::vector<bool> out;
        const bool listed = raw.find(',') != std::string_view::npos;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const char c = raw[i];
            if (c == '0' || c == '1') {
                out.push_back(c == '1');
                if (listed && i + 1 < raw.size() && raw[i + 1] != ',' && !is_space(raw[i + 1]))
                    throw ValueError{i + 1, "mask entries must be 0 or 1"};
            } else if (!(listed && (c == ',' || is_space(c)))) {
                throw ValueError{i, "mask entries must be 0 or 1"};
            }
        }
        if (listed) {
            // Every comma must separate two entries.
            std::size_t entries = 0;
            std::size_t start = 0;
            while (true) {
                const std::size_t comma = raw.find(',', start);
                const std::size_t end = comma == std::string_view::npos ? raw.size() : comma;
                const auto [b, e] = trim_range(raw, start, end);
                if (b == e)
                    throw ValueError{b, "empty mask entry"};
                ++entries;
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
            if (entries != out.size())
                throw ValueError{0, "mask entries must be single 0/1 digits"};
        }
        return out;
    }
    case ValueKind::Text: return std::string(raw);
    }
    throw ValueError{0, "unsupported value"};
}

std::vector<RawEntry> lex(std::string_view text)
{
    std::vector<RawEntry> out;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        ++line_no;
        pos = nl + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);

        // '#' opens a comment at line start or after whitespace.
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '#' && (i == 0 || is_space(line[i - 1]))) {
                line = line.substr(0, i);
                break;
            }
        }
        const auto [b, e] = trim_range(line, 0, line.size());
        if (b == e)
            continue;
        const int col0 = static_cast<int>(b) + 1;

        if (line[b] == '[') {
            if (line[e - 1] != ']')
                throw ConfigParseError(line_no, static_cast<int>(e) + 1, "expected ']' to close the section header");
            const auto [sb, se] = trim_range(line, b + 1, e - 1);
            const std::string_view name = line.substr(sb, se - sb);
            if (!is_ident(name))
                throw ConfigParseError(line_no, static_cast<int>(sb) + 1, "invalid section name '" + std::string(name) + "'");
            section = std::string(name);
            continue;
        }

        const std::size_t eq = line.find('=', b);
        if (eq == std::string_view::npos || eq >= e)
            throw ConfigParseError(line_no, col0, "expected 'key = value' or '[section]'");
        const auto [kb, ke] = trim_range(line, b, eq);
        const std::string_view key = line.substr(kb, ke - kb);
        if (!is_ident(key))
            throw ConfigParseError(line_no, static_cast<int>(kb) + 1, "invalid key '" + std::string(key) + "'");
        if (section.empty())
            throw ConfigParseError(line_no, static_cast<int>(kb) + 1, "key '" + std::string(key) + "' appears before any [section]");
        const auto [vb, ve] = trim_range(line, eq + 1, e);
        if (vb == ve)
            throw ConfigParseError(line_no, static_cast<int>(eq) + 2, "missing value for '" + std::string(key) + "'");
        for (const auto& prev : out)
            if (prev.section == section && prev.key == key)
                throw ConfigParseError(line_no, static_cast<int>(kb) + 1,
                                       "duplicate key '" + section + "." + std::string(key) + "' (first on line "
                                           + std::to_string(prev.line) + ")");
        out.push_back({line_no, static_cast<int>(kb) + 1, static_cast<int>(vb) + 1, section, std::string(key),
                       std::string(line.substr(vb, ve - vb))});
    }
    return out;
}

std::string number_text(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

// ---------------------------------------------------------------------------
// ScenarioConfig

const ConfigValue& ScenarioConfig::value(const std::string& key) const
{
    const auto it = entries.find(key);
    if (it == entries.end())
        throw Error(ErrorCode::InvalidArgument, std::string("no field '") + key + "' for scheme " + to_string(scheme));
    return it->second.value;
}

namespace {
template <typename T>
const T& typed(const ScenarioConfig& cfg, const std::string& key)
{
    const ConfigValue& v = cfg.value(key);
    if (const T* p = std::get_if<T>(&v))
        return *p;
    throw Error(ErrorCode::InvalidArgument, "field '" + key + "' has a different type");
}
} // namespace

double ScenarioConfig::real(const std::string& key) const { return typed<double>(*this, key); }
long long ScenarioConfig::integer(const std::string& key) const { return typed<long long>(*this, key); }
bool ScenarioConfig::flag(const std::string& key) const { return typed<bool>(*this, key); }
Complex ScenarioConfig::complex(const std::string& key) const { return typed<Complex>(*this, key); }
const std::vector<double>& ScenarioConfig::reals(const std::string& key) const
{
    return typed<std::vector<double>>(*this, key);
}
const std::vector<bool>& ScenarioConfig::mask(const std::string& key) const
{
    return typed<std::vector<bool>>(*this, key);
}
const std::string& ScenarioConfig::text(const std::string& key) const { return typed<std::string>(*this, key); }

void ScenarioConfig::set(const std::string& key, ConfigValue v)
{
    const FieldSpec* f = find_field(scheme, key);
    if (!f)
        throw ConfigValidationError(key, "", std::string("unknown key for scheme ") + to_string(scheme));
    // Integers are accepted where reals are expected.
    if (f->kind == ValueKind::Real && kind_of(v) == ValueKind::Integer)
        v = static_cast<double>(std::get<long long>(v));
    if (kind_of(v) != f->kind)
        throw ConfigValidationError(key, kind_name(f->kind), "wrong value type");
    check_range(*f, v);
    ScenarioConfig next = *this;
    next.entries[key] = {std::move(v), Provenance::Override, f->note};
    cross_check(next);
    *this = std::move(next);
}

std::vector<std::string> ScenarioConfig::provenance_notes() const
{
    std::vector<std::string> out;
    for (const auto& f : schema(scheme)) {
        const auto it = entries.find(f.name());
        if (it == entries.end() || it->second.provenance != Provenance::Default)
            continue;
        std::string line = f.name() + " = " + render_value(it->second.value) + " (default";
        if (!f.note.empty())
            line += ": " + f.note;
        out.push_back(line + ")");
    }
    return out;
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b)
{
    if (a.scheme != b.scheme || a.entries.size() != b.entries.size())
        return false;
    for (const auto& [k, e] : a.entries) {
        const auto it = b.entries.find(k);
        if (it == b.entries.end() || !(it->second.value == e.value))
            return false;
    }
    return true;
}

ScenarioConfig default_config(SchemeId id)
{
    ScenarioConfig cfg;
    cfg.scheme = id;
    for (const auto& f : schema(id))
        cfg.entries[f.name()] = {f.def, Provenance::Default, f.note};
    return cfg;
}

ScenarioConfig parse_config(std::string_view text, std::optional<SchemeId> fallback_scheme)
{
    const std::vector<RawEntry> raw = lex(text);

    std::optional<SchemeId> id = fallback_scheme;
    for (const auto& e : raw)
        if (e.section == "scheme" && e.key == "id")
            id = parse_scheme_id(std::string(trim(e.raw)));
    if (!id)
        throw ConfigValidationError("scheme.id", "sweep|twin|correct|amplify|transfer|store|custom",
                                    "scheme id required");

    ScenarioConfig cfg = default_config(*id);
    for (const auto& e : raw) {
        if (e.section == "scheme" && e.key == "id")
            continue;
        const std::string name = e.section + "." + e.key;
        const FieldSpec* f = find_field(*id, name);
        if (!f)
            throw ConfigValidationError(name, "", "unknown key for scheme " + std::string(to_string(*id)) + " (line "
                                                      + std::to_string(e.line) + ")");
        ConfigValue v;
        try {
            v = parse_value(f->kind, e.raw);
        } catch (const ValueError& err) {
            throw ConfigParseError(e.line, e.value_col + static_cast<int>(err.offset), name + ": " + err.what);
        }
        check_range(*f, v);
        cfg.entries[name] = {std::move(v), Provenance::File, f->note};
    }
    cross_check(cfg);
    return cfg;
}

std::string render_value(const ConfigValue& v)
{
    switch (kind_of(v)) {
    case ValueKind::Real: return number_text(std::get<double>(v));
    case ValueKind::Integer: return std::to_string(std::get<long long>(v));
    case ValueKind::Boolean: return std::get<bool>(v) ? "true" : "false";
    case ValueKind::Complex: {
        const Complex z = std::get<Complex>(v);
        const double im = z.imag();
        return number_text(z.real()) + (std::signbit(im) ? "-" : "+") + number_text(std::abs(im)) + "j";
    }
    case ValueKind::RealList: {
        std::string out;
        for (double x : std::get<std::vector<double>>(v)) {
            if (!out.empty())
                out += ", ";
            out += number_text(x);
        }
        return out;
    }
    case ValueKind::Mask: {
        std::string out;
        for (bool b : std::get<std::vector<bool>>(v))
            out += b ? '1' : '0';
        return out;
    }
    case ValueKind::Text: return std::get<std::string>(v);
    }
    return {};
}

std::string render_config(const ScenarioConfig& cfg)
{
    std::string out = "# lambda2 scenario; '# default' marks values that were not set explicitly\n";
    std::string section;
    auto open = [&](const std::string& s) {
        if (s == section)
            return;
        out += "\n[" + s + "]\n";
        section = s;
    };
    open("scheme");
    out += std::string("id = ") + to_string(cfg.scheme) + "\n";
    for (const auto& f : schema(cfg.scheme)) {
        const auto it = cfg.entries.find(f.name());
        if (it == cfg.entries.end())
            continue;
        open(f.section);
        out += f.key + " = " + render_value(it->second.value);
        if (it->second.provenance == Provenance::Default)
            out += f.note.empty() ? "  # default" : "  # default: " + f.note;
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Typed views

RunSetup run_setup(const ScenarioConfig& cfg)
{
    RunSetup r;
    r.chi = cfg.real("medium.chi");
    r.gamma_bc = cfg.real("medium.gamma_bc");
    r.length = cfg.real("medium.length");
    r.cells = static_cast<int>(cfg.integer("medium.cells"));
    r.dtau = cfg.real("grid.dtau");
    r.tau_end = cfg.real("grid.tau_end");
    r.probe_stride = static_cast<int>(cfg.integer("grid.probe_stride"));
    return r;
}

namespace {
void expect(const ScenarioConfig& cfg, SchemeId id)
{
    if (cfg.scheme != id)
        throw Error(ErrorCode::InvalidArgument,
                    std::string("config is for scheme ") + to_string(cfg.scheme) + ", expected " + to_string(id));
}
} // namespace

TwinConfig twin_config(const ScenarioConfig& cfg)
{
    expect(cfg, SchemeId::Twin);
    TwinConfig c;
    c.run = run_setup(cfg);
    c.control_level = cfg.real("controls.level");
    c.xi = cfg.real("controls.xi");
    c.amplitude = cfg.complex("input.amplitude");
    c.width = cfg.real("input.width");
    c.center = cfg.real("input.center");
    c.input_beam = static_cast<int>(cfg.integer("input.beam"));
    return c;
}

CorrectionConfig correction_config(const ScenarioConfig& cfg)
{
    expect(cfg, SchemeId::Correct);
    CorrectionConfig c;
    c.run = run_setup(cfg);
    c.control_level = cfg.real("controls.level");
    return c;
}

std::pair<PulseTrain, PulseTrain> correction_trains(const ScenarioConfig& cfg)
{
    expect(cfg, SchemeId::Correct);
    auto make = [&](const std::string& key) {
        PulseTrain t = PulseTrain::from_mask(cfg.mask(key));
        t.slot_period = cfg.real("input.slot_period");
        t.pulse_width = cfg.real("input.pulse_width");
        t.edge = cfg.real("input.edge");
        t.first_center = cfg.real("input.first_center");
        t.amplitude = cfg.complex("input.amplitude");
        return t;
    };
    return {make("input.mask1"), make("input.mask2")};
}

AmplifyConfig amplify_config(const ScenarioConfig& cfg)
{
    expect(cfg, SchemeId::Amplify);
    AmplifyConfig c;
    c.run = run_setup(cfg);
    c.control_level = cfg.real("controls.level");
    c.xi = cfg.real("controls.xi");
    c.mu = cfg.real("input.mu");
    c.delta0 = cfg.real("input.delta0");
    c.amplitude = cfg.complex("input.amplitude");
    c.width = cfg.real("input.width");
    c.center = cfg.real("input.center");
    return c;
}

TransferConfig transfer_config(const ScenarioConfig& cfg)
{
    expect(cfg, SchemeId::Transfer);
    TransferConfig c;
    c.run = run_setup(cfg);
    c.high_level = cfg.real("controls.high_level");
    c.low_level = cfg.real("controls.low_level");
    c.ramp = cfg.real("controls.ramp");
    c.swap_mid = cfg.real("controls.swap_mid");
    c.swap = cfg.flag("controls.swap");
    c.amplitude = cfg.complex("input.amplitude");
    c.width = cfg.real("input.width");
    c.center = cfg.real("input.center");
    return c;
}

StorageConfig storage_config(const ScenarioConfig& cfg)
{
    expect(cfg, SchemeId::Store);
    StorageConfig c;
    c.run = run_setup(cfg);
    c.control_level = cfg.real("controls.level");
    c.write_until = cfg.real("controls.write_until");
    c.ramp = cfg.real("controls.ramp");
    c.hold = cfg.real("controls.hold");
    c.read_both = cfg.flag("controls.read_both");
    c.amplitude = cfg.complex("input.amplitude");
    c.width = cfg.real("input.width");
    c.center = cfg.real("input.center");
    return c;
}

SweepSpec sweep_spec(const ScenarioConfig& cfg)
{
    expect(cfg, SchemeId::Sweep);
    SweepSpec s;
    s.xi_min = cfg.real("sweep.xi_min");
    s.xi_max = cfg.real("sweep.xi_max");
    s.xi_steps = static_cast<int>(cfg.integer("sweep.xi_steps"));
    s.delta0s = cfg.reals("sweep.delta0");
    s.mu = cfg.real("sweep.mu");
    return s;
}

CustomConfig custom_config(const ScenarioConfig& cfg)
{
    expect(cfg, SchemeId::Custom);
    CustomConfig c;
    c.run = run_setup(cfg);
    c.controls = {cfg.complex("controls.c1"), cfg.complex("controls.c2")};
    c.amplitude1 = cfg.complex("input.amplitude1");
    c.amplitude2 = cfg.complex("input.amplitude2");
    c.width = cfg.real("input.width");
    c.center = cfg.real("input.center");
    return c;
}

} // namespace lambda2

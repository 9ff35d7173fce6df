#pragma once

// Shared value types for the double-Lambda medium.
//
// Units: time in 1/gamma (tau = gamma t), length in c/gamma, every Rabi
// frequency in units of gamma. The only remaining medium parameter is the
// collective coupling chi = g sqrt(N) / gamma.

#include <algorithm>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace lambda2 {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

enum class ErrorCode {
    DegenerateControls,
    DivisionByZeroControl,
    StepTooLarge,
    ZeroAmplitudePhase,
    NegativeParameter,
    InvalidDensityMatrix,
    CourantViolation,
    NonFiniteField,
    EmptyRecord,
    MismatchedTrains,
    InvalidArgument,
    ParseError,
    ValidationError,
    IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), m_code(code)
    {
    }

    ErrorCode code() const noexcept { return m_code; }

private:
    ErrorCode m_code;
};

/// Pair of signal envelopes (Omega_1s, Omega_2s).
struct SignalPair
{
    Complex s1{};
    Complex s2{};

    double intensity() const { return std::norm(s1) + std::norm(s2); }
    bool finite() const;

    SignalPair& operator+=(const SignalPair& o)
    {
        s1 += o.s1;
        s2 += o.s2;
        return *this;
    }
    friend SignalPair operator+(SignalPair a, const SignalPair& b) { return a += b; }
    friend SignalPair operator-(const SignalPair& a, const SignalPair& b)
    {
        return {a.s1 - b.s1, a.s2 - b.s2};
    }
    friend SignalPair operator*(Complex k, const SignalPair& a) { return {k * a.s1, k * a.s2}; }
    friend SignalPair operator*(double k, const SignalPair& a) { return {k * a.s1, k * a.s2}; }
    friend bool operator==(const SignalPair&, const SignalPair&) = default;
};

/// Euclidean norm of the difference, treating the pair as a vector in C^2.
double distance(const SignalPair& a, const SignalPair& b);

/// Pair of control envelopes (Omega_1c, Omega_2c).
struct ControlPair
{
    Complex c1{};
    Complex c2{};

    double total() const { return std::norm(c1) + std::norm(c2); }
    double max_abs() const { return std::max(std::abs(c1), std::abs(c2)); }
    friend bool operator==(const ControlPair&, const ControlPair&) = default;
};

struct MediumParams
{
    double chi = 2.0;      // g sqrt(N) / gamma
    double eta = 1.0;      // chi^2 / 4
    double gamma_bc = 0.0; // ground-coherence decay
    double length = 10.0;  // c / gamma
    int cells = 1000;

    static MediumParams make(double chi, double length, int cells, double gamma_bc = 0.0);
    void validate() const;
};

/// Initial-signal phase bookkeeping: mu = |s2|^2/|s1|^2 and the four-field
/// phase mismatch arg c1 - arg c2 + arg s2 - arg s1, wrapped to (-pi, pi].
struct PhaseParams
{
    double mu = 1.0;
    double delta0 = 0.0;
    double delta = 0.0;
};

/// Wrap an angle into (-pi, pi].
double wrap_phase(double angle);

/// Throws DegenerateControls when both controls vanish or are not finite.
ControlPair validate_controls(const ControlPair& c);

/// xi = |c2|^2 / |c1|^2. Throws DivisionByZeroControl when c1 = 0.
double control_ratio_xi(const ControlPair& c);

/// Sweep-friendly xi: returns +infinity when c1 = 0 and c2 != 0.
double control_ratio_xi_or_inf(const ControlPair& c);

/// Inverse ratio |c1|^2 / |c2|^2, finite whenever c2 != 0.
double inverse_control_ratio(const ControlPair& c);

/// mu and delta0 of an input pair against the controls. Requires all four
/// amplitudes nonzero.
PhaseParams phase_params(const SignalPair& s0, const ControlPair& c);

} // namespace lambda2

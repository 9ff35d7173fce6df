#include "lambda2/core.hpp"

#include <cmath>

namespace lambda2 {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::DegenerateControls: return "DegenerateControls";
    case ErrorCode::DivisionByZeroControl: return "DivisionByZeroControl";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ZeroAmplitudePhase: return "ZeroAmplitudePhase";
    case ErrorCode::NegativeParameter: return "NegativeParameter";
    case ErrorCode::InvalidDensityMatrix: return "InvalidDensityMatrix";
    case ErrorCode::CourantViolation: return "CourantViolation";
    case ErrorCode::NonFiniteField: return "NonFiniteField";
    case ErrorCode::EmptyRecord: return "EmptyRecord";
    case ErrorCode::MismatchedTrains: return "MismatchedTrains";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

namespace {
bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
} // namespace

bool SignalPair::finite() const { return lambda2::finite(s1) && lambda2::finite(s2); }

double distance(const SignalPair& a, const SignalPair& b)
{
    return std::sqrt(std::norm(a.s1 - b.s1) + std::norm(a.s2 - b.s2));
}

MediumParams MediumParams::make(double chi, double length, int cells, double gamma_bc)
{
    MediumParams m;
    m.chi = chi;
    m.eta = chi * chi / 4.0;
    m.gamma_bc = gamma_bc;
    m.length = length;
    m.cells = cells;
    m.validate();
    return m;
}

void MediumParams::validate() const
{
    if (!(chi >= 0.0) || !std::isfinite(chi))
        throw Error(ErrorCode::NegativeParameter, "chi must be finite and >= 0");
    if (eta != chi * chi / 4.0)
        throw Error(ErrorCode::InvalidArgument, "eta must equal chi^2/4");
    if (!(gamma_bc >= 0.0))
        throw Error(ErrorCode::NegativeParameter, "gamma_bc must be >= 0");
    if (!(length > 0.0) || !std::isfinite(length))
        throw Error(ErrorCode::InvalidArgument, "length must be > 0");
    if (cells < 1)
        throw Error(ErrorCode::InvalidArgument, "cells must be >= 1");
}

double wrap_phase(double angle)
{
    double a = std::remainder(angle, 2.0 * kPi); // [-pi, pi]
    if (a <= -kPi)
        a += 2.0 * kPi;
    return a;
}

ControlPair validate_controls(const ControlPair& c)
{
    if (!finite(c.c1) || !finite(c.c2))
        throw Error(ErrorCode::DegenerateControls, "control amplitudes must be finite");
    if (c.total() <= 0.0)
        throw Error(ErrorCode::DegenerateControls, "both control amplitudes are zero");
    return c;
}

double control_ratio_xi(const ControlPair& c)
{
    if (std::norm(c.c1) == 0.0)
        throw Error(ErrorCode::DivisionByZeroControl, "xi undefined for c1 = 0");
    return std::norm(c.c2) / std::norm(c.c1);
}

double control_ratio_xi_or_inf(const ControlPair& c)
{
    validate_controls(c);
    if (std::norm(c.c1) == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::norm(c.c2) / std::norm(c.c1);
}

double inverse_control_ratio(const ControlPair& c)
{
    validate_controls(c);
    if (std::norm(c.c2) == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::norm(c.c1) / std::norm(c.c2);
}

PhaseParams phase_params(const SignalPair& s0, const ControlPair& c)
{
    if (s0.s1 == Complex{} || s0.s2 == Complex{} || c.c1 == Complex{} || c.c2 == Complex{})
        throw Error(ErrorCode::ZeroAmplitudePhase, "phase of a zero amplitude");
    PhaseParams p;
    p.mu = std::norm(s0.s2) / std::norm(s0.s1);
    p.delta0 = wrap_phase(std::arg(c.c1) - std::arg(c.c2) + std::arg(s0.s2) - std::arg(s0.s1));
    p.delta = p.delta0;
    return p;
}

} // namespace lambda2

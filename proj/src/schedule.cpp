#include "lambda2/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "lambda2/pulses.hpp"

namespace lambda2 {

namespace {
constexpr double kJoinTolerance = 1e-9;
}

Complex ControlSegment::value(double tau) const
{
    if (shape == RampShape::Constant || tau_end <= tau_start)
        return from;
    const double u = std::clamp((tau - tau_start) / (tau_end - tau_start), 0.0, 1.0);
    const double w = shape == RampShape::Linear ? u : raised_cosine_step(u);
    return from + w * (to - from);
}

BeamSchedule::BeamSchedule(std::vector<ControlSegment> segments) : m_segments(std::move(segments))
{
    if (!m_segments.empty())
        m_start = m_segments.front().from;
}

BeamSchedule BeamSchedule::starting_at(Complex value)
{
    BeamSchedule s;
    s.m_start = value;
    return s;
}

Complex BeamSchedule::current() const
{
    if (m_segments.empty())
        return m_start;
    const auto& last = m_segments.back();
    return last.shape == RampShape::Constant ? last.from : last.to;
}

double BeamSchedule::end() const { return m_segments.empty() ? 0.0 : m_segments.back().tau_end; }

BeamSchedule& BeamSchedule::hold_until(double tau)
{
    if (tau < end())
        throw Error(ErrorCode::InvalidArgument, "schedule segments must move forward in time");
    const Complex v = current();
    m_segments.push_back({end(), tau, RampShape::Constant, v, v});
    return *this;
}

BeamSchedule& BeamSchedule::hold_for(double duration) { return hold_until(end() + duration); }

BeamSchedule& BeamSchedule::ramp_to(Complex value, double duration, RampShape shape)
{
    if (!(duration >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "ramp duration must be >= 0");
    const double t0 = end();
    m_segments.push_back({t0, t0 + duration, shape, current(), value});
    return *this;
}

Complex BeamSchedule::value(double tau) const
{
    if (m_segments.empty())
        return m_start;
    if (tau <= m_segments.front().tau_start)
        return m_segments.front().from;
    // First segment whose end is >= tau.
    const auto it = std::lower_bound(
        m_segments.begin(), m_segments.end(), tau,
        [](const ControlSegment& seg, double t) { return seg.tau_end < t; });
    if (it == m_segments.end())
        return current();
    return it->value(tau);
}

double BeamSchedule::max_abs() const
{
    double m = std::abs(m_start);
    for (const auto& seg : m_segments)
        m = std::max({m, std::abs(seg.from), std::abs(seg.to)});
    return m;
}

void BeamSchedule::validate(double tau_end) const
{
    if (m_segments.empty())
        return; // constant at m_start everywhere
    if (std::abs(m_segments.front().tau_start) > kJoinTolerance)
        throw Error(ErrorCode::ValidationError, "schedule must start at tau = 0");
    for (std::size_t i = 0; i < m_segments.size(); ++i) {
        const auto& seg = m_segments[i];
        if (seg.tau_end < seg.tau_start)
            throw Error(ErrorCode::ValidationError, "schedule segment ends before it starts");
        if (i + 1 < m_segments.size()) {
            const auto& next = m_segments[i + 1];
            if (std::abs(next.tau_start - seg.tau_end) > kJoinTolerance)
                throw Error(ErrorCode::ValidationError, "schedule segments are not contiguous");
            if (std::abs(next.value(next.tau_start) - seg.value(seg.tau_end)) > kJoinTolerance)
                throw Error(ErrorCode::ValidationError, "control envelope is discontinuous");
        }
    }
    if (m_segments.back().tau_end + kJoinTolerance < tau_end)
        throw Error(ErrorCode::ValidationError, "schedule does not cover the run");
}

ControlSchedule ControlSchedule::constant(const ControlPair& c, double tau_end)
{
    ControlSchedule s;
    s.beam1 = BeamSchedule::starting_at(c.c1).hold_until(tau_end);
    s.beam2 = BeamSchedule::starting_at(c.c2).hold_until(tau_end);
    return s;
}

void ControlSchedule::validate(double tau_end) const
{
    beam1.validate(tau_end);
    beam2.validate(tau_end);
}

} // namespace lambda2

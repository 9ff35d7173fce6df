#pragma once

#include <vector>

#include "lambda2/core.hpp"

namespace lambda2 {

enum class RampShape { Constant, Linear, RaisedCosine };

struct ControlSegment
{
    double tau_start = 0.0;
    double tau_end = 0.0;
    RampShape shape = RampShape::Constant;
    Complex from{};
    Complex to{};

    Complex value(double tau) const;
};

/// Piecewise time profile of one control beam. Before the first segment the
/// start value holds, after the last segment the final value holds.
class BeamSchedule
{
public:
    BeamSchedule() = default;
    explicit BeamSchedule(std::vector<ControlSegment> segments);

    /// Starts a schedule at `value` from tau = 0.
    static BeamSchedule starting_at(Complex value);

    BeamSchedule& hold_until(double tau);
    BeamSchedule& hold_for(double duration);
    BeamSchedule& ramp_to(Complex value, double duration, RampShape shape = RampShape::RaisedCosine);

    Complex value(double tau) const;
    double end() const;
    double max_abs() const;
    const std::vector<ControlSegment>& segments() const { return m_segments; }

    /// Contiguity, continuity and coverage of [0, tau_end].
    void validate(double tau_end) const;

private:
    Complex current() const;

    Complex m_start{};
    std::vector<ControlSegment> m_segments;
};

struct ControlSchedule
{
    BeamSchedule beam1;
    BeamSchedule beam2;

    static ControlSchedule constant(const ControlPair& c, double tau_end);

    ControlPair at(double tau) const { return {beam1.value(tau), beam2.value(tau)}; }
    double max_abs() const { return std::max(beam1.max_abs(), beam2.max_abs()); }
    void validate(double tau_end) const;
};

} // namespace lambda2

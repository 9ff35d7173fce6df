#pragma once

// Plane-wave amplification curves r1(xi), r2(xi) for a set of phase offsets.

#include <vector>

#include "lambda2/core.hpp"

namespace lambda2 {

struct SweepRow
{
    double xi = 0.0;
    double delta0 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
};

struct SweepSpec
{
    double xi_min = 0.0;
    double xi_max = 5.0;
    int xi_steps = 501;
    std::vector<double> delta0s{0.0, 0.5 * kPi, kPi};
    double mu = 1.0;

    /// Value of the k-th grid point; the end points are hit exactly.
    double xi_at(int k) const;
    void validate() const;
};

/// Rows ordered by (delta0, xi) ascending.
std::vector<SweepRow> amplification_sweep(const SweepSpec& spec, unsigned jobs = 0);

} // namespace lambda2

#pragma once

// Atomic dynamics at a single point of the medium.
//
// Linear tier: weak-signal equations for the optical coherences S1 (b-a),
// S2 (b-d) and the ground coherence S (b-c), with the atom otherwise in |b>.
// Full tier: the 4x4 density matrix over (b, c, a, d) with radiative decay
// of both upper levels.

#include <Eigen/Dense>

#include "lambda2/core.hpp"

namespace lambda2 {

struct AtomicSlice
{
    Complex S1{};
    Complex S2{};
    Complex S{};

    AtomicSlice& operator+=(const AtomicSlice& o)
    {
        S1 += o.S1;
        S2 += o.S2;
        S += o.S;
        return *this;
    }
    friend AtomicSlice operator+(AtomicSlice a, const AtomicSlice& b) { return a += b; }
    friend AtomicSlice operator*(double k, const AtomicSlice& a) { return {k * a.S1, k * a.S2, k * a.S}; }
    friend bool operator==(const AtomicSlice&, const AtomicSlice&) = default;
};

/// Coherences of a normalised atom cannot exceed 1 in magnitude; anything
/// larger means the weak-signal linearisation has broken down.
bool in_weak_signal_regime(const AtomicSlice& a);

/// d/dtau of the linear slice for the local fields (gamma = 1).
AtomicSlice bloch_rhs_linear(const AtomicSlice& a, const SignalPair& s, const ControlPair& c,
                             double gamma_bc);

/// Instantaneous steady state of the linear slice for fixed fields.
AtomicSlice adiabatic_polarizations(const SignalPair& s, const ControlPair& c);

/// One RK4 step with the fields held constant across the step.
/// Requires dtau <= 0.1 and dtau * max|c_i| <= 0.2.
AtomicSlice bloch_step(const AtomicSlice& a, const SignalPair& s, const ControlPair& c,
                       double gamma_bc, double dtau);

/// Throws StepTooLarge for steps the fixed-step integrator should not take.
void check_bloch_step(double dtau, double max_control);

namespace level {
inline constexpr int b = 0;
inline constexpr int c = 1;
inline constexpr int a = 2;
inline constexpr int d = 3;
} // namespace level

using Matrix4c = Eigen::Matrix4cd;

/// Decay model of the full tier. Each upper level decays at total rate 1,
/// half into |b> and half into |c>; `upper_dephasing` adds pure dephasing so
/// the optical coherences relax at 1/2 + upper_dephasing.
struct LindbladOptions
{
    double upper_dephasing = 0.5;
    double gamma_bc = 0.0;
};

class DensityMatrix4
{
public:
    DensityMatrix4();
    explicit DensityMatrix4(const Matrix4c& m, bool check = true);

    static DensityMatrix4 pure(int level_index);

    const Matrix4c& matrix() const { return m_rho; }
    Complex operator()(int i, int j) const { return m_rho(i, j); }

    double hermiticity_error() const;
    double trace_error() const;
    double min_eigenvalue() const;

    /// Throws InvalidDensityMatrix when Hermiticity, trace or positivity fail.
    void validate() const;

private:
    Matrix4c m_rho;
};

Matrix4c lindblad_hamiltonian(const SignalPair& s, const ControlPair& c);

/// d(rho)/dtau = -i[H, rho] + L(rho).
Matrix4c full_lindblad_rhs(const DensityMatrix4& rho, const SignalPair& s, const ControlPair& c,
                           const LindbladOptions& opts = {});

/// Unchecked right-hand side on a raw matrix (used inside RK4 stages).
Matrix4c lindblad_rhs_raw(const Matrix4c& rho, const SignalPair& s, const ControlPair& c,
                          const LindbladOptions& opts = {});

DensityMatrix4 lindblad_step(const DensityMatrix4& rho, const SignalPair& s, const ControlPair& c,
                             double dtau, const LindbladOptions& opts = {});

/// Linear-tier coherences read from a density matrix:
/// S1 = rho_ab, S2 = rho_db, S = rho_cb.
AtomicSlice coherences(const Matrix4c& rho);

} // namespace lambda2

#include "lambda2/bloch.hpp"

#include <cmath>

namespace lambda2 {

bool in_weak_signal_regime(const AtomicSlice& a)
{
    return std::abs(a.S1) <= 1.0 && std::abs(a.S2) <= 1.0 && std::abs(a.S) <= 1.0;
}

AtomicSlice bloch_rhs_linear(const AtomicSlice& a, const SignalPair& s, const ControlPair& c,
                             double gamma_bc)
{
    const Complex half_i = 0.5 * kI;
    AtomicSlice d;
    d.S1 = -a.S1 + half_i * (s.s1 + c.c1 * a.S);
    d.S2 = -a.S2 + half_i * (s.s2 + c.c2 * a.S);
    d.S = -gamma_bc * a.S + half_i * (std::conj(c.c1) * a.S1 + std::conj(c.c2) * a.S2);
    return d;
}

AtomicSlice adiabatic_polarizations(const SignalPair& s, const ControlPair& c)
{
    validate_controls(c);
    const Complex half_i = 0.5 * kI;
    AtomicSlice a;
    a.S = -(std::conj(c.c1) * s.s1 + std::conj(c.c2) * s.s2) / c.total();
    a.S1 = half_i * (s.s1 + c.c1 * a.S);
    a.S2 = half_i * (s.s2 + c.c2 * a.S);
    return a;
}

void check_bloch_step(double dtau, double max_control)
{
    if (!(dtau > 0.0))
        throw Error(ErrorCode::InvalidArgument, "dtau must be > 0");
    if (dtau > 0.1)
        throw Error(ErrorCode::StepTooLarge, "dtau must be <= 0.1");
    if (dtau * max_control > 0.2)
        throw Error(ErrorCode::StepTooLarge, "dtau * max|c| must be <= 0.2");
}

AtomicSlice bloch_step(const AtomicSlice& a, const SignalPair& s, const ControlPair& c,
                       double gamma_bc, double dtau)
{
    check_bloch_step(dtau, c.max_abs());
    const AtomicSlice k1 = bloch_rhs_linear(a, s, c, gamma_bc);
    const AtomicSlice k2 = bloch_rhs_linear(a + (0.5 * dtau) * k1, s, c, gamma_bc);
    const AtomicSlice k3 = bloch_rhs_linear(a + (0.5 * dtau) * k2, s, c, gamma_bc);
    const AtomicSlice k4 = bloch_rhs_linear(a + dtau * k3, s, c, gamma_bc);
    return a + (dtau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// ---------------------------------------------------------------------------
// Full density-matrix tier

DensityMatrix4::DensityMatrix4() : m_rho(Matrix4c::Zero()) { m_rho(level::b, level::b) = 1.0; }

DensityMatrix4::DensityMatrix4(const Matrix4c& m, bool check) : m_rho(m)
{
    if (check)
        validate();
}

DensityMatrix4 DensityMatrix4::pure(int level_index)
{
    if (level_index < 0 || level_index > 3)
        throw Error(ErrorCode::InvalidArgument, "level index out of range");
    Matrix4c m = Matrix4c::Zero();
    m(level_index, level_index) = 1.0;
    return DensityMatrix4(m);
}

double DensityMatrix4::hermiticity_error() const
{
    return (m_rho - m_rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix4::trace_error() const { return std::abs(m_rho.trace() - Complex{1.0}); }

double DensityMatrix4::min_eigenvalue() const
{
    const Matrix4c herm = 0.5 * (m_rho + m_rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix4::validate() const
{
    if (!m_rho.allFinite())
        throw Error(ErrorCode::InvalidDensityMatrix, "non-finite entries");
    if (hermiticity_error() > 1e-12)
        throw Error(ErrorCode::InvalidDensityMatrix, "not Hermitian");
    if (trace_error() > 1e-10)
        throw Error(ErrorCode::InvalidDensityMatrix, "trace differs from 1");
    if (min_eigenvalue() < -1e-9)
        throw Error(ErrorCode::InvalidDensityMatrix, "negative eigenvalue");
}

Matrix4c lindblad_hamiltonian(const SignalPair& s, const ControlPair& c)
{
    Matrix4c h = Matrix4c::Zero();
    h(level::a, level::b) = -0.5 * s.s1;
    h(level::d, level::b) = -0.5 * s.s2;
    h(level::a, level::c) = -0.5 * c.c1;
    h(level::d, level::c) = -0.5 * c.c2;
    return h + h.adjoint().eval();
}

namespace {

// D[L] rho with L = sqrt(rate) |to><from|.
void add_jump(Matrix4c& out, const Matrix4c& rho, double rate, int to, int from)
{
    if (rate == 0.0)
        return;
    out(to, to) += rate * rho(from, from);
    for (int k = 0; k < 4; ++k) {
        out(from, k) -= 0.5 * rate * rho(from, k);
        out(k, from) -= 0.5 * rate * rho(k, from);
    }
}

// D[L] rho with L = sqrt(rate) |n><n|: off-diagonal elements of row/column n
// decay at rate/2.
void add_dephasing(Matrix4c& out, const Matrix4c& rho, double rate, int n)
{
    if (rate == 0.0)
        return;
    for (int k = 0; k < 4; ++k) {
        if (k == n)
            continue;
        out(n, k) -= 0.5 * rate * rho(n, k);
        out(k, n) -= 0.5 * rate * rho(k, n);
    }
}

} // namespace

Matrix4c lindblad_rhs_raw(const Matrix4c& rho, const SignalPair& s, const ControlPair& c,
                          const LindbladOptions& opts)
{
    const Matrix4c h = lindblad_hamiltonian(s, c);
    Matrix4c out = -kI * (h * rho - rho * h);
    for (int upper : {level::a, level::d}) {
        add_jump(out, rho, 0.5, level::b, upper);
        add_jump(out, rho, 0.5, level::c, upper);
    }
    add_dephasing(out, rho, 2.0 * opts.upper_dephasing, level::a);
    add_dephasing(out, rho, 2.0 * opts.upper_dephasing, level::d);
    add_dephasing(out, rho, 2.0 * opts.gamma_bc, level::c);
    return out;
}

Matrix4c full_lindblad_rhs(const DensityMatrix4& rho, const SignalPair& s, const ControlPair& c,
                           const LindbladOptions& opts)
{
    rho.validate();
    return lindblad_rhs_raw(rho.matrix(), s, c, opts);
}

DensityMatrix4 lindblad_step(const DensityMatrix4& rho, const SignalPair& s, const ControlPair& c,
                             double dtau, const LindbladOptions& opts)
{
    check_bloch_step(dtau, c.max_abs());
    const Matrix4c& r = rho.matrix();
    const Matrix4c k1 = lindblad_rhs_raw(r, s, c, opts);
    const Matrix4c k2 = lindblad_rhs_raw(r + 0.5 * dtau * k1, s, c, opts);
    const Matrix4c k3 = lindblad_rhs_raw(r + 0.5 * dtau * k2, s, c, opts);
    const Matrix4c k4 = lindblad_rhs_raw(r + dtau * k3, s, c, opts);
    return DensityMatrix4(r + (dtau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), false);
}

AtomicSlice coherences(const Matrix4c& rho)
{
    return {rho(level::a, level::b), rho(level::d, level::b), rho(level::c, level::b)};
}

} // namespace lambda2

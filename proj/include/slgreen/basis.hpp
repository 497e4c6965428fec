#pragma once

#include "slgreen/integrate.hpp"

namespace slgreen {

State initial_left(const ProblemConfig& config, double lambda);
State initial_right(const ProblemConfig& config, double lambda);

/// (u, v) at c- to (u, v) at c+:  u⁺ = (Δ23 u + Δ24 v)/Δ12,  v⁺ = -(Δ13 u + Δ14 v)/Δ12.
State jump_forward(const Minors& m, State s);
/// Inverse of jump_forward:  u⁻ = -(Δ14 u + Δ24 v)/Δ34,  v⁻ = (Δ13 u + Δ23 v)/Δ34.
State jump_backward(const Minors& m, State s);

/// Residuals of the two transmission rows for traces (left = c-, right = c+).
/// `printed` plugs the traces in as written (β⁻ against c-); `swapped` exchanges
/// the c- and c+ traces, which is the form the jump maps satisfy exactly.
struct TransmissionResidual {
    double printed = 0.0;
    double swapped = 0.0;
};
TransmissionResidual transmission_residual(const TransmissionSpec& t, State left, State right);

struct FundamentalSystem {
    double lambda = 0.0;
    SolutionPath phi_minus, phi_plus, psi_minus, psi_plus;
    double omega_minus = 0.0;  // W[φ⁻, ψ⁻] at a
    double omega_plus = 0.0;   // W[φ⁺, ψ⁺] at b
    double omega = 0.0;        // Δ34 ω⁻
    double scale = 0.0;        // magnitude of the Wronskian terms, for relative tests

    double c() const { return phi_minus.hi(); }
    /// Piecewise φ (φ⁻ left of c, φ⁺ right); x == c resolves to the left trace.
    State phi(double x) const;
    State psi(double x) const;
};

FundamentalSystem fundamental_system(const Problem& problem, double lambda);
double omega(const Problem& problem, double lambda);

}  // namespace slgreen

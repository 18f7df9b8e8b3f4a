#pragma once

#include "dzk/field.hpp"

namespace dzk {

struct InitialData {
    ScalarField E0;
    ScalarField n0;
    ScalarField n1;
};

// Validates that n0, n1 are real (to 1e-12 relative) and shares the grid.
InitialData make_initial_data(ScalarField E0, ScalarField n0, ScalarField n1);

struct SolverConfig {
    double t_end = 0.1;
    int nt = 17;              // >= 9 so the Simpson quadrature has headroom
    double picard_tol = 1e-8;
    int max_iters = 25;
    double epsilon = 0.05;    // "+" exponent used inside the fixed-point norm
    bool adapt_horizon = true; // halve T on non-contraction, up to 4 times
    double imag_tol = 1e-10;  // allowed imaginary residue when projecting n
    double boundary_tol = 1e-8;
    // boundary-mass monitor per axis; switch an axis off when the data is
    // constant along it (the periodization is exact there, so shell mass is
    // structural rather than contamination)
    bool monitor_x = true, monitor_y = true, monitor_z = true;

    void validate() const;
};

struct IterationDiagnostics {
    std::vector<double> increments;  // fixed-point norm of E^(m+1) - E^m
    std::vector<double> ratios;      // successive increment ratios
    double residual = 0.0;           // fixed-point norm of E - Psi(E)
    double mass_drift = 0.0;         // max relative drift of ||E(t)||^2
    double boundary_fraction = 0.0;  // worst boundary-mass fraction seen
    double achieved_t_end = 0.0;     // horizon after any adaptive halving
    int horizon_halvings = 0;
    int iterations = 0;
    bool converged = false;
};

struct SolutionBundle {
    FieldSeries E;
    FieldSeries n;
    IterationDiagnostics diagnostics;
};

// F(t) = N'(t) n0 + N(t) n1, real-valued.
ScalarField wave_forcing(const InitialData& data, double t);

// L(t) = integral over [0, t] of N(t - t') Lap_perp(|E|^2)(t') dt',
// composite Simpson over the nodes <= t; |E|^2 is dealiased. t must be a
// node of the series' time grid.
ScalarField wave_duhamel(const FieldSeries& E, double t);

// Psi(E)(t) = E(t) E0 + int E(t-t') (E F)(t') + int E(t-t') (E L)(t'),
// with both products dealiased. Fixes the initial frame bit-for-bit.
FieldSeries picard_map(const FieldSeries& E, const InitialData& data,
                       const SolverConfig& cfg);

// Iterate E^(m+1) = Psi(E^m) from E^0(t) = E(t) E0 until the fixed-point
// norm of the increment drops below picard_tol. Three consecutive
// non-contracting iterations abort the horizon (halved when allowed).
SolutionBundle solve_picard(const InitialData& data, const SolverConfig& cfg);

// n(t) = F(t) + L(t), real to imag_tol.
ScalarField reconstruct_n(const FieldSeries& E, const InitialData& data, double t);

// Independent cross-check: Strang splitting of the exact group with a
// midpoint-frozen potential, run on a refine-times-finer time grid and
// subsampled back onto the solver nodes.
FieldSeries reference_step(const InitialData& data, const SolverConfig& cfg,
                           int refine = 4, bool include_self_interaction = true);

// ||E||_L2^2; conserved by the flow.
double mass(const ScalarField& E);

} // namespace dzk

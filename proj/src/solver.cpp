#include "dzk/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dzk/dealias.hpp"
#include "dzk/estimates.hpp"
#include "dzk/fft.hpp"
#include "dzk/norms.hpp"
#include "dzk/propagators.hpp"
#include "dzk/quadrature.hpp"

namespace dzk {

namespace {

double linf(const ScalarField& f) {
    double m = 0.0;
    for (const cd& v : f.v) m = std::max(m, std::abs(v));
    return m;
}

double imag_linf(const ScalarField& f) {
    double m = 0.0;
    for (const cd& v : f.v) m = std::max(m, std::fabs(v.imag()));
    return m;
}

ScalarField project_real(ScalarField f, double tol, const char* what) {
    const double scale = std::max(linf(f), 1e-300);
    const double residue = imag_linf(f) / scale;
    if (residue > tol) {
        std::ostringstream os;
        os << what << ": imaginary residue " << residue << " exceeds " << tol
           << " (aliasing or quadrature failure)";
        throw std::runtime_error(os.str());
    }
    for (cd& v : f.v) v = cd(v.real(), 0.0);
    return f;
}

ScalarField conj_field(const ScalarField& f) {
    ScalarField out(f.grid);
    for (std::size_t q = 0; q < f.v.size(); ++q) out.v[q] = std::conj(f.v[q]);
    return out;
}

void check_finite(const ScalarField& f, const char* what) {
    for (const cd& v : f.v)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error(std::string(what) + ": non-finite field");
}

// spectral forcing frame: cos(t r) n0hat + t sinc(t r) n1hat
SpectralField wave_forcing_hat(const SpectralField& n0h, const SpectralField& n1h, double t) {
    const Grid3& g = n0h.grid;
    SpectralField F(g);
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double c = wave_cosine_symbol(t, g.kx[i], g.ky[j]);
            const double s = wave_sine_symbol(t, g.kx[i], g.ky[j]);
            for (int l = 0; l < g.nz; ++l, ++idx)
                F.m[idx] = c * n0h.m[idx] + s * n1h.m[idx];
        }
    return F;
}

// Lap_perp(|E|^2) in frequency space, |E|^2 dealiased
SpectralField perp_laplacian_of_square(const ScalarField& E) {
    SpectralField W = to_spectral(dealiased_product(E, conj_field(E)));
    transform_modes(W, [](double k1, double k2, double) { return -(k1 * k1 + k2 * k2); });
    return W;
}

std::vector<SpectralField> square_series(const FieldSeries& E) {
    std::vector<SpectralField> W;
    W.reserve(E.frames.size());
    for (const auto& f : E.frames) W.push_back(perp_laplacian_of_square(f));
    return W;
}

// L(t_j) for every node from the precomputed W frames
std::vector<SpectralField> wave_duhamel_series(const std::vector<SpectralField>& W,
                                               const TimeGrid& tg) {
    std::vector<SpectralField> L;
    L.reserve(W.size());
    for (int j = 0; j < tg.nt; ++j) {
        SpectralField acc(W.front().grid);
        const auto w = simpson_weights(j, tg.dt());
        for (int i = 0; i <= j; ++i) {
            if (w[i] == 0.0) continue;
            axpy_wave_sine(acc, W[i], tg.nodes[j] - tg.nodes[i], w[i]);
        }
        L.push_back(std::move(acc));
    }
    return L;
}

ScalarField truncated_physical(const SpectralField& F) {
    SpectralField T = F;
    truncate_two_thirds(T);
    return from_spectral(T);
}

// to_spectral(dealias(a, b)) given the already-truncated physical factors
SpectralField truncated_product_hat(const ScalarField& a, const ScalarField& b) {
    ScalarField prod(a.grid);
    for (std::size_t q = 0; q < prod.v.size(); ++q) prod.v[q] = a.v[q] * b.v[q];
    SpectralField P = to_spectral(prod);
    truncate_two_thirds(P);
    return P;
}

struct PicardPipeline {
    std::vector<SpectralField> Ghat; // dealias(E*F) + dealias(E*L), spectral
};

PicardPipeline build_nonlinearity(const FieldSeries& E, const SpectralField& n0h,
                                  const SpectralField& n1h, const SolverConfig& cfg) {
    const TimeGrid& tg = E.time;
    const auto W = square_series(E);
    const auto Lhat = wave_duhamel_series(W, tg);
    PicardPipeline pipe;
    pipe.Ghat.reserve(tg.nt);
    for (int j = 0; j < tg.nt; ++j) {
        const double t = tg.nodes[j];
        const ScalarField Ft = project_real(
            truncated_physical(wave_forcing_hat(n0h, n1h, t)), cfg.imag_tol, "wave_forcing");
        const ScalarField Lt =
            project_real(truncated_physical(Lhat[j]), cfg.imag_tol, "wave_duhamel");
        SpectralField Ehat = to_spectral(E.frames[j]);
        truncate_two_thirds(Ehat);
        const ScalarField Et = from_spectral(Ehat);
        SpectralField G = truncated_product_hat(Et, Ft);
        const SpectralField G2 = truncated_product_hat(Et, Lt);
        for (std::size_t q = 0; q < G.m.size(); ++q) G.m[q] += G2.m[q];
        pipe.Ghat.push_back(std::move(G));
    }
    return pipe;
}

FieldSeries series_difference(const FieldSeries& a, const FieldSeries& b) {
    FieldSeries d(a.time, a.grid());
    for (int j = 0; j < a.nt(); ++j)
        for (std::size_t q = 0; q < d.frames[j].v.size(); ++q)
            d.frames[j].v[q] = a.frames[j].v[q] - b.frames[j].v[q];
    return d;
}

} // namespace

InitialData make_initial_data(ScalarField E0, ScalarField n0, ScalarField n1) {
    if (!E0.grid.same_shape(n0.grid) || !E0.grid.same_shape(n1.grid))
        throw std::invalid_argument("make_initial_data: fields on different grids");
    check_finite(E0, "make_initial_data");
    InitialData d;
    d.E0 = std::move(E0);
    d.n0 = project_real(std::move(n0), 1e-12, "make_initial_data(n0)");
    d.n1 = project_real(std::move(n1), 1e-12, "make_initial_data(n1)");
    return d;
}

void SolverConfig::validate() const {
    if (!(t_end > 0)) throw std::invalid_argument("SolverConfig: t_end must be positive");
    if (nt < 9) throw std::invalid_argument("SolverConfig: nt must be >= 9");
    if (!(picard_tol > 0)) throw std::invalid_argument("SolverConfig: tol must be positive");
    if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
}

ScalarField wave_forcing(const InitialData& data, double t) {
    const SpectralField F =
        wave_forcing_hat(to_spectral(data.n0), to_spectral(data.n1), t);
    return project_real(from_spectral(F), 1e-10, "wave_forcing");
}

ScalarField wave_duhamel(const FieldSeries& E, double t) {
    E.validate();
    const TimeGrid& tg = E.time;
    int j = -1;
    for (int i = 0; i < tg.nt; ++i)
        if (std::fabs(tg.nodes[i] - t) <= 1e-12 * std::max(1.0, tg.t_end)) j = i;
    if (j < 0) throw std::invalid_argument("wave_duhamel: t is not a time-grid node");

    SpectralField acc(E.grid());
    const auto w = simpson_weights(j, tg.dt());
    for (int i = 0; i <= j; ++i) {
        if (w[i] == 0.0) continue;
        const SpectralField W = perp_laplacian_of_square(E.frames[i]);
        axpy_wave_sine(acc, W, tg.nodes[j] - tg.nodes[i], w[i]);
    }
    return project_real(from_spectral(acc), 1e-10, "wave_duhamel");
}

FieldSeries picard_map(const FieldSeries& E, const InitialData& data,
                       const SolverConfig& cfg) {
    E.validate();
    if (!E.grid().same_shape(data.E0.grid))
        throw std::invalid_argument("picard_map: series and data on different grids");
    const TimeGrid& tg = E.time;
    const SpectralField n0h = to_spectral(data.n0);
    const SpectralField n1h = to_spectral(data.n1);
    const SpectralField E0h = to_spectral(data.E0);
    const auto pipe = build_nonlinearity(E, n0h, n1h, cfg);

    FieldSeries out(tg, E.grid());
    out.frames[0] = data.E0; // Psi(E)(0) = E0, bit for bit
    for (int j = 1; j < tg.nt; ++j) {
        SpectralField acc(E.grid());
        axpy_schrodinger(acc, E0h, tg.nodes[j], 1.0);
        const auto w = simpson_weights(j, tg.dt());
        for (int i = 0; i <= j; ++i) {
            if (w[i] == 0.0) continue;
            // i(d_t + d_z)E + Lap_perp E = nE puts a factor -i on the
            // Duhamel integrand
            axpy_schrodinger(acc, pipe.Ghat[i], tg.nodes[j] - tg.nodes[i],
                             cd(0.0, -w[i]));
        }
        out.frames[j] = from_spectral(acc);
    }
    return out;
}

double mass(const ScalarField& E) {
    KahanSum acc;
    for (const cd& v : E.v) acc.add(std::norm(v));
    return acc.value() * E.grid.cell();
}

ScalarField reconstruct_n(const FieldSeries& E, const InitialData& data, double t) {
    ScalarField F = wave_forcing(data, t);
    const ScalarField L = wave_duhamel(E, t);
    for (std::size_t q = 0; q < F.v.size(); ++q) F.v[q] += L.v[q];
    return F;
}

SolutionBundle solve_picard(const InitialData& data, const SolverConfig& cfg) {
    cfg.validate();
    const Grid3& g = data.E0.grid;
    const SpectralField E0h = to_spectral(data.E0);

    SolverConfig attempt = cfg;
    const int max_halvings = cfg.adapt_horizon ? 4 : 0;
    std::string last_error;

    for (int halving = 0; halving <= max_halvings; ++halving) {
        const TimeGrid tg = make_time_grid(attempt.t_end, attempt.nt);
        FieldSeries E(tg, g);
        for (int j = 0; j < tg.nt; ++j) {
            SpectralField Ej(g);
            axpy_schrodinger(Ej, E0h, tg.nodes[j], 1.0);
            E.frames[j] = from_spectral(Ej);
        }
        E.frames[0] = data.E0;

        IterationDiagnostics diag;
        diag.achieved_t_end = attempt.t_end;
        diag.horizon_halvings = halving;
        int non_contracting = 0;
        bool aborted = false;

        for (int m = 1; m <= attempt.max_iters; ++m) {
            FieldSeries next;
            double inc = 0.0;
            try {
                next = picard_map(E, data, attempt);
                bool finite = true;
                for (const auto& fr : next.frames) {
                    for (const cd& v : fr.v)
                        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                            finite = false;
                            break;
                        }
                    if (!finite) break;
                }
                if (!finite) throw std::runtime_error("divergent iterate");
                inc = contraction_norm(series_difference(next, E), attempt.epsilon).value;
            } catch (const std::exception& e) {
                // overflow inside the nonlinearity is how a badly
                // non-contracting iteration surfaces
                diag.iterations = m;
                last_error = std::string("solve_picard: iteration blew up (") + e.what() +
                             ") at T=" + std::to_string(attempt.t_end);
                aborted = true;
                break;
            }
            diag.increments.push_back(inc);
            diag.iterations = m;
            if (diag.increments.size() >= 2) {
                const double prev = diag.increments[diag.increments.size() - 2];
                const double ratio = prev > 0 ? inc / prev
                                              : std::numeric_limits<double>::infinity();
                diag.ratios.push_back(ratio);
                if (ratio >= 1.0) ++non_contracting;
                else non_contracting = 0;
            }
            E = std::move(next);
            if (inc <= attempt.picard_tol) {
                diag.converged = true;
                break;
            }
            if (non_contracting >= 3) {
                aborted = true;
                break;
            }
        }

        if (!diag.converged) {
            std::ostringstream os;
            os << "solve_picard: " << (aborted ? "non-contraction" : "no convergence")
               << " at T=" << attempt.t_end
               << "; reduce the horizon or the data size";
            last_error = os.str();
            attempt.t_end *= 0.5;
            continue;
        }

        // converged: residual, conservation and boundary diagnostics
        const FieldSeries psiE = picard_map(E, data, attempt);
        diag.residual = contraction_norm(series_difference(E, psiE), attempt.epsilon).value;

        const double m0 = mass(E.frames[0]);
        for (const auto& f : E.frames) {
            if (m0 > 0)
                diag.mass_drift =
                    std::max(diag.mass_drift, std::fabs(mass(f) - m0) / m0);
            diag.boundary_fraction = std::max(
                diag.boundary_fraction,
                boundary_mass_fraction(f, attempt.monitor_x, attempt.monitor_y,
                                       attempt.monitor_z));
        }
        if (m0 > 0 && diag.boundary_fraction > attempt.boundary_tol) {
            std::ostringstream os;
            os << "solve_picard: boundary-mass fraction " << diag.boundary_fraction
               << " exceeds " << attempt.boundary_tol << " (box too small for the data)";
            throw std::runtime_error(os.str());
        }

        SolutionBundle bundle;
        bundle.diagnostics = diag;

        // reconstruct n on the same nodes from the converged iterate
        const auto W = square_series(E);
        const auto Lhat = wave_duhamel_series(W, tg);
        const SpectralField n0h = to_spectral(data.n0);
        const SpectralField n1h = to_spectral(data.n1);
        FieldSeries n(tg, g);
        for (int j = 0; j < tg.nt; ++j) {
            SpectralField nh = wave_forcing_hat(n0h, n1h, tg.nodes[j]);
            for (std::size_t q = 0; q < nh.m.size(); ++q) nh.m[q] += Lhat[j].m[q];
            n.frames[j] = project_real(from_spectral(nh), attempt.imag_tol, "reconstruct_n");
        }
        bundle.E = std::move(E);
        bundle.n = std::move(n);
        return bundle;
    }

    throw std::runtime_error(last_error.empty() ? "solve_picard: failed" : last_error);
}

FieldSeries reference_step(const InitialData& data, const SolverConfig& cfg, int refine,
                           bool include_self_interaction) {
    cfg.validate();
    if (refine < 1) throw std::invalid_argument("reference_step: refine must be >= 1");
    const Grid3& g = data.E0.grid;
    const TimeGrid coarse = make_time_grid(cfg.t_end, cfg.nt);
    const int nfine = refine * (cfg.nt - 1);
    const double dt = cfg.t_end / nfine;

    const SpectralField n0h = to_spectral(data.n0);
    const SpectralField n1h = to_spectral(data.n1);

    FieldSeries out(coarse, g);
    out.frames[0] = data.E0;

    SpectralField Ehat = to_spectral(data.E0);
    std::vector<SpectralField> W; // Lap_perp(|E|^2) at past fine nodes
    W.reserve(nfine + 1);
    W.push_back(perp_laplacian_of_square(data.E0));
    const double m0 = mass(data.E0);

    for (int step = 0; step < nfine; ++step) {
        const double t_mid = (step + 0.5) * dt;

        // potential at the midpoint: F + trapezoid quadrature of the wave
        // Duhamel term over the fine history (the integrand vanishes at the
        // endpoint since N(0) = 0)
        SpectralField nh = wave_forcing_hat(n0h, n1h, t_mid);
        if (include_self_interaction) {
            for (int i = 0; i <= step; ++i) {
                double w;
                if (i == 0) w = (step == 0) ? 0.25 * dt : 0.5 * dt;
                else if (i == step) w = 0.75 * dt;
                else w = dt;
                axpy_wave_sine(nh, W[i], t_mid - i * dt, w);
            }
        }
        const ScalarField n_mid =
            project_real(from_spectral(nh), cfg.imag_tol, "reference_step(n)");

        schrodinger_group_inplace(Ehat, 0.5 * dt);
        ScalarField A = from_spectral(Ehat);
        for (std::size_t q = 0; q < A.v.size(); ++q)
            A.v[q] *= std::polar(1.0, -dt * n_mid.v[q].real());
        Ehat = to_spectral(A);
        schrodinger_group_inplace(Ehat, 0.5 * dt);

        ScalarField Ecur = from_spectral(Ehat);
        if (m0 > 0) {
            const double drift = std::fabs(mass(Ecur) - m0) / m0;
            if (drift > 1e-6)
                throw std::runtime_error("reference_step: step rejected, mass drift " +
                                         std::to_string(drift));
        }
        W.push_back(perp_laplacian_of_square(Ecur));
        if ((step + 1) % refine == 0) out.frames[(step + 1) / refine] = std::move(Ecur);
    }
    return out;
}

} // namespace dzk

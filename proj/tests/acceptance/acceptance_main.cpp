// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Grids stay at desk scale (<= 128^3 points per field) and every tolerance
// is pinned from thresholds.hpp.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dzk/bump.hpp"
#include "dzk/counterexample.hpp"
#include "dzk/dealias.hpp"
#include "dzk/estimates.hpp"
#include "dzk/fft.hpp"
#include "dzk/kernel_lab.hpp"
#include "dzk/multiplier.hpp"
#include "dzk/norms.hpp"
#include "dzk/propagators.hpp"
#include "dzk/quadrature.hpp"
#include "dzk/runner.hpp"
#include "dzk/solver.hpp"
#include "dzk/thresholds.hpp"

using namespace dzk;
namespace th = dzk::thresholds;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void report(int n, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << n << ": " << name
              << "  (" << detail << ")" << std::endl;
    if (!ok) ++failures;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

double max_mode_dev(const SpectralField& a, const SpectralField& b) {
    double dev = 0, scale = 0;
    for (std::size_t i = 0; i < a.m.size(); ++i) {
        dev = std::max(dev, std::abs(a.m[i] - b.m[i]));
        scale = std::max(scale, std::abs(b.m[i]));
    }
    return scale > 0 ? dev / scale : 0.0;
}

// ---- criterion 1: exact discrete identities ------------------------------

void criterion1() {
    const auto t0 = clock_type::now();
    const Grid3 g = make_grid(64, 64, 64, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    const double times[3] = {0.1, 1.0, 5.0};
    double dev_iso = 0, dev_group = 0, dev_trig = 0, dev_le456 = 0;

    for (int m = 0; m < 100; ++m) {
        const SpectralField F = to_spectral(random_bandlimited(g, 2024, m, 8, 0.5));
        const double n0 = l2_norm(F);
        const double t = times[m % 3];

        SpectralField Et = F;
        schrodinger_group_inplace(Et, t);
        dev_iso = std::max(dev_iso, std::fabs(l2_norm(Et) / n0 - 1.0));

        const double s = times[(m + 1) % 3];
        SpectralField Ets = Et;
        schrodinger_group_inplace(Ets, s);
        SpectralField Esum = F;
        schrodinger_group_inplace(Esum, t + s);
        dev_group = std::max(dev_group, max_mode_dev(Ets, Esum));

        SpectralField Ns = F, Nc = F;
        wave_sine_inplace(Ns, t);
        wave_cosine_inplace(Nc, t);
        SpectralField DNs = Ns;
        transform_modes(DNs, [](double k1, double k2, double) {
            return perp_sqrt_symbol(k1, k2);
        });
        const double ns = l2_norm(Ns), nc = l2_norm(Nc), nd = l2_norm(DNs);
        dev_trig = std::max(dev_trig,
                            std::fabs((nc * nc + nd * nd) / (n0 * n0) - 1.0));
        // LE4-LE6 hold with constant exactly 1 on the grid
        dev_le456 = std::max({dev_le456, ns / (t * n0) - 1.0, nc / n0 - 1.0,
                              nd / n0 - 1.0});
    }
    const double el = seconds_since(t0);
    const bool ok = dev_iso <= th::exact_identity && dev_group <= th::exact_identity &&
                    dev_trig <= th::exact_identity && dev_le456 <= th::exact_identity &&
                    el < 60.0;
    report(1, "exact identities (isometry, group law, wave energy, LE4-LE6)", ok,
           "iso " + fmt(dev_iso) + ", group " + fmt(dev_group) + ", trig " +
               fmt(dev_trig) + ", le456 " + fmt(dev_le456) + ", " + fmt(el) + " s");
}

// ---- criterion 2: dispersive decay ---------------------------------------

void criterion2() {
    const Grid3 g = make_grid(512, 512, 4, 64.0, 64.0, 2 * M_PI);
    FamilySpec fam;
    fam.kind = FamilyKind::Gaussian;
    fam.count = 1;
    fam.seed = 2024;
    fam.sigma_x = fam.sigma_y = 0.15;
    fam.sigma_z = -1.0;
    std::vector<double> ts;
    for (int i = 0; i < 9; ++i) ts.push_back(0.05 * std::pow(16.0, i / 8.0));

    const double inf = std::numeric_limits<double>::infinity();
    const DecayReport ri = check_decay(inf, g, fam, ts, 5e-3);
    const DecayReport r4 = check_decay(4.0, g, fam, ts, 5e-3);

    const double di = std::fabs(ri.fit.slope - ri.expected_slope) / 1.0;
    const double d4 = std::fabs(r4.fit.slope - r4.expected_slope) / 0.5;
    const bool ok = di <= th::decay_slope_rel_inf && d4 <= th::decay_slope_rel_p4 &&
                    ri.max_kernel_const <= 1.0 + th::decay_const_margin;
    report(2, "dispersive decay exponents and kernel constant", ok,
           "slope_inf " + fmt(ri.fit.slope) + ", slope_4 " + fmt(r4.fit.slope) +
               ", 4pi*t*const " + fmt(ri.max_kernel_const));
}

// ---- criterion 3: Strichartz ----------------------------------------------

void criterion3() {
    const Grid3 g = make_grid(64, 64, 64, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    const Grid3 g2 = make_grid(128, 128, 128, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    FamilySpec fam;
    fam.count = 50;
    fam.band = 6;
    fam.seed = 2024;
    const double inf = std::numeric_limits<double>::infinity();
    const double pairs[3][2] = {{inf, 2.0}, {4.0, 4.0}, {8.0 / 3.0, 8.0}};

    bool ok = true;
    std::string detail;
    for (const auto& qp : pairs) {
        const double q = qp[0], p = qp[1];
        RatioReport rep = check_strichartz(q, p, g, fam, 0.5, 17);
        const double mom = rep.max_ratio / rep.median_ratio;

        FamilySpec rs;
        rs.kind = FamilyKind::Rescaled;
        rs.band = 4;
        rs.band_z = 1;
        rs.seed = 2024;
        rs.scales = {1.0, 2.0, 4.0};
        const SlopeFit fit = strichartz_rescaling(q, p, g, rs, 0.8, 17);

        double drift = 0.0;
        if (p != 2.0) { // the endpoint is exact unitarity on every grid
            FamilySpec sub = fam;
            sub.count = 8;
            RatioReport base = check_strichartz(q, p, g, sub, 0.5, 17);
            RatioReport fine = check_strichartz(q, p, g2, sub, 0.5, 17);
            drift = std::fabs(fine.max_ratio - base.max_ratio) / base.max_ratio;
        }

        const bool pair_ok = std::isfinite(rep.max_ratio) &&
                             mom < th::strichartz_max_over_median &&
                             std::fabs(fit.slope) <= th::rescaling_slope_abs &&
                             drift <= th::refinement_rel;
        ok = ok && pair_ok;
        detail += "(p=" + fmt(p) + ": m/m " + fmt(mom) + ", rs " + fmt(fit.slope) +
                  ", drift " + fmt(drift) + ") ";
    }
    report(3, "Strichartz ratios, rescaling slope, refinement", ok, detail);
}

// ---- criterion 4: smoothing and maximal ------------------------------------

void criterion4() {
    const Grid3 g = make_grid(64, 64, 64, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    const Grid3 g2 = make_grid(128, 128, 128, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    FamilySpec fam;
    fam.count = 10;
    fam.band = 6;
    fam.seed = 2024;
    const double T = 0.5;
    const int nt = 17;

    bool ok = true;
    std::string detail;

    auto stability_and_symmetry = [&](const std::string& label, auto&& fn,
                                      int sub_count) {
        FamilySpec sub = fam;
        sub.count = sub_count;
        RatioReport base = fn(g, sub, false);
        RatioReport fine = fn(g2, sub, false);
        const double drift =
            std::fabs(fine.max_ratio - base.max_ratio) / base.max_ratio;

        FamilySpec swapped = sub;
        swapped.swapped = true;
        RatioReport yrep = fn(g, swapped, true);
        double sym = 0;
        for (std::size_t i = 0; i < base.rows.size(); ++i)
            sym = std::max(sym, std::fabs(base.rows[i].ratio - yrep.rows[i].ratio) /
                                    base.rows[i].ratio);

        const bool this_ok = std::isfinite(base.max_ratio) &&
                             drift <= th::refinement_rel && sym <= th::symmetry_tol;
        ok = ok && this_ok;
        detail += "(" + label + ": drift " + fmt(drift) + ", sym " + fmt(sym) + ") ";
    };

    stability_and_symmetry("LE1",
                           [&](const Grid3& gg, const FamilySpec& ff, bool yv) {
                               return check_smoothing(SmoothingVariant::Homogeneous, gg,
                                                      ff, T, nt, yv);
                           },
                           8);
    stability_and_symmetry("LE2",
                           [&](const Grid3& gg, const FamilySpec& ff, bool yv) {
                               return check_smoothing(SmoothingVariant::InhomL2, gg, ff,
                                                      T, nt, yv);
                           },
                           4);
    stability_and_symmetry("LE3",
                           [&](const Grid3& gg, const FamilySpec& ff, bool yv) {
                               return check_smoothing(SmoothingVariant::InhomLinf, gg,
                                                      ff, T, nt, yv);
                           },
                           4);
    stability_and_symmetry("maximal",
                           [&](const Grid3& gg, const FamilySpec& ff, bool yv) {
                               return check_maximal(2.0, gg, ff, T, nt, yv);
                           },
                           8);
    report(4, "smoothing and maximal: finite, refinement-stable, x<->y symmetric", ok,
           detail);
}

// ---- criterion 5: sharpness -------------------------------------------------

void criterion5() {
    const auto t0 = clock_type::now();
    CounterexampleConfig cfg; // delta = 0.1, 64 points per axis
    const std::vector<int> ks{2, 3, 4, 5};
    const CounterexampleReport r0 = counterexample_growth(0.0, ks, cfg);
    const CounterexampleReport r2 = counterexample_growth(2.0, ks, cfg);
    const double el = seconds_since(t0);
    const bool ok =
        std::fabs(r0.lhs_fit.slope - th::sharpness_lhs_slope) <= th::sharpness_lhs_tol &&
        std::fabs(r0.ratio_fit.slope - th::sharpness_h0_slope) <= th::sharpness_h0_tol &&
        r2.ratio_fit.slope <= th::sharpness_h2_slope_max && el < 600.0;
    report(5, "sharpness growth of the annulus data", ok,
           "lhs slope " + fmt(r0.lhs_fit.slope) + ", H0 ratio slope " +
               fmt(r0.ratio_fit.slope) + ", H2 ratio slope " + fmt(r2.ratio_fit.slope) +
               ", " + fmt(el) + " s");
}

// ---- criterion 6: kernel envelope -------------------------------------------

void criterion6() {
    bool ok = true;
    std::string detail;
    for (int k = 2; k <= 6; ++k) {
        const double T = default_kernel_horizon(k);
        const KernelReport rep =
            kernel_envelope(k, T, default_kernel_x1_list(), default_kernel_t_list(T));
        double worst = 0; // pointwise bound with the single fitted constant
        for (const auto& row : rep.pointwise.rows)
            worst = std::max(worst, row.lhs / (rep.c_fit * row.rhs));
        const bool this_ok =
            std::isfinite(rep.c_fit) && worst <= 1.0 + 1e-12 &&
            std::fabs(rep.tail_fit.slope - th::kernel_tail_slope) <= th::kernel_tail_tol;
        ok = ok && this_ok;
        detail += "k" + std::to_string(k) + ": " + fmt(rep.tail_fit.slope) + " ";
    }
    report(6, "kernel envelope tail exponents and pointwise bound", ok, detail);
}

// ---- criterion 7: dyadic calculus -------------------------------------------

void criterion7() {
    const Grid3 g = make_grid(64, 64, 64, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    // partition of unity on every mode with all |k_i| < 2^K
    const int K = 4;
    double dev = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l) {
                if (std::fabs(g.kx[i]) >= 16.0 || std::fabs(g.ky[j]) >= 16.0 ||
                    std::fabs(g.kz[l]) >= 16.0)
                    continue;
                double sum = 0;
                for (int k = 0; k <= K; ++k)
                    sum += dyadic_annulus_weight(k, g.kx[i], g.ky[j], g.kz[l]);
                dev = std::max(dev, std::fabs(sum - 1.0));
            }

    bool slopes_ok = true;
    std::string detail = "partition dev " + fmt(dev) + "; slopes ";
    for (double s : {0.0, 1.0, 2.0}) {
        FamilySpec fam;
        fam.count = 12;
        fam.seed = 2024;
        fam.band = 31;
        fam.spectral_slope = s + 1.5;
        const SlopeFit fit = check_bk_bound(s, {1, 2, 3, 4}, g, fam);
        slopes_ok = slopes_ok && std::fabs(fit.slope + s) <= th::bk_slope_tol;
        detail += fmt(fit.slope) + " ";
    }
    report(7, "dyadic partition of unity and projection decay rates",
           dev <= th::partition_tol && slopes_ok, detail);
}

// ---- criterion 8: solver -----------------------------------------------------

void criterion8() {
    const auto t0 = clock_type::now();
    const Grid3 g = make_grid(64, 64, 64, 2 * M_PI, 2 * M_PI, 2 * M_PI);

    auto gauss = [&](const Grid3& gg, double sx, double sy, double sz, double amp) {
        FamilySpec spec;
        spec.kind = FamilyKind::Gaussian;
        spec.sigma_x = sx;
        spec.sigma_y = sy;
        spec.sigma_z = sz;
        spec.amplitude = amp;
        return gaussian_field(gg, spec);
    };

    SolverConfig cfg;
    cfg.t_end = 0.1;
    cfg.nt = 17;
    cfg.picard_tol = 1e-8;
    cfg.max_iters = 25;

    const double A = 0.35;
    const InitialData data =
        make_initial_data(gauss(g, 0.5, 0.5, 0.5, A), gauss(g, 0.6, 0.6, 0.6, 0.5 * A),
                          gauss(g, 0.6, 0.6, 0.6, 0.25 * A));
    const SolutionBundle sol = solve_picard(data, cfg);

    double worst_ratio = 0; // contraction ratios from iteration 2 on
    for (double r : sol.diagnostics.ratios) worst_ratio = std::max(worst_ratio, r);

    // cross-validation against the splitting integrator
    const FieldSeries ref = reference_step(data, cfg, 4);
    ScalarField d(g);
    for (std::size_t q = 0; q < d.v.size(); ++q)
        d.v[q] = sol.E.frames.back().v[q] - ref.frames.back().v[q];
    const double xval = l2_norm(d) / l2_norm(sol.E.frames.back());

    // n(T): real to tolerance, finite H^2
    const ScalarField nT = sol.n.frames.back();
    double n_imag = 0, n_scale = 0;
    for (const cd& v : nT.v) {
        n_imag = std::max(n_imag, std::fabs(v.imag()));
        n_scale = std::max(n_scale, std::abs(v));
    }
    const double nh2 = sobolev_norm(nT, 2.0).value;

    // z-independence preservation (z-constant data; exact periodization in z)
    SolverConfig zcfg = cfg;
    zcfg.monitor_z = false;
    const InitialData zdata =
        make_initial_data(gauss(g, 0.5, 0.5, -1, A), gauss(g, 0.6, 0.6, -1, 0.5 * A),
                          gauss(g, 0.6, 0.6, -1, 0.25 * A));
    const SolutionBundle zsol = solve_picard(zdata, zcfg);
    double zdev = 0;
    for (const auto& fr : zsol.E.frames)
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                for (int l = 1; l < g.nz; ++l)
                    zdev = std::max(zdev, std::abs(fr.at(i, j, l) - fr.at(i, j, 0)));

    // x <-> y symmetry: swapped data gives the swapped solution
    const InitialData adata =
        make_initial_data(gauss(g, 0.45, 0.62, 0.5, A), gauss(g, 0.55, 0.7, 0.6, 0.5 * A),
                          gauss(g, 0.55, 0.7, 0.6, 0.25 * A));
    const InitialData sdata = make_initial_data(
        swap_xy(adata.E0), swap_xy(adata.n0), swap_xy(adata.n1));
    const SolutionBundle sa = solve_picard(adata, cfg);
    const SolutionBundle sb = solve_picard(sdata, cfg);
    double sdev = 0;
    for (int j = 0; j < sa.E.nt(); ++j) {
        const ScalarField sw = swap_xy(sa.E.frames[j]);
        for (std::size_t q = 0; q < sw.v.size(); ++q)
            sdev = std::max(sdev, std::abs(sw.v[q] - sb.E.frames[j].v[q]));
    }

    const double el = seconds_since(t0);
    const bool ok = sol.diagnostics.converged && worst_ratio <= th::solver_contraction_max &&
                    sol.diagnostics.residual <= 2.0 * cfg.picard_tol &&
                    sol.diagnostics.mass_drift <= th::solver_mass_drift &&
                    xval <= th::solver_xval_rel && zdev <= th::solver_symmetry &&
                    sdev <= th::solver_symmetry && n_imag <= th::solver_n_imag * n_scale &&
                    std::isfinite(nh2) && el < 300.0;
    report(8, "Picard solver fixed point, conservation, cross-validation, symmetry", ok,
           "ratio " + fmt(worst_ratio) + ", res " + fmt(sol.diagnostics.residual) +
               ", drift " + fmt(sol.diagnostics.mass_drift) + ", xval " + fmt(xval) +
               ", z " + fmt(zdev) + ", swap " + fmt(sdev) + ", nH2 " + fmt(nh2) + ", " +
               fmt(el) + " s");
}

// ---- criterion 9: fractional Leibniz ----------------------------------------

void criterion9() {
    const Grid3 g = make_grid(64, 64, 64, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    const Grid3 g2 = make_grid(128, 128, 128, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    FamilySpec fam;
    fam.count = 6;
    fam.band = 6;
    fam.seed = 2024;

    // constant-g probe collapses identically
    const ScalarField f = make_family_member(g, fam, 0);
    ScalarField c(g);
    for (auto& v : c.v) v = cd(0.7, 0.0);
    const MultiplierSpec dr{[](double k1, double, double) {
        return cd(riesz_symbol(k1, 0.5), 0.0);
    }};
    const ScalarField t1 = apply_multiplier(dealiased_product(f, c), dr);
    const ScalarField t2 = dealiased_product(f, apply_multiplier(c, dr));
    const ScalarField t3 = dealiased_product(apply_multiplier(f, dr), c);
    ScalarField comm(g);
    for (std::size_t q = 0; q < comm.v.size(); ++q)
        comm.v[q] = t1.v[q] - t2.v[q] - t3.v[q];
    const double const_g = l2_norm(comm) / l2_norm(t1);

    RatioReport base =
        check_leibniz_commutator(0.5, 0.25, 0.25, 4, 4, 4, 4, g, fam);
    RatioReport fine =
        check_leibniz_commutator(0.5, 0.25, 0.25, 4, 4, 4, 4, g2, fam);
    const double drift = std::fabs(fine.max_ratio - base.max_ratio) / base.max_ratio;

    const bool ok = const_g <= th::leibniz_const_g && std::isfinite(base.max_ratio) &&
                    drift <= th::refinement_rel;
    report(9, "fractional Leibniz commutator", ok,
           "const-g " + fmt(const_g) + ", max ratio " + fmt(base.max_ratio) +
               ", drift " + fmt(drift));
}

// ---- criterion 10: reproducibility ------------------------------------------

void criterion10() {
    namespace fs = std::filesystem;
    const std::string base =
        (fs::temp_directory_path() / "dzk_acceptance_repro").string();
    fs::remove_all(base);

    ExperimentConfig cfg = parse_config(
        "estimate.cases = unitarity, strichartz\n"
        "grid.nx = 32\ngrid.ny = 32\ngrid.nz = 48\n"
        "family.count = 5\nfamily.band = 4\nrun.seed = 77\ntime.nt = 9\n");
    cfg.output_dir = base;

    const RunResult r1 = run(cfg);
    const RunResult r2 = run(cfg);
    bool ok = r1.ok && r2.ok && r1.records.size() == r2.records.size();
    auto slurp = [](const std::string& p) {
        std::ifstream is(p, std::ios::binary);
        std::stringstream ss;
        ss << is.rdbuf();
        return ss.str();
    };
    int compared = 0;
    for (std::size_t i = 0; ok && i < r1.records.size(); ++i) {
        const auto& a1 = r1.records[i].artifacts;
        const auto& a2 = r2.records[i].artifacts;
        ok = a1.size() == a2.size();
        for (std::size_t j = 0; ok && j < a1.size(); ++j) {
            ok = slurp(a1[j]) == slurp(a2[j]);
            ++compared;
        }
    }
    fs::remove_all(base);
    report(10, "identical (config, seed) gives byte-identical reports", ok,
           std::to_string(compared) + " artifacts compared");
}

} // namespace

int main() {
    const auto t0 = clock_type::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: " + std::to_string(failures) +
                                      " criterion(s) failed")
              << " in " << fmt(seconds_since(t0)) << " s" << std::endl;
    return failures == 0 ? 0 : 1;
}

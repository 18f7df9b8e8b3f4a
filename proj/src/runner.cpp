#include "dzk/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dzk/counterexample.hpp"
#include "dzk/dealias.hpp"
#include "dzk/estimates.hpp"
#include "dzk/fft.hpp"
#include "dzk/field_io.hpp"
#include "dzk/kernel_lab.hpp"
#include "dzk/propagators.hpp"
#include "dzk/solver.hpp"
#include "dzk/thresholds.hpp"

namespace dzk {

namespace fs = std::filesystem;

namespace {

std::string save_ratio(const RatioReport& rep, const std::string& dir,
                       const std::string& name) {
    const std::string path = versioned_path(dir + "/" + name + ".csv");
    write_ratio_csv(rep, path);
    return path;
}

std::string save_slope(const SlopeFit& fit, const std::string& dir,
                       const std::string& name) {
    const std::string path = versioned_path(dir + "/" + name + ".csv");
    write_slope_csv(fit, path);
    return path;
}

double max_abs_dev_from_one(const RatioReport& rep) {
    double dev = 0.0;
    for (const auto& row : rep.rows)
        if (!row.degenerate) dev = std::max(dev, std::fabs(row.ratio - 1.0));
    return dev;
}

// worst relative disagreement of per-input ratios between two reports
double ratio_disagreement(const RatioReport& a, const RatioReport& b) {
    double dev = 0.0;
    const std::size_t n = std::min(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.rows[i].degenerate || b.rows[i].degenerate) continue;
        const double scale = std::max(std::fabs(a.rows[i].ratio), 1e-300);
        dev = std::max(dev, std::fabs(a.rows[i].ratio - b.rows[i].ratio) / scale);
    }
    return dev;
}

Grid3 config_grid(const ExperimentConfig& cfg) {
    return make_grid(cfg.nx, cfg.ny, cfg.nz, cfg.lx, cfg.ly, cfg.lz);
}

Grid3 refined_grid(const ExperimentConfig& cfg) {
    return make_grid(2 * cfg.nx, 2 * cfg.ny, 2 * cfg.nz, cfg.lx, cfg.ly, cfg.lz);
}

// the dispersive-decay case needs room for the spreading Gaussian; the
// z-axis factors out of L^p_xy L^2_z, so it stays coarse
Grid3 decay_grid() { return make_grid(512, 512, 4, 64.0, 64.0, 2.0 * M_PI); }

FamilySpec decay_family(const ExperimentConfig& cfg) {
    FamilySpec fam;
    fam.kind = FamilyKind::Gaussian;
    fam.count = 1;
    fam.seed = cfg.seed;
    fam.sigma_x = 0.15;
    fam.sigma_y = 0.15;
    fam.sigma_z = -1.0; // constant profile in z
    fam.amplitude = 1.0;
    return fam;
}

std::vector<double> decay_times() {
    std::vector<double> ts;
    for (int i = 0; i < 9; ++i) ts.push_back(0.05 * std::pow(0.8 / 0.05, i / 8.0));
    return ts;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

struct MetricsJson {
    std::ostringstream os;
    bool first = true;
    MetricsJson() { os << '{'; }
    void add(const std::string& k, double v) {
        if (!first) os << ',';
        first = false;
        os << '"' << k << "\":" << fmt(v);
    }
    void add(const std::string& k, const std::string& v) {
        if (!first) os << ',';
        first = false;
        os << '"' << k << "\":\"" << v << '"';
    }
    std::string str() {
        os << '}';
        return os.str();
    }
};

ReportRecord case_unitarity(const ExperimentConfig& cfg, const std::string& dir) {
    const std::vector<double> times{0.1, 1.0, 5.0};
    RatioReport rep = check_unitarity(config_grid(cfg), cfg.family, times);
    ReportRecord rec;
    rec.case_id = "unitarity";
    rec.artifacts.push_back(save_ratio(rep, dir, "unitarity"));
    const double dev = max_abs_dev_from_one(rep);
    MetricsJson m;
    m.add("max_abs_dev", dev);
    rec.metrics_json = m.str();
    rec.status = dev <= thresholds::exact_identity ? "pass" : "fail";
    return rec;
}

ReportRecord case_decay(const ExperimentConfig& cfg, const std::string& dir) {
    const Grid3 g = decay_grid();
    const FamilySpec fam = decay_family(cfg);
    const auto times = decay_times();
    const double inf = std::numeric_limits<double>::infinity();

    const DecayReport rinf = check_decay(inf, g, fam, times, cfg.boundary_threshold);
    const DecayReport r4 = check_decay(4.0, g, fam, times, cfg.boundary_threshold);

    ReportRecord rec;
    rec.case_id = "decay";
    rec.artifacts.push_back(save_slope(rinf.fit, dir, "decay-pinf"));
    rec.artifacts.push_back(save_slope(r4.fit, dir, "decay-p4"));

    const double dev_inf = std::fabs(rinf.fit.slope - rinf.expected_slope) /
                           std::fabs(rinf.expected_slope);
    const double dev_4 =
        std::fabs(r4.fit.slope - r4.expected_slope) / std::fabs(r4.expected_slope);
    const bool const_ok = rinf.max_kernel_const <= 1.0 + thresholds::decay_const_margin;

    MetricsJson m;
    m.add("slope_pinf", rinf.fit.slope);
    m.add("slope_p4", r4.fit.slope);
    m.add("kernel_const_times_4pi_t", rinf.max_kernel_const);
    m.add("boundary_fraction", std::max(rinf.boundary_fraction, r4.boundary_fraction));
    rec.metrics_json = m.str();
    rec.status = (dev_inf <= thresholds::decay_slope_rel_inf &&
                  dev_4 <= thresholds::decay_slope_rel_p4 && const_ok)
                     ? "pass"
                     : "fail";
    return rec;
}

ReportRecord case_strichartz(const ExperimentConfig& cfg, const std::string& dir) {
    const Grid3 g = config_grid(cfg);
    RatioReport rep = check_strichartz(cfg.q, cfg.p, g, cfg.family, cfg.t_end, cfg.nt);

    FamilySpec rescaled = cfg.family;
    rescaled.kind = FamilyKind::Rescaled;
    rescaled.band_z = 1;
    rescaled.scales = {1.0, 2.0, 4.0};
    // keep the lambda = 4 remap on the grid
    rescaled.band = std::min(cfg.family.band, (g.nx / 2 - 1) / 4);
    rescaled.band = std::max(rescaled.band, 1);
    if (16 >= g.nz / 2)
        throw std::invalid_argument("strichartz rescaling: nz too small for lambda = 4");
    const SlopeFit fit = strichartz_rescaling(cfg.q, cfg.p, g, rescaled, cfg.t_end, cfg.nt);

    ReportRecord rec;
    rec.case_id = "strichartz";
    rec.artifacts.push_back(save_ratio(rep, dir, "strichartz"));
    rec.artifacts.push_back(save_slope(fit, dir, "strichartz-rescaling"));

    const double mom = rep.median_ratio > 0 ? rep.max_ratio / rep.median_ratio : 1.0;
    MetricsJson m;
    m.add("max_ratio", rep.max_ratio);
    m.add("max_over_median", mom);
    m.add("rescaling_slope", fit.slope);
    rec.metrics_json = m.str();
    rec.status = (std::isfinite(rep.max_ratio) &&
                  mom < thresholds::strichartz_max_over_median &&
                  std::fabs(fit.slope) <= thresholds::rescaling_slope_abs)
                     ? "pass"
                     : "fail";
    return rec;
}

template <class CheckFn>
ReportRecord ratio_case_with_stability(const std::string& id, const ExperimentConfig& cfg,
                                       const std::string& dir, CheckFn&& fn) {
    const Grid3 g = config_grid(cfg);
    RatioReport rep = fn(g, cfg.family, false);
    ReportRecord rec;
    rec.case_id = id;
    rec.artifacts.push_back(save_ratio(rep, dir, id));

    // refinement stability on a subfamily
    FamilySpec sub = cfg.family;
    sub.count = std::min(sub.count, 8);
    RatioReport base = fn(g, sub, false);
    RatioReport fine = fn(refined_grid(cfg), sub, false);
    const double drift =
        base.max_ratio > 0 ? std::fabs(fine.max_ratio - base.max_ratio) / base.max_ratio
                           : 0.0;

    // x <-> y symmetry on swapped inputs
    FamilySpec swapped = sub;
    swapped.swapped = true;
    RatioReport yrep = fn(g, swapped, true);
    const double sym = ratio_disagreement(base, yrep);

    MetricsJson m;
    m.add("max_ratio", rep.max_ratio);
    m.add("median_ratio", rep.median_ratio);
    m.add("refinement_drift", drift);
    m.add("xy_symmetry_dev", sym);
    rec.metrics_json = m.str();
    rec.status = (std::isfinite(rep.max_ratio) && drift <= thresholds::refinement_rel &&
                  sym <= thresholds::symmetry_tol)
                     ? "pass"
                     : "fail";
    return rec;
}

ReportRecord case_smoothing(const std::string& id, SmoothingVariant variant,
                            const ExperimentConfig& cfg, const std::string& dir) {
    return ratio_case_with_stability(
        id, cfg, dir, [&](const Grid3& g, const FamilySpec& fam, bool yv) {
            return check_smoothing(variant, g, fam, cfg.t_end, cfg.nt, yv);
        });
}

ReportRecord case_maximal(const ExperimentConfig& cfg, const std::string& dir) {
    return ratio_case_with_stability(
        "maximal", cfg, dir, [&](const Grid3& g, const FamilySpec& fam, bool yv) {
            return check_maximal(cfg.s, g, fam, cfg.t_end, cfg.nt, yv);
        });
}

ReportRecord case_wave_maximal(const std::string& id, WaveMaximalVariant variant,
                               const ExperimentConfig& cfg, const std::string& dir) {
    return ratio_case_with_stability(
        id, cfg, dir, [&](const Grid3& g, const FamilySpec& fam, bool yv) {
            return check_wave_maximal(variant, g, fam, cfg.t_end, cfg.nt, yv);
        });
}

ReportRecord case_kernel(const ExperimentConfig& cfg, const std::string& dir) {
    ReportRecord rec;
    rec.case_id = "kernel-envelope";
    bool ok = true;
    MetricsJson m;
    for (int k : cfg.kernel_k_list) {
        const double T = default_kernel_horizon(k);
        const KernelReport rep = kernel_envelope(k, T, default_kernel_x1_list(),
                                                 default_kernel_t_list(T));
        rec.artifacts.push_back(
            save_ratio(rep.pointwise, dir, "kernel-k" + std::to_string(k)));
        rec.artifacts.push_back(
            save_slope(rep.tail_fit, dir, "kernel-tail-k" + std::to_string(k)));
        m.add("tail_slope_k" + std::to_string(k), rep.tail_fit.slope);
        m.add("c_fit_k" + std::to_string(k), rep.c_fit);
        ok = ok && std::isfinite(rep.c_fit) &&
             std::fabs(rep.tail_fit.slope - thresholds::kernel_tail_slope) <=
                 thresholds::kernel_tail_tol;
    }
    rec.metrics_json = m.str();
    rec.status = ok ? "pass" : "fail";
    return rec;
}

ReportRecord case_leibniz(const ExperimentConfig& cfg, const std::string& dir) {
    const Grid3 g = config_grid(cfg);
    RatioReport rep = check_leibniz_commutator(cfg.rho, cfg.rho1, cfg.rho2, cfg.lp1,
                                               cfg.lp2, cfg.lq1, cfg.lq2, g, cfg.family);
    // constant-g probe: the commutator collapses identically
    const ScalarField f = make_family_member(g, cfg.family, 0);
    ScalarField c(g);
    for (auto& v : c.v) v = cd(0.7, 0.0);
    const MultiplierSpec dr{[&](double k1, double, double) {
        return cd(riesz_symbol(k1, cfg.rho), 0.0);
    }};
    const ScalarField t1 = apply_multiplier(dealiased_product(f, c), dr);
    const ScalarField t2 = dealiased_product(f, apply_multiplier(c, dr));
    const ScalarField t3 = dealiased_product(apply_multiplier(f, dr), c);
    ScalarField comm(g);
    for (std::size_t q = 0; q < comm.v.size(); ++q)
        comm.v[q] = t1.v[q] - t2.v[q] - t3.v[q];
    const double scale = std::max(l2_norm(t1), 1e-300);
    const double const_g_residual = l2_norm(comm) / scale;

    ReportRecord rec;
    rec.case_id = "leibniz-commutator";
    rec.artifacts.push_back(save_ratio(rep, dir, "leibniz-commutator"));
    MetricsJson m;
    m.add("max_ratio", rep.max_ratio);
    m.add("const_g_residual", const_g_residual);
    rec.metrics_json = m.str();
    rec.status = (std::isfinite(rep.max_ratio) &&
                  const_g_residual <= thresholds::leibniz_const_g)
                     ? "pass"
                     : "fail";
    return rec;
}

ReportRecord case_bk(const ExperimentConfig& cfg, const std::string& dir) {
    const Grid3 g = config_grid(cfg);
    ReportRecord rec;
    rec.case_id = "bk-bound";
    bool ok = true;
    MetricsJson m;
    for (double s : {0.0, 1.0, 2.0}) {
        FamilySpec fam = cfg.family;
        fam.spectral_slope = s + 1.5; // equal H^s mass per dyadic shell
        fam.band = g.nx / 2 - 1;
        const SlopeFit fit = check_bk_bound(s, cfg.bk_k_list, g, fam);
        rec.artifacts.push_back(save_slope(fit, dir, "bk-bound-s" + fmt(s)));
        m.add("slope_s" + fmt(s), fit.slope);
        ok = ok && std::fabs(fit.slope + s) <= thresholds::bk_slope_tol;
    }
    rec.metrics_json = m.str();
    rec.status = ok ? "pass" : "fail";
    return rec;
}

ReportRecord case_counterexample(const ExperimentConfig& cfg, const std::string& dir) {
    CounterexampleConfig ccfg;
    ccfg.delta = cfg.delta;
    const CounterexampleReport r0 = counterexample_growth(0.0, cfg.k_list, ccfg);
    const CounterexampleReport r2 = counterexample_growth(2.0, cfg.k_list, ccfg);

    ReportRecord rec;
    rec.case_id = "counterexample";
    rec.artifacts.push_back(save_slope(r0.lhs_fit, dir, "counterexample-lhs"));
    rec.artifacts.push_back(save_slope(r0.ratio_fit, dir, "counterexample-ratio-h0"));
    rec.artifacts.push_back(save_slope(r2.ratio_fit, dir, "counterexample-ratio-h2"));

    MetricsJson m;
    m.add("lhs_slope", r0.lhs_fit.slope);
    m.add("ratio_h0_slope", r0.ratio_fit.slope);
    m.add("ratio_h2_slope", r2.ratio_fit.slope);
    rec.metrics_json = m.str();
    const bool ok =
        std::fabs(r0.lhs_fit.slope - thresholds::sharpness_lhs_slope) <=
            thresholds::sharpness_lhs_tol &&
        std::fabs(r0.ratio_fit.slope - thresholds::sharpness_h0_slope) <=
            thresholds::sharpness_h0_tol &&
        r2.ratio_fit.slope <= thresholds::sharpness_h2_slope_max;
    rec.status = ok ? "pass" : "fail";
    return rec;
}

} // namespace

std::string resolve_output_dir(const ExperimentConfig& cfg) {
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("DZK_OUT"); env && *env) return env;
    return "dzk-out";
}

ReportRecord exec_case(const std::string& id, const ExperimentConfig& cfg,
                       const std::string& dir) {
    if (id == "unitarity") return case_unitarity(cfg, dir);
    if (id == "decay") return case_decay(cfg, dir);
    if (id == "strichartz") return case_strichartz(cfg, dir);
    if (id == "smoothing-hom")
        return case_smoothing(id, SmoothingVariant::Homogeneous, cfg, dir);
    if (id == "smoothing-inhom-L2")
        return case_smoothing(id, SmoothingVariant::InhomL2, cfg, dir);
    if (id == "smoothing-inhom-Linf")
        return case_smoothing(id, SmoothingVariant::InhomLinf, cfg, dir);
    if (id == "maximal") return case_maximal(cfg, dir);
    if (id == "wave-maximal-cos")
        return case_wave_maximal(id, WaveMaximalVariant::Cos, cfg, dir);
    if (id == "wave-maximal-sin2")
        return case_wave_maximal(id, WaveMaximalVariant::SinH2, cfg, dir);
    if (id == "wave-maximal-sin1")
        return case_wave_maximal(id, WaveMaximalVariant::SinH1, cfg, dir);
    if (id == "kernel-envelope") return case_kernel(cfg, dir);
    if (id == "leibniz-commutator") return case_leibniz(cfg, dir);
    if (id == "bk-bound") return case_bk(cfg, dir);
    if (id == "counterexample") return case_counterexample(cfg, dir);
    throw std::invalid_argument("unknown case id '" + id + "'");
}

RunResult run(const ExperimentConfig& cfg) {
    RunResult result;
    result.out_dir = resolve_output_dir(cfg);
    fs::create_directories(result.out_dir);
    for (const auto& id : cfg.cases) {
        ReportRecord rec;
        try {
            rec = exec_case(id, cfg, result.out_dir);
        } catch (const std::exception& e) {
            rec.case_id = id;
            rec.status = "fail";
            MetricsJson m;
            m.add("error", std::string(e.what()));
            rec.metrics_json = m.str();
        }
        if (rec.status != "pass") result.ok = false;
        result.records.push_back(std::move(rec));
    }
    write_summary(result, cfg);
    return result;
}

void write_summary(const RunResult& result, const ExperimentConfig& cfg) {
    const std::string sum = versioned_path(result.out_dir + "/summary.csv");
    std::ofstream os(sum);
    os << "case_id,status,metrics,artifacts\n";
    for (const auto& rec : result.records) {
        std::string arts;
        for (const auto& a : rec.artifacts) {
            if (!arts.empty()) arts += ';';
            arts += a;
        }
        os << csv_quote(rec.case_id) << ',' << rec.status << ','
           << csv_quote(rec.metrics_json) << ',' << csv_quote(arts) << '\n';
    }
    const std::string man = versioned_path(result.out_dir + "/manifest.txt");
    std::ofstream mos(man);
    mos << "# effective configuration\n" << cfg.echo();
    mos << "\n# defaults\n";
    for (const auto& [k, v] : default_config_table()) mos << k << " = " << v << '\n';
}

ReportRecord run_solve(const ExperimentConfig& cfg, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const Grid3 g = config_grid(cfg);

    FamilySpec e0spec;
    e0spec.kind = FamilyKind::Gaussian;
    e0spec.seed = cfg.seed;
    e0spec.sigma_x = e0spec.sigma_y = e0spec.sigma_z = 0.5;
    e0spec.amplitude = cfg.solver_amplitude;
    FamilySpec nspec = e0spec;
    nspec.sigma_x = nspec.sigma_y = nspec.sigma_z = 0.6;
    nspec.amplitude = 0.5 * cfg.solver_amplitude;

    const ScalarField E0 = gaussian_field(g, e0spec);
    const ScalarField n0 = gaussian_field(g, nspec);
    nspec.amplitude *= 0.5;
    const ScalarField n1 = gaussian_field(g, nspec);
    const InitialData data = make_initial_data(E0, n0, n1);

    SolverConfig scfg;
    scfg.t_end = cfg.solver_t_end;
    scfg.nt = cfg.solver_nt;
    scfg.picard_tol = cfg.solver_tol;
    scfg.max_iters = cfg.solver_max_iters;
    scfg.epsilon = cfg.epsilon;

    const SolutionBundle sol = solve_picard(data, scfg);

    const std::string ef = versioned_path(out_dir + "/E_final.dzk");
    const std::string nf = versioned_path(out_dir + "/n_final.dzk");
    dump_field(sol.E.frames.back(), ef);
    dump_field(sol.n.frames.back(), nf);

    const std::string man = versioned_path(out_dir + "/solve_manifest.txt");
    {
        std::ofstream os(man);
        os.precision(12);
        os << "# picard solve\n" << cfg.echo();
        os << "data: gaussian E0 (sigma 0.5, amplitude " << cfg.solver_amplitude
           << "), n0 = 0.5 A gaussian(0.6), n1 = 0.25 A gaussian(0.6)\n";
        os << "converged = " << sol.diagnostics.converged << '\n';
        os << "iterations = " << sol.diagnostics.iterations << '\n';
        os << "achieved_T = " << sol.diagnostics.achieved_t_end << '\n';
        os << "residual = " << sol.diagnostics.residual << '\n';
        os << "mass_drift = " << sol.diagnostics.mass_drift << '\n';
        os << "boundary_fraction = " << sol.diagnostics.boundary_fraction << '\n';
        os << "increments =";
        for (double v : sol.diagnostics.increments) os << ' ' << v;
        os << "\nratios =";
        for (double v : sol.diagnostics.ratios) os << ' ' << v;
        os << '\n';
    }

    ReportRecord rec;
    rec.case_id = "solve";
    rec.artifacts = {ef, nf, man};
    MetricsJson m;
    m.add("iterations", double(sol.diagnostics.iterations));
    m.add("residual", sol.diagnostics.residual);
    m.add("mass_drift", sol.diagnostics.mass_drift);
    m.add("achieved_T", sol.diagnostics.achieved_t_end);
    rec.metrics_json = m.str();
    rec.status = sol.diagnostics.converged &&
                         sol.diagnostics.residual <= 2.0 * scfg.picard_tol &&
                         sol.diagnostics.mass_drift <= thresholds::solver_mass_drift
                     ? "pass"
                     : "fail";
    return rec;
}

std::string run_bench(const ExperimentConfig& cfg) {
    using clock = std::chrono::steady_clock;
    const Grid3 g = config_grid(cfg);
    FamilySpec fam = cfg.family;
    const ScalarField f = make_family_member(g, fam, 0);
    std::ostringstream os;
    os << "bench grid " << g.nx << "x" << g.ny << "x" << g.nz << "\n";

    auto time_it = [&](const char* name, auto&& fn, int reps) {
        // warm up plans
        fn();
        const auto t0 = clock::now();
        for (int r = 0; r < reps; ++r) fn();
        const auto t1 = clock::now();
        const double ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
        const double mpts = double(g.size()) / 1e6;
        os << name << ": " << ms << " ms/op, " << (mpts / (ms / 1000.0))
           << " Mpts/s\n";
    };

    SpectralField F = to_spectral(f);
    time_it("to_spectral", [&] { (void)to_spectral(f); }, 5);
    time_it("from_spectral", [&] { (void)from_spectral(F); }, 5);
    time_it("schrodinger_group(spectral)", [&] {
        SpectralField c = F;
        schrodinger_group_inplace(c, 0.3);
    }, 5);
    time_it("dealiased_product", [&] { (void)dealiased_product(f, f); }, 3);
    time_it("sobolev_norm", [&] { (void)sobolev_norm_value(F, 2.0); }, 5);
    return os.str();
}

} // namespace dzk

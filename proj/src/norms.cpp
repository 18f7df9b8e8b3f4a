#include "dzk/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dzk/fft.hpp"
#include "dzk/multiplier.hpp"
#include "dzk/propagators.hpp"
#include "dzk/quadrature.hpp"

namespace dzk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double powp(double v, double p) {
    if (p == 2.0) return v * v;
    if (p == 1.0) return v;
    if (p == 4.0) { const double s = v * v; return s * s; }
    return std::pow(v, p);
}

// Magnitudes |f(x,y,z,t)| packed t-fastest; reduced axes collapse to size 1.
struct MagCube {
    std::array<int, 4> n{1, 1, 1, 1};
    std::vector<double> a;

    std::size_t lin(int x, int y, int z, int t) const {
        return ((std::size_t(x) * n[1] + y) * n[2] + z) * n[3] + t;
    }
};

struct AxisWeights {
    std::array<std::vector<double>, 4> w;
};

void validate_spec(const MixedNormSpec& spec, bool has_time) {
    std::array<int, 4> seen{0, 0, 0, 0};
    for (const auto& st : spec.stages) {
        if (st.axes.empty()) throw std::invalid_argument("mixed_norm: empty stage");
        if (!(st.p >= 1.0) && st.p != kInf)
            throw std::invalid_argument("mixed_norm: exponent must be in [1, inf]");
        for (NormAxis ax : st.axes) seen[int(ax)]++;
    }
    for (int d = 0; d < 3; ++d) {
        if (seen[d] > 1) throw std::invalid_argument("mixed_norm: axis covered twice");
        if (seen[d] == 0) throw std::invalid_argument("mixed_norm: missing axis");
    }
    if (seen[3] > 1) throw std::invalid_argument("mixed_norm: axis covered twice");
    if (has_time && seen[3] == 0) throw std::invalid_argument("mixed_norm: missing time axis");
    if (!has_time && seen[3] != 0)
        throw std::invalid_argument("mixed_norm: spec covers t but series has one frame");
}

void reduce_stage(MagCube& c, const NormStage& st, const AxisWeights& weights) {
    std::array<bool, 4> red{false, false, false, false};
    for (NormAxis ax : st.axes) red[int(ax)] = true;

    std::array<int, 4> out = c.n;
    for (int d = 0; d < 4; ++d)
        if (red[d]) out[d] = 1;

    MagCube o;
    o.n = out;
    o.a.assign(std::size_t(out[0]) * out[1] * out[2] * out[3], 0.0);

    const bool inf = (st.p == kInf);
    const double pinv = inf ? 0.0 : 1.0 / st.p;
    for (int x = 0; x < out[0]; ++x)
        for (int y = 0; y < out[1]; ++y)
            for (int z = 0; z < out[2]; ++z)
                for (int t = 0; t < out[3]; ++t) {
                    KahanSum acc;
                    double mx = 0.0;
                    const int rx = red[0] ? c.n[0] : 1;
                    const int ry = red[1] ? c.n[1] : 1;
                    const int rz = red[2] ? c.n[2] : 1;
                    const int rt = red[3] ? c.n[3] : 1;
                    for (int ix = 0; ix < rx; ++ix) {
                        const int gx = red[0] ? ix : x;
                        const double wx = (red[0] && !inf) ? weights.w[0][ix] : 1.0;
                        for (int iy = 0; iy < ry; ++iy) {
                            const int gy = red[1] ? iy : y;
                            const double wxy = wx * ((red[1] && !inf) ? weights.w[1][iy] : 1.0);
                            for (int iz = 0; iz < rz; ++iz) {
                                const int gz = red[2] ? iz : z;
                                const double wxyz = wxy * ((red[2] && !inf) ? weights.w[2][iz] : 1.0);
                                for (int it = 0; it < rt; ++it) {
                                    const int gt = red[3] ? it : t;
                                    const double v = c.a[c.lin(gx, gy, gz, gt)];
                                    if (inf) {
                                        mx = std::max(mx, v);
                                    } else {
                                        const double w =
                                            wxyz * ((red[3]) ? weights.w[3][it] : 1.0);
                                        acc.add(w * powp(v, st.p));
                                    }
                                }
                            }
                        }
                    }
                    o.a[o.lin(x, y, z, t)] = inf ? mx : std::pow(acc.value(), pinv);
                }
    c = std::move(o);
}

double evaluate_cube(MagCube& cube, const MixedNormSpec& spec, const AxisWeights& weights) {
    for (auto it = spec.stages.rbegin(); it != spec.stages.rend(); ++it)
        reduce_stage(cube, *it, weights);
    return cube.a.at(0);
}

AxisWeights grid_weights(const Grid3& g, const TimeGrid* tg) {
    AxisWeights w;
    w.w[0].assign(g.nx, g.hx());
    w.w[1].assign(g.ny, g.hy());
    w.w[2].assign(g.nz, g.hz());
    if (tg && tg->nt > 1) w.w[3] = trapezoid_weights(tg->nt, tg->dt());
    else w.w[3].assign(1, 1.0);
    return w;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_exponent(const std::string& tok) {
    if (tok == "inf" || tok == "Inf" || tok == "INF") return kInf;
    const auto slash = tok.find('/');
    if (slash != std::string::npos) {
        const double num = std::stod(tok.substr(0, slash));
        const double den = std::stod(tok.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("norm spec: zero denominator");
        return num / den;
    }
    return std::stod(tok);
}

NormAxis parse_axis(const std::string& tok) {
    if (tok == "x") return NormAxis::X;
    if (tok == "y") return NormAxis::Y;
    if (tok == "z") return NormAxis::Z;
    if (tok == "t") return NormAxis::T;
    throw std::invalid_argument("norm spec: unknown axis '" + tok + "'");
}

} // namespace

MixedNormSpec MixedNormSpec::parse(const std::string& text) {
    MixedNormSpec spec;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, '|')) {
        part = trim(part);
        if (part.empty()) throw std::invalid_argument("norm spec: empty stage in '" + text + "'");
        if (part[0] != 'L') throw std::invalid_argument("norm spec: stage must start with L");
        const auto colon = part.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("norm spec: missing ':' in '" + part + "'");
        NormStage st;
        st.p = parse_exponent(trim(part.substr(1, colon - 1)));
        std::stringstream axs(part.substr(colon + 1));
        std::string ax;
        while (std::getline(axs, ax, ',')) st.axes.push_back(parse_axis(trim(ax)));
        spec.stages.push_back(std::move(st));
    }
    if (spec.stages.empty()) throw std::invalid_argument("norm spec: empty");
    return spec;
}

std::string MixedNormSpec::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        if (i) os << " | ";
        os << 'L';
        if (stages[i].p == kInf) os << "inf";
        else os << stages[i].p;
        os << ':';
        for (std::size_t j = 0; j < stages[i].axes.size(); ++j) {
            if (j) os << ',';
            os << "xyzt"[int(stages[i].axes[j])];
        }
    }
    return os.str();
}

double mixed_norm_streaming(const Grid3& g, const TimeGrid& tg,
                            const FrameFn& frame, const MixedNormSpec& spec) {
    validate_spec(spec, tg.nt > 1);
    MagCube cube;
    cube.n = {g.nx, g.ny, g.nz, tg.nt};
    cube.a.resize(g.size() * std::size_t(tg.nt));
    for (int t = 0; t < tg.nt; ++t) {
        ScalarField f = frame(t);
        if (!f.grid.same_shape(g))
            throw std::invalid_argument("mixed_norm: frame grid mismatch");
        std::size_t q = 0;
        for (int x = 0; x < g.nx; ++x)
            for (int y = 0; y < g.ny; ++y)
                for (int z = 0; z < g.nz; ++z, ++q)
                    cube.a[cube.lin(x, y, z, t)] = std::abs(f.v[q]);
    }
    const AxisWeights w = grid_weights(g, &tg);
    return evaluate_cube(cube, spec, w);
}

NormValue mixed_norm(const FieldSeries& series, const MixedNormSpec& spec) {
    series.validate();
    const double v = mixed_norm_streaming(series.grid(), series.time,
                                          [&](int j) { return series.frames[j]; }, spec);
    if (!std::isfinite(v)) throw std::runtime_error("mixed_norm: non-finite value");
    return NormValue{v, spec.str(), series.time.t_end};
}

NormValue mixed_norm(const ScalarField& f, const MixedNormSpec& spec) {
    validate_spec(spec, false);
    MagCube cube;
    cube.n = {f.grid.nx, f.grid.ny, f.grid.nz, 1};
    cube.a.resize(f.grid.size());
    for (std::size_t q = 0; q < f.v.size(); ++q) cube.a[q] = std::abs(f.v[q]);
    const AxisWeights w = grid_weights(f.grid, nullptr);
    const double v = evaluate_cube(cube, spec, w);
    if (!std::isfinite(v)) throw std::runtime_error("mixed_norm: non-finite value");
    return NormValue{v, spec.str(), 0.0};
}

double sobolev_norm_value(const SpectralField& F, double s) {
    const Grid3& g = F.grid;
    KahanSum acc;
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l, ++idx) {
                const double k2 =
                    g.kx[i] * g.kx[i] + g.ky[j] * g.ky[j] + g.kz[l] * g.kz[l];
                acc.add(std::pow(1.0 + k2, s) * std::norm(F.m[idx]));
            }
    return std::sqrt(acc.value() / g.volume());
}

NormValue sobolev_norm(const ScalarField& f, double s) {
    return NormValue{sobolev_norm_value(to_spectral(f), s), "H^" + std::to_string(s), 0.0};
}

NormValue tilde_h2_norm(const ScalarField& f) {
    const SpectralField F = to_spectral(f);
    const Grid3& g = f.grid;
    KahanSum acc;
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l, ++idx) {
                const double a = g.kx[i] * g.kx[i];
                const double b = g.ky[j] * g.ky[j];
                const double c = g.kz[l] * g.kz[l];
                const double k2 = a + b + c;
                // sum over |alpha| = 2 of k^(2 alpha)
                const double s4 = a * a + b * b + c * c + a * b + a * c + b * c;
                const double w = std::pow(1.0 + k2, 2.0) +
                                 (std::fabs(g.kx[i]) + std::fabs(g.ky[j])) * s4;
                acc.add(w * std::norm(F.m[idx]));
            }
    return NormValue{std::sqrt(acc.value() / g.volume()), "Htilde^2", 0.0};
}

namespace {

struct SeriesTerm {
    MultiplierSpec mult;
    MixedNormSpec spec;
};

cd deriv_bessel_symbol(const Alpha& al, double jz_order, double dhalf_x,
                       double k1, double k2, double k3) {
    cd s = derivative_symbol(al[0], al[1], al[2], k1, k2, k3);
    if (jz_order != 0.0) s *= bessel_symbol(k3 * k3, jz_order);
    if (dhalf_x != 0.0) s *= riesz_symbol(k1, dhalf_x);
    return s;
}

std::vector<SeriesTerm> x_t_terms(double eps) {
    std::vector<SeriesTerm> terms;
    const MixedNormSpec l4xyt_l2z = MixedNormSpec::parse("L4:x,y,t | L2:z");
    const MixedNormSpec l83t_l8xy_l2z = MixedNormSpec::parse("L8/3:t | L8:x,y | L2:z");
    for (const Alpha& al : kAlphaOrder1) {
        terms.push_back({MultiplierSpec{[al, eps](double k1, double k2, double k3) {
                             return deriv_bessel_symbol(al, 0.25 + eps, 0.5, k1, k2, k3);
                         }},
                         l4xyt_l2z});
        terms.push_back({MultiplierSpec{[al, eps](double k1, double k2, double k3) {
                             return deriv_bessel_symbol(al, 0.375 + eps, 0.0, k1, k2, k3);
                         }},
                         l83t_l8xy_l2z});
        terms.push_back({MultiplierSpec{[al, eps](double k1, double k2, double k3) {
                             return deriv_bessel_symbol(al, 0.5 + eps, 0.0, k1, k2, k3);
                         }},
                         l4xyt_l2z});
    }
    for (const Alpha& al : kAlphaUpTo1) {
        Alpha ax = al; ax[0] += 1;
        Alpha ay = al; ay[1] += 1;
        terms.push_back({MultiplierSpec{[ax](double k1, double k2, double k3) {
                             return derivative_symbol(ax[0], ax[1], ax[2], k1, k2, k3);
                         }},
                         l4xyt_l2z});
        terms.push_back({MultiplierSpec{[ay](double k1, double k2, double k3) {
                             return derivative_symbol(ay[0], ay[1], ay[2], k1, k2, k3);
                         }},
                         l4xyt_l2z});
    }
    return terms;
}

double series_term_norm(const std::vector<SpectralField>& hat, const TimeGrid& tg,
                        const SeriesTerm& term) {
    const Grid3& g = hat.front().grid;
    return mixed_norm_streaming(g, tg,
                                [&](int j) { return from_spectral(apply_multiplier(hat[j], term.mult)); },
                                term.spec);
}

} // namespace

NormValue x_T_norm(const FieldSeries& series, double eps) {
    series.validate();
    std::vector<SpectralField> hat;
    hat.reserve(series.frames.size());
    for (const auto& f : series.frames) hat.push_back(to_spectral(f));
    KahanSum total;
    for (const auto& term : x_t_terms(eps))
        total.add(series_term_norm(hat, series.time, term));
    return NormValue{total.value(), "X_T", series.time.t_end};
}

NormValue contraction_norm(const FieldSeries& series, double eps) {
    series.validate();
    const Grid3& g = series.grid();
    std::vector<SpectralField> hat;
    hat.reserve(series.frames.size());
    for (const auto& f : series.frames) hat.push_back(to_spectral(f));

    KahanSum total;

    // sup_t H^2
    double sup_h2 = 0.0;
    for (const auto& F : hat) sup_h2 = std::max(sup_h2, sobolev_norm_value(F, 2.0));
    total.add(sup_h2);

    // sup_t L2 of D^1/2_x d^a and D^1/2_y d^a, |a| = 2 (pure mode sums)
    for (const Alpha& al : kAlphaOrder2) {
        for (int ax = 0; ax < 2; ++ax) {
            double sup = 0.0;
            for (const auto& F : hat) {
                KahanSum acc;
                std::size_t idx = 0;
                for (int i = 0; i < g.nx; ++i)
                    for (int j = 0; j < g.ny; ++j)
                        for (int l = 0; l < g.nz; ++l, ++idx) {
                            const double half =
                                ax == 0 ? std::fabs(g.kx[i]) : std::fabs(g.ky[j]);
                            const double d2 = std::pow(g.kx[i], 2 * al[0]) *
                                              std::pow(g.ky[j], 2 * al[1]) *
                                              std::pow(g.kz[l], 2 * al[2]);
                            acc.add(half * d2 * std::norm(F.m[idx]));
                        }
                sup = std::max(sup, std::sqrt(acc.value() / g.volume()));
            }
            total.add(sup);
        }
    }

    // Strichartz bundle
    for (const auto& term : x_t_terms(eps))
        total.add(series_term_norm(hat, series.time, term));

    // maximal norms
    total.add(mixed_norm(series, MixedNormSpec::parse("L2:x | Linf:y,z,t")).value);
    total.add(mixed_norm(series, MixedNormSpec::parse("L2:y | Linf:x,z,t")).value);

    // smoothing families, |a| = 2
    const MixedNormSpec smx = MixedNormSpec::parse("Linf:x | L2:y,z,t");
    const MixedNormSpec smy = MixedNormSpec::parse("Linf:y | L2:x,z,t");
    for (const Alpha& al : kAlphaOrder2) {
        Alpha ax = al; ax[0] += 1;
        Alpha ay = al; ay[1] += 1;
        total.add(series_term_norm(hat, series.time,
                                   {MultiplierSpec{[ax](double k1, double k2, double k3) {
                                        return derivative_symbol(ax[0], ax[1], ax[2], k1, k2, k3);
                                    }},
                                    smx}));
        total.add(series_term_norm(hat, series.time,
                                   {MultiplierSpec{[ay](double k1, double k2, double k3) {
                                        return derivative_symbol(ay[0], ay[1], ay[2], k1, k2, k3);
                                    }},
                                    smy}));
    }

    return NormValue{total.value(), "triple-bar", series.time.t_end};
}

} // namespace dzk

#include "dzk/estimates.hpp"

#include <cmath>
#include <sstream>

#include "dzk/dealias.hpp"
#include "dzk/fft.hpp"
#include "dzk/multiplier.hpp"
#include "dzk/propagators.hpp"
#include "dzk/quadrature.hpp"

namespace dzk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string json_kv(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    os.precision(12);
    os << '{';
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) os << ',';
        first = false;
        os << '"' << k << "\":" << v;
    }
    os << '}';
    return os.str();
}

std::string exp_str(double p) {
    if (p == kInf) return "inf";
    std::ostringstream os;
    os << p;
    return os.str();
}

MixedNormSpec lebesgue_xy_l2z(double p) {
    return MixedNormSpec::parse("L" + exp_str(p) + ":x,y | L2:z");
}

double weighted_spectral_l2(const SpectralField& F,
                            const std::function<double(double, double, double)>& w2) {
    const Grid3& g = F.grid;
    KahanSum acc;
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l, ++idx)
                acc.add(w2(g.kx[i], g.ky[j], g.kz[l]) * std::norm(F.m[idx]));
    return std::sqrt(acc.value() / g.volume());
}

} // namespace

double boundary_mass_fraction(const ScalarField& f, bool ax, bool ay, bool az) {
    const Grid3& g = f.grid;
    KahanSum total, shell;
    std::size_t q = 0;
    for (int i = 0; i < g.nx; ++i) {
        const bool bi = ax && std::fabs(g.x(i)) > 0.45 * g.lx;
        for (int j = 0; j < g.ny; ++j) {
            const bool bj = bi || (ay && std::fabs(g.y(j)) > 0.45 * g.ly);
            for (int l = 0; l < g.nz; ++l, ++q) {
                const bool bl = bj || (az && std::fabs(g.z(l)) > 0.45 * g.lz);
                const double m = std::norm(f.v[q]);
                total.add(m);
                if (bl) shell.add(m);
            }
        }
    }
    return total.value() > 0 ? shell.value() / total.value() : 0.0;
}

ScalarField swap_xy(const ScalarField& f) {
    const Grid3& g = f.grid;
    ScalarField out(make_grid(g.ny, g.nx, g.nz, g.ly, g.lx, g.lz));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l) out.at(j, i, l) = f.at(i, j, l);
    return out;
}

ScalarField real_part(const ScalarField& f) {
    ScalarField out(f.grid);
    for (std::size_t q = 0; q < f.v.size(); ++q) out.v[q] = cd(f.v[q].real(), 0.0);
    return out;
}

double strichartz_q_from_p(double p) {
    if (p == 2.0) return kInf;
    if (!(p > 2.0) || p == kInf)
        throw std::invalid_argument("strichartz: p must be in [2, inf)");
    return 2.0 * p / (p - 2.0);
}

void validate_strichartz(double q, double p) {
    if (!(p >= 2.0) || p == kInf)
        throw std::invalid_argument("strichartz: p must be in [2, inf)");
    const double lhs = (q == kInf) ? 0.0 : 2.0 / q;
    if (std::fabs(lhs - (1.0 - 2.0 / p)) > 1e-12)
        throw std::invalid_argument("strichartz: inadmissible (q, p)");
}

RatioReport check_unitarity(const Grid3& g, const FamilySpec& family,
                            const std::vector<double>& times) {
    RatioReport rep;
    rep.case_id = "unitarity";
    rep.family = family.describe();
    int row = 0;
    for (int m = 0; m < family.count; ++m) {
        const ScalarField f = make_family_member(g, family, m);
        const SpectralField F = to_spectral(f);
        const double rhs = l2_norm(F);
        for (double t : times) {
            SpectralField Et = F;
            schrodinger_group_inplace(Et, t);
            rep.add(row++, json_kv({{"t", t}, {"input", double(m)}}), l2_norm(Et), rhs);
        }
    }
    rep.finalize();
    return rep;
}

DecayReport check_decay(double p, const Grid3& g, const FamilySpec& family,
                        const std::vector<double>& times, double boundary_threshold) {
    if (!(p >= 2.0)) throw std::invalid_argument("check_decay: p must be >= 2");
    DecayReport rep;
    rep.p = p;
    const double pprime = (p == kInf) ? 1.0 : p / (p - 1.0);
    rep.expected_slope = -(1.0 / pprime - (p == kInf ? 0.0 : 1.0 / p));

    const ScalarField f = make_family_member(g, family, 0);
    const SpectralField F = to_spectral(f);
    const double l1 = mixed_norm(f, lebesgue_xy_l2z(1.0)).value;

    std::vector<double> la, lo;
    for (double t : times) {
        SpectralField Et = F;
        schrodinger_group_inplace(Et, t);
        const ScalarField e = from_spectral(Et);
        const double bf = boundary_mass_fraction(e, true, true, false);
        rep.boundary_fraction = std::max(rep.boundary_fraction, bf);
        if (bf > boundary_threshold) {
            std::ostringstream os;
            os << "check_decay: boundary contamination " << bf << " > " << boundary_threshold
               << " at t=" << t << " (enlarge the box or shorten the window)";
            throw std::runtime_error(os.str());
        }
        const double lhs = mixed_norm(e, lebesgue_xy_l2z(p)).value;
        la.push_back(std::log(t));
        lo.push_back(std::log(lhs));
        if (p == kInf)
            rep.max_kernel_const = std::max(rep.max_kernel_const, 4.0 * M_PI * t * lhs / l1);
    }
    rep.fit = fit_line("decay-p" + exp_str(p), la, lo);
    return rep;
}

RatioReport check_strichartz(double q, double p, const Grid3& g, const FamilySpec& family,
                             double T, int nt) {
    validate_strichartz(q, p);
    RatioReport rep;
    rep.case_id = "strichartz";
    rep.family = family.describe();
    const TimeGrid tg = make_time_grid(T, nt);
    const MixedNormSpec spec =
        MixedNormSpec::parse("L" + exp_str(q) + ":t | L" + exp_str(p) + ":x,y | L2:z");
    for (int m = 0; m < family.count; ++m) {
        const ScalarField f = make_family_member(g, family, m);
        const SpectralField F = to_spectral(f);
        const double lhs = mixed_norm_streaming(g, tg,
                                                [&](int j) {
                                                    SpectralField Et = F;
                                                    schrodinger_group_inplace(Et, tg.nodes[j]);
                                                    return from_spectral(Et);
                                                },
                                                spec);
        rep.add(m, json_kv({{"q", q}, {"p", p}, {"T", T}}), lhs, l2_norm(F));
    }
    rep.finalize();
    return rep;
}

SlopeFit strichartz_rescaling(double q, double p, const Grid3& g, const FamilySpec& base,
                              double T0, int nt) {
    validate_strichartz(q, p);
    const MixedNormSpec spec =
        MixedNormSpec::parse("L" + exp_str(q) + ":t | L" + exp_str(p) + ":x,y | L2:z");
    std::vector<double> la, lo;
    for (std::size_t i = 0; i < base.scales.size(); ++i) {
        const double lambda = base.scales[i];
        const ScalarField f = make_family_member(g, base, int(i));
        const SpectralField F = to_spectral(f);
        const TimeGrid tg = make_time_grid(T0 / (lambda * lambda), nt);
        const double lhs = mixed_norm_streaming(g, tg,
                                                [&](int j) {
                                                    SpectralField Et = F;
                                                    schrodinger_group_inplace(Et, tg.nodes[j]);
                                                    return from_spectral(Et);
                                                },
                                                spec);
        const double jacobian = (q == kInf) ? 1.0 : std::pow(lambda, 2.0 / q);
        la.push_back(std::log2(lambda));
        lo.push_back(std::log2(jacobian * lhs / l2_norm(F)));
    }
    return fit_line("strichartz-rescaling", la, lo);
}

namespace {

MixedNormSpec smoothing_lhs_spec(bool y_variant) {
    return MixedNormSpec::parse(y_variant ? "Linf:y | L2:x,z,t" : "Linf:x | L2:y,z,t");
}
MixedNormSpec smoothing_rhs_spec(bool y_variant) {
    return MixedNormSpec::parse(y_variant ? "L1:y | L2:x,z,t" : "L1:x | L2:y,z,t");
}
MixedNormSpec maximal_spec(bool y_variant) {
    return MixedNormSpec::parse(y_variant ? "L2:y | Linf:x,z,t" : "L2:x | Linf:y,z,t");
}

MultiplierSpec half_derivative(bool y_variant) {
    return MultiplierSpec{[y_variant](double k1, double k2, double) {
        return cd(riesz_symbol(y_variant ? k2 : k1, 0.5), 0.0);
    }};
}
MultiplierSpec first_derivative(bool y_variant) {
    return MultiplierSpec{[y_variant](double k1, double k2, double) {
        return cd(0.0, y_variant ? k2 : k1);
    }};
}

// forcing with a smooth random time profile on top of a family member
std::vector<SpectralField> forcing_series(const Grid3& g, const FamilySpec& family, int m,
                                          const TimeGrid& tg) {
    const SpectralField F = to_spectral(make_family_member(g, family, m));
    const auto prof = smooth_time_profile(family.seed, m, tg);
    std::vector<SpectralField> out(tg.nt, SpectralField(g));
    for (int j = 0; j < tg.nt; ++j) {
        out[j] = F;
        for (auto& v : out[j].m) v *= prof[j];
    }
    return out;
}

} // namespace

RatioReport check_smoothing(SmoothingVariant variant, const Grid3& g,
                            const FamilySpec& family, double T, int nt, bool y_variant) {
    RatioReport rep;
    rep.case_id = variant == SmoothingVariant::Homogeneous ? "smoothing-hom"
                  : variant == SmoothingVariant::InhomL2   ? "smoothing-inhom-L2"
                                                           : "smoothing-inhom-Linf";
    if (y_variant) rep.case_id += "-y";
    rep.family = family.describe();
    const TimeGrid tg = make_time_grid(T, nt);
    const MultiplierSpec dhalf = half_derivative(y_variant);
    const MultiplierSpec d1 = first_derivative(y_variant);

    for (int m = 0; m < family.count; ++m) {
        double lhs = 0.0, rhs = 0.0;
        if (variant == SmoothingVariant::Homogeneous) {
            const SpectralField F = to_spectral(make_family_member(g, family, m));
            lhs = mixed_norm_streaming(g, tg,
                                       [&](int j) {
                                           SpectralField Et = F;
                                           schrodinger_group_inplace(Et, tg.nodes[j]);
                                           return from_spectral(apply_multiplier(Et, dhalf));
                                       },
                                       smoothing_lhs_spec(y_variant));
            rhs = l2_norm(F);
        } else {
            const auto Ghat = forcing_series(g, family, m, tg);
            const auto I = duhamel_series(Ghat, tg);
            rhs = mixed_norm_streaming(g, tg, [&](int j) { return from_spectral(Ghat[j]); },
                                       smoothing_rhs_spec(y_variant));
            if (variant == SmoothingVariant::InhomL2) {
                for (const auto& Ij : I) {
                    const SpectralField DI = apply_multiplier(Ij, dhalf);
                    lhs = std::max(lhs, l2_norm(DI));
                }
            } else {
                lhs = mixed_norm_streaming(g, tg,
                                           [&](int j) { return from_spectral(apply_multiplier(I[j], d1)); },
                                           smoothing_lhs_spec(y_variant));
            }
        }
        const double variant_id = variant == SmoothingVariant::Homogeneous  ? 0
                                  : variant == SmoothingVariant::InhomL2    ? 1
                                                                            : 2;
        rep.add(m, json_kv({{"variant", variant_id}, {"T", T}}), lhs, rhs);
    }
    rep.finalize();
    return rep;
}

RatioReport check_maximal(double s, const Grid3& g, const FamilySpec& family, double T,
                          int nt, bool y_variant) {
    RatioReport rep;
    rep.case_id = y_variant ? "maximal-y" : "maximal";
    rep.family = family.describe();
    const TimeGrid tg = make_time_grid(T, nt);
    for (int m = 0; m < family.count; ++m) {
        const ScalarField f = make_family_member(g, family, m);
        const SpectralField F = to_spectral(f);
        const double lhs = mixed_norm_streaming(g, tg,
                                                [&](int j) {
                                                    SpectralField Et = F;
                                                    schrodinger_group_inplace(Et, tg.nodes[j]);
                                                    return from_spectral(Et);
                                                },
                                                maximal_spec(y_variant));
        rep.add(m, json_kv({{"s", s}, {"T", T}}), lhs, sobolev_norm_value(F, s));
    }
    rep.finalize();
    return rep;
}

RatioReport check_wave_maximal(WaveMaximalVariant variant, const Grid3& g,
                               const FamilySpec& family, double T, int nt, bool y_variant) {
    RatioReport rep;
    rep.case_id = variant == WaveMaximalVariant::Cos     ? "wave-maximal-cos"
                  : variant == WaveMaximalVariant::SinH2 ? "wave-maximal-sin2"
                                                         : "wave-maximal-sin1";
    if (y_variant) rep.case_id += "-y";
    rep.family = family.describe();
    const TimeGrid tg = make_time_grid(T, nt);
    for (int m = 0; m < family.count; ++m) {
        const ScalarField data = real_part(make_family_member(g, family, m));
        const SpectralField F = to_spectral(data);
        double rhs = 0.0;
        double variant_id = 0;
        switch (variant) {
            case WaveMaximalVariant::Cos:
                rhs = sobolev_norm_value(F, 2.0);
                variant_id = 0;
                break;
            case WaveMaximalVariant::SinH2:
                rhs = T * sobolev_norm_value(F, 2.0);
                variant_id = 1;
                break;
            case WaveMaximalVariant::SinH1: {
                const double h1 = sobolev_norm_value(F, 1.0);
                const double h1dz = weighted_spectral_l2(
                    F, [](double k1, double k2, double k3) {
                        return k3 * k3 * std::pow(1.0 + k1 * k1 + k2 * k2 + k3 * k3, 1.0);
                    });
                rhs = T * (h1 + h1dz);
                variant_id = 2;
                break;
            }
        }
        const double lhs = mixed_norm_streaming(
            g, tg,
            [&](int j) {
                SpectralField W = F;
                const double t = tg.nodes[j];
                if (variant == WaveMaximalVariant::Cos) {
                    wave_cosine_inplace(W, t);
                } else if (variant == WaveMaximalVariant::SinH2) {
                    wave_sine_inplace(W, t);
                    transform_modes(W, [](double k1, double k2, double) {
                        return perp_sqrt_symbol(k1, k2);
                    });
                } else {
                    wave_sine_inplace(W, t);
                }
                return from_spectral(W);
            },
            maximal_spec(y_variant));
        rep.add(m, json_kv({{"variant", variant_id}, {"T", T}}), lhs, rhs);
    }
    rep.finalize();
    return rep;
}

RatioReport check_leibniz_commutator(double rho, double rho1, double rho2, double p1,
                                     double p2, double q1, double q2, const Grid3& g,
                                     const FamilySpec& family) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("leibniz: rho must be in (0,1)");
    if (std::fabs(rho1 + rho2 - rho) > 1e-12 || rho1 < 0 || rho2 < 0)
        throw std::invalid_argument("leibniz: need rho = rho1 + rho2, rho_i >= 0");
    for (double e : {p1, p2, q1, q2})
        if (!(e >= 2.0) || e == kInf)
            throw std::invalid_argument("leibniz: exponents must be in [2, inf)");
    if (std::fabs(1.0 / p1 + 1.0 / p2 - 0.5) > 1e-12 ||
        std::fabs(1.0 / q1 + 1.0 / q2 - 0.5) > 1e-12)
        throw std::invalid_argument("leibniz: exponent pairs must sum to 1/2");

    RatioReport rep;
    rep.case_id = "leibniz-commutator";
    rep.family = family.describe();
    auto dsym = [](double s) {
        return MultiplierSpec{[s](double k1, double, double) {
            return cd(riesz_symbol(k1, s), 0.0);
        }};
    };
    for (int m = 0; m < family.count; ++m) {
        const ScalarField f = make_family_member(g, family, 2 * m);
        const ScalarField h = make_family_member(g, family, 2 * m + 1);
        const ScalarField drho_fg = apply_multiplier(dealiased_product(f, h), dsym(rho));
        const ScalarField f_drho_g = dealiased_product(f, apply_multiplier(h, dsym(rho)));
        const ScalarField drho_f_g = dealiased_product(apply_multiplier(f, dsym(rho)), h);
        ScalarField comm(g);
        for (std::size_t i = 0; i < comm.v.size(); ++i)
            comm.v[i] = drho_fg.v[i] - f_drho_g.v[i] - drho_f_g.v[i];
        const double lhs = l2_norm(comm);
        const double rf =
            mixed_norm(apply_multiplier(f, dsym(rho1)),
                       MixedNormSpec::parse("L" + exp_str(p1) + ":x | L" + exp_str(q1) + ":y,z"))
                .value;
        const double rg =
            mixed_norm(apply_multiplier(h, dsym(rho2)),
                       MixedNormSpec::parse("L" + exp_str(p2) + ":x | L" + exp_str(q2) + ":y,z"))
                .value;
        rep.add(m, json_kv({{"rho", rho}, {"rho1", rho1}, {"rho2", rho2}}), lhs, rf * rg);
    }
    rep.finalize();
    return rep;
}

SlopeFit check_bk_bound(double s, const std::vector<int>& k_list, const Grid3& g,
                        const FamilySpec& family) {
    const double kmax = std::min({std::fabs(g.kx[g.nx / 2]), std::fabs(g.ky[g.ny / 2]),
                                  std::fabs(g.kz[g.nz / 2])});
    for (int k : k_list)
        if (std::ldexp(1.0, k + 1) > kmax)
            throw std::invalid_argument("check_bk_bound: level not resolved by grid");

    std::vector<KahanSum> acc(k_list.size());
    for (int m = 0; m < family.count; ++m) {
        const SpectralField F = to_spectral(make_family_member(g, family, m));
        const double hs = sobolev_norm_value(F, s);
        for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
            SpectralField B = F;
            dyadic_projection_inplace(B, k_list[ki]);
            acc[ki].add(std::log2(l2_norm(B) / hs));
        }
    }
    std::vector<double> ks, lr;
    for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
        ks.push_back(double(k_list[ki]));
        lr.push_back(acc[ki].value() / family.count);
    }
    return fit_line("bk-bound-s" + exp_str(s), ks, lr);
}

} // namespace dzk

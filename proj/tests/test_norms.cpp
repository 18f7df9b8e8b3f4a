#include <doctest.h>

#include <cmath>

#include "dzk/families.hpp"
#include "dzk/fft.hpp"
#include "dzk/norms.hpp"
#include "dzk/reports.hpp"
#include "dzk/propagators.hpp"
#include "dzk/quadrature.hpp"

using namespace dzk;

namespace {

FieldSeries constant_series(const Grid3& g, const ScalarField& f, double T, int nt) {
    FieldSeries s(make_time_grid(T, nt), g);
    for (auto& fr : s.frames) fr = f;
    return s;
}

ScalarField plane_wave(const Grid3& g, int m1, int m2, int m3) {
    ScalarField f(g);
    const double k1 = 2 * M_PI / g.lx * m1;
    const double k2 = 2 * M_PI / g.ly * m2;
    const double k3 = 2 * M_PI / g.lz * m3;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l)
                f.at(i, j, l) = std::polar(1.0, k1 * g.x(i) + k2 * g.y(j) + k3 * g.z(l));
    return f;
}

} // namespace

TEST_CASE("norm spec parsing and validation") {
    const MixedNormSpec s = MixedNormSpec::parse("Linf:x | L2:y,z,t");
    REQUIRE(s.stages.size() == 2);
    CHECK(s.stages[0].p == std::numeric_limits<double>::infinity());
    CHECK(s.stages[1].axes.size() == 3);
    CHECK(MixedNormSpec::parse("L8/3:t | L8:x,y | L2:z").stages[0].p ==
          doctest::Approx(8.0 / 3.0));
    CHECK(MixedNormSpec::parse(s.str()).str() == s.str());

    CHECK_THROWS_AS(MixedNormSpec::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(MixedNormSpec::parse("M2:x"), std::invalid_argument);
    CHECK_THROWS_AS(MixedNormSpec::parse("L2:w"), std::invalid_argument);

    const Grid3 g = make_grid(8, 8, 8, 1, 1, 1);
    const ScalarField f = random_bandlimited(g, 1, 0, 2, 0.0);
    // axis covered twice / missing axis / t without frames
    CHECK_THROWS_AS(mixed_norm(f, MixedNormSpec::parse("L2:x,x | L2:y,z")),
                    std::invalid_argument);
    CHECK_THROWS_AS(mixed_norm(f, MixedNormSpec::parse("L2:x | L2:y")),
                    std::invalid_argument);
    CHECK_THROWS_AS(mixed_norm(f, MixedNormSpec::parse("L2:x | L2:y,z,t")),
                    std::invalid_argument);
    // exponent below 1
    CHECK_THROWS_AS(mixed_norm(f, MixedNormSpec::parse("L0.5:x | L2:y,z")),
                    std::invalid_argument);
}

TEST_CASE("separable field: iterated norm factorizes") {
    const Grid3 g = make_grid(16, 12, 8, 2 * M_PI, 3.0, 2.0);
    const TimeGrid tg = make_time_grid(0.6, 7);
    // f(x,y,z,t) = a(x) b(y,z,t)
    std::vector<double> a(g.nx);
    for (int i = 0; i < g.nx; ++i) a[i] = 1.0 + 0.5 * std::sin(g.x(i));
    FieldSeries s(tg, g);
    double bmax = 0;
    for (int jt = 0; jt < tg.nt; ++jt)
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                for (int l = 0; l < g.nz; ++l) {
                    const double b = std::cos(2.0 * M_PI * j / g.ny) +
                                     0.3 * std::sin(2.0 * M_PI * l / g.nz) +
                                     0.2 * tg.nodes[jt];
                    s.frames[jt].at(i, j, l) = a[i] * b;
                    bmax = std::max(bmax, std::fabs(b));
                }
    const double got = mixed_norm(s, MixedNormSpec::parse("L2:x | Linf:y,z,t")).value;
    KahanSum a2;
    for (int i = 0; i < g.nx; ++i) a2.add(a[i] * a[i] * g.hx());
    CHECK(got == doctest::Approx(std::sqrt(a2.value()) * bmax).epsilon(1e-10));
}

TEST_CASE("all-2 spec equals the flat space-time L2") {
    const Grid3 g = make_grid(12, 8, 8, 2.0, 1.5, 1.0);
    const TimeGrid tg = make_time_grid(0.4, 9);
    FieldSeries s(tg, g);
    for (int jt = 0; jt < tg.nt; ++jt) s.frames[jt] = random_bandlimited(g, 4, jt, 2, 0.0);

    const double a = mixed_norm(s, MixedNormSpec::parse("L2:t | L2:x,y | L2:z")).value;
    const double b = mixed_norm(s, MixedNormSpec::parse("L2:x,y,z,t")).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));

    // direct quadrature oracle
    const auto wt = trapezoid_weights(tg.nt, tg.dt());
    KahanSum acc;
    for (int jt = 0; jt < tg.nt; ++jt)
        for (const cd& v : s.frames[jt].v) acc.add(wt[jt] * g.cell() * std::norm(v));
    CHECK(b == doctest::Approx(std::sqrt(acc.value())).epsilon(1e-12));
}

TEST_CASE("constant field closed form and exponent monotonicity") {
    const Grid3 g = make_grid(8, 8, 8, 1.5, 2.0, 3.0);
    ScalarField one(g);
    for (auto& v : one.v) v = cd(1, 0);
    const double T = 0.7;
    const FieldSeries s = constant_series(g, one, T, 9);
    const double got = mixed_norm(s, MixedNormSpec::parse("L4:x,y,t | L2:z")).value;
    const double want = std::pow(g.lx * g.ly * T, 0.25) * std::sqrt(g.lz);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));

    // Hoelder ordering on the probability box (unit volume)
    const Grid3 u = make_grid(12, 12, 12, 1.0, 1.0, 1.0);
    const ScalarField f = random_bandlimited(u, 17, 0, 3, 0.0);
    const double l2 = mixed_norm(f, MixedNormSpec::parse("L2:x,y,z")).value;
    const double l4 = mixed_norm(f, MixedNormSpec::parse("L4:x,y,z")).value;
    const double li = mixed_norm(f, MixedNormSpec::parse("Linf:x,y,z")).value;
    CHECK(l2 <= l4 * (1 + 1e-12));
    CHECK(l4 <= li * (1 + 1e-12));
}

TEST_CASE("homogeneity and triangle inequality") {
    const Grid3 g = make_grid(8, 8, 8, 2.0, 2.0, 2.0);
    const MixedNormSpec spec = MixedNormSpec::parse("L4:x | L2:y,z");
    for (int trial = 0; trial < 100; ++trial) {
        const ScalarField f = random_bandlimited(g, 23, 2 * trial, 2, 0.0);
        const ScalarField h = random_bandlimited(g, 23, 2 * trial + 1, 2, 0.0);
        const double nf = mixed_norm(f, spec).value;
        const double nh = mixed_norm(h, spec).value;
        ScalarField cf(g), sum(g);
        for (std::size_t q = 0; q < f.v.size(); ++q) {
            cf.v[q] = cd(-2.5, 1.0) * f.v[q];
            sum.v[q] = f.v[q] + h.v[q];
        }
        CHECK(mixed_norm(cf, spec).value ==
              doctest::Approx(std::abs(cd(-2.5, 1.0)) * nf).epsilon(1e-12));
        CHECK(mixed_norm(sum, spec).value <= (nf + nh) * (1 + 1e-12));
    }
}

TEST_CASE("sobolev norm: L2 limit, plane wave, dyadic growth") {
    const Grid3 g = make_grid(16, 16, 16, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    const ScalarField f = random_bandlimited(g, 31, 0, 5, 0.0);
    CHECK(sobolev_norm(f, 0.0).value == doctest::Approx(l2_norm(f)).epsilon(1e-12));

    const ScalarField w = plane_wave(g, 3, -2, 1);
    const double k2 = 9.0 + 4.0 + 1.0;
    CHECK(sobolev_norm(w, 1.5).value ==
          doctest::Approx(std::pow(1.0 + k2, 0.75) * l2_norm(w)).epsilon(1e-12));

    // dyadic annulus data: log2 slope of H^s is about 3/2 + s
    for (double s : {0.0, 1.0}) {
        std::vector<double> ks, ns;
        for (int k : {2, 3, 4, 5}) {
            // per-level box: spacing 2^k/8 resolves the annulus transition,
            // top mode 8 * 2^k covers the support
            const double L = 16.0 * M_PI * std::ldexp(1.0, -k);
            const Grid3 gk = make_grid(128, 128, 128, L, L, L);
            const ScalarField th = dyadic_theta_field(gk, k);
            ks.push_back(double(k));
            ns.push_back(std::log2(sobolev_norm(th, s).value));
        }
        const SlopeFit fit = fit_line("hs-growth", ks, ns);
        CHECK(std::fabs(fit.slope - (1.5 + s)) <= 0.15);
    }
}

TEST_CASE("tilde H2 norm: zero, plane-wave closed form, dominates H2") {
    const Grid3 g = make_grid(12, 12, 12, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    CHECK(tilde_h2_norm(ScalarField(g)).value == 0.0);

    const ScalarField w = plane_wave(g, 2, -1, 3);
    const double a = 4.0, b = 1.0, c = 9.0;
    const double s4 = a * a + b * b + c * c + a * b + a * c + b * c;
    const double want2 =
        std::pow(1.0 + a + b + c, 2.0) + (2.0 + 1.0) * s4; // |k1| + |k2| = 3
    CHECK(tilde_h2_norm(w).value ==
          doctest::Approx(std::sqrt(want2) * l2_norm(w)).epsilon(1e-12));

    const ScalarField f = random_bandlimited(g, 8, 0, 4, 0.0);
    CHECK(tilde_h2_norm(f).value >= sobolev_norm(f, 2.0).value * (1 - 1e-12));
}

TEST_CASE("strichartz bundle norm: zero, plane-wave closed form, monotone in T") {
    const Grid3 g = make_grid(8, 8, 8, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    const TimeGrid tg = make_time_grid(0.5, 9);
    CHECK(x_T_norm(FieldSeries(tg, g)).value == 0.0);

    // hand evaluation for a time-constant plane wave
    const int m1 = 2, m2 = 1, m3 = -1;
    const double eps = 0.05;
    const ScalarField w = plane_wave(g, m1, m2, m3);
    const FieldSeries s = constant_series(g, w, tg.t_end, tg.nt);
    const double got = x_T_norm(s, eps).value;

    const double k1 = m1, k2 = m2, k3 = m3;
    const double V = g.lx * g.ly;
    const double A = std::pow(V * tg.t_end, 0.25) * std::sqrt(g.lz);
    const double B =
        std::pow(tg.t_end, 3.0 / 8.0) * std::pow(V, 1.0 / 8.0) * std::sqrt(g.lz);
    auto jz = [&](double o) { return std::pow(1.0 + k3 * k3, 0.5 * o); };
    double want = 0;
    const double dmag[3] = {std::fabs(k1), std::fabs(k2), std::fabs(k3)};
    for (int axis = 0; axis < 3; ++axis) {
        want += jz(0.25 + eps) * std::sqrt(std::fabs(k1)) * dmag[axis] * A;
        want += jz(0.375 + eps) * dmag[axis] * B;
        want += jz(0.5 + eps) * dmag[axis] * A;
    }
    const double dupto1[4] = {1.0, dmag[0], dmag[1], dmag[2]};
    for (int a = 0; a < 4; ++a) {
        want += dmag[0] * dupto1[a] * A;
        want += dmag[1] * dupto1[a] * A;
    }
    CHECK(got == doctest::Approx(want).epsilon(1e-10));

    // restriction to a shorter horizon cannot increase the norm
    const FieldSeries s2 = constant_series(g, w, 0.25, 5);
    CHECK(x_T_norm(s2, eps).value <= got * (1 + 1e-12));
}

TEST_CASE("contraction norm: zero, lower bounds, plane-wave closed form") {
    const Grid3 g = make_grid(8, 8, 8, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    const TimeGrid tg = make_time_grid(0.5, 9);
    CHECK(contraction_norm(FieldSeries(tg, g)).value == 0.0);

    FieldSeries s(tg, g);
    for (int j = 0; j < tg.nt; ++j) {
        const ScalarField f = random_bandlimited(g, 77, 0, 2, 0.0);
        s.frames[j] = schrodinger_group(f, tg.nodes[j]);
    }
    const double trip = contraction_norm(s).value;
    CHECK(trip >= x_T_norm(s).value * (1 - 1e-12));
    double suph2 = 0;
    for (const auto& fr : s.frames)
        suph2 = std::max(suph2, sobolev_norm(fr, 2.0).value);
    CHECK(trip >= suph2 * (1 - 1e-12));

    // plane-wave closed form: xT part + supH2 + half-derivative sups +
    // maximal parts + smoothing parts
    const int m1 = 2, m2 = 1, m3 = -1;
    const ScalarField w = plane_wave(g, m1, m2, m3);
    const FieldSeries cs = constant_series(g, w, tg.t_end, tg.nt);
    const double eps = 0.05;
    const double got = contraction_norm(cs, eps).value;

    const double k1 = m1, k2 = m2, k3 = m3;
    const double k2sum = k1 * k1 + k2 * k2 + k3 * k3;
    const double l2w = l2_norm(w);
    double want = x_T_norm(cs, eps).value;
    want += std::pow(1.0 + k2sum, 1.0) * l2w; // sup_t H^2
    // half-derivative second-order sups
    const double alphas2[6][3] = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2},
                                  {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    const double mag[3] = {std::fabs(k1), std::fabs(k2), std::fabs(k3)};
    for (const auto& al : alphas2) {
        const double d2 = std::pow(mag[0], al[0]) * std::pow(mag[1], al[1]) *
                          std::pow(mag[2], al[2]);
        want += (std::sqrt(mag[0]) + std::sqrt(mag[1])) * d2 * l2w;
    }
    // maximal norms of a unit-modulus field
    want += 2.0 * std::sqrt(g.lx); // L2_x of sup = sqrt(lx), twice (x and y; lx = ly)
    // smoothing norms: |d_x d^a w| over the sup-axis, L2 of the rest
    const double l2yzt = std::sqrt(g.ly * g.lz * tg.t_end);
    for (const auto& al : alphas2) {
        const double d2 = std::pow(mag[0], al[0]) * std::pow(mag[1], al[1]) *
                          std::pow(mag[2], al[2]);
        want += mag[0] * d2 * l2yzt;
        want += mag[1] * d2 * l2yzt; // lx = ly = lz here
    }
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
}

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dzk/bump.hpp"
#include "dzk/families.hpp"
#include "dzk/fft.hpp"
#include "dzk/reports.hpp"

using namespace dzk;

TEST_CASE("family members are deterministic and refinement-consistent") {
    const Grid3 g = make_grid(16, 16, 16, 2.0, 2.0, 2.0);
    const ScalarField a = random_bandlimited(g, 99, 3, 4, 1.0);
    const ScalarField b = random_bandlimited(g, 99, 3, 4, 1.0);
    REQUIRE(a.v.size() == b.v.size());
    for (std::size_t i = 0; i < a.v.size(); ++i) CHECK(a.v[i] == b.v[i]);

    const ScalarField c = random_bandlimited(g, 99, 4, 4, 1.0);
    double diff = 0;
    for (std::size_t i = 0; i < a.v.size(); ++i)
        diff = std::max(diff, std::abs(a.v[i] - c.v[i]));
    CHECK(diff > 1e-6); // different index, different member

    // same continuum function on the refined grid: coarse samples embed
    const Grid3 f2 = make_grid(32, 32, 32, 2.0, 2.0, 2.0);
    const ScalarField fine = random_bandlimited(f2, 99, 3, 4, 1.0);
    double dev = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l)
                dev = std::max(dev, std::abs(a.at(i, j, l) - fine.at(2 * i, 2 * j, 2 * l)));
    CHECK(dev <= 1e-12);
}

TEST_CASE("dyadic theta datum lives on the right annulus") {
    const Grid3 g = make_grid(48, 48, 48, M_PI, M_PI, M_PI); // spacing 2, top mode 48
    const int k = 2;
    const ScalarField th = dyadic_theta_field(g, k);
    const SpectralField F = to_spectral(th);
    const double scale = std::ldexp(1.0, k);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l) {
                const double r = std::sqrt(g.kx[i] * g.kx[i] + g.ky[j] * g.ky[j] +
                                           g.kz[l] * g.kz[l]) /
                                 scale;
                const double mag = std::abs(F.at(i, j, l));
                if (r >= 1.0 && r <= 2.0) CHECK(mag == doctest::Approx(1.0).epsilon(1e-10));
                if (r < 0.5 || r > 4.0) CHECK(mag <= 1e-10);
            }
    double imax = 0;
    for (const auto& v : th.v) imax = std::max(imax, std::fabs(v.imag()));
    CHECK(imax <= 1e-12);
}

TEST_CASE("parabolic rescale remaps the trig polynomial exactly") {
    const Grid3 g = make_grid(32, 32, 48, 2 * M_PI, 2 * M_PI, 2 * M_PI);
    const ScalarField base = random_bandlimited(g, 5, 0, 2, 0.0, 1);
    for (int lambda : {1, 2, 4}) {
        const ScalarField scaled = parabolic_rescale(g, base, lambda);
        double dev = 0;
        for (int i = 0; i < g.nx; i += 3)
            for (int j = 0; j < g.ny; j += 3)
                for (int l = 0; l < g.nz; l += 3) {
                    // f_lambda(x,y,z) = f(lambda x, lambda y, lambda^2 z); the
                    // scaled arguments are again grid points modulo the box
                    const int ii = ((lambda * (i - g.nx / 2)) % g.nx + 3 * g.nx / 2) % g.nx;
                    const int jj = ((lambda * (j - g.ny / 2)) % g.ny + 3 * g.ny / 2) % g.ny;
                    const int ll =
                        ((lambda * lambda * (l - g.nz / 2)) % g.nz + 3 * g.nz / 2) % g.nz;
                    dev = std::max(dev, std::abs(scaled.at(i, j, l) - base.at(ii, jj, ll)));
                }
        CHECK(dev <= 1e-11);
    }
    CHECK_THROWS_AS(parabolic_rescale(g, random_bandlimited(g, 5, 0, 8, 0.0), 4),
                    std::invalid_argument);
}

TEST_CASE("gaussian sampler moments") {
    double sum = 0, sum2 = 0;
    const int n = 20000;
    for (int i = 0; i < n; i += 2) {
        double g1, g2;
        gauss_pair(mix64(1234 + i), mix64(5678 + i), g1, g2);
        sum += g1 + g2;
        sum2 += g1 * g1 + g2 * g2;
    }
    CHECK(std::fabs(sum / n) < 0.03);
    CHECK(std::fabs(sum2 / n - 1.0) < 0.05);
}

TEST_CASE("ratio report statistics and degenerate guard") {
    RatioReport rep;
    rep.case_id = "demo";
    rep.add(0, "{}", 2.0, 1.0);
    rep.add(1, "{}", 3.0, 1.0);
    rep.add(2, "{}", 0.0, 0.0); // 0/0 flagged, excluded
    rep.add(3, "{}", 1.0, 2.0);
    rep.finalize();
    CHECK(rep.rows[2].degenerate);
    CHECK(rep.max_ratio == doctest::Approx(3.0));
    CHECK(rep.median_ratio == doctest::Approx(2.0));
    CHECK_THROWS_AS(rep.add(4, "{}", 1.0, 0.0), std::runtime_error); // x/0
}

TEST_CASE("least squares fit and csv emission") {
    SlopeFit f = fit_line("line", {1, 2, 3, 4}, {3.0, 5.0, 7.0, 9.0});
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.residual <= 1e-12);
    CHECK_THROWS_AS(fit_line("x", {1, 2}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(fit_line("x", {1, 1, 1}, {1, 2, 3}), std::invalid_argument);

    namespace fs = std::filesystem;
    const std::string dir = (fs::temp_directory_path() / "dzk_report_test").string();
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string sp = dir + "/fit.csv";
    write_slope_csv(f, sp);
    std::ifstream is(sp);
    std::string line;
    std::getline(is, line);
    CHECK(line == "abscissa,ordinate");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 6); // 4 data + summary header + summary row

    RatioReport rep;
    rep.case_id = "demo";
    rep.family = "fam";
    rep.add(0, "{\"t\":1,\"x\":2}", 1.5, 3.0);
    rep.finalize();
    const std::string rp = dir + "/ratios.csv";
    write_ratio_csv(rep, rp);
    std::ifstream ir(rp);
    std::getline(ir, line);
    CHECK(line == "case_id,input_id,param_json,lhs,rhs,ratio");
    std::getline(ir, line);
    CHECK(line.find("\"{\"\"t\"\":1,\"\"x\"\":2}\"") != std::string::npos);

    // collision gets a versioned suffix, never an overwrite
    const std::string v1 = versioned_path(rp);
    CHECK(v1 == rp + ".1");
    std::ofstream(v1) << "x";
    CHECK(versioned_path(rp) == rp + ".2");
    fs::remove_all(dir);
}

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "dzk/bump.hpp"
#include "dzk/counterexample.hpp"
#include "dzk/dealias.hpp"
#include "dzk/estimates.hpp"
#include "dzk/fft.hpp"
#include "dzk/field_io.hpp"
#include "dzk/kernel_lab.hpp"
#include "dzk/norms.hpp"
#include "dzk/propagators.hpp"
#include "dzk/solver.hpp"

namespace py = pybind11;
using namespace dzk;

namespace {

using carray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

ScalarField field_from_array(const Grid3& g, const carray& arr) {
    if (arr.ndim() != 3 || arr.shape(0) != g.nx || arr.shape(1) != g.ny ||
        arr.shape(2) != g.nz)
        throw std::invalid_argument("array shape must be (nx, ny, nz)");
    ScalarField f(g);
    std::memcpy(f.v.data(), arr.data(), f.v.size() * sizeof(cd));
    return f;
}

carray array_from_field(const ScalarField& f) {
    carray out({f.grid.nx, f.grid.ny, f.grid.nz});
    std::memcpy(out.mutable_data(), f.v.data(), f.v.size() * sizeof(cd));
    return out;
}

carray array_from_spectral(const SpectralField& F) {
    carray out({F.grid.nx, F.grid.ny, F.grid.nz});
    std::memcpy(out.mutable_data(), F.m.data(), F.m.size() * sizeof(cd));
    return out;
}

SpectralField spectral_from_array(const Grid3& g, const carray& arr) {
    if (arr.ndim() != 3 || arr.shape(0) != g.nx || arr.shape(1) != g.ny ||
        arr.shape(2) != g.nz)
        throw std::invalid_argument("array shape must be (nx, ny, nz)");
    SpectralField F(g);
    std::memcpy(F.m.data(), arr.data(), F.m.size() * sizeof(cd));
    return F;
}

FieldSeries series_from_arrays(const Grid3& g, double t_end,
                               const std::vector<carray>& frames) {
    const TimeGrid tg = make_time_grid(t_end, int(frames.size()));
    FieldSeries s(tg, g);
    for (std::size_t j = 0; j < frames.size(); ++j)
        s.frames[j] = field_from_array(g, frames[j]);
    return s;
}

} // namespace

PYBIND11_MODULE(_dzklab, m) {
    m.doc() = "pseudo-spectral laboratory for the dispersion-degenerate Zakharov system";

    py::class_<Grid3>(m, "Grid3")
        .def_readonly("nx", &Grid3::nx)
        .def_readonly("ny", &Grid3::ny)
        .def_readonly("nz", &Grid3::nz)
        .def_readonly("lx", &Grid3::lx)
        .def_readonly("ly", &Grid3::ly)
        .def_readonly("lz", &Grid3::lz)
        .def_readonly("kx", &Grid3::kx)
        .def_readonly("ky", &Grid3::ky)
        .def_readonly("kz", &Grid3::kz)
        .def("cell", &Grid3::cell)
        .def("__repr__", [](const Grid3& g) {
            return "Grid3(" + std::to_string(g.nx) + "x" + std::to_string(g.ny) + "x" +
                   std::to_string(g.nz) + ")";
        });

    m.def("make_grid", &make_grid, py::arg("nx"), py::arg("ny"), py::arg("nz"),
          py::arg("lx"), py::arg("ly"), py::arg("lz"));

    m.def("to_spectral", [](const Grid3& g, const carray& a) {
        return array_from_spectral(to_spectral(field_from_array(g, a)));
    });
    m.def("from_spectral", [](const Grid3& g, const carray& a) {
        return array_from_field(from_spectral(spectral_from_array(g, a)));
    });

    m.def("schrodinger_group", [](const Grid3& g, const carray& a, double t) {
        return array_from_field(schrodinger_group(field_from_array(g, a), t));
    });
    m.def("wave_sine", [](const Grid3& g, const carray& a, double t) {
        return array_from_field(wave_sine(field_from_array(g, a), t));
    });
    m.def("wave_cosine", [](const Grid3& g, const carray& a, double t) {
        return array_from_field(wave_cosine(field_from_array(g, a), t));
    });
    m.def("riesz_derivative",
          [](const Grid3& g, const carray& a, double s, const std::string& axis) {
              Axis3 ax = axis == "x"   ? Axis3::X
                         : axis == "y" ? Axis3::Y
                         : axis == "z" ? Axis3::Z
                                       : throw std::invalid_argument("axis must be x, y or z");
              return array_from_field(riesz_derivative(field_from_array(g, a), s, ax));
          });
    m.def("bessel_potential",
          [](const Grid3& g, const carray& a, double s, bool ax, bool ay, bool az) {
              return array_from_field(bessel_potential(field_from_array(g, a), s, ax, ay, az));
          });
    m.def("perp_sqrt_laplacian", [](const Grid3& g, const carray& a) {
        return array_from_field(perp_sqrt_laplacian(field_from_array(g, a)));
    });
    m.def("dyadic_projection", [](const Grid3& g, const carray& a, int k) {
        return array_from_field(dyadic_projection(field_from_array(g, a), k));
    });
    m.def("dealiased_product", [](const Grid3& g, const carray& a, const carray& b) {
        return array_from_field(dealiased_product(field_from_array(g, a), field_from_array(g, b)));
    });

    m.def("l2_norm", [](const Grid3& g, const carray& a) {
        return l2_norm(field_from_array(g, a));
    });
    m.def("sobolev_norm", [](const Grid3& g, const carray& a, double s) {
        return sobolev_norm(field_from_array(g, a), s).value;
    });
    m.def("tilde_h2_norm", [](const Grid3& g, const carray& a) {
        return tilde_h2_norm(field_from_array(g, a)).value;
    });
    m.def("mixed_norm",
          [](const Grid3& g, const carray& a, const std::string& spec) {
              return mixed_norm(field_from_array(g, a), MixedNormSpec::parse(spec)).value;
          },
          "iterated Lebesgue norm of a static field, e.g. 'Linf:x | L2:y,z'");
    m.def("mixed_norm_series",
          [](const Grid3& g, double t_end, const std::vector<carray>& frames,
             const std::string& spec) {
              return mixed_norm(series_from_arrays(g, t_end, frames),
                                MixedNormSpec::parse(spec))
                  .value;
          });
    m.def("x_T_norm",
          [](const Grid3& g, double t_end, const std::vector<carray>& frames, double eps) {
              return x_T_norm(series_from_arrays(g, t_end, frames), eps).value;
          },
          py::arg("grid"), py::arg("t_end"), py::arg("frames"), py::arg("eps") = 0.05);
    m.def("contraction_norm",
          [](const Grid3& g, double t_end, const std::vector<carray>& frames, double eps) {
              return contraction_norm(series_from_arrays(g, t_end, frames), eps).value;
          },
          py::arg("grid"), py::arg("t_end"), py::arg("frames"), py::arg("eps") = 0.05);

    m.def("dump_field", [](const Grid3& g, const carray& a, const std::string& path) {
        dump_field(field_from_array(g, a), path);
    });
    m.def("load_field", [](const std::string& path) {
        const ScalarField f = load_field(path);
        return py::make_tuple(f.grid, array_from_field(f));
    });

    m.def("solve_picard",
          [](const Grid3& g, const carray& E0, const carray& n0, const carray& n1,
             double t_end, int nt, double tol, int max_iters) {
              SolverConfig cfg;
              cfg.t_end = t_end;
              cfg.nt = nt;
              cfg.picard_tol = tol;
              cfg.max_iters = max_iters;
              const InitialData data = make_initial_data(
                  field_from_array(g, E0), field_from_array(g, n0), field_from_array(g, n1));
              const SolutionBundle sol = solve_picard(data, cfg);
              py::list eframes, nframes;
              for (const auto& fr : sol.E.frames) eframes.append(array_from_field(fr));
              for (const auto& fr : sol.n.frames) nframes.append(array_from_field(fr));
              py::dict diag;
              diag["iterations"] = sol.diagnostics.iterations;
              diag["converged"] = sol.diagnostics.converged;
              diag["residual"] = sol.diagnostics.residual;
              diag["mass_drift"] = sol.diagnostics.mass_drift;
              diag["achieved_T"] = sol.diagnostics.achieved_t_end;
              diag["increments"] = sol.diagnostics.increments;
              diag["ratios"] = sol.diagnostics.ratios;
              py::dict out;
              out["E"] = eframes;
              out["n"] = nframes;
              out["diagnostics"] = diag;
              return out;
          },
          py::arg("grid"), py::arg("E0"), py::arg("n0"), py::arg("n1"), py::arg("t_end"),
          py::arg("nt") = 17, py::arg("tol") = 1e-8, py::arg("max_iters") = 25);

    m.def("mass", [](const Grid3& g, const carray& a) {
        return mass(field_from_array(g, a));
    });
    m.def("smooth_step", &smooth_step);
}

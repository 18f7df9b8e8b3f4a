#include "dzk/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "dzk/estimates.hpp"
#include "dzk/grid.hpp"

namespace dzk {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    if (v == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing junk");
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: malformed value for " + key + ": '" + v + "'");
    }
}

long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing junk");
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: malformed value for " + key + ": '" + v + "'");
    }
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    for (const auto& it : split_list(v)) out.push_back(int(parse_int(key, it)));
    if (out.empty()) throw std::invalid_argument("config: empty list for " + key);
    return out;
}

FamilyKind parse_kind(const std::string& v) {
    if (v == "random-bandlimited") return FamilyKind::RandomBandlimited;
    if (v == "gaussian") return FamilyKind::Gaussian;
    if (v == "dyadic-theta") return FamilyKind::DyadicTheta;
    if (v == "rescaled") return FamilyKind::Rescaled;
    throw std::invalid_argument("config: unknown family.kind '" + v + "'");
}

} // namespace

const std::vector<std::string>& all_case_ids() {
    static const std::vector<std::string> ids{
        "unitarity",        "decay",
        "strichartz",       "smoothing-hom",
        "smoothing-inhom-L2", "smoothing-inhom-Linf",
        "maximal",          "wave-maximal-cos",
        "wave-maximal-sin2", "wave-maximal-sin1",
        "kernel-envelope",  "leibniz-commutator",
        "bk-bound",         "counterexample"};
    return ids;
}

const std::map<std::string, std::string>& default_config_table() {
    static const std::map<std::string, std::string> table{
        {"grid.nx", "64"}, {"grid.ny", "64"}, {"grid.nz", "64"},
        {"grid.lx", "6.283185307179586"}, {"grid.ly", "6.283185307179586"},
        {"grid.lz", "6.283185307179586"},
        {"time.T", "0.5"}, {"time.nt", "17"},
        {"norms.epsilon", "0.05"},
        {"family.kind", "random-bandlimited"}, {"family.count", "20"},
        {"family.seed", "(run.seed)"}, {"family.band", "6"}, {"family.slope", "0"},
        {"family.sigma_x", "1"}, {"family.sigma_y", "1"}, {"family.sigma_z", "1"},
        {"family.amplitude", "1"}, {"family.mod_kx", "0"}, {"family.mod_ky", "0"},
        {"family.mod_kz", "0"}, {"family.level", "2"}, {"family.scales", "1,2,4"},
        {"estimate.cases", "(all cases)"},
        {"estimate.p", "4"}, {"estimate.q", "(derived: 2/q = 1 - 2/p)"},
        {"estimate.s", "2"},
        {"estimate.rho", "0.5"}, {"estimate.rho1", "0.25"}, {"estimate.rho2", "0.25"},
        {"estimate.p1", "4"}, {"estimate.p2", "4"}, {"estimate.q1", "4"},
        {"estimate.q2", "4"},
        {"estimate.k_list", "2,3,4,5"}, {"estimate.kernel_k_list", "2,3,4,5,6"},
        {"estimate.bk_k_list", "1,2,3,4"},
        {"estimate.delta", "0.1"}, {"estimate.boundary_threshold", "0.005"},
        {"solver.T", "0.1"}, {"solver.nt", "17"}, {"solver.tol", "1e-8"},
        {"solver.max_iters", "25"}, {"solver.amplitude", "0.35"},
        {"run.seed", "1"},
        {"output.dir", "($DZK_OUT or ./dzk-out)"},
    };
    return table;
}

ExperimentConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " has no '='");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw std::invalid_argument("config: empty key or value on line " +
                                        std::to_string(lineno));
        if (!default_config_table().count(key) && key != "estimate.case")
            throw std::invalid_argument("config: unknown key '" + key + "'");
        kv[key] = val;
    }

    ExperimentConfig cfg;
    auto has = [&](const char* k) { return kv.count(k) != 0; };
    auto str = [&](const char* k) { return kv.at(k); };

    if (has("run.seed")) cfg.seed = std::uint64_t(parse_int("run.seed", str("run.seed")));
    cfg.family.seed = cfg.seed;

    if (has("grid.nx")) cfg.nx = int(parse_int("grid.nx", str("grid.nx")));
    if (has("grid.ny")) cfg.ny = int(parse_int("grid.ny", str("grid.ny")));
    if (has("grid.nz")) cfg.nz = int(parse_int("grid.nz", str("grid.nz")));
    if (has("grid.lx")) cfg.lx = parse_double("grid.lx", str("grid.lx"));
    if (has("grid.ly")) cfg.ly = parse_double("grid.ly", str("grid.ly"));
    if (has("grid.lz")) cfg.lz = parse_double("grid.lz", str("grid.lz"));
    make_grid(cfg.nx, cfg.ny, cfg.nz, cfg.lx, cfg.ly, cfg.lz); // validate eagerly

    if (has("time.T")) cfg.t_end = parse_double("time.T", str("time.T"));
    if (has("time.nt")) cfg.nt = int(parse_int("time.nt", str("time.nt")));
    make_time_grid(cfg.t_end, cfg.nt);

    if (has("norms.epsilon")) cfg.epsilon = parse_double("norms.epsilon", str("norms.epsilon"));
    if (!(cfg.epsilon > 0))
        throw std::invalid_argument("config: norms.epsilon must be positive");

    if (has("family.kind")) cfg.family.kind = parse_kind(str("family.kind"));
    if (has("family.count"))
        cfg.family.count = int(parse_int("family.count", str("family.count")));
    if (cfg.family.count < 1) throw std::invalid_argument("config: family.count must be >= 1");
    if (has("family.seed"))
        cfg.family.seed = std::uint64_t(parse_int("family.seed", str("family.seed")));
    if (has("family.band")) cfg.family.band = int(parse_int("family.band", str("family.band")));
    if (has("family.slope"))
        cfg.family.spectral_slope = parse_double("family.slope", str("family.slope"));
    if (has("family.sigma_x")) cfg.family.sigma_x = parse_double("family.sigma_x", str("family.sigma_x"));
    if (has("family.sigma_y")) cfg.family.sigma_y = parse_double("family.sigma_y", str("family.sigma_y"));
    if (has("family.sigma_z")) cfg.family.sigma_z = parse_double("family.sigma_z", str("family.sigma_z"));
    if (has("family.amplitude"))
        cfg.family.amplitude = parse_double("family.amplitude", str("family.amplitude"));
    if (has("family.mod_kx")) cfg.family.mod_kx = int(parse_int("family.mod_kx", str("family.mod_kx")));
    if (has("family.mod_ky")) cfg.family.mod_ky = int(parse_int("family.mod_ky", str("family.mod_ky")));
    if (has("family.mod_kz")) cfg.family.mod_kz = int(parse_int("family.mod_kz", str("family.mod_kz")));
    if (has("family.level")) cfg.family.level = int(parse_int("family.level", str("family.level")));
    if (has("family.scales")) {
        cfg.family.scales.clear();
        for (int v : parse_int_list("family.scales", str("family.scales")))
            cfg.family.scales.push_back(double(v));
    }

    if (has("estimate.cases") && has("estimate.case"))
        throw std::invalid_argument("config: give estimate.case or estimate.cases, not both");
    if (has("estimate.cases")) cfg.cases = split_list(str("estimate.cases"));
    else if (has("estimate.case")) cfg.cases = {trim(str("estimate.case"))};
    else cfg.cases = all_case_ids();
    for (const auto& id : cfg.cases)
        if (std::find(all_case_ids().begin(), all_case_ids().end(), id) ==
            all_case_ids().end())
            throw std::invalid_argument("config: invalid case id '" + id + "'");

    if (has("estimate.p")) cfg.p = parse_double("estimate.p", str("estimate.p"));
    if (has("estimate.q")) {
        cfg.q = parse_double("estimate.q", str("estimate.q"));
        cfg.q_explicit = true;
        validate_strichartz(cfg.q, cfg.p);
    } else {
        cfg.q = strichartz_q_from_p(cfg.p);
    }
    if (has("estimate.s")) cfg.s = parse_double("estimate.s", str("estimate.s"));
    if (has("estimate.rho")) cfg.rho = parse_double("estimate.rho", str("estimate.rho"));
    if (has("estimate.rho1")) cfg.rho1 = parse_double("estimate.rho1", str("estimate.rho1"));
    if (has("estimate.rho2")) cfg.rho2 = parse_double("estimate.rho2", str("estimate.rho2"));
    if (has("estimate.p1")) cfg.lp1 = parse_double("estimate.p1", str("estimate.p1"));
    if (has("estimate.p2")) cfg.lp2 = parse_double("estimate.p2", str("estimate.p2"));
    if (has("estimate.q1")) cfg.lq1 = parse_double("estimate.q1", str("estimate.q1"));
    if (has("estimate.q2")) cfg.lq2 = parse_double("estimate.q2", str("estimate.q2"));
    if (has("estimate.k_list")) cfg.k_list = parse_int_list("estimate.k_list", str("estimate.k_list"));
    if (has("estimate.kernel_k_list"))
        cfg.kernel_k_list = parse_int_list("estimate.kernel_k_list", str("estimate.kernel_k_list"));
    if (has("estimate.bk_k_list"))
        cfg.bk_k_list = parse_int_list("estimate.bk_k_list", str("estimate.bk_k_list"));
    if (has("estimate.delta")) cfg.delta = parse_double("estimate.delta", str("estimate.delta"));
    if (has("estimate.boundary_threshold"))
        cfg.boundary_threshold =
            parse_double("estimate.boundary_threshold", str("estimate.boundary_threshold"));

    if (has("solver.T")) cfg.solver_t_end = parse_double("solver.T", str("solver.T"));
    if (has("solver.nt")) cfg.solver_nt = int(parse_int("solver.nt", str("solver.nt")));
    if (has("solver.tol")) cfg.solver_tol = parse_double("solver.tol", str("solver.tol"));
    if (has("solver.max_iters"))
        cfg.solver_max_iters = int(parse_int("solver.max_iters", str("solver.max_iters")));
    if (has("solver.amplitude"))
        cfg.solver_amplitude = parse_double("solver.amplitude", str("solver.amplitude"));

    if (has("output.dir")) cfg.output_dir = str("output.dir");
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str());
}

std::string ExperimentConfig::echo() const {
    std::ostringstream os;
    os.precision(17);
    os << "grid.nx = " << nx << "\ngrid.ny = " << ny << "\ngrid.nz = " << nz
       << "\ngrid.lx = " << lx << "\ngrid.ly = " << ly << "\ngrid.lz = " << lz
       << "\ntime.T = " << t_end << "\ntime.nt = " << nt
       << "\nnorms.epsilon = " << epsilon << "\nfamily = " << family.describe()
       << "\nestimate.p = " << p << "\nestimate.q = " << q
       << "\nestimate.s = " << s << "\nestimate.rho = " << rho
       << "\nestimate.rho1 = " << rho1 << "\nestimate.rho2 = " << rho2
       << "\nestimate.delta = " << delta
       << "\nestimate.boundary_threshold = " << boundary_threshold
       << "\nsolver.T = " << solver_t_end << "\nsolver.nt = " << solver_nt
       << "\nsolver.tol = " << solver_tol << "\nsolver.max_iters = " << solver_max_iters
       << "\nsolver.amplitude = " << solver_amplitude << "\nrun.seed = " << seed
       << "\ncases =";
    for (const auto& c : cases) os << ' ' << c;
    os << '\n';
    return os.str();
}

} // namespace dzk

#include "dzk/reports.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace dzk {

void RatioReport::add(int input_id, const std::string& params, double lhs, double rhs) {
    RatioRow row;
    row.input_id = input_id;
    row.param_json = params;
    row.lhs = lhs;
    row.rhs = rhs;
    if (rhs == 0.0 && lhs == 0.0) {
        row.degenerate = true;
        row.ratio = 0.0;
    } else {
        row.ratio = lhs / rhs;
        if (!std::isfinite(row.ratio) || row.ratio < 0.0)
            throw std::runtime_error("RatioReport: non-finite or negative ratio in " + case_id);
    }
    rows.push_back(std::move(row));
}

void RatioReport::finalize() {
    std::vector<double> r;
    for (const auto& row : rows)
        if (!row.degenerate) r.push_back(row.ratio);
    if (r.empty()) {
        max_ratio = 0.0;
        median_ratio = 0.0;
        return;
    }
    std::sort(r.begin(), r.end());
    max_ratio = r.back();
    median_ratio = (r.size() % 2 == 1) ? r[r.size() / 2]
                                       : 0.5 * (r[r.size() / 2 - 1] + r[r.size() / 2]);
}

SlopeFit fit_line(const std::string& case_id, std::vector<double> xs,
                  std::vector<double> ys, bool relax) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_line: size mismatch");
    if (xs.size() < (relax ? 2u : 3u)) throw std::invalid_argument("fit_line: too few points");
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    SlopeFit f;
    f.case_id = case_id;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy * sxx - sx * sxy) / det;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (f.slope * xs[i] + f.intercept);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / double(n));
    f.abscissae = std::move(xs);
    f.ordinates = std::move(ys);
    return f;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

namespace {
std::ofstream open_csv(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open report file " + path);
    os.precision(17);
    return os;
}
} // namespace

void write_ratio_csv(const RatioReport& r, const std::string& path) {
    auto os = open_csv(path);
    os << "case_id,input_id,param_json,lhs,rhs,ratio\n";
    for (const auto& row : r.rows) {
        os << csv_quote(r.case_id) << ',' << row.input_id << ',' << csv_quote(row.param_json)
           << ',' << row.lhs << ',' << row.rhs << ',';
        if (row.degenerate) os << "degenerate";
        else os << row.ratio;
        os << '\n';
    }
}

void write_slope_csv(const SlopeFit& f, const std::string& path) {
    auto os = open_csv(path);
    os << "abscissa,ordinate\n";
    for (std::size_t i = 0; i < f.abscissae.size(); ++i)
        os << f.abscissae[i] << ',' << f.ordinates[i] << '\n';
    os << "summary_slope,summary_residual\n";
    os << f.slope << ',' << f.residual << '\n';
}

std::string versioned_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (!fs::exists(path)) return path;
    for (int v = 1; v < 10000; ++v) {
        const std::string candidate = path + "." + std::to_string(v);
        if (!fs::exists(candidate)) return candidate;
    }
    throw std::runtime_error("versioned_path: too many versions of " + path);
}

} // namespace dzk

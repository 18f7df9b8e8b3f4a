#pragma once

#include <string>
#include <vector>

namespace dzk {

struct RatioRow {
    int input_id = 0;
    std::string param_json;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool degenerate = false; // 0/0 guarded, excluded from the statistics
};

struct RatioReport {
    std::string case_id;
    std::string family;
    std::vector<RatioRow> rows;
    double max_ratio = 0.0;
    double median_ratio = 0.0;

    void add(int input_id, const std::string& params, double lhs, double rhs);
    void finalize(); // fills max/median over non-degenerate rows
};

struct SlopeFit {
    std::string case_id;
    std::vector<double> abscissae;
    std::vector<double> ordinates;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // rms of fit residuals
};

// Least squares line through (abscissae, ordinates); needs >= 3 points
// unless relax is set (2 points give an exact line, residual 0).
SlopeFit fit_line(const std::string& case_id, std::vector<double> xs,
                  std::vector<double> ys, bool relax = false);

std::string csv_quote(const std::string& s);

// One CSV per case: case_id, input_id, param_json, lhs, rhs, ratio.
void write_ratio_csv(const RatioReport& r, const std::string& path);
// (abscissa, ordinate) rows followed by a summary row (slope, residual).
void write_slope_csv(const SlopeFit& f, const std::string& path);

// "path" if free, else "path.1", "path.2", ... never overwrites.
std::string versioned_path(const std::string& path);

} // namespace dzk

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dzk/families.hpp"

namespace dzk {

// Line-oriented "section.key = value" text. Unknown keys are rejected;
// absent keys take the documented defaults (see default_config_table()).
struct ExperimentConfig {
    // grid
    int nx = 64, ny = 64, nz = 64;
    double lx = 2.0 * M_PI, ly = 2.0 * M_PI, lz = 2.0 * M_PI;
    // time
    double t_end = 0.5;
    int nt = 17;
    // norms
    double epsilon = 0.05;
    // family
    FamilySpec family;
    // estimate parameters
    std::vector<std::string> cases; // executed in declared order
    double p = 4.0;
    double q = 4.0;
    bool q_explicit = false; // otherwise derived from admissibility
    double s = 2.0;
    double rho = 0.5, rho1 = 0.25, rho2 = 0.25;
    double lp1 = 4.0, lp2 = 4.0, lq1 = 4.0, lq2 = 4.0;
    std::vector<int> k_list{2, 3, 4, 5};          // counterexample levels
    std::vector<int> kernel_k_list{2, 3, 4, 5, 6};
    std::vector<int> bk_k_list{1, 2, 3, 4};
    double delta = 0.1;
    double boundary_threshold = 5e-3;
    // solver
    double solver_t_end = 0.1;
    int solver_nt = 17;
    double solver_tol = 1e-8;
    int solver_max_iters = 25;
    double solver_amplitude = 0.35;
    // run
    std::uint64_t seed = 1;
    std::string output_dir; // empty: DZK_OUT or ./dzk-out

    std::string echo() const; // effective values, one per line
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// key -> default value as text, for the config echo and the docs
const std::map<std::string, std::string>& default_config_table();

// every case id the runner knows, in default execution order
const std::vector<std::string>& all_case_ids();

} // namespace dzk

#pragma once

// Pass/fail thresholds shared by the CLI suite and the acceptance tests.
namespace dzk::thresholds {

inline constexpr double exact_identity = 1e-12;

inline constexpr double decay_slope_rel_inf = 0.02;
inline constexpr double decay_slope_rel_p4 = 0.05;
inline constexpr double decay_const_margin = 0.05; // against 1/(4 pi)

inline constexpr double strichartz_max_over_median = 5.0;
inline constexpr double rescaling_slope_abs = 0.1;
inline constexpr double refinement_rel = 0.20;
inline constexpr double symmetry_tol = 1e-10;

inline constexpr double sharpness_lhs_slope = 2.5;
inline constexpr double sharpness_lhs_tol = 0.3;
inline constexpr double sharpness_h0_slope = 1.0;
inline constexpr double sharpness_h0_tol = 0.3;
inline constexpr double sharpness_h2_slope_max = 0.15;

inline constexpr double kernel_tail_slope = -2.0;
inline constexpr double kernel_tail_tol = 0.2;

inline constexpr double partition_tol = 1e-12;
inline constexpr double bk_slope_tol = 0.2;

inline constexpr double solver_contraction_max = 0.5;
inline constexpr double solver_mass_drift = 1e-6;
inline constexpr double solver_xval_rel = 1e-4;
inline constexpr double solver_symmetry = 1e-10;
inline constexpr double solver_n_imag = 1e-10;

inline constexpr double leibniz_const_g = 1e-12;

} // namespace dzk::thresholds

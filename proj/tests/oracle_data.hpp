// Auto-generated by tools/oracles/make_reference_values.py -- do not edit.
// All values computed with mpmath at 50-digit precision, rounded to double.
#pragma once

namespace tracelab::oracle {
inline constexpr double log_gamma_0_5 = 0.57236494292470009;
inline constexpr double log_gamma_1_5 = -0.12078223763524522;
inline constexpr double log_gamma_5_0 = 3.1780538303479456;
inline constexpr double log_gamma_23_4 = 49.720154482211279;
inline constexpr double log_gamma_120_25 = 454.22098738335820;
inline constexpr double log_gamma_199_5 = 855.28638927345257;
inline constexpr double digamma_0_5 = -1.9635100260214235;
inline constexpr double digamma_1_0 = -0.57721566490153286;
inline constexpr double digamma_7_25 = 1.9104535268837360;
inline constexpr double digamma_123_0 = 4.8081138065732548;
inline constexpr double jacobi_4_1_2_at_0_3 = 0.32706250000000000;
inline constexpr double jacobi_7_0_5_3_25_at_m0_62 = 4.3982192117280887;
inline constexpr double gegenbauer_3_1_5_at_m0_4 = 1.8800000000000000;
inline constexpr double gegenbauer_6_2_25_at_0_77 = -10.454820266120991;
inline constexpr double s5_abs_z1_sq = 10.335425560099940;
inline constexpr double s3_abs_z1_4 = 6.5797362673929057;
inline constexpr double s5_abs_z1_sq_z2_4 = 1.0335425560099940;
inline constexpr double area_s1 = 6.2831853071795865;
inline constexpr double area_s2 = 12.566370614359173;
inline constexpr double area_s3 = 19.739208802178717;
inline constexpr double area_s4 = 26.318945069571623;
inline constexpr double area_s5 = 31.006276680299820;
inline constexpr double area_s7 = 32.469697011334146;
inline constexpr double einav_loss_1_1_3 = 0.28209479177387814;
inline constexpr double bez_3_1 = 0.28209479177387814;
inline constexpr double bez_4_1_5 = 0.058107969942756706;
inline constexpr double bez_5_0_75 = 0.44985520519923103;
inline constexpr double trace_cr_2_1_4 = 3.4894320998194398;
inline constexpr double hls_1_2 = 5.6568542494923802;
inline constexpr double hls_2_3 = 7.6884280047648241;
inline constexpr double a_1_2 = 0.15915494309189534;
inline constexpr double a_2_3 = 0.038641861036376671;
inline constexpr double zonal_s3_lam2 = 25.132741228718346;
inline constexpr double zonal_s5_lam3 = 42.811688910556918;
inline constexpr double jacobi_norm_6_0_5_1_25 = 0.41897684145687967;
inline constexpr double extension_cr_one_r06_s3 = 0.52171331889054700;
inline constexpr double extension_cr_one_r085_s3 = 0.62696536210473861;
inline constexpr double extension_cr_one_r06_s4 = 0.82666933495178504;
inline constexpr double extension_cr_one_r085_s4 = 0.88941345500150666;
}  // namespace tracelab::oracle

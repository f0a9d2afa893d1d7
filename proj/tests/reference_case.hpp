// Reference values for the ten-sample study and the three-material
// quality comparison. Values are copied verbatim (printed precision).
#ifndef BUCKYQA_TESTS_REFERENCE_CASE_HPP
#define BUCKYQA_TESTS_REFERENCE_CASE_HPP

#include <array>

namespace reference {

inline constexpr int kSamples = 10;

// Per-sample features against the ideal profile: max-intensity difference d and dissimilarity D.
inline constexpr std::array<double, kSamples> d = {0, 65.55, 89.96, 98.285, 84.605, 69.675, 54.745, 40.205, 241.72, 368.27};
inline constexpr std::array<double, kSamples> D = {0,       0.00002, 0.00008, 0.00016, 0.00016,
                                                   0.00008, 0.00022, 0.0002,  0.00014, 0.00024};

// Inconsistency index and its threshold.
inline constexpr std::array<double, kSamples> C = {0,       0.00197, 0.00691, 0.00691, 0.00277,
                                                   0.00166, 0.00006, 0.00001, 0.68565, 0.99989};
inline constexpr double threshold = 0.2899;
// Best-to-worst consistency order as printed (the 3/4 tie is printed 4 before 3).
inline constexpr std::array<int, kSamples> consistency_order = {1, 8, 7, 6, 2, 5, 4, 3, 9, 10};

// Chart columns on D.
inline constexpr std::array<double, kSamples> D_cusum_upper = {0,        0,        0, 0.043857, 0.087714,
                                                               0,        1.131571, 1.900571, 1.581857, 3.076};
inline constexpr std::array<double, kSamples> D_cusum_lower = {-1.85671, -3.35086, -3.75729, -2.71343, -1.66957,
                                                               -2.076,   0,        0,        0,        0};
inline constexpr std::array<double, kSamples> D_ewma_z = {0.000104, 8.72E-05, 8.58E-05, 0.000101, 0.000112,
                                                          0.000106, 0.000129, 0.000143, 0.000142, 0.000162};
inline constexpr std::array<double, kSamples> D_ewma_lcl = {9.69E-05, 8.76E-05, 8.26E-05, 7.97E-05, 7.79E-05,
                                                            7.68E-05, 7.61E-05, 7.56E-05, 7.53E-05, 7.52E-05};
inline constexpr std::array<double, kSamples> D_ewma_ucl = {0.000163, 0.000172, 0.000177, 0.00018,  0.000182,
                                                            0.000183, 0.000184, 0.000184, 0.000185, 0.000185};

// Chart columns on d.
inline constexpr std::array<double, kSamples> d_cusum_upper = {0, 0, 0, 0, 0, 0, 0, 0, 2.233127, 7.11831};
inline constexpr std::array<double, kSamples> d_cusum_lower = {-1.8325,  -2.2913,  -2.23854, -2.01132, -2.07079,
                                                               -2.44314, -3.12837, -4.11831, -0.88518, 0};
inline constexpr std::array<double, kSamples> d_ewma_z = {89.0412,  84.34296, 85.46637, 88.03009, 87.34508,
                                                          83.81106, 77.99785, 70.43928, 104.6954, 157.4103};
inline constexpr std::array<double, kSamples> d_ewma_lcl = {82.67089, 74.63642, 70.3127,  67.77031, 66.21836,
                                                            65.25256, 64.64493, 64.26017, 64.01556, 63.85968};
inline constexpr std::array<double, kSamples> d_ewma_ucl = {139.9321, 147.9666, 152.2903, 154.8327, 156.3846,
                                                            157.3504, 157.9581, 158.3428, 158.5874, 158.7433};

// Overall quality of five samples for three materials; flagged above 0.5.
inline constexpr std::array<double, 5> q_raw = {0.40781, 0.60958, 0.40624, 0.38501, 0.59167};
inline constexpr std::array<double, 5> q_acid = {0.3912, 0.63058, 0.42267, 0.48447, 0.59869};
inline constexpr std::array<double, 5> q_functionalized = {0.40339, 0.57911, 0.40266, 0.57829, 0.43248};

// Best-to-worst orders from the full ten-sample pipeline (needs the measured spectra).
inline constexpr std::array<int, kSamples> uniformity_order = {8, 3, 1, 6, 7, 5, 4, 9, 2, 10};
inline constexpr std::array<int, kSamples> quality_order = {8, 3, 1, 6, 7, 5, 4, 2, 9, 10};

}  // namespace reference

#endif  // BUCKYQA_TESTS_REFERENCE_CASE_HPP

#pragma once

// Upper critical values of the chi-square distribution, dof = 1..99.

#include <array>

namespace benford::detail {

inline constexpr std::array<double, 99> kChiSquare05 = {
    3.841459, 5.991465, 7.814728, 9.487729, 11.070498, 12.591587, 14.06714, 15.507313,
    16.918978, 18.307038, 19.675138, 21.02607, 22.362032, 23.684791, 24.99579, 26.296228,
    27.587112, 28.869299, 30.143527, 31.410433, 32.670573, 33.924438, 35.172462, 36.415029,
    37.652484, 38.885139, 40.113272, 41.337138, 42.556968, 43.772972, 44.985343, 46.19426,
    47.399884, 48.602367, 49.80185, 50.99846, 52.19232, 53.383541, 54.572228, 55.758479,
    56.942387, 58.124038, 59.303512, 60.480887, 61.656233, 62.82962, 64.001112, 65.170769,
    66.338649, 67.504807, 68.669294, 69.83216, 70.993453, 72.153216, 73.311493, 74.468324,
    75.623748, 76.777803, 77.930524, 79.081944, 80.232098, 81.381015, 82.528727, 83.675261,
    84.820645, 85.964907, 87.108072, 88.250164, 89.391208, 90.531225, 91.670239, 92.80827,
    93.94534, 95.081467, 96.216671, 97.35097, 98.484383, 99.616927, 100.748619, 101.879474,
    103.009509, 104.138738, 105.267177, 106.39484, 107.521741, 108.647893, 109.773309,
    110.898003, 112.021986, 113.14527, 114.267868, 115.38979, 116.511047, 117.631651,
    118.751612, 119.870939, 120.989644, 122.107735, 123.225221};

inline constexpr std::array<double, 99> kChiSquare01 = {
    6.634897, 9.21034, 11.344867, 13.276704, 15.086272, 16.811894, 18.475307, 20.090235,
    21.665994, 23.209251, 24.72497, 26.216967, 27.68825, 29.141238, 30.577914, 31.999927,
    33.408664, 34.805306, 36.190869, 37.566235, 38.932173, 40.28936, 41.638398, 42.97982,
    44.314105, 45.641683, 46.962942, 48.278236, 49.587884, 50.892181, 52.191395, 53.485772,
    54.77554, 56.060909, 57.342073, 58.619215, 59.8925, 61.162087, 62.428121, 63.69074,
    64.950071, 66.206236, 67.459348, 68.709513, 69.956832, 71.2014, 72.443307, 73.682639,
    74.919474, 76.153891, 77.385962, 78.615756, 79.843338, 81.068772, 82.292117, 83.51343,
    84.732766, 85.950176, 87.165711, 88.379419, 89.591344, 90.801532, 92.010024, 93.21686,
    94.422079, 95.625719, 96.827816, 98.028403, 99.227515, 100.425184, 101.621441,
    102.816314, 104.009834, 105.202028, 106.392923, 107.582545, 108.770919, 109.958069,
    111.144019, 112.328793, 113.51241, 114.694895, 115.876266, 117.056544, 118.235749,
    119.4139, 120.591015, 121.767111, 122.942207, 124.116319, 125.289463, 126.461656,
    127.632913, 128.803249, 129.972679, 131.141217, 132.308877, 133.475672, 134.641617};

} // namespace benford::detail
